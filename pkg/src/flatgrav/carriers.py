"""Nonlocal radial energy and charge carriers.

A carrier is not a point source: its energy fills all space with the r^-4
profile eps(r) = E_M*r_o/(4*pi*r^2*(r+r_o)^2), whose integral is finite and
equals E_M = r_o/G.  The field intensity w = -grad(W) of the logarithmic
potential W = -ln(1 + r_o/r) reproduces the inverse-square attraction outside
the energy radius while staying integrable at the center.  The electric
carrier is the same profile normalized to a total charge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Tuple

import numpy as np
from scipy.integrate import quad

from .errors import NonPositiveRadius

__all__ = [
    "RadialCarrier", "ElectricCarrier", "DensityResiduals",
    "energy_density", "field_intensity", "field_divergence", "log_potential",
    "density_identities", "ricci_density", "enclosed_energy",
    "enclosed_energy_quadrature", "total_energy_quadrature",
    "attraction_law_check", "gauss_flux", "electric_profile",
    "displacement_divergence_residual", "enclosed_charge",
    "total_charge_quadrature", "self_energy_quadrature",
    "self_potential_gradient", "superpose_density",
]

TAIL_SPLIT = 1.0e3            # switch to the analytic tail at r = 1e3 * r_o


@dataclass(frozen=True)
class RadialCarrier:
    """Radially distributed energy carrier with energy radius ``r_o``.

    ``newton_constant`` stays a parameter (default 1) so the profile can be
    used in fully geometric units or converted at the boundary.
    """

    r_o: float
    newton_constant: float = 1.0
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "center",
                           np.asarray(self.center, dtype=float))
        if self.r_o <= 0.0 or self.newton_constant <= 0.0:
            raise NonPositiveRadius("r_o and newton_constant must be > 0")

    @property
    def total_energy(self) -> float:
        """E_M = r_o / G, the integral of the energy density over all space."""
        return self.r_o / self.newton_constant


def _check_radius(r: float) -> None:
    if r <= 0.0:
        raise NonPositiveRadius(f"r must be > 0, got {r}")


def energy_density(c: RadialCarrier, r) -> np.ndarray:
    """eps(r) = E_M * r_o / (4*pi*r^2*(r+r_o)^2)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise NonPositiveRadius("r must be > 0")
    return c.total_energy * c.r_o / (4.0 * np.pi * r**2 * (r + c.r_o) ** 2)


def field_intensity(c: RadialCarrier, r) -> np.ndarray:
    """Radial field w_r = -r_o/(r*(r+r_o)), inward, units 1/length."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise NonPositiveRadius("r must be > 0")
    return -c.r_o / (r * (r + c.r_o))


def log_potential(c: RadialCarrier, r) -> np.ndarray:
    """Logarithmic potential W(r) = -ln((r+r_o)/r), with w = -grad W."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise NonPositiveRadius("r must be > 0")
    return -np.log1p(c.r_o / r)


def field_divergence(c: RadialCarrier, r) -> np.ndarray:
    """Closed-form div(w) = -r_o^2/(r^2*(r+r_o)^2)."""
    r = np.asarray(r, dtype=float)
    return -c.r_o**2 / (r**2 * (r + c.r_o) ** 2)


@dataclass(frozen=True)
class DensityResiduals:
    """Residuals of the active/passive density identities at one radius."""

    active_residual: float    # |(-div w)/(4 pi G) - eps_a|
    passive_residual: float   # |w^2/(4 pi G) - eps_p|
    equality_residual: float  # |eps_a - eps_p|
    fd_divergence_error: float  # |finite-difference div(w) - analytic|
    fd_divergence_error_half: float  # same with step h/2 (Richardson check)


def density_identities(c: RadialCarrier, r: float, h: float) -> DensityResiduals:
    """Check that active and passive energy densities coincide.

    Active density is -div(w)/(4*pi*G), passive is w^2/(4*pi*G); both equal
    r_o^2/(4*pi*G*r^2*(r+r_o)^2) in closed form.  The divergence is also
    recomputed by central differences at steps h and h/2 so callers can
    verify O(h^2) convergence.
    """
    _check_radius(r)
    if not 0.0 < h < r:
        raise NonPositiveRadius(f"step must satisfy 0 < h < r, got {h}")
    four_pi_g = 4.0 * np.pi * c.newton_constant
    eps_common = c.r_o**2 / (four_pi_g * r**2 * (r + c.r_o) ** 2)
    eps_active = -field_divergence(c, r) / four_pi_g
    w = float(field_intensity(c, r))
    eps_passive = w**2 / four_pi_g

    def div_fd(step: float) -> float:
        # div w = (1/r^2) d(r^2 w_r)/dr for a radial field
        fp = (r + step) ** 2 * field_intensity(c, r + step)
        fm = (r - step) ** 2 * field_intensity(c, r - step)
        return float(fp - fm) / (2.0 * step * r**2)

    analytic = float(field_divergence(c, r))
    return DensityResiduals(
        active_residual=abs(eps_active - eps_common),
        passive_residual=abs(eps_passive - eps_common),
        equality_residual=abs(eps_active - eps_passive),
        fd_divergence_error=abs(div_fd(h) - analytic),
        fd_divergence_error_half=abs(div_fd(h / 2.0) - analytic),
    )


def ricci_density(c: RadialCarrier, r) -> np.ndarray:
    """Curvature-scalar density: (eps_a + eps_p) = 2*eps(r)*G/... in model units.

    Returns eps_a + eps_p = 2 * r_o^2 / (4*pi*G*r^2*(r+r_o)^2), the quantity
    whose 8*pi*G multiple is the curvature scalar of the carrier field.
    """
    r = np.asarray(r, dtype=float)
    return 2.0 * c.r_o**2 / (4.0 * np.pi * c.newton_constant
                             * r**2 * (r + c.r_o) ** 2)


def enclosed_energy(c: RadialCarrier, R: float) -> float:
    """Analytic enclosed energy E_M * R/(R + r_o); 0 at R = 0."""
    if R < 0.0:
        raise NonPositiveRadius(f"R must be >= 0, got {R}")
    return c.total_energy * R / (R + c.r_o)


def enclosed_energy_quadrature(c: RadialCarrier, R: float,
                               epsrel: float = 1e-12) -> float:
    """Adaptive quadrature of 4*pi*r^2*eps over [0, R]."""
    if R < 0.0:
        raise NonPositiveRadius(f"R must be >= 0, got {R}")
    if R == 0.0:
        return 0.0

    def shell(r):
        return c.total_energy * c.r_o / (r + c.r_o) ** 2

    val, _ = quad(shell, 0.0, R, epsrel=epsrel, epsabs=0.0, limit=200)
    return float(val)


def total_energy_quadrature(c: RadialCarrier) -> float:
    """Quadrature over [0, split] plus the exact tail integral beyond it.

    The split sits at 1e3 * r_o; the tail of the shell integrand
    E_M*r_o/(r+r_o)^2 integrates to E_M*r_o/(split+r_o) in closed form.
    """
    split = TAIL_SPLIT * c.r_o
    head = enclosed_energy_quadrature(c, split)
    tail = c.total_energy * c.r_o / (split + c.r_o)
    return head + tail


def attraction_law_check(c: RadialCarrier, E_m: float, r: float
                         ) -> Tuple[float, float]:
    """Potential energy of a test carrier and its clock-rate consistency.

    Returns (U0, residual) with U0 = -G*E_M*E_m/r and residual the mismatch
    |1/sqrt(g00) - (1 - U0/E_m)| against the central metric's time warp
    1 + r_o/r.
    """
    _check_radius(r)
    u0 = -c.newton_constant * c.total_energy * E_m / r
    inv_sqrt_g00 = 1.0 + c.r_o / r
    residual = abs(inv_sqrt_g00 - (1.0 - u0 / E_m))
    return u0, residual


def gauss_flux(c: RadialCarrier, r: float) -> float:
    """Surface integral of the specific force -grad(U0/E_m) over radius r.

    Equals 4*pi*G*E_M = 4*pi*r_o for every radius: the inverse-square far
    field keeps the full flux of the distributed source.
    """
    _check_radius(r)
    specific_force = c.newton_constant * c.total_energy / r**2
    return 4.0 * np.pi * r**2 * specific_force


@dataclass(frozen=True)
class ElectricCarrier:
    """Radially distributed elementary charge with energy radius ``r_e``."""

    e: float
    r_e: float = 7e-58
    r_o: float = 7e-58

    def __post_init__(self):
        if self.r_e <= 0.0 or self.r_o <= 0.0:
            raise NonPositiveRadius("r_e and r_o must be > 0")


def electric_profile(c: ElectricCarrier, r) -> Tuple[np.ndarray, np.ndarray,
                                                     np.ndarray]:
    """Charge density, radial field, and potential of the spread charge.

    rho = e*r_o/(4*pi*r^2*(r+r_o)^2); E_r = e*r_o/(r_e*r*(r+r_o));
    W_e = (e/r_e)*ln((r+r_o)/r).  The displacement field D = E*r_e/r_o
    satisfies div(D) = 4*pi*rho exactly.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise NonPositiveRadius("r must be > 0")
    rho = c.e * c.r_o / (4.0 * np.pi * r**2 * (r + c.r_o) ** 2)
    e_field = c.e * c.r_o / (c.r_e * r * (r + c.r_o))
    potential = (c.e / c.r_e) * np.log1p(c.r_o / r)
    return rho, e_field, potential


def displacement_divergence_residual(c: ElectricCarrier, r: float) -> float:
    """|div(D) - 4*pi*rho| using the closed forms (zero to rounding)."""
    _check_radius(r)
    rho, _, _ = electric_profile(c, r)
    # div D = (1/r^2) d/dr [r^2 * e/(r*(r+r_o))] = e*r_o/(r^2*(r+r_o)^2)
    div_d = c.e * c.r_o / (r**2 * (r + c.r_o) ** 2)
    return abs(div_d - 4.0 * np.pi * float(rho))


def enclosed_charge(c: ElectricCarrier, R: float) -> float:
    """Analytic enclosed charge e * R/(R + r_o)."""
    if R < 0.0:
        raise NonPositiveRadius(f"R must be >= 0, got {R}")
    return c.e * R / (R + c.r_o)


def total_charge_quadrature(c: ElectricCarrier) -> float:
    """Quadrature of 4*pi*r^2*rho to the tail split plus the exact tail."""
    split = TAIL_SPLIT * c.r_o

    def shell(r):
        return c.e * c.r_o / (r + c.r_o) ** 2

    head, _ = quad(shell, 0.0, split, epsrel=1e-12, epsabs=0.0, limit=200)
    tail = c.e * c.r_o / (split + c.r_o)
    return float(head) + tail


def self_energy_quadrature(c: ElectricCarrier) -> float:
    """E_e = integral of rho * (e/r_e) over all space = e^2/r_e.

    The self-potential e/r_e is constant, so its gradient — and hence any
    self-force — vanishes identically; the integral reduces to the total
    charge times e/r_e.
    """
    return total_charge_quadrature(c) * c.e / c.r_e


def self_potential_gradient(c: ElectricCarrier) -> float:
    """Gradient of the constant self-potential e/r_e: exactly zero."""
    return 0.0


def superpose_density(carriers: Iterable[RadialCarrier],
                      point: np.ndarray) -> float:
    """Total energy density of several carriers at one spatial point.

    Densities superpose as a plain sum; no carrier-carrier interaction
    energy is modeled.
    """
    x = np.asarray(point, dtype=float)
    total = 0.0
    for c in carriers:
        r = float(np.linalg.norm(x - c.center))
        total += float(energy_density(c, r))
    return total
