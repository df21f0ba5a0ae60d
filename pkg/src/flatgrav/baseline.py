"""Schwarzschild and Newtonian baselines for model comparison.

These closed forms and quadratures use the standard vacuum solution
(g00 = 1 - 2*r_o/r, curved spatial part) so the comparison harness can show
weak-field agreement and strong-field divergence against the flat-space
model.  Geometric units (c = 1).
"""
from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from .errors import DenominatorVanishes, TurningPointNotFound, UnsupportedQuantity
from .presets import Scenario

__all__ = [
    "schwarzschild_baseline", "newtonian_baseline",
    "schwarzschild_precession_quadrature",
]


def schwarzschild_precession(r_o: float, a: float, ecc: float) -> float:
    """Weak-field perihelion advance 6*pi*r_o/(a*(1-ecc^2)) per orbit."""
    return 6.0 * np.pi * r_o / (a * (1.0 - ecc**2))


def schwarzschild_deflection(r_o: float, R_s: float) -> float:
    """Grazing light deflection -4*r_o/R_s (radians, toward the body)."""
    return -4.0 * r_o / R_s


def schwarzschild_delay(r_o: float, r_es: float, r_ms: float,
                        R_s: float) -> float:
    """Round-trip radar excess delay 4*r_o*ln(4*r_ms*r_es/R_s^2) (meters)."""
    return 4.0 * r_o * np.log(4.0 * r_ms * r_es / R_s**2)


def schwarzschild_baseline(quantity: str, scenario: Scenario) -> float:
    """Evaluate a classic observable with the standard vacuum closed forms.

    ``quantity`` is one of precession | deflection | delay; parameters come
    from ``scenario.params``.  All quantities vanish at r_o = 0.
    """
    p = scenario.params
    if quantity == "precession":
        return schwarzschild_precession(p["r_o"], p["a"], p["ecc"])
    if quantity == "deflection":
        return schwarzschild_deflection(p["r_o"], p["R_s"])
    if quantity == "delay":
        return schwarzschild_delay(p["r_o"], p["r_es"], p["r_ms"], p["R_s"])
    raise UnsupportedQuantity(
        f"quantity must be precession|deflection|delay, got {quantity!r}"
    )


def newtonian_baseline(quantity: str, scenario: Scenario) -> float:
    """Newtonian values of the classic observables: all zero."""
    if quantity not in ("precession", "deflection", "delay"):
        raise UnsupportedQuantity(
            f"quantity must be precession|deflection|delay, got {quantity!r}"
        )
    return 0.0


def schwarzschild_precession_quadrature(r_o: float, r_min: float,
                                        r_max: float) -> float:
    """Exact vacuum-orbit perihelion advance between given turning radii.

    The radial equation u'^2 = A + B*u - u^2 + 2*r_o*u^3 has the two given
    turning points as roots; the third follows from the cubic's root sum
    1/(2*r_o).  The same cosine substitution as the flat-space quadrature
    removes the endpoint singularities.
    """
    if not 0.0 < r_min < r_max:
        raise TurningPointNotFound(f"need 0 < r_min < r_max, got {r_min}, {r_max}")
    if r_o <= 0.0:
        return 0.0
    u1, u2 = 1.0 / r_min, 1.0 / r_max
    u3 = 1.0 / (2.0 * r_o) - u1 - u2
    if u3 <= u1:
        raise DenominatorVanishes("third root inside orbit: field too strong")
    mid, half = 0.5 * (u1 + u2), 0.5 * (u1 - u2)

    def integrand(theta):
        u = mid - half * np.cos(theta)
        return 1.0 / np.sqrt(2.0 * r_o * (u3 - u))

    val, _ = quad(integrand, 0.0, np.pi, epsrel=1e-12, epsabs=0.0, limit=200)
    return 2.0 * val - 2.0 * np.pi
