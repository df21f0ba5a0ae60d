"""Spin transport, exact connections, and precession rates."""
import numpy as np
import pytest
from scipy.integrate import quad

from flatgrav.errors import NonPositiveRadius
from flatgrav.metric import christoffels_numeric
from flatgrav.spin import (
    RotatingFieldSpec,
    SpinState,
    circular_polar_orbit,
    de_sitter_rate,
    frame_dragging_rate,
    geodetic_rate,
    rotating_connections,
    spin_norm_invariant,
    spin_rhs_linearized,
    transport_rhs,
    transport_spin,
)

RNG = np.random.default_rng(7)


def generic_spec():
    return RotatingFieldSpec(r_o=0.01, inertia=2e-4,
                             omega=np.array([0.1, -0.05, 0.2]))


class TestExactConnections:
    def test_against_finite_difference_oracle(self):
        spec = generic_spec()
        for _ in range(5):
            x = RNG.normal(0.0, 1.0, 3) + np.array([2.0, 0.0, 0.0])
            exact = rotating_connections(spec, x)
            fd = christoffels_numeric(spec.potential(), x, h=1e-6)
            scale = max(np.max(np.abs(exact)), 1e-6)
            assert np.max(np.abs(exact - fd)) < 1e-7 * scale

    def test_gradients_match_finite_difference(self):
        spec = generic_spec()
        x = np.array([1.3, -0.7, 0.4])
        h = 1e-7
        jac = np.empty((3, 3))
        grad0 = np.empty(3)
        for k in range(3):
            dx = np.zeros(3)
            dx[k] = h
            jac[k] = (spec.Gi(x + dx) - spec.Gi(x - dx)) / (2 * h)
            grad0[k] = (spec.G0(x + dx) - spec.G0(x - dx)) / (2 * h)
        assert np.max(np.abs(jac - spec.grad_Gi(x))) < 1e-10
        assert np.max(np.abs(grad0 - spec.grad_G0(x))) < 1e-10

    def test_static_limit_reduces_to_central(self):
        spec = RotatingFieldSpec(r_o=0.01, inertia=0.0,
                                 omega=np.zeros(3))
        x = np.array([3.0, 0.0, 0.0])
        gamma = rotating_connections(spec, x)
        # no time-space mixing without rotation
        assert np.max(np.abs(gamma[1:, 1:, 0])) < 1e-16


class TestDragAndGeodeticRates:
    def test_polar_rate(self):
        r, inertia, w = 1.0, 1e-2, 1e-7
        spec = RotatingFieldSpec(r_o=1e-8, inertia=inertia,
                                 omega=np.array([0.0, 0.0, w]))
        rate = frame_dragging_rate(spec, np.array([0.0, 0.0, r]))
        assert rate[2] == pytest.approx(2.0 * inertia * w / r**3, rel=1e-14)
        assert abs(rate[0]) == 0.0 and abs(rate[1]) == 0.0

    def test_equatorial_rate(self):
        r, inertia, w = 2.0, 1e-2, 1e-7
        spec = RotatingFieldSpec(r_o=1e-8, inertia=inertia,
                                 omega=np.array([0.0, 0.0, w]))
        rate = frame_dragging_rate(spec, np.array([r, 0.0, 0.0]))
        assert rate[2] == pytest.approx(-inertia * w / r**3, rel=1e-14)

    def test_geodetic_is_third_of_de_sitter(self):
        # point-spin rate v/2 x grad vs the 3/2 textbook factor
        spec = RotatingFieldSpec(r_o=1e-8, inertia=0.0, omega=np.zeros(3))
        x = np.array([1.0, 0.0, 0.0])
        v = np.array([0.0, 1e-4, 0.0])
        ours = geodetic_rate(spec, x, v)
        textbook = de_sitter_rate(spec.r_o, x, v)
        assert np.allclose(3.0 * ours, textbook, rtol=1e-12)

    def test_center_guard(self):
        spec = generic_spec()
        with pytest.raises(NonPositiveRadius):
            frame_dragging_rate(spec, np.zeros(3))
        with pytest.raises(NonPositiveRadius):
            de_sitter_rate(1.0, np.zeros(3), np.ones(3))


class TestTransport:
    def test_central_field_transport_identity(self):
        # without rotation: dS_i/dt = -S_j v^j d_i ln(1/sqrt(g00))
        spec = RotatingFieldSpec(r_o=1e-5, inertia=0.0, omega=np.zeros(3))
        x = np.array([2.0, 1.0, -0.5])
        v = np.array([1e-4, -2e-4, 5e-5])
        s = np.array([0.3, -0.7, 1.1])
        rhs = transport_rhs(spec, x, v, s)
        r = np.linalg.norm(x)
        # d_i ln sqrt(g00) = -r_o x_i / (r^3 (1 + r_o/r))
        dlog = -spec.r_o * x / (r**3 * (1.0 + spec.r_o / r))
        expected = np.dot(v, s) * dlog
        assert np.allclose(rhs, expected, atol=1e-16)

    def test_norm_invariant_conserved(self):
        r, r_o = 1.0, 1e-8
        spec = RotatingFieldSpec(r_o=r_o, inertia=1e-2,
                                 omega=np.array([0.0, 0.0, 1e-7]))
        pos, vel, _, period = circular_polar_orbit(r, r_o)
        s0 = np.array([0.6, -0.2, 0.5])
        sol = transport_spin(spec, pos, vel, s0, (0.0, period))
        n0 = spin_norm_invariant(spec, pos(0.0), vel(0.0), s0)
        nT = spin_norm_invariant(spec, pos(period), vel(period), sol(period))
        assert nT == pytest.approx(n0, rel=1e-12)

    def test_linearized_matches_exact_short_time(self):
        r, r_o = 1.0, 1e-8
        spec = RotatingFieldSpec(r_o=r_o, inertia=1e-2,
                                 omega=np.array([0.0, 0.0, 1e-7]))
        pos, vel, _, period = circular_polar_orbit(r, r_o)
        s0 = np.array([1.0, 0.0, 0.0])
        t_short = period / 50.0
        sol = transport_spin(spec, pos, vel, s0, (0.0, t_short))
        exact_delta = sol(t_short) - s0
        lin_delta = np.array([
            quad(lambda t: spin_rhs_linearized(spec, pos(t), vel(t), s0)[i],
                 0.0, t_short, epsrel=1e-10)[0]
            for i in range(3)
        ])
        assert np.linalg.norm(exact_delta - lin_delta) < 0.02 * \
            np.linalg.norm(lin_delta)

    def test_time_component_binding(self):
        state = SpinState(t=0.0, s=np.array([1.0, 2.0, 3.0]))
        v = np.array([0.1, 0.0, -0.2])
        assert state.s_time(v) == pytest.approx(-(0.1 - 0.6), rel=1e-15)


class TestPolarOrbit:
    def test_kinematics(self):
        pos, vel, nu, period = circular_polar_orbit(2.0, 8e-8)
        assert nu == pytest.approx(np.sqrt(8e-8 / 8.0), rel=1e-15)
        assert period == pytest.approx(2 * np.pi / nu, rel=1e-15)
        t = 123.4
        h = 1e-3
        fd = (pos(t + h) - pos(t - h)) / (2 * h)
        assert np.allclose(fd, vel(t), atol=1e-9)

    def test_radius_guard(self):
        with pytest.raises(NonPositiveRadius):
            circular_polar_orbit(0.0, 1.0)
