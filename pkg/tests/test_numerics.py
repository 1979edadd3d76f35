"""Tests for the shared numerical kernels."""

import math

import numpy as np
import pytest

from geomflow.errors import BracketError
from geomflow.numerics import (MonotoneCubic, PeriodicCubicSpline, StepControl,
                               adaptive_simpson, elliptic_K, erfc, find_root,
                               integrate_ode, integrate_singular,
                               periodic_derivative, periodic_grid,
                               periodic_primitive, trig_interp)


class TestIntegrateOde:
    def test_zero_field_constant(self):
        tr = integrate_ode(lambda t, y: np.zeros(3), [1.0, 2.0, 3.0], (0.0, 1.0))
        assert np.allclose(tr.y_end, [1.0, 2.0, 3.0], atol=0.0)

    def test_exponential(self):
        tr = integrate_ode(lambda t, y: y, [1.0], (0.0, 1.0),
                           StepControl(abs_tol=1e-11, rel_tol=1e-11))
        assert abs(tr.y_end[0] - math.e) < 1e-9

    def test_harmonic_returns_home(self):
        # y'' = -y as a 2-system: closed-form circular solution returns to the start
        tr = integrate_ode(lambda t, y: np.array([y[1], -y[0]]), [1.0, 0.0],
                           (0.0, 2.0 * math.pi), StepControl(abs_tol=1e-12, rel_tol=1e-12))
        assert np.max(np.abs(tr.y_end - np.array([1.0, 0.0]))) < 1e-8

    def test_tolerance_self_consistency(self):
        field = lambda t, y: np.array([math.sin(t) * y[0] - 0.3 * y[0] ** 2 + 0.1])
        coarse = integrate_ode(field, [0.7], (0.0, 4.0), StepControl(abs_tol=1e-8, rel_tol=1e-8))
        fine = integrate_ode(field, [0.7], (0.0, 4.0), StepControl(abs_tol=5e-9, rel_tol=5e-9))
        # halving tolerances moves the terminal state by less than the coarse budget
        assert abs(coarse.y_end[0] - fine.y_end[0]) < 1e-7

    def test_event_detection(self):
        tr = integrate_ode(lambda t, y: np.array([y[1], -y[0]]), [1.0, 0.0], (0.0, 10.0),
                           StepControl(abs_tol=1e-12, rel_tol=1e-12),
                           event=lambda t, y: y[0], event_direction=-1)
        assert tr.event_time == pytest.approx(math.pi / 2, abs=1e-9)

    def test_dense_output_sampling(self):
        tr = integrate_ode(lambda t, y: np.array([math.cos(t)]), [0.0], (0.0, 3.0),
                           StepControl(abs_tol=1e-11, rel_tol=1e-11), dense=True)
        ts = np.linspace(0.0, 3.0, 57)
        assert np.max(np.abs(tr.sample(ts)[:, 0] - np.sin(ts))) < 1e-6

    def test_nonfinite_field_raises(self):
        from geomflow.errors import IntegrationError
        with pytest.raises(IntegrationError):
            integrate_ode(lambda t, y: np.array([float("nan")]), [1.0], (0.0, 1.0))

    def test_step_budget(self):
        from geomflow.errors import IntegrationError
        with pytest.raises(IntegrationError):
            integrate_ode(lambda t, y: y, [1.0], (0.0, 1.0), StepControl(max_steps=3))

    def test_step_control_validation(self):
        with pytest.raises(ValueError):
            StepControl(abs_tol=0.0)
        with pytest.raises(ValueError):
            StepControl(max_steps=0)


class TestEllipticK:
    def test_m_zero(self):
        assert elliptic_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_against_quadrature_oracle(self):
        m = 0.5
        oracle = adaptive_simpson(lambda t: 1.0 / math.sqrt(1.0 - m * math.sin(t) ** 2),
                                  0.0, math.pi / 2, 1e-13)
        assert elliptic_K(m) == pytest.approx(oracle, abs=1e-12)

    def test_period_table_row_for_sol(self):
        # 4/sqrt(1+beta^2) * K((1-beta^2)/(1+beta^2)) at beta = 0.999
        beta = 0.999
        m = (1.0 - beta**2) / (1.0 + beta**2)
        val = 4.0 / math.sqrt(1.0 + beta**2) * elliptic_K(m)
        assert val == pytest.approx(4.44622, abs=5e-3)

    def test_monotone_and_bounded_below(self):
        ms = np.linspace(0.0, 0.99, 40)
        vals = [elliptic_K(m) for m in ms]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert vals[0] == pytest.approx(math.pi / 2)
        assert all(v >= math.pi / 2 for v in vals)

    def test_domain_errors(self):
        for bad in (-0.1, 1.0, 1.5):
            with pytest.raises(ValueError):
                elliptic_K(bad)


class TestErfc:
    def test_zero(self):
        assert erfc(0.0) == 1.0

    def test_tail(self):
        v = erfc(10.0)
        assert 0.0 < v < 1e-40

    def test_against_quadrature_oracle(self):
        # (2/sqrt(pi)) * integral_1^inf exp(-t^2) dt, tail truncated far out
        oracle = (2.0 / math.sqrt(math.pi)) * adaptive_simpson(
            lambda t: math.exp(-t * t), 1.0, 14.0, 1e-15)
        assert erfc(1.0) == pytest.approx(oracle, rel=1e-12)

    def test_reflection(self):
        for x in (0.2, 0.9, 1.7, 3.0):
            assert erfc(-x) == pytest.approx(2.0 - erfc(x), abs=1e-15)

    def test_matches_stdlib(self):
        for x in np.linspace(-4.0, 6.0, 41):
            assert erfc(float(x)) == pytest.approx(math.erfc(x), rel=1e-12, abs=1e-300)


class TestFindRoot:
    def test_linear(self):
        assert find_root(lambda x: x - 1.0, (0.0, 2.0), 1e-12) == pytest.approx(1.0, abs=1e-12)

    def test_endpoint_equation_degenerate_case(self):
        # alpha = 1, beta = 1: e^{2t} + e^{-2t} = 2 touches zero exactly at t = 0
        # (degenerate level set: the root is a tangency at the bracket edge)
        f = lambda t: math.exp(2 * t) + math.exp(-2 * t) - 2.0
        assert abs(find_root(f, (0.0, 2.0), 1e-12)) < 1e-6

    def test_endpoint_equation_against_closed_form(self):
        # alpha = 1/2, beta = 0.7: (1/2)e^{2t} + e^{-t} = (3/2)/beta^2.
        # Closed form of the root via the trigonometric cubic resolution:
        # t0 = log(2 cos(arccos(-beta^3)/3) / beta).
        beta = 0.7
        f = lambda t: 0.5 * math.exp(2 * t) + math.exp(-t) - 1.5 / beta**2
        t0_closed = math.log(2.0 * math.cos(math.acos(-beta**3) / 3.0) / beta)
        root = find_root(f, (0.0, 5.0), 1e-12)
        assert root == pytest.approx(t0_closed, abs=1e-9)

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            find_root(lambda x: x * x + 1.0, (-1.0, 1.0), 1e-10)


def _period_integrand(alpha, beta):
    def radicand(t):
        return 1.0 - beta**2 / (alpha + 1.0) * (alpha * math.exp(2 * t) + math.exp(-2 * alpha * t))
    def f(t):
        return 2.0 / math.sqrt(radicand(t))
    return radicand, f


class TestIntegrateSingular:
    def test_arcsine(self):
        v = integrate_singular(lambda t: 1.0 / math.sqrt(1.0 - t * t), -1.0, 1.0, 1e-12)
        assert v == pytest.approx(math.pi, abs=1e-10)

    def test_period_integral_matches_elliptic_formula(self):
        alpha, beta = 1.0, 0.5
        radicand, f = _period_integrand(alpha, beta)
        t0 = find_root(radicand, (0.0, 3.0), 1e-14)
        t1 = find_root(lambda t: radicand(-t), (0.0, 3.0), 1e-14)
        val = integrate_singular(f, -t1, t0, 1e-10)
        exact = 4.0 / math.sqrt(1.0 + beta**2) * elliptic_K((1 - beta**2) / (1 + beta**2))
        assert val == pytest.approx(exact, abs=1e-8)

    def test_period_integral_paper_table_row(self):
        alpha, beta = 0.5, 0.999
        radicand, f = _period_integrand(alpha, beta)
        t0 = find_root(radicand, (0.0, 3.0), 1e-14)
        t1 = find_root(lambda t: radicand(-t), (0.0, 3.0), 1e-14)
        val = integrate_singular(f, -t1, t0, 1e-10)
        assert val == pytest.approx(6.28842, abs=5e-3)

    def test_resolution_doubling_invariance(self):
        f = lambda t: (2.0 + math.cos(3 * t)) / math.sqrt((t + 1.0) * (1.0 - t))
        v1 = integrate_singular(f, -1.0, 1.0, 1e-8)
        v2 = integrate_singular(f, -1.0, 1.0, 1e-12)
        assert abs(v1 - v2) < 1e-8


class TestPeriodicDerivative:
    def test_first_derivative_of_sine(self):
        s = periodic_grid(64)
        err = np.max(np.abs(periodic_derivative(np.sin(s), 1) - np.cos(s)))
        assert err < 1e-10

    def test_constant_annihilated(self):
        c = np.full(32, 2.7)
        for order in (1, 2, 3):
            assert np.max(np.abs(periodic_derivative(c, order))) < 1e-12

    def test_third_derivative_of_sine(self):
        s = periodic_grid(64)
        err = np.max(np.abs(periodic_derivative(np.sin(s), 3) + np.cos(s)))
        assert err < 1e-8

    def test_linearity(self):
        rng = np.random.default_rng(7)
        u, v = rng.standard_normal(64), rng.standard_normal(64)
        lhs = periodic_derivative(2.0 * u + 3.0 * v, 1)
        rhs = 2.0 * periodic_derivative(u, 1) + 3.0 * periodic_derivative(v, 1)
        assert np.allclose(lhs, rhs, atol=1e-10)

    def test_fd4_fallback(self):
        s = periodic_grid(128)
        for order, exact in ((1, np.cos(s)), (2, -np.sin(s)), (3, -np.cos(s))):
            err = np.max(np.abs(periodic_derivative(np.sin(s), order, method="fd4") - exact))
            assert err < 1e-5

    def test_unsupported_order(self):
        with pytest.raises(ValueError):
            periodic_derivative(np.zeros(16), 4)
        with pytest.raises(ValueError):
            periodic_derivative(np.zeros(4), 1)


class TestPeriodicHelpers:
    def test_primitive_splits_mean_and_oscillation(self):
        s = periodic_grid(64)
        mean, osc = periodic_primitive(2.0 + np.cos(s))
        assert mean == pytest.approx(2.0, abs=1e-14)
        assert np.max(np.abs(mean * s + osc - (2.0 * s + np.sin(s)))) < 1e-12

    def test_trig_interp_reproduces_band_limited(self):
        s = periodic_grid(32)
        data = np.sin(2 * s) + 0.5 * np.cos(5 * s)
        pts = np.array([0.0, 0.13, 2.9, 6.1])
        exact = np.sin(2 * pts) + 0.5 * np.cos(5 * pts)
        assert np.max(np.abs(trig_interp(data, pts) - exact)) < 1e-13


class TestInterpolation:
    def test_periodic_spline_accuracy(self):
        s = periodic_grid(64)
        sp = PeriodicCubicSpline(np.sin(s), 2 * math.pi)
        xs = np.linspace(0.0, 2 * math.pi, 500)
        assert np.max(np.abs(sp(xs) - np.sin(xs))) < 1e-6

    def test_monotone_cubic_preserves_monotonicity(self):
        x = np.linspace(0.0, 1.0, 12)
        y = np.sqrt(x)  # steep start stresses the limiter
        mc = MonotoneCubic(x, y)
        xe = np.linspace(0.0, 1.0, 2000)
        vals = mc(xe)
        assert np.all(np.diff(vals) >= -1e-12)

    def test_monotone_cubic_range_guard(self):
        mc = MonotoneCubic(np.linspace(0, 1, 8), np.linspace(0, 1, 8))
        with pytest.raises(ValueError):
            mc(1.5)
