"""Torsion field core: right-hand side, invariants, stationary profiles,
linearized solver, transformation chain, Frenet reconstruction."""

import math

import numpy as np
import pytest

from geomflow.errors import ConstructionError, PositivityError
from geomflow.numerics import StepControl, integrate_ode, periodic_derivative, periodic_grid
from geomflow.torsionflow import (CurvatureProfile, FrenetState, TorsionField,
                                  UNIT_CURVATURE, cdf_transform_roundtrip,
                                  frenet_reconstruct, l2_norm, linearized_solution,
                                  stationary_torsion, stationary_torsion_general,
                                  tau_one, torsion_invariants, torsion_rhs)


class TestTorsionField:
    def test_validation(self):
        with pytest.raises(ValueError):
            TorsionField(np.ones(16))  # too small
        with pytest.raises(ValueError):
            TorsionField(np.ones(33))  # odd
        with pytest.raises(PositivityError):
            TorsionField(np.zeros(64))

    def test_curvature_profile_validation(self):
        with pytest.raises(ValueError):
            CurvatureProfile()
        with pytest.raises(ValueError):
            CurvatureProfile(constant=-1.0)
        prof = CurvatureProfile(samples=2.0 + np.cos(periodic_grid(64)))
        assert prof.on_mesh(64).size == 64
        with pytest.raises(ValueError):
            prof.on_mesh(128)


class TestTorsionRhs:
    def test_constant_is_fixed_point(self):
        tau = TorsionField(np.full(64, 3.7))
        assert np.max(np.abs(torsion_rhs(tau))) == 0.0

    def test_tau_one_is_stationary(self):
        r = torsion_rhs(tau_one(256))
        assert np.max(np.abs(r)) < 1e-6

    def test_against_finite_difference_oracle(self):
        s = periodic_grid(256)
        tau = TorsionField(10.0 + np.sin(s) / 2.0)
        spec = torsion_rhs(tau)
        u = tau.samples ** -0.5
        fd = (periodic_derivative(u, 1, method="fd4")
              + periodic_derivative(u, 3, method="fd4")
              - periodic_derivative(tau.samples ** 1.5, 1, method="fd4"))
        assert np.max(np.abs(spec - fd)) < 1e-4

    def test_general_kappa_reduces_to_constant_form(self):
        s = periodic_grid(128)
        tau = TorsionField(2.0 + np.sin(s) / 3.0)
        r1 = torsion_rhs(tau, UNIT_CURVATURE)
        r2 = torsion_rhs(tau, CurvatureProfile(samples=np.ones(128)))
        assert np.allclose(r1, r2, atol=1e-14)


class TestInvariants:
    def test_unit_field(self):
        inv = torsion_invariants(TorsionField(np.ones(64)))
        assert inv[0] == pytest.approx(2 * math.pi, abs=1e-12)
        assert inv[1] == pytest.approx(2 * math.pi, abs=1e-12)

    def test_l2_norm_of_sine(self):
        s = periodic_grid(64)
        assert l2_norm(np.sin(s)) == pytest.approx(math.sqrt(math.pi), abs=1e-12)


class TestStationary:
    def test_degenerate_constant(self):
        tau = stationary_torsion(2.0, n=64)
        assert np.allclose(tau.samples, 1.0, atol=1e-15)

    def test_reference_profile(self):
        s = periodic_grid(128)
        tau = stationary_torsion(3.0, 0.0, +1, n=128)
        expected = 2.0 / (3.0 + math.sqrt(5.0) * np.sin(2 * s))
        assert np.allclose(tau.samples, expected, atol=1e-14)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            stationary_torsion(1.5)

    def test_general_quadrature_path_matches_closed_form(self):
        general = stationary_torsion_general(0.0, 3.0, n=256)
        closed = stationary_torsion(3.0, k_shift=-math.pi / 4, sign=+1, n=256)
        assert np.max(np.abs(general.samples - closed.samples)) < 1e-6

    def test_general_path_rejects_nonclosing_orbit(self):
        with pytest.raises(ConstructionError):
            stationary_torsion_general(0.05, 3.0)

    def test_general_path_rejects_empty_orbit(self):
        with pytest.raises(ConstructionError):
            stationary_torsion_general(0.0, 1.0)


class TestLinearized:
    def test_constant_unchanged(self):
        w0 = np.full(64, 1.3)
        assert np.allclose(linearized_solution(w0, 7.7), w0, atol=1e-12)

    def test_norm_preservation(self):
        rng = np.random.default_rng(11)
        w0 = rng.standard_normal(128)
        for t in (0.3, 1.0, 10.0):
            wt = linearized_solution(w0, t)
            assert l2_norm(wt) == pytest.approx(l2_norm(w0), abs=1e-12)

    def test_single_mode_phase(self):
        # the n = +-1 modes pick up exp(+-i(1/2 - 2)t), so sin(s) travels
        # rigidly: w(s, t) = sin(s - 3t/2)
        s = periodic_grid(64)
        t = 0.37
        wt = linearized_solution(np.sin(s), t)
        assert np.allclose(wt, np.sin(s - 1.5 * t), atol=1e-12)

    def test_against_method_of_lines(self):
        n = 64
        s = periodic_grid(n)
        w0 = np.sin(s) + 0.3 * np.cos(2 * s)
        t_end = 0.5

        def rhs(t, w):
            return -2.0 * periodic_derivative(w, 1) - 0.5 * periodic_derivative(w, 3)

        cap = 2.8 / (0.5 * (n // 2) ** 3 + 2.0 * (n // 2))
        ctrl = StepControl(initial_step=cap, abs_tol=1e-11, rel_tol=1e-11,
                           max_steps=10_000_000, max_step=cap)
        traj = integrate_ode(rhs, w0, (0.0, t_end), ctrl)
        exact = linearized_solution(w0, t_end)
        assert np.max(np.abs(traj.y_end - exact)) < 1e-6

    def test_translation_equivariance(self):
        rng = np.random.default_rng(5)
        w0 = rng.standard_normal(64)
        shift = 7
        lhs = linearized_solution(np.roll(w0, shift), 0.9)
        rhs = np.roll(linearized_solution(w0, 0.9), shift)
        assert np.allclose(lhs, rhs, atol=1e-12)


class TestTransformChain:
    def test_unit_field_is_fixed(self):
        rec, err = cdf_transform_roundtrip(TorsionField(np.ones(64)))
        assert err < 1e-14
        assert np.allclose(rec.v, 1.0)
        assert rec.M == pytest.approx(2 * math.pi, abs=1e-14)
        assert np.allclose(rec.z, 1.0, atol=1e-13)
        assert np.allclose(rec.u, 0.0, atol=1e-13)

    def test_tau_one_roundtrip(self):
        rec, err = cdf_transform_roundtrip(tau_one(512))
        assert err < 1e-8
        assert rec.u_periodicity_defect < 1e-8

    def test_sine_data_roundtrip_and_periodicity(self):
        s = periodic_grid(512)
        rec, err = cdf_transform_roundtrip(TorsionField(10.0 + np.sin(s) / 2.0))
        assert err < 1e-8
        assert rec.u_periodicity_defect < 1e-8

    def test_w_strictly_increasing_and_endpoint(self):
        rec, _ = cdf_transform_roundtrip(tau_one(256))
        assert np.all(np.diff(rec.w) > 0)
        assert rec.w[-1] == pytest.approx(rec.M, abs=1e-12)
        # q = sinh(z/2) pointwise
        assert np.allclose(rec.q, np.sinh(rec.z / 2.0), atol=1e-14)


class TestFrenet:
    def test_helix_oracle(self):
        # kappa = tau = 1: closed-form circular helix from the standard frame
        curve = frenet_reconstruct(UNIT_CURVATURE, TorsionField(np.ones(64)),
                                   s_span=(0.0, 4 * math.pi), n_samples=257)
        om = math.sqrt(2.0)
        sg = curve.s
        exact = 0.5 * np.column_stack([
            sg + np.sin(om * sg) / om,
            math.sqrt(2.0) * (1.0 - np.cos(om * sg)) / om,
            -sg + np.sin(om * sg) / om,
        ])
        assert np.max(np.abs(curve.positions - exact)) < 1e-6
        assert curve.frame_drift < 1e-8

    def test_tau_one_curve_bounded(self):
        curve = frenet_reconstruct(UNIT_CURVATURE, tau_one(128),
                                   s_span=(0.0, 8 * math.pi), n_samples=257)
        assert np.max(np.linalg.norm(curve.positions, axis=1)) < 20.0
        assert curve.frame_drift < 1e-8

    def test_frame_validation(self):
        with pytest.raises(ValueError):
            FrenetState(np.zeros(3), np.array([1.0, 0, 0]), np.array([1.0, 0, 0]),
                        np.array([0.0, 0, 1]))
        # left-handed frame rejected
        with pytest.raises(ValueError):
            FrenetState(np.zeros(3), np.array([1.0, 0, 0]), np.array([0.0, 1, 0]),
                        np.array([0.0, 0, -1.0]))
