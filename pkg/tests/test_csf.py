"""Plane-curve geometry, figure-eight construction, and the analysis helpers.

Evolution trends at full depth live in the acceptance suite; the runs here
are short or synthetic.
"""

import math

import numpy as np
import pytest

from geomflow.errors import ConstructionError, ResolutionError, TopologyError
from geomflow.csf import (PlaneCurve, StopRule, affine_rescale_and_bowtie,
                          comparison_solution, csf_evolve, curve_geometry,
                          curve_length, grim_reaper_profile_error, lobe_areas,
                          make_concinnous_eight, resample_uniform,
                          self_intersection, signed_curvature,
                          tangent_angles_unwrapped, theta_monotonicity_series,
                          turning_number)


def unit_circle(n=256, r=1.0):
    th = (np.arange(n) + 0.5) * 2 * math.pi / n
    return PlaneCurve(np.column_stack([r * np.cos(th), r * np.sin(th)]))


class TestCurveBasics:
    def test_circle_geometry(self):
        d = curve_geometry(unit_circle(512))
        assert d.total_area == pytest.approx(math.pi, abs=1e-4)
        assert d.length == pytest.approx(2 * math.pi, abs=1e-4)
        k = signed_curvature(unit_circle(512).points)
        assert np.max(np.abs(np.abs(k) - 1.0)) < 1e-3

    def test_circle_has_no_double_point(self):
        with pytest.raises(TopologyError):
            self_intersection(unit_circle().points)
        d = curve_geometry(unit_circle())
        assert math.isnan(d.alpha_angle)
        with pytest.raises(TopologyError):
            curve_geometry(unit_circle(), expect_double_point=True)

    def test_validation(self):
        with pytest.raises(ValueError):
            PlaneCurve(np.zeros((10, 2)))
        pts = unit_circle().points.copy()
        pts[5] = pts[6]
        with pytest.raises(ValueError):
            PlaneCurve(pts)


class TestConcinnousEight:
    def test_curvature_vanishes_only_near_double_point(self):
        c = make_concinnous_eight(1.0, n_points=512)
        P = c.points
        k = np.abs(signed_curvature(P))
        _, _, pt = self_intersection(P)
        away = np.linalg.norm(P - pt, axis=1) > 0.05 * curve_length(P)
        assert np.min(k[away]) > 0.1  # bounded well away from zero

    def test_balanced_lobes(self):
        c = make_concinnous_eight(1.0, n_points=512)
        a1, a2 = lobe_areas(c.points)
        assert abs(a1 - a2) < 1e-10

    def test_rotation_number_zero(self):
        c = make_concinnous_eight(2.0, n_points=256)
        assert abs(turning_number(c.points)) < 1e-6 / (2 * math.pi)

    def test_double_point_at_origin_and_symmetry(self):
        c = make_concinnous_eight(1.0, n_points=512)
        _, _, pt = self_intersection(c.points)
        assert np.linalg.norm(pt) < 1e-12
        P = c.points
        for refl in (np.array([1.0, -1.0]), np.array([-1.0, 1.0])):
            Q = P * refl
            d2 = np.sum((Q[:, None, :] - P[None, :, :]) ** 2, axis=2)
            assert math.sqrt(np.max(np.min(d2, axis=1))) < 1e-12

    def test_geometry_conventions(self):
        d = curve_geometry(make_concinnous_eight(1.0, n_points=512))
        assert d.x_max == pytest.approx(math.sqrt(2.0), abs=1e-4)
        assert 0.0 < d.alpha_angle < math.pi / 2
        assert d.alpha_angle == pytest.approx(math.pi / 4, abs=1e-3)
        assert d.theta_min == pytest.approx(math.pi - d.theta_max, abs=1e-10)
        assert math.pi < d.theta_max - d.theta_min < 2 * math.pi
        assert d.x_star <= d.x_max

    def test_override_family(self):
        def squashed(t):
            den = 1.0 + math.sin(t) ** 2
            x = math.sqrt(2.0) * math.cos(t) / den
            return x, 0.8 * x * math.sin(t)

        c = make_concinnous_eight(1.0, family="parametric", override=squashed,
                                  n_points=256)
        a1, a2 = lobe_areas(c.points)
        assert abs(a1 - a2) < 1e-6

    def test_override_rejected_when_not_concinnous(self):
        # an embedded ellipse is not a figure-eight at all
        with pytest.raises(ConstructionError):
            make_concinnous_eight(1.0, family="parametric",
                                  override=lambda t: (2 * math.cos(t), math.sin(t)),
                                  n_points=256)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            make_concinnous_eight(-1.0)
        with pytest.raises(ValueError):
            make_concinnous_eight(1.0, n_points=64)
        with pytest.raises(ValueError):
            make_concinnous_eight(1.0, family="unknown")


class TestResample:
    def test_preserves_circle(self):
        P = unit_circle(128).points
        Q = resample_uniform(P)
        r = np.linalg.norm(Q, axis=1)
        assert np.max(np.abs(r - 1.0)) < 1e-5
        gaps = np.linalg.norm(np.diff(Q, axis=0, append=Q[:1]), axis=1)
        assert np.max(gaps) / np.min(gaps) < 1.001


class TestEvolve:
    def test_circle_area_law(self):
        run = csf_evolve(unit_circle(), StopRule(time=0.1, kmax_spacing=None),
                         record_dt=0.02)
        for t, d in zip(run.times, run.diagnostics):
            exact = math.pi * (1.0 - 2.0 * t)
            assert abs(d.total_area - exact) / exact < 0.01

    def test_length_decreases(self):
        run = csf_evolve(unit_circle(), StopRule(time=0.05, kmax_spacing=None),
                         record_dt=0.01)
        L = run.series("length")
        assert np.all(np.diff(L) < 0)

    def test_area_floor_stop(self):
        run = csf_evolve(unit_circle(), StopRule(time=1.0, kmax_spacing=None,
                                                 area_floor=math.pi / 2), record_dt=0.02)
        assert run.stop_reason == "area floor"
        assert run.diagnostics[-1].total_area <= math.pi / 2 + 0.05

    def test_eight_short_run_keeps_symmetry(self):
        eight = make_concinnous_eight(1.0, n_points=256)
        run = csf_evolve(eight, StopRule(time=0.02, kmax_spacing=None),
                         record_dt=0.005, expect_double_point=True)
        P = run.frames[-1].points
        for refl in (np.array([1.0, -1.0]), np.array([-1.0, 1.0])):
            Q = P * refl
            d2 = np.sum((Q[:, None, :] - P[None, :, :]) ** 2, axis=2)
            assert math.sqrt(np.max(np.min(d2, axis=1))) < 1e-6
        _, _, pt = self_intersection(P)
        assert np.linalg.norm(pt) < 1e-3

    def test_stop_rule_validation(self):
        with pytest.raises(ValueError):
            csf_evolve(unit_circle(), StopRule(time=None, kmax_spacing=None))

    def test_double_point_angle_decreases(self):
        eight = make_concinnous_eight(1.0, n_points=256)
        run = csf_evolve(eight, StopRule(time=0.05, kmax_spacing=None),
                         record_dt=0.01, expect_double_point=True)
        alphas = run.series("alpha_angle")
        assert np.all(np.diff(alphas) < 0)


class TestThetaSeries:
    def test_eight_run_verdict(self):
        eight = make_concinnous_eight(1.0, n_points=256)
        run = csf_evolve(eight, StopRule(time=0.03, kmax_spacing=None),
                         record_dt=0.005, expect_double_point=True)
        ts = theta_monotonicity_series(run.times, run.diagnostics)
        assert ts.verdict

    def test_symmetric_branch_convention(self):
        d = curve_geometry(make_concinnous_eight(1.0, n_points=512))
        assert d.theta_min == pytest.approx(-d.theta_max + math.pi, abs=1e-10)

    def test_perturbed_balanced_eight(self):
        # break the x-axis symmetry but keep the lobes balanced
        def bent(t):
            den = 1.0 + math.sin(t) ** 2
            x = math.sqrt(2.0) * math.cos(t) / den
            y = x * math.sin(t)
            return x, y + 0.1 * x * x

        curve = make_concinnous_eight(1.0, family="parametric", override=bent,
                                      n_points=256, check=False)
        a1, a2 = lobe_areas(curve.points)
        assert abs(a1 - a2) < 1e-6
        run = csf_evolve(curve, StopRule(time=0.03, kmax_spacing=None),
                         record_dt=0.005, expect_double_point=True)
        assert theta_monotonicity_series(run.times, run.diagnostics).verdict

    def test_rejects_non_eight(self):
        run = csf_evolve(unit_circle(), StopRule(time=0.02, kmax_spacing=None),
                         record_dt=0.005)
        with pytest.raises(TopologyError):
            theta_monotonicity_series(run.times, run.diagnostics)


class TestComparisonSolution:
    def test_initial_limit_at_origin(self):
        # away from the step, the profile starts at zero
        assert comparison_solution(0.0, 1e-12, 1.0) == pytest.approx(0.0, abs=1e-30)

    def test_center_value_formula(self):
        from geomflow.numerics import erfc
        M, t = 0.7, 0.3
        expected = (math.pi / 4.0) * erfc(math.sqrt(M) / (math.sqrt(2) * math.sqrt(t)))
        assert comparison_solution(0.0, t, M) == pytest.approx(expected, rel=1e-14)

    def test_range(self):
        for x in np.linspace(-3, 3, 31):
            for t in (0.01, 0.5, 5.0):
                v = comparison_solution(float(x), t, 1.0)
                assert 0.0 <= v <= math.pi / 4 + 1e-12

    def test_heat_equation_residual(self):
        # finite-difference residual of f_t = f_xx / 2 on a grid
        M, t, h, dt = 1.0, 0.4, 1e-3, 1e-6
        worst = 0.0
        for x in np.linspace(-2.0, 2.0, 21):
            ft = (comparison_solution(x, t + dt, M) - comparison_solution(x, t - dt, M)) / (2 * dt)
            fxx = (comparison_solution(x + h, t, M) - 2 * comparison_solution(x, t, M)
                   + comparison_solution(x - h, t, M)) / (h * h)
            worst = max(worst, abs(ft - 0.5 * fxx))
        assert worst < 1e-6

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            comparison_solution(0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            comparison_solution(0.0, 1.0, -1.0)


class TestGrimReaper:
    def test_exact_profile_scores_zero(self):
        from geomflow.csf import reaper_profile_defect
        phi = np.linspace(0.0, math.pi, 256)
        assert reaper_profile_defect(phi, np.sin(phi), n_phi=256) < 1e-14

    def test_initial_lemniscate_is_far_from_profile(self):
        c = make_concinnous_eight(1.0, n_points=512)
        err = grim_reaper_profile_error(c)
        assert 0.2 < err < 1.0

    def test_resolution_guard(self):
        c = make_concinnous_eight(1.0, n_points=128)
        with pytest.raises(ResolutionError):
            grim_reaper_profile_error(c, min_tip_points=10_000)


class TestBowtie:
    def test_exact_bowtie_polygon_scores_zero(self):
        # trace the four-corner bow-tie path as a polygon
        corners = [(-1.0, -1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        pts = []
        per_edge = 63  # odd, so the center crossing is not a shared vertex
        for (x0, y0), (x1, y1) in zip(corners[:-1], corners[1:]):
            for u in np.arange(per_edge) / per_edge:
                pts.append((x0 + u * (x1 - x0), y0 + u * (y1 - y0)))
        # nudge exact corner duplicates apart is not needed: consecutive points distinct
        tie = PlaneCurve(np.array(pts))
        rec = affine_rescale_and_bowtie(tie)
        assert rec.bowtie_distance < 1e-9

    def test_bernoulli_initial_ratio(self):
        c = make_concinnous_eight(1.0, n_points=512)
        rec = affine_rescale_and_bowtie(c)
        assert 0.0 < rec.ratio_xstar < 1.0
        assert rec.rescaled.points[:, 0].max() <= 1.0 + 1e-9
        assert rec.rescaled.points[:, 1].max() <= 1.0 + 1e-9
