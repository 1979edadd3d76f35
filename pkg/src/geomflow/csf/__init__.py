"""Curve-shortening flow on immersed plane curves with figure-eight diagnostics."""

from .analysis import (BowtieRecord, GrimReaperSeries, ThetaSeries,
                       affine_rescale_and_bowtie, axis_shrink_products, axis_shrink_products_fd,
                       comparison_solution, grim_reaper_check,
                       grim_reaper_profile_error, reaper_profile_defect,
                       resolvable_frames, theta_monotonicity_series)
from .curve import (EightDiagnostics, PlaneCurve, curvature_vector, curve_geometry,
                    curve_length, edge_lengths, enclosed_area, lobe_areas,
                    make_concinnous_eight, self_intersection, signed_curvature,
                    tangent_angles_unwrapped, turning_number)
from .evolve import CsfRun, StopRule, csf_evolve, resample_uniform

__all__ = [
    "BowtieRecord", "CsfRun", "EightDiagnostics", "GrimReaperSeries",
    "PlaneCurve", "StopRule", "ThetaSeries", "affine_rescale_and_bowtie",
    "axis_shrink_products", "axis_shrink_products_fd", "comparison_solution", "csf_evolve",
    "curvature_vector", "curve_geometry", "curve_length", "edge_lengths",
    "enclosed_area", "grim_reaper_check", "grim_reaper_profile_error",
    "lobe_areas", "make_concinnous_eight", "reaper_profile_defect",
    "resample_uniform", "resolvable_frames", "self_intersection", "signed_curvature",
    "tangent_angles_unwrapped", "theta_monotonicity_series", "turning_number",
]
