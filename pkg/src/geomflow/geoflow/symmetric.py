"""Symmetric flowlines, their endpoint curves, and the derivative scans.

The canonical parametrization starts at the flat point p0 = (x0, sqrt(1-x0^2), 0)
of a loop level set, with x0 in the open interval (sqrt(a/(1+a)), 1), and flows
*backwards* along the structure field:

    (x', y', z') = (-xz, +a yz, x^2 - a y^2),

carrying along the endpoint coordinates of the associated symmetric geodesic,

    a' = 2x + az,    b' = 2y - a b z.

The first return of z to zero happens at the half period rho = P/2; the point
(a(rho), b(rho), 0) traces the boundary curve of perfect symmetric endpoints
as x0 varies. The variational system appends the derivatives of all five
quantities with respect to x0 ("barred" variables).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DetectionError
from ..numerics import StepControl, Trajectory, integrate_ode
from .group import check_alpha
from .periods import period
from .structure import admissible_x0_interval, beta_from_x0

_TIGHT = StepControl(initial_step=1e-3, abs_tol=1e-12, rel_tol=1e-12)


def _sym_rhs(alpha: float, with_quadrature: bool = False):
    def rhs(t, u):
        x, y, z, a, b = u[:5]
        out = [
            -x * z,
            alpha * y * z,
            x * x - alpha * y * y,
            2.0 * x + a * z,
            2.0 * y - alpha * b * z,
        ]
        if with_quadrature:
            out.append(y * y)
        return np.array(out)
    return rhs


def _var_rhs(alpha: float):
    def rhs(t, u):
        x, y, z, a, b, xb, yb, zb, ab, bb = u
        return np.array([
            -x * z,
            alpha * y * z,
            x * x - alpha * y * y,
            2.0 * x + a * z,
            2.0 * y - alpha * b * z,
            -x * zb - z * xb,
            alpha * (y * zb + z * yb),
            2.0 * x * xb - 2.0 * alpha * y * yb,
            2.0 * xb + a * zb + z * ab,
            2.0 * yb - alpha * (b * zb + z * bb),
        ])
    return rhs


@dataclass
class SymmetricRun:
    """Solution of a (possibly augmented) symmetric flowline system on [0, rho]."""

    alpha: float
    x0: float
    beta: float
    rho: float
    predicted_rho: float
    trajectory: Trajectory

    def sample(self, t):
        return self.trajectory.sample(t)

    @property
    def end_state(self) -> np.ndarray:
        return self.trajectory.event_state


def _predicted_half_period(x0: float, alpha: float) -> tuple[float, float]:
    beta = beta_from_x0(x0, alpha)
    return beta, 0.5 * period(alpha, beta).period


def _integrate_to_return(rhs, y0, alpha, x0, ctrl, rho_tol=1e-4):
    beta, predicted = _predicted_half_period(x0, alpha)
    traj = integrate_ode(rhs, y0, (0.0, 10.0 * predicted), ctrl, dense=True,
                         event=lambda t, u: u[2], event_direction=-1,
                         event_min_time=0.05 * predicted)
    if traj.event_time is None:
        raise DetectionError(f"no z-return within 10x the predicted half period "
                             f"(x0={x0}, alpha={alpha})")
    rho = traj.event_time
    if abs(rho - predicted) > rho_tol * max(1.0, predicted):
        raise DetectionError(
            f"detected half period {rho} disagrees with P(beta)/2 = {predicted}")
    return SymmetricRun(alpha=alpha, x0=x0, beta=beta, rho=rho,
                        predicted_rho=predicted, trajectory=traj)


def symmetric_system(x0: float, alpha: float, ctrl: StepControl | None = None,
                     with_quadrature: bool = False) -> SymmetricRun:
    """Integrate the 5-system from (x0, sqrt(1-x0^2), 0, 0, 0) to the z-return.

    ``with_quadrature`` appends a running integral of y^2 as a sixth state,
    used to verify the closed-form b(t) = (2/y) * integral of y^2.
    """
    check_alpha(alpha, 0.0, 1.0, open_lo=True)
    lo, hi = admissible_x0_interval(alpha)
    if not lo < x0 < hi:
        raise ValueError(f"x0={x0} outside the admissible interval ({lo:.6f}, {hi})")
    ctrl = ctrl or _TIGHT
    y0 = [x0, math.sqrt(1.0 - x0 * x0), 0.0, 0.0, 0.0]
    if with_quadrature:
        y0.append(0.0)
    return _integrate_to_return(_sym_rhs(alpha, with_quadrature), np.array(y0),
                                alpha, x0, ctrl)


def variational_system(x0: float, alpha: float,
                       ctrl: StepControl | None = None) -> SymmetricRun:
    """The 10-system with x0-derivatives; bars start at d/dx0 of the initial point."""
    check_alpha(alpha, 0.0, 1.0, open_lo=True)
    lo, hi = admissible_x0_interval(alpha)
    if not lo < x0 < hi:
        raise ValueError(f"x0={x0} outside the admissible interval ({lo:.6f}, {hi})")
    ctrl = ctrl or _TIGHT
    y0 = np.array([
        x0, math.sqrt(1.0 - x0 * x0), 0.0, 0.0, 0.0,
        1.0, -x0 / math.sqrt(1.0 - x0 * x0), 0.0, 0.0, 0.0,
    ])
    return _integrate_to_return(_var_rhs(alpha), y0, alpha, x0, ctrl)


def variational_residuals(run: SymmetricRun, n_samples: int = 1200) -> dict:
    """Max residuals of the three algebraic identities along a variational run."""
    ts = np.linspace(0.0, run.rho, n_samples)
    u = run.sample(ts)
    x, y, z, a, b = (u[:, i] for i in range(5))
    xb, yb, zb, ab, bb = (u[:, i] for i in range(5, 10))
    return {
        "sphere_orthogonality": float(np.max(np.abs(x * xb + y * yb + z * zb))),
        "endpoint_identity": float(np.max(np.abs(a * x - run.alpha * b * y - 2.0 * z))),
        "bar_orthogonality": float(np.max(np.abs(x * ab + y * bb))),
    }


@dataclass
class BoxScanRecord:
    alpha: float
    x0: float
    admissible: bool
    rho: float = math.nan
    min_a_prime: float = math.nan
    min_b_prime: float = math.nan
    b_integral_residual: float = math.nan
    passed: bool | None = None


def bounding_box_scan(alpha: float, x0_grid, ctrl: StepControl | None = None,
                      n_samples: int = 2000, pass_floor: float = -1e-10) -> list[BoxScanRecord]:
    """Check min a' and min b' over (0, rho] for each admissible x0.

    Grid points at or below the equilibrium abscissa sqrt(a/(1+a)) are
    reported as inadmissible and skipped rather than failing the scan: the
    canonical parametrization only covers the open interval above it.
    """
    check_alpha(alpha, 0.0, 1.0, open_lo=True)
    lo, _ = admissible_x0_interval(alpha)
    records = []
    for x0 in np.atleast_1d(np.asarray(x0_grid, dtype=float)):
        if x0 <= lo + 1e-9 or x0 >= 1.0:
            records.append(BoxScanRecord(alpha=alpha, x0=float(x0), admissible=False))
            continue
        run = symmetric_system(float(x0), alpha, ctrl, with_quadrature=True)
        ts = np.linspace(0.0, run.rho, n_samples)[1:]
        u = run.sample(ts)
        x, y, z, a, b, q = (u[:, i] for i in range(6))
        a_prime = 2.0 * x + a * z
        b_prime = 2.0 * y - alpha * b * z
        residual = float(np.max(np.abs(b - 2.0 * q / y)))
        rec = BoxScanRecord(
            alpha=alpha, x0=float(x0), admissible=True, rho=run.rho,
            min_a_prime=float(np.min(a_prime)), min_b_prime=float(np.min(b_prime)),
            b_integral_residual=residual,
        )
        rec.passed = rec.min_a_prime > pass_floor and rec.min_b_prime > pass_floor
        records.append(rec)
    return records


@dataclass
class BoundaryPoint:
    x0: float
    a_end: float
    b_end: float
    da_dx0: float = math.nan
    db_dx0: float = math.nan


@dataclass
class BoundaryCurve:
    alpha: float
    points: list
    a_increasing: bool
    b_nonincreasing: bool


def boundary_curve(alpha: float, x0_grid, ctrl: StepControl | None = None,
                   slope_tol: float = 1e-9) -> BoundaryCurve:
    """Endpoints (a(rho), b(rho)) over the grid plus monotonicity verdicts."""
    xs = np.atleast_1d(np.asarray(x0_grid, dtype=float))
    pts = []
    for x0 in xs:
        run = symmetric_system(float(x0), alpha, ctrl)
        end = run.end_state
        pts.append(BoundaryPoint(x0=float(x0), a_end=float(end[3]), b_end=float(end[4])))
    a_vals = np.array([p.a_end for p in pts])
    b_vals = np.array([p.b_end for p in pts])
    slopes_a = np.gradient(a_vals, xs)
    slopes_b = np.gradient(b_vals, xs)
    for p, sa, sb in zip(pts, slopes_a, slopes_b):
        p.da_dx0 = float(sa)
        p.db_dx0 = float(sb)
    return BoundaryCurve(
        alpha=alpha,
        points=pts,
        a_increasing=bool(np.all(np.diff(a_vals) > 0.0)),
        b_nonincreasing=bool(np.all(np.diff(b_vals) <= slope_tol)),
    )


@dataclass
class GCheckPoint:
    x0: float
    dP_dx0: float
    envelope: float
    g_value: float
    fd_error_estimate: float
    conclusive: bool


def _period_of_x0(x0: float, alpha: float) -> float:
    return period(alpha, beta_from_x0(x0, alpha)).period


def dP_dx0(x0: float, alpha: float = 0.5, step: float = 1e-5) -> tuple[float, float]:
    """Richardson-extrapolated central difference of P(x0); returns (value, error est)."""
    def central(h):
        return (_period_of_x0(x0 + h, alpha) - _period_of_x0(x0 - h, alpha)) / (2.0 * h)

    d1 = central(step)
    d2 = central(step / 2.0)
    richardson = (4.0 * d2 - d1) / 3.0
    return richardson, abs(richardson - d2)


def g_function_check(x0_grid=None, alpha: float = 0.5,
                     step: float = 1e-5) -> list[GCheckPoint]:
    """Evaluate G(x0) = dP/dx0 - pi (1/(2 sqrt(x0)) + 2 x0 sqrt(x0)/(1-x0^2)).

    Only defined for alpha = 1/2, where the closed-form period makes the
    envelope bound meaningful. A point is flagged inconclusive (never a
    silent pass) when the finite-difference noise is within a decade of |G|.
    """
    if alpha != 0.5:
        raise ValueError("the envelope bound is specific to alpha = 1/2")
    if x0_grid is None:
        x0_grid = np.linspace(0.59, 0.995, 28)
    out = []
    for x0 in np.atleast_1d(np.asarray(x0_grid, dtype=float)):
        d, err = dP_dx0(float(x0), alpha, step)
        envelope = math.pi * (0.5 / math.sqrt(x0) + 2.0 * x0 * math.sqrt(x0) / (1.0 - x0 * x0))
        g = d - envelope
        out.append(GCheckPoint(
            x0=float(x0), dP_dx0=d, envelope=envelope, g_value=g,
            fd_error_estimate=err,
            conclusive=bool(abs(g) > 10.0 * max(err, 1e-12)),
        ))
    return out
