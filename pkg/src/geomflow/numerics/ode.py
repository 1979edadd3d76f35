"""Adaptive explicit ODE integration.

The workhorse is an embedded Runge-Kutta-Fehlberg 4(5) pair with standard
proportional step control. The 5th-order solution is propagated; the
difference against the embedded 4th-order solution drives the step size.
Accepted steps keep the stage-0 derivative, so cubic Hermite interpolation
between nodes gives dense output and supports event location by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DetectionError, IntegrationError

# Fehlberg 4(5) tableau.
_C = np.array([0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2])
_A = [
    np.array([]),
    np.array([1 / 4]),
    np.array([3 / 32, 9 / 32]),
    np.array([1932 / 2197, -7200 / 2197, 7296 / 2197]),
    np.array([439 / 216, -8.0, 3680 / 513, -845 / 4104]),
    np.array([-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40]),
]
_B5 = np.array([16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55])
# Difference between the 5th and 4th order weights: local error estimate.
_E = np.array([1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


@dataclass
class StepControl:
    """Tolerances and budget for one integration.

    ``max_step`` is optional and caps the step size; useful when the right
    hand side is a semidiscretized PDE whose stability limit is known.
    """

    initial_step: float = 1e-3
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_steps: int = 10_000_000
    max_step: float | None = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


@dataclass
class Trajectory:
    """Sampled solution of an ODE.

    ``states[i]`` is the state at ``times[i]``. When ``dense`` is true the
    stored node derivatives allow cubic Hermite interpolation between nodes
    via :meth:`sample`.
    """

    times: np.ndarray
    states: np.ndarray
    dense: bool = False
    derivs: np.ndarray | None = None
    event_time: float | None = None
    event_state: np.ndarray | None = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if self.states.shape[0] != self.times.shape[0]:
            raise ValueError("times and states length mismatch")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(self.states)):
            raise ValueError("states contain non-finite entries")

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @property
    def y_end(self) -> np.ndarray:
        return self.states[-1]

    def sample(self, t) -> np.ndarray:
        """Cubic Hermite interpolation at times ``t`` (scalar or array)."""
        if not self.dense or self.derivs is None:
            raise ValueError("trajectory was not stored with dense output")
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        if t_arr.min() < self.times[0] - 1e-12 or t_arr.max() > self.times[-1] + 1e-12:
            raise ValueError("sample time outside the integrated span")
        idx = np.clip(np.searchsorted(self.times, t_arr, side="right") - 1, 0, len(self.times) - 2)
        t0 = self.times[idx]
        h = self.times[idx + 1] - t0
        s = ((t_arr - t0) / h)[:, None]
        y0, y1 = self.states[idx], self.states[idx + 1]
        f0, f1 = self.derivs[idx], self.derivs[idx + 1]
        h = h[:, None]
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        out = h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1
        return out[0] if np.isscalar(t) or np.ndim(t) == 0 else out


def _error_norm(err, y_old, y_new, ctrl):
    scale = ctrl.abs_tol + ctrl.rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.max(np.abs(err) / scale))


def _hermite(t, t0, h, y0, y1, f0, f1):
    s = (t - t0) / h
    return ((1 + 2 * s) * (1 - s) ** 2 * y0 + s * (1 - s) ** 2 * h * f0
            + s * s * (3 - 2 * s) * y1 + s * s * (s - 1) * h * f1)


def integrate_ode(
    field: Callable[[float, np.ndarray], np.ndarray],
    y0,
    t_span: tuple[float, float],
    ctrl: StepControl | None = None,
    *,
    dense: bool = False,
    output_times: Sequence[float] | None = None,
    event: Callable[[float, np.ndarray], float] | None = None,
    event_direction: int = 0,
    event_min_time: float = 0.0,
    event_tol: float = 1e-12,
) -> Trajectory:
    """Integrate ``y' = field(t, y)`` over ``t_span``.

    With ``output_times`` the trajectory holds exactly those samples
    (interpolated on the fly); otherwise every accepted node is stored and
    ``dense=True`` additionally keeps node derivatives for interpolation.

    ``event`` is a scalar functional of the state; integration stops at its
    first zero crossing after ``event_min_time`` (located by bisection on the
    local Hermite interpolant to ``event_tol`` in time). ``event_direction``
    restricts to sign changes from negative to positive (+1), positive to
    negative (-1), or either (0).
    """
    ctrl = ctrl or StepControl()
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must be a nonempty forward interval")
    y = np.asarray(y0, dtype=float).copy()

    out_req = None
    if output_times is not None:
        out_req = np.asarray(output_times, dtype=float)
        if out_req.size == 0 or out_req.min() < t0 - 1e-12 or out_req.max() > t1 + 1e-12:
            raise ValueError("output_times must lie inside t_span")

    f = np.asarray(field(t0, y), dtype=float)
    if not np.all(np.isfinite(f)):
        raise IntegrationError("field returned non-finite values at the initial point")

    ts = [t0]
    ys = [y.copy()]
    fs = [f.copy()]
    out_vals: list[np.ndarray] = []
    out_ts: list[float] = []
    next_out = 0
    if out_req is not None:
        while next_out < out_req.size and out_req[next_out] <= t0 + 1e-15:
            out_ts.append(float(out_req[next_out]))
            out_vals.append(y.copy())
            next_out += 1

    g_prev = event(t0, y) if event is not None else None
    event_time = None
    event_state = None

    h = min(ctrl.initial_step, t1 - t0)
    if ctrl.max_step is not None:
        h = min(h, ctrl.max_step)
    t = t0
    k = np.empty((6, y.size))
    n_steps = 0

    while t < t1:
        if n_steps >= ctrl.max_steps:
            raise IntegrationError(f"step budget {ctrl.max_steps} exhausted at t={t:.6g}")
        h = min(h, t1 - t)
        k[0] = f
        failed_shrink = False
        for i in range(1, 6):
            yi = y + h * (_A[i] @ k[:i])
            ki = np.asarray(field(t + _C[i] * h, yi), dtype=float)
            if not np.all(np.isfinite(ki)):
                h *= 0.25
                failed_shrink = True
                break
            k[i] = ki
        if failed_shrink:
            if h < 1e-15 * max(abs(t), 1.0):
                raise IntegrationError(f"field became non-finite near t={t:.6g}")
            continue
        y_new = y + h * (_B5 @ k)
        err = h * (_E @ k)
        norm = _error_norm(err, y, y_new, ctrl)
        n_steps += 1
        if norm > 1.0:
            h *= max(_MIN_FACTOR, _SAFETY * norm ** (-0.2))
            continue

        t_new = t + h
        f_new = np.asarray(field(t_new, y_new), dtype=float)
        if not np.all(np.isfinite(f_new)):
            raise IntegrationError(f"field returned non-finite values at t={t_new:.6g}")

        if event is not None:
            g_new = event(t_new, y_new)
            crossed = (
                t_new > event_min_time
                and g_prev is not None
                and np.sign(g_new) != np.sign(g_prev)
                and g_prev != 0.0
                and (event_direction == 0
                     or (event_direction > 0 and g_new > g_prev)
                     or (event_direction < 0 and g_new < g_prev))
            )
            if crossed:
                lo, hi = max(t, event_min_time), t_new
                g_lo = event(lo, _hermite(lo, t, h, y, y_new, f, f_new)) if lo > t else g_prev
                if np.sign(g_lo) == np.sign(g_new):
                    crossed = False  # crossing happened before event_min_time
                else:
                    while hi - lo > event_tol:
                        mid = 0.5 * (lo + hi)
                        g_mid = event(mid, _hermite(mid, t, h, y, y_new, f, f_new))
                        if np.sign(g_mid) == np.sign(g_lo) and g_mid != 0.0:
                            lo, g_lo = mid, g_mid
                        else:
                            hi = mid
                    event_time = 0.5 * (lo + hi)
                    event_state = _hermite(event_time, t, h, y, y_new, f, f_new)
            if crossed:
                if out_req is not None:
                    while next_out < out_req.size and out_req[next_out] <= event_time + 1e-15:
                        tq = float(out_req[next_out])
                        out_ts.append(tq)
                        out_vals.append(_hermite(tq, t, h, y, y_new, f, f_new))
                        next_out += 1
                ts.append(event_time)
                ys.append(event_state.copy())
                fs.append(np.asarray(field(event_time, event_state), dtype=float))
                break
            g_prev = g_new

        if out_req is not None:
            while next_out < out_req.size and out_req[next_out] <= t_new + 1e-15:
                tq = float(out_req[next_out])
                out_ts.append(tq)
                out_vals.append(_hermite(tq, t, h, y, y_new, f, f_new))
                next_out += 1
        else:
            ts.append(t_new)
            ys.append(y_new.copy())
            if dense:
                fs.append(f_new.copy())

        t, y, f = t_new, y_new, f_new
        factor = _MAX_FACTOR if norm == 0.0 else min(_MAX_FACTOR, _SAFETY * norm ** (-0.2))
        h *= max(_MIN_FACTOR, factor)
        if ctrl.max_step is not None:
            h = min(h, ctrl.max_step)

    if out_req is not None:
        times = np.array(out_ts)
        states = np.array(out_vals) if out_vals else np.empty((0, y.size))
        if times.size == 0:
            raise DetectionError("no output times fell inside the integrated span")
        traj = Trajectory(times, states, dense=False)
    else:
        traj = Trajectory(
            np.array(ts),
            np.array(ys),
            dense=dense,
            derivs=np.array(fs) if dense else None,
        )
    traj.event_time = event_time
    traj.event_state = event_state
    return traj
