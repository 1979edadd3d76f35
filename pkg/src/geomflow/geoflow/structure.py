"""The structure field on the unit sphere of the Lie algebra and its flowlines.

Unit tangent vectors are 3-arrays of components in the left-invariant
orthonormal frame. Integral curves of the structure field are the
developments of geodesic tangents; they coincide with the level sets of
H(x, y, z) = |x|^a * y on the sphere, which is the conserved quantity every
flowline test leans on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import SetupError
from ..numerics import StepControl, Trajectory, find_root, integrate_ode
from .group import check_alpha


def structure_field(v, alpha: float) -> np.ndarray:
    x, y, z = np.asarray(v, dtype=float)
    return np.array([x * z, -alpha * y * z, alpha * y * y - x * x])


def level_value(v, alpha: float) -> float:
    """H(x, y, z) = |x|^a * y, constant along flowlines."""
    x, y, _ = np.asarray(v, dtype=float)
    return abs(x) ** alpha * y


def v_beta(beta: float, alpha: float) -> np.ndarray:
    """Reference tangent on the loop level set labeled by beta in (0, 1]."""
    check_alpha(alpha, 0.0, 1.0, open_lo=True)
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta={beta} outside (0, 1]")
    return np.array([
        beta * math.sqrt(alpha / (1.0 + alpha)),
        beta / math.sqrt(1.0 + alpha),
        math.sqrt(max(0.0, 1.0 - beta * beta)),
    ])


def equilibrium_tangent(alpha: float) -> np.ndarray:
    """The flat equilibrium direction in the positive sector (beta = 1)."""
    return v_beta(1.0, alpha)


def unit_tangent(x: float, y: float, z: float, tol: float = 1e-10) -> np.ndarray:
    v = np.array([x, y, z], dtype=float)
    n = np.linalg.norm(v)
    if abs(n - 1.0) > tol:
        raise ValueError(f"tangent norm {n} deviates from 1 beyond {tol}")
    return v / n


@dataclass
class Flowline:
    """Sampled integral curve of the structure field on the unit sphere."""

    alpha: float
    times: np.ndarray
    tangents: np.ndarray

    @property
    def level_series(self) -> np.ndarray:
        x, y = self.tangents[:, 0], self.tangents[:, 1]
        return np.abs(x) ** self.alpha * y

    @property
    def level_drift(self) -> float:
        h = self.level_series
        h0 = h[0]
        if h0 == 0.0:
            return float(np.max(np.abs(h)))
        return float(np.max(np.abs(h - h0) / abs(h0)))

    @property
    def norm_drift(self) -> float:
        return float(np.max(np.abs(np.linalg.norm(self.tangents, axis=1) - 1.0)))

    @property
    def end(self) -> np.ndarray:
        return self.tangents[-1]


def flow_tangent(v0, alpha: float, T: float, direction: int = +1,
                 ctrl: StepControl | None = None, n_samples: int = 1001) -> Flowline:
    """Integrate v' = +/- Sigma(v) for time T without renormalization.

    The sphere constraint and the level H are not enforced; their drift is
    what the returned series measure, so the integration runs at tight
    tolerances by default.
    """
    check_alpha(alpha)
    v0 = np.asarray(v0, dtype=float)
    if abs(np.linalg.norm(v0) - 1.0) > 1e-8:
        raise SetupError("initial tangent is not a unit vector")
    sgn = 1.0 if direction >= 0 else -1.0
    ctrl = ctrl or StepControl(initial_step=1e-3, abs_tol=1e-12, rel_tol=1e-12)

    def rhs(t, v):
        x, y, z = v
        return sgn * np.array([x * z, -alpha * y * z, alpha * y * y - x * x])

    times = np.linspace(0.0, T, n_samples)
    traj = integrate_ode(rhs, v0, (0.0, T), ctrl, output_times=times[1:])
    all_times = np.concatenate([[0.0], traj.times])
    all_tangents = np.vstack([v0, traj.states])
    return Flowline(alpha=alpha, times=all_times, tangents=all_tangents)


def flow_to_equator(v0, alpha: float, direction: int = +1, t_max: float = 50.0,
                    ctrl: StepControl | None = None) -> tuple[float, np.ndarray]:
    """First time the flowline from v0 crosses z = 0, with the crossing tangent."""
    check_alpha(alpha)
    v0 = np.asarray(v0, dtype=float)
    sgn = 1.0 if direction >= 0 else -1.0
    ctrl = ctrl or StepControl(initial_step=1e-3, abs_tol=1e-12, rel_tol=1e-12)

    def rhs(t, v):
        x, y, z = v
        return sgn * np.array([x * z, -alpha * y * z, alpha * y * y - x * x])

    traj = integrate_ode(rhs, v0, (0.0, t_max), ctrl, event=lambda t, v: v[2],
                         event_min_time=1e-9)
    if traj.event_time is None:
        raise SetupError("flowline did not reach the equator within t_max")
    return traj.event_time, traj.event_state


def admissible_x0_interval(alpha: float) -> tuple[float, float]:
    """Open interval of initial abscissas for the canonical loop parametrization."""
    check_alpha(alpha, 0.0, 1.0, open_lo=True)
    return math.sqrt(alpha / (1.0 + alpha)), 1.0


def beta_from_x0(x0: float, alpha: float) -> float:
    """Label beta of the loop level set through (x0, sqrt(1 - x0^2), 0).

    Matches H at the flat point against H(V_beta):
        beta^(1+a) * a^(a/2) / (1+a)^((1+a)/2) = x0^a * sqrt(1 - x0^2),
    solved for beta in (0, 1) by bracketed root finding.
    """
    lo, hi = admissible_x0_interval(alpha)
    if not lo < x0 < hi:
        raise ValueError(f"x0={x0} outside the admissible interval ({lo}, {hi})")
    target = x0 ** alpha * math.sqrt(1.0 - x0 * x0)
    h_max = alpha ** (alpha / 2.0) / (1.0 + alpha) ** ((1.0 + alpha) / 2.0)

    def f(beta):
        return beta ** (1.0 + alpha) * h_max - target

    return find_root(f, (1e-12, 1.0), 1e-14)
