"""Geodesics from the identity: frame ODE, concatenation oracle, invariants.

The primary exponential-map evaluator integrates the coupled 6-system

    tangent:  v' = Sigma(v)            (development on the unit sphere)
    position: (x', y', z') = (v_x e^z, v_y e^{-a z}, v_z)

so the position components are the left-invariant frame applied to the
tangent at the current point. A secondary evaluator composes a large but
finite product of small group elements along the flowline; it converges to
the same endpoint and serves as an independent oracle for the frame ODE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import SetupError
from ..numerics import StepControl, integrate_ode
from .group import check_alpha, group_mul
from .structure import level_value, v_beta

_TIGHT = StepControl(initial_step=1e-3, abs_tol=1e-12, rel_tol=1e-12)


@dataclass
class GeodesicPath:
    """Unit-speed geodesic from the identity, sampled along arc length."""

    alpha: float
    times: np.ndarray
    tangents: np.ndarray
    positions: np.ndarray

    @property
    def endpoint(self) -> np.ndarray:
        return self.positions[-1]

    @property
    def speed_drift(self) -> float:
        """Max deviation of the metric-measured speed from 1.

        The frame components of the velocity are the tangent block, so the
        metric speed along the path is just the tangent norm.
        """
        return float(np.max(np.abs(np.linalg.norm(self.tangents, axis=1) - 1.0)))


def _geodesic_rhs(alpha: float):
    def rhs(t, u):
        vx, vy, vz, _, _, z = u
        ez = math.exp(z)
        eaz = math.exp(-alpha * z)
        return np.array([
            vx * vz,
            -alpha * vy * vz,
            alpha * vy * vy - vx * vx,
            vx * ez,
            vy * eaz,
            vz,
        ])
    return rhs


def geodesic(v0, alpha: float, T: float, ctrl: StepControl | None = None,
             n_samples: int = 401) -> GeodesicPath:
    """Geodesic from the identity with initial unit tangent v0, length T."""
    check_alpha(alpha)
    v0 = np.asarray(v0, dtype=float)
    if abs(np.linalg.norm(v0) - 1.0) > 1e-8:
        raise SetupError("initial tangent is not a unit vector")
    if T < 0.0:
        raise ValueError("geodesic length must be nonnegative")
    if T == 0.0:
        return GeodesicPath(alpha, np.array([0.0]), v0[None, :].copy(),
                            np.zeros((1, 3)))
    ctrl = ctrl or _TIGHT
    y0 = np.concatenate([v0, np.zeros(3)])
    times = np.linspace(0.0, T, n_samples)
    traj = integrate_ode(_geodesic_rhs(alpha), y0, (0.0, T), ctrl, output_times=times[1:])
    all_t = np.concatenate([[0.0], traj.times])
    all_y = np.vstack([y0, traj.states])
    return GeodesicPath(alpha, all_t, all_y[:, :3], all_y[:, 3:])


def exponential(v, alpha: float, ctrl: StepControl | None = None) -> np.ndarray:
    """Riemannian exponential of an arbitrary (not necessarily unit) vector."""
    v = np.asarray(v, dtype=float)
    T = float(np.linalg.norm(v))
    if T == 0.0:
        return np.zeros(3)
    return geodesic(v / T, alpha, T, ctrl, n_samples=2).endpoint


def concatenation_endpoint(v0, alpha: float, T: float, n_steps: int = 1_000_000,
                           ctrl: StepControl | None = None) -> np.ndarray:
    """Endpoint by a finite product of small group elements along the flowline.

    The flowline lambda(t) of the structure field is sampled at midpoints of
    n equal subintervals and the product (eps*lambda_1) * ... * (eps*lambda_n)
    is accumulated. The semidirect group law collapses the left-folded product
    to prefix sums, so the whole product is three cumulative sums.
    """
    check_alpha(alpha)
    v0 = np.asarray(v0, dtype=float)
    ctrl = ctrl or _TIGHT

    def rhs(t, v):
        x, y, z = v
        return np.array([x * z, -alpha * y * z, alpha * y * y - x * x])

    traj = integrate_ode(rhs, v0, (0.0, T), ctrl, dense=True)
    eps = T / n_steps
    mid = (np.arange(n_steps) + 0.5) * eps
    lam = traj.sample(mid)
    a = eps * lam[:, 0]
    b = eps * lam[:, 1]
    c = eps * lam[:, 2]
    z_prefix = np.concatenate([[0.0], np.cumsum(c)[:-1]])
    x_end = float(np.sum(a * np.exp(z_prefix)))
    y_end = float(np.sum(b * np.exp(-alpha * z_prefix)))
    z_end = float(np.sum(c))
    return np.array([x_end, y_end, z_end])


def cylinder_invariant(path: GeodesicPath, beta: float,
                       setup_tol: float = 1e-6) -> tuple[np.ndarray, float]:
    """Series of the cylinder quantity along a geodesic and its relative drift.

    For a geodesic from the identity whose initial tangent is the reference
    tangent of the loop level set labeled by beta (so v_x = sqrt(a) v_y),
    the conserved momenta give the first integral

        Q = (w - d)^2 + e^{2z} + (1/a) e^{-2az} = ((1+a)/a) / beta^2,

    with w = x - sqrt(a) y and the cylinder-axis offset d = v_z(0)/v_x(0).
    The surface is the cylinder written about its own axis; Q(0) equals the
    predicted constant identically. Returns (Q series, max |Q-Q0|/Q0).
    """
    alpha = path.alpha
    check_alpha(alpha, 0.0, 1.0, open_lo=True)
    v0 = path.tangents[0]
    ref = v_beta(beta, alpha)
    if abs(level_value(v0, alpha) - level_value(ref, alpha)) > setup_tol:
        raise SetupError("initial tangent is not on the level set labeled by beta")
    if abs(v0[0] - math.sqrt(alpha) * v0[1]) > setup_tol:
        raise SetupError("initial tangent must sit at the top/bottom point of its loop "
                         "(v_x = sqrt(a) v_y), e.g. V_beta or its partner")
    delta = v0[2] / v0[0]
    x, y, z = path.positions[:, 0], path.positions[:, 1], path.positions[:, 2]
    w = x - math.sqrt(alpha) * y - delta
    q = w * w + np.exp(2.0 * z) + np.exp(-2.0 * alpha * z) / alpha
    q0 = (1.0 + alpha) / alpha / (beta * beta)
    if abs(q[0] - q0) > 1e-9 * q0:
        raise SetupError("initial cylinder quantity disagrees with the predicted constant")
    return q, float(np.max(np.abs(q - q0)) / q0)


def fibonacci_directions(n: int) -> np.ndarray:
    """Deterministic quasi-uniform unit directions (Fibonacci lattice)."""
    i = np.arange(n)
    z = 1.0 - 2.0 * (i + 0.5) / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    golden = math.pi * (3.0 - math.sqrt(5.0))
    phi = golden * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def geodesic_sphere(alpha: float, R: float, n_dirs: int = 200,
                    ctrl: StepControl | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Point cloud of the geodesic sphere of radius R: (directions, endpoints)."""
    check_alpha(alpha)
    if R <= 0.0:
        raise ValueError("radius must be positive")
    if n_dirs < 100:
        raise ValueError("need at least 100 directions for a meaningful cloud")
    ctrl = ctrl or StepControl(initial_step=1e-3, abs_tol=1e-10, rel_tol=1e-10)
    dirs = fibonacci_directions(n_dirs)
    ends = np.empty_like(dirs)
    for j, d in enumerate(dirs):
        ends[j] = geodesic(d, alpha, R, ctrl, n_samples=2).endpoint
    return dirs, ends
