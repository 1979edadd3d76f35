"""Stationary torsion profiles of the constant-curvature flow.

With u = tau^{-1/2}, stationarity reduces (after one integration) to the
autonomous second-order equation u'' = A - u + u^{-3}; reduction of order
gives u' = sqrt(C + 2Au - u^2 - u^{-2}). For A = 0 this integrates in closed
form to

    tau(s) = 2 / (C +- sqrt(C^2 - 4) sin(2(s + k))),    C >= 2,

and for general A the orbit between two simple turning points of the
radicand is integrated numerically and resampled onto the periodic mesh.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConstructionError
from ..numerics import (StepControl, find_root, integrate_ode,
                        integrate_singular, periodic_grid)
from .core import TWO_PI, TorsionField


def stationary_torsion(C: float, k_shift: float = 0.0, sign: int = +1,
                       n: int = 256) -> TorsionField:
    """Closed-form stationary profile tau = 2/(C + sign*sqrt(C^2-4) sin(2(s+k)))."""
    if C < 2.0:
        raise ValueError(f"need C >= 2 for a positive stationary profile, got {C}")
    s = periodic_grid(n)
    amp = math.sqrt(C * C - 4.0)
    sgn = 1.0 if sign >= 0 else -1.0
    return TorsionField(2.0 / (C + sgn * amp * np.sin(2.0 * (s + k_shift))))


def tau_one(n: int = 256) -> TorsionField:
    """The reference non-constant stationary profile 2/(3 + sqrt(5) sin 2s)."""
    return stationary_torsion(3.0, 0.0, +1, n)


def _orbit_turning_points(A: float, C: float) -> tuple[float, float]:
    def g(u: float) -> float:
        return C + 2.0 * A * u - u * u - u ** -2

    def gprime(u: float) -> float:
        return 2.0 * A - 2.0 * u + 2.0 * u ** -3

    # g' is strictly decreasing with a unique positive root: the hump of g
    hi = max(10.0, 2.0 * abs(A) + 10.0)
    u_star = find_root(gprime, (1e-3, hi), 1e-13)
    if g(u_star) <= 0.0:
        raise ConstructionError(
            f"constants A={A}, C={C} admit no positive orbit (max of radicand "
            f"is {g(u_star):.3g} at u={u_star:.3g})")
    lo = u_star
    while g(lo) > 0.0:
        lo *= 0.5
        if lo < 1e-12:
            raise ConstructionError("radicand does not vanish at small u")
    u_min = find_root(g, (lo, u_star), 1e-14)
    hi = u_star
    while g(hi) > 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise ConstructionError("radicand does not vanish at large u")
    u_max = find_root(g, (u_star, hi), 1e-14)
    return u_min, u_max


def stationary_torsion_general(A: float, C: float, n: int = 256,
                               closure_tol: float = 1e-6) -> TorsionField:
    """Stationary profile by quadrature of the reduced first-order equation.

    The orbit of u oscillates between the turning points; its s-period must
    divide 2*pi for the profile to live on the periodic mesh, otherwise the
    constants are rejected. The profile is phased so tau is maximal at s = 0.
    """
    u_min, u_max = _orbit_turning_points(A, C)

    def g(u: float) -> float:
        return C + 2.0 * A * u - u * u - u ** -2

    half_period = integrate_singular(lambda u: 1.0 / math.sqrt(max(g(u), 1e-300)),
                                     u_min, u_max, 1e-10)
    orbit_period = 2.0 * half_period
    cycles = TWO_PI / orbit_period
    m = round(cycles)
    if m < 1 or abs(cycles - m) > closure_tol:
        raise ConstructionError(
            f"orbit period {orbit_period:.12g} does not divide 2*pi "
            f"({cycles:.9g} cycles); the profile cannot close on the mesh")

    def rhs(s, y):
        u, du = y
        return np.array([du, A - u + u ** -3])

    ctrl = StepControl(initial_step=1e-4, abs_tol=1e-13, rel_tol=1e-13)
    grid = periodic_grid(n)
    traj = integrate_ode(rhs, [u_min, 0.0], (0.0, TWO_PI), ctrl, output_times=grid[1:])
    u_samples = np.concatenate([[u_min], traj.states[:, 0]])
    return TorsionField(u_samples ** -2.0)
