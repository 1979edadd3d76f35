"""Torsion fields on the periodic arc-length mesh and the evolution right-hand side.

The flow preserving curvature and arc length moves a positive space curve
along its binormal with speed 1/sqrt(torsion); the induced torsion evolution
for general curvature kappa is

    tau_t = kappa D_s(tau^{-1/2}) + D_s((D_s^2(tau^{-1/2}) - tau^{3/2}) / kappa),

which for kappa = 1 collapses to the constant-curvature form

    tau_t = D_s(tau^{-1/2} - tau^{3/2} + D_s^2(tau^{-1/2})).

Spatial derivatives are Fourier collocation on [0, 2*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import PositivityError
from ..numerics import periodic_grid

TWO_PI = 2.0 * math.pi


@dataclass
class TorsionField:
    """Positive torsion samples on the uniform periodic mesh over [0, 2*pi)."""

    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        n = self.samples.size
        if n < 32 or n % 2 != 0:
            raise ValueError(f"mesh size must be even and at least 32, got {n}")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("torsion samples must be finite")
        if np.min(self.samples) <= 0.0:
            raise PositivityError("torsion must be strictly positive")

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def grid(self) -> np.ndarray:
        return periodic_grid(self.n)

    @classmethod
    def from_function(cls, f, n: int = 256) -> "TorsionField":
        return cls(np.asarray(f(periodic_grid(n)), dtype=float))


@dataclass
class CurvatureProfile:
    """Strictly positive curvature: either a constant or periodic samples."""

    constant: float | None = None
    samples: np.ndarray | None = None

    def __post_init__(self):
        if (self.constant is None) == (self.samples is None):
            raise ValueError("specify exactly one of constant or samples")
        if self.constant is not None and self.constant <= 0.0:
            raise ValueError("curvature must be strictly positive")
        if self.samples is not None:
            self.samples = np.asarray(self.samples, dtype=float)
            if np.min(self.samples) <= 0.0:
                raise ValueError("curvature must be strictly positive")

    def on_mesh(self, n: int) -> np.ndarray:
        if self.constant is not None:
            return np.full(n, float(self.constant))
        if self.samples.size != n:
            raise ValueError(f"curvature sampled on {self.samples.size} points, mesh has {n}")
        return self.samples

    @property
    def is_constant(self) -> bool:
        return self.constant is not None


UNIT_CURVATURE = CurvatureProfile(constant=1.0)


def _spectral_ops(n: int):
    k = np.fft.rfftfreq(n, d=1.0 / n)
    ik = 1j * k
    if n % 2 == 0:
        ik = ik.copy()
        ik[-1] = 0.0  # no odd derivative of the Nyquist mode on the grid
    ik2 = -(k * k)
    return ik, ik2


def make_torsion_rhs(kappa: CurvatureProfile, n: int):
    """Fast closure computing the torsion evolution right-hand side on arrays.

    Nonpositive trial states return NaN so the adaptive integrator retries
    with a smaller step instead of silently evaluating fractional powers of
    negative torsion.
    """
    ik, ik2 = _spectral_ops(n)
    kap = kappa.on_mesh(n)

    def rhs(t, tau):
        if np.min(tau) <= 0.0:
            return np.full(n, np.nan)
        root = np.sqrt(tau)
        spec_u = np.fft.rfft(1.0 / root)
        du = np.fft.irfft(ik * spec_u, n)
        d2u = np.fft.irfft(ik2 * spec_u, n)
        inner = (d2u - tau * root) / kap
        return kap * du + np.fft.irfft(ik * np.fft.rfft(inner), n)

    return rhs


def torsion_rhs(tau: TorsionField, kappa: CurvatureProfile = UNIT_CURVATURE) -> np.ndarray:
    """Pointwise evolution right-hand side of the torsion field."""
    if np.min(tau.samples) <= 0.0:
        raise PositivityError("torsion must be strictly positive")
    return make_torsion_rhs(kappa, tau.n)(0.0, tau.samples)


def torsion_invariants(tau: TorsionField) -> tuple[float, float]:
    """The first two integrals of motion: (integral of sqrt(tau), integral of tau).

    Trapezoid quadrature on the periodic mesh, which is spectrally accurate
    for smooth periodic data.
    """
    h = TWO_PI / tau.n
    return (float(h * np.sum(np.sqrt(tau.samples))), float(h * np.sum(tau.samples)))


def l2_norm(samples: np.ndarray) -> float:
    """L2 norm on [0, 2*pi] by the periodic trapezoid rule."""
    samples = np.asarray(samples, dtype=float)
    h = TWO_PI / samples.size
    return math.sqrt(h * float(np.sum(samples * samples)))
