"""Interpolation helpers: periodic cubic splines and monotone cubics.

Both are small classical constructions kept local so the package depends on
nothing beyond numpy.
"""

from __future__ import annotations

import numpy as np


class PeriodicCubicSpline:
    """C2 cubic spline through (j*h, values[j]) with period n*h, uniform knots."""

    def __init__(self, values: np.ndarray, period: float):
        y = np.asarray(values, dtype=float)
        n = y.size
        if n < 4:
            raise ValueError("need at least 4 points for a periodic cubic spline")
        self.n = n
        self.period = float(period)
        self.h = self.period / n
        self.y = y
        # Second derivatives m_j from the C2 conditions:
        # m_{j-1} + 4 m_j + m_{j+1} = 6 (y_{j-1} - 2 y_j + y_{j+1}) / h^2.
        # The system matrix is circulant, so it diagonalizes under the DFT.
        rhs = 6.0 * (np.roll(y, 1) - 2.0 * y + np.roll(y, -1)) / (self.h * self.h)
        eig = 4.0 + 2.0 * np.cos(2.0 * np.pi * np.arange(n // 2 + 1) / n)
        self.m = np.fft.irfft(np.fft.rfft(rhs) / eig, n=n)

    def __call__(self, s) -> np.ndarray:
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        u = np.mod(s_arr, self.period) / self.h
        j = np.clip(u.astype(int), 0, self.n - 1)
        t = u - j
        jp = (j + 1) % self.n
        h2 = self.h * self.h
        y0, y1 = self.y[j], self.y[jp]
        m0, m1 = self.m[j], self.m[jp]
        out = ((1 - t) * y0 + t * y1
               + h2 / 6.0 * ((1 - t) ** 3 - (1 - t)) * m0
               + h2 / 6.0 * (t ** 3 - t) * m1)
        return out[0] if np.ndim(s) == 0 else out


class MonotoneCubic:
    """Shape-preserving (Fritsch-Carlson) cubic interpolant of monotone data.

    Evaluation outside the knot range is refused. Derivative evaluation is
    available (needed when the interpolant feeds a chain rule).
    """

    def __init__(self, x: np.ndarray, y: np.ndarray):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.size != y.size or x.size < 3:
            raise ValueError("need matching arrays of at least 3 points")
        if not np.all(np.diff(x) > 0):
            raise ValueError("x must be strictly increasing")
        self.x = x
        self.y = y
        h = np.diff(x)
        delta = np.diff(y) / h
        d = np.zeros_like(y)
        # interior: weighted harmonic mean of neighbor slopes where they agree in sign
        mask = delta[:-1] * delta[1:] > 0
        w1 = 2.0 * h[1:] + h[:-1]
        w2 = h[1:] + 2.0 * h[:-1]
        num = w1 + w2
        den = np.ones_like(num)
        den[mask] = w1[mask] / delta[:-1][mask] + w2[mask] / delta[1:][mask]
        d[1:-1] = np.where(mask, num / den, 0.0)
        d[0] = self._edge_slope(h[0], h[1], delta[0], delta[1])
        d[-1] = self._edge_slope(h[-1], h[-2], delta[-1], delta[-2])
        self.d = d
        self.h = h
        self.delta = delta

    @staticmethod
    def _edge_slope(h0, h1, d0, d1):
        s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
        if s * d0 <= 0:
            return 0.0
        if d0 * d1 < 0 and abs(s) > 3.0 * abs(d0):
            return 3.0 * d0
        return s

    def _locate(self, s):
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        if s_arr.min() < self.x[0] - 1e-9 or s_arr.max() > self.x[-1] + 1e-9:
            raise ValueError("evaluation point outside the interpolation range")
        s_arr = np.clip(s_arr, self.x[0], self.x[-1])
        j = np.clip(np.searchsorted(self.x, s_arr, side="right") - 1, 0, self.x.size - 2)
        return s_arr, j

    def __call__(self, s):
        s_arr, j = self._locate(s)
        h = self.h[j]
        t = (s_arr - self.x[j]) / h
        y0, y1 = self.y[j], self.y[j + 1]
        d0, d1 = self.d[j], self.d[j + 1]
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        out = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
        return out[0] if np.ndim(s) == 0 else out

    def derivative(self, s):
        s_arr, j = self._locate(s)
        h = self.h[j]
        t = (s_arr - self.x[j]) / h
        y0, y1 = self.y[j], self.y[j + 1]
        d0, d1 = self.d[j], self.d[j + 1]
        dh00 = 6 * t * t - 6 * t
        dh10 = 3 * t * t - 4 * t + 1
        dh01 = -6 * t * t + 6 * t
        dh11 = 3 * t * t - 2 * t
        out = (dh00 * y0 / h + dh10 * d0 + dh01 * y1 / h + dh11 * d1)
        return out[0] if np.ndim(s) == 0 else out
