"""Small numerical kernels: adaptive Simpson quadrature and a spherical
Frenet frame integrator with dense output.

The frame system on the unit sphere, for geodesic curvature kappa(s),

    c' = e,    e' = kappa n - c,    n' = -kappa e,

is integrated with classical RK4 at a fixed step.  After every step the
frame is re-orthonormalized, which keeps the drift of |c|, |e|, c.e over a
unit of arc length below 1e-9.  Node states and their exact derivatives are
cached so that in-between queries reduce to cubic Hermite interpolation;
that keeps repeated evaluations (quadrature nodes, mesh grids, finite
difference probes) cheap and smooth in s.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import ChartError

RK4_STEP = 1e-3
SIMPSON_TOL = 1e-12

_HALF_PI = math.pi / 2


def adaptive_simpson(
    f: Callable[[float], np.ndarray],
    a: float,
    b: float,
    tol: float = SIMPSON_TOL,
    max_depth: int = 30,
) -> np.ndarray:
    """Adaptive Simpson integral of a vector-valued function over [a, b]."""
    fa, fb = np.asarray(f(a), dtype=float), np.asarray(f(b), dtype=float)
    if a == b:
        return np.zeros_like(fa)
    m = 0.5 * (a + b)
    fm = np.asarray(f(m))
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, fa, b, fb, m, fm, whole, tol, depth):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = np.asarray(f(lm))
        frm = np.asarray(f(rm))
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        err = np.max(np.abs(left + right - whole))
        if depth <= 0 or err < 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) + recurse(
            m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1
        )

    return recurse(a, fa, b, fb, m, fm, whole, tol, max_depth)


class FrenetPath:
    """Dense frame trajectory s -> (c, e, n) of a spherical unit-speed curve.

    kappa is a callable returning geodesic curvature at arc length s.  The
    chart is the open interval |s| < pi/2; queries outside raise ChartError.
    """

    def __init__(
        self,
        kappa: Callable[[float], float],
        point0: np.ndarray,
        tangent0: np.ndarray,
        step: float = RK4_STEP,
    ):
        self.kappa = kappa
        self.step = float(step)
        c0 = np.asarray(point0, dtype=float)
        e0 = np.asarray(tangent0, dtype=float)
        y0 = np.concatenate([c0, e0, np.cross(c0, e0)])
        # nodes grown lazily in both directions from s = 0
        self._nodes_pos: list[tuple[float, np.ndarray, np.ndarray]] = []
        self._nodes_neg: list[tuple[float, np.ndarray, np.ndarray]] = []
        y0 = self._renorm(y0)
        self._y0 = (0.0, y0, self._rhs(0.0, y0))

    def _rhs(self, s: float, y: np.ndarray) -> np.ndarray:
        c, e, n = y[0:3], y[3:6], y[6:9]
        k = self.kappa(s)
        return np.concatenate([e, k * n - c, -k * e])

    @staticmethod
    def _renorm(y: np.ndarray) -> np.ndarray:
        c, e = y[0:3].copy(), y[3:6].copy()
        c /= np.linalg.norm(c)
        e -= (e @ c) * c
        e /= np.linalg.norm(e)
        return np.concatenate([c, e, np.cross(c, e)])

    def _rk4_step(self, s: float, y: np.ndarray, h: float) -> np.ndarray:
        k1 = self._rhs(s, y)
        k2 = self._rhs(s + 0.5 * h, y + 0.5 * h * k1)
        k3 = self._rhs(s + 0.5 * h, y + 0.5 * h * k2)
        k4 = self._rhs(s + h, y + h * k3)
        return self._renorm(y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4))

    def _extend(self, nodes, sign: int, target: float) -> None:
        if not nodes:
            nodes.append(self._y0)
        s, y, _ = nodes[-1]
        h = sign * self.step
        while sign * s < target:
            y = self._rk4_step(s, y, h)
            s += h
            nodes.append((s, y, self._rhs(s, y)))

    def state(self, s: float) -> np.ndarray:
        """Frame state (c, e, n) at arc length s, via Hermite dense output."""
        if abs(s) >= _HALF_PI:
            raise ChartError(f"arc length {s:.6f} outside the chart |s| < pi/2")
        if s == 0.0:
            return self._y0[1]
        nodes = self._nodes_pos if s > 0 else self._nodes_neg
        self._extend(nodes, 1 if s > 0 else -1, abs(s) + self.step)
        idx = int(abs(s) / self.step)
        if idx + 1 >= len(nodes):
            idx = len(nodes) - 2
        s0, y0, d0 = nodes[idx]
        s1, y1, d1 = nodes[idx + 1]
        h = s1 - s0
        t = (s - s0) / h
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        return h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1

    def frame(self, s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        y = self.state(s)
        return y[0:3], y[3:6], y[6:9]
