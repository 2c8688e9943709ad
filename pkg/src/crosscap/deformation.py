"""Isometric deformations of the degenerate quadratic cross cap.

For parameters a02 > 0, a11 and a unit-speed curve c(s) on the unit
sphere with |s| < pi/2, set m = 1 + a11^2 and

    chat(v) = c(arctan(v sqrt(m)))          reparametrized curve
    xi(v)   = sqrt(1 + m v^2) * chat(v)     scaled ruling
    B(v)    = a11 xi'(v) + xi(v) x xi'(v)
    gamma(v)= (a02/m) * integral_0^v t B(t) dt

and finally f(u,v) = gamma(v) + u xi(v).  Every member of this family,
one per spherical curve, has the same first fundamental form

    E = 1 + m v^2,  F = m u v + a02 a11 v^2,
    G = m u^2 + 2 a02 a11 u v + a02^2 v^2,

so the family deforms the degenerate quadratic cross cap (the great
circle member with geodesic curvature zero) isometrically, and the
member's curvature determines all third-order extrinsic data in closed
form.

Jets of the construction are assembled by exact series arithmetic; the
evaluator integrates the spherical frame by RK4 and gamma by adaptive
Simpson quadrature.  Exact Taylor data at off-origin points is produced
by rebuilding the same series around the target point, so pointwise
curvature checks never fall back to finite differences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import ChartError
from .jets import Jet2, Jet3, vpoly
from .numerics import SIMPSON_TOL, FrenetPath, adaptive_simpson
from .surface import FundamentalForms, SurfaceMap, canonical_crosscap, first_form

__all__ = [
    "SphericalCurve",
    "DeformationFamily",
    "IsometryReport",
    "circle_family",
    "circle_point",
    "deformation_family",
    "ruling_decomposition",
    "build_crosscap",
    "degenerate_quadratic",
    "degenerate_first_form",
    "second_form_closed",
    "extrinsic_invariants",
    "verify_isometry",
]

FRAME_TOL = 1e-9


def _poly_shift(coeffs: Sequence[float], s0: float) -> np.ndarray:
    """Coefficients of p(s0 + x) given those of p(s)."""
    out = np.zeros(len(coeffs))
    for a, ca in enumerate(coeffs):
        for j in range(a + 1):
            out[j] += math.comb(a, j) * (s0 ** (a - j)) * ca
    return out


def frenet_series(
    kappa_poly: Sequence[float],
    c0: np.ndarray,
    e0: np.ndarray,
    order: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Taylor coefficients of (c, e, n) from c' = e, e' = kappa n - c, n' = -kappa e."""
    kap = np.zeros(order + 1)
    for i, val in enumerate(kappa_poly[: order + 1]):
        kap[i] = val
    C = np.zeros((order + 1, 3))
    E = np.zeros((order + 1, 3))
    N = np.zeros((order + 1, 3))
    C[0], E[0] = c0, e0
    N[0] = np.cross(c0, e0)
    for k in range(order):
        kn = sum(kap[i] * N[k - i] for i in range(k + 1))
        ke = sum(kap[i] * E[k - i] for i in range(k + 1))
        C[k + 1] = E[k] / (k + 1)
        E[k + 1] = (kn - C[k]) / (k + 1)
        N[k + 1] = -ke / (k + 1)
    return C, E, N


@dataclass(frozen=True)
class SphericalCurve:
    """Unit-speed curve on S^2 given by its geodesic curvature polynomial."""

    kappa_poly: tuple[float, ...] = (0.0,)
    point0: tuple[float, float, float] = (1.0, 0.0, 0.0)
    tangent0: tuple[float, float, float] = (0.0, 1.0, 0.0)
    kappa_fn: Callable[[float], float] | None = None

    def __post_init__(self):
        c0 = np.asarray(self.point0)
        e0 = np.asarray(self.tangent0)
        if abs(np.linalg.norm(c0) - 1.0) > FRAME_TOL:
            raise ValueError("initial point must lie on the unit sphere")
        if abs(np.linalg.norm(e0) - 1.0) > FRAME_TOL or abs(c0 @ e0) > FRAME_TOL:
            raise ValueError("initial tangent must be unit and orthogonal to the point")

    def kappa(self, s: float) -> float:
        if self.kappa_fn is not None:
            return float(self.kappa_fn(s))
        return float(np.polynomial.polynomial.polyval(s, self.kappa_poly))

    @cached_property
    def path(self) -> FrenetPath:
        return FrenetPath(self.kappa, np.asarray(self.point0), np.asarray(self.tangent0))

    def frame(self, s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(c, e, n) at arc length s; raises ChartError for |s| >= pi/2."""
        return self.path.frame(s)

    def point(self, s: float) -> np.ndarray:
        return self.frame(s)[0]

    def series_at(self, s0: float, order: int):
        """Local Taylor coefficients of (c, e, n) around s0."""
        if s0 == 0.0:
            c0, e0 = np.asarray(self.point0, dtype=float), np.asarray(self.tangent0, dtype=float)
        else:
            c0, e0, _ = self.frame(s0)
        kap = _poly_shift(self.kappa_poly, s0) if s0 != 0.0 else np.asarray(self.kappa_poly)
        return frenet_series(kap, c0, e0, order)


def circle_point(kappa: float, s: float) -> np.ndarray:
    """Closed-form circle of geodesic curvature kappa through (1,0,0)."""
    mu2 = 1.0 + kappa * kappa
    mu = math.sqrt(mu2)
    return np.array(
        [
            (kappa * kappa + math.cos(mu * s)) / mu2,
            math.sin(mu * s) / mu,
            kappa * (1.0 - math.cos(mu * s)) / mu2,
        ]
    )


def circle_family(kappa: float) -> SphericalCurve:
    """The circle member used by the one-parameter deformation family."""
    return SphericalCurve(kappa_poly=(float(kappa),))


@dataclass(frozen=True)
class DeformationFamily:
    a02: float
    a11: float
    curve: SphericalCurve

    @property
    def m(self) -> float:
        return 1.0 + self.a11 * self.a11

    def arc_parameter(self, v: float) -> float:
        return math.atan(math.sqrt(self.m) * v)


def deformation_family(
    a02: float,
    a11: float,
    kappa: float | Sequence[float] | SphericalCurve = 0.0,
) -> DeformationFamily:
    """Family member for given quadratic data and curvature description.

    The spherical curve is rebuilt from the curvature with the pinned
    initial frame c(0) = (1,0,0), e(0) = (0,1,a11)/sqrt(1+a11^2) unless a
    fully specified curve is passed in.
    """
    if a02 <= 0:
        raise ValueError("the deformation family needs a02 > 0")
    if isinstance(kappa, SphericalCurve):
        curve = kappa
    else:
        poly = (float(kappa),) if isinstance(kappa, (int, float)) else tuple(map(float, kappa))
        root_m = math.sqrt(1.0 + a11 * a11)
        curve = SphericalCurve(
            kappa_poly=poly,
            point0=(1.0, 0.0, 0.0),
            tangent0=(0.0, 1.0 / root_m, a11 / root_m),
        )
    return DeformationFamily(a02=float(a02), a11=float(a11), curve=curve)


# ----------------------------------------------------------------------
# series assembly

def _ruling_series(fam: DeformationFamily, order: int, v0: float = 0.0):
    """Jets in vhat of xi, B and gamma' around v = v0 (gamma' without constant)."""
    m, sm = fam.m, math.sqrt(fam.m)
    if v0 == 0.0:
        # arctan(sm v): odd powers with alternating signs
        coeffs = {}
        for i in range(1, order + 1, 2):
            coeffs[(0, i)] = (-1.0) ** (i // 2) * sm**i / i
        shat = Jet2.from_terms(coeffs, order)
        s0 = 0.0
        w2 = vpoly([1.0, 0.0, m], order)
    else:
        s0 = fam.arc_parameter(v0)
        denom = vpoly([1.0 + m * v0 * v0, 2.0 * m * v0, m], order)
        shat = (denom.recip() * sm).integrate_v().truncated(order)
        w2 = denom
    C, _, _ = fam.curve.series_at(s0, order)
    chat = Jet3(
        *(vpoly(C[:, i], order).compose(Jet2.zero(order), shat) for i in range(3))
    )
    w = w2.sqrt()
    xi = chat * w
    xi_d = xi.deriv_v()
    xi_t = xi.truncated(order - 1)
    B = xi_t.cross(xi_d) + xi_d * fam.a11
    vv = vpoly([v0, 1.0], order - 1)
    gamma_d = B * vv * (fam.a02 / m)
    return xi, B, gamma_d


def _gamma_value(fam: DeformationFamily, v: float) -> np.ndarray:
    m, sm = fam.m, math.sqrt(fam.m)

    def integrand(t: float) -> np.ndarray:
        s = math.atan(sm * t)
        c, e, n = fam.curve.frame(s)
        w = math.sqrt(1.0 + m * t * t)
        xi_d = (m * t * c + sm * e) / w
        return t * (fam.a11 * xi_d + sm * n)

    return (fam.a02 / m) * adaptive_simpson(integrand, 0.0, v, tol=SIMPSON_TOL)


def ruling_decomposition(fam: DeformationFamily, order: int = 8) -> tuple[Jet3, Jet3]:
    """(gamma, xi) v-jets of the family member seen as a ruled surface."""
    xi, _, gamma_d = _ruling_series(fam, order)
    return gamma_d.integrate_v().truncated(order), xi


def build_crosscap(fam: DeformationFamily, order: int = 6) -> SurfaceMap:
    """Surface map of the family member, with exact evaluator and local jets."""
    work = order + 2
    xi, _, gamma_d = _ruling_series(fam, work)
    gamma = gamma_d.integrate_v()
    u = Jet2.variable("u", work)
    jet = Jet3(
        *(
            (gamma.components()[i].truncated(work) + xi.components()[i] * u)
            for i in range(3)
        )
    ).truncated(order)

    m, sm = fam.m, math.sqrt(fam.m)

    def evaluator(uu: float, vv: float) -> np.ndarray:
        s = math.atan(sm * vv)
        c, _, _ = fam.curve.frame(s)
        xi_v = math.sqrt(1.0 + m * vv * vv) * c
        return _gamma_value(fam, vv) + uu * xi_v

    def local_jet_fn(u0: float, v0: float, want: int) -> Jet3:
        work_l = want + 1
        xi_l, _, gamma_dl = _ruling_series(fam, work_l, v0)
        gamma_l = gamma_dl.integrate_v().truncated(work_l)
        base = _gamma_value(fam, v0) if v0 != 0.0 else np.zeros(3)
        ul = Jet2.variable("u", work_l)
        comps = []
        for i in range(3):
            comp = gamma_l.components()[i] + float(base[i])
            comp = comp + xi_l.components()[i] * (ul + u0)
            comps.append(comp)
        return Jet3(*comps).truncated(want)

    return SurfaceMap(
        jet=jet,
        evaluator=evaluator,
        local_jet_fn=local_jet_fn,
        domain_hint=((-1.0, 1.0), (-1.0, 1.0)),
    )


def degenerate_quadratic(a02: float, a11: float, order: int = 6) -> SurfaceMap:
    """The base member (u, uv, a11 u v + a02 v^2 / 2)."""
    return canonical_crosscap({(0, 2): a02, (1, 1): a11}, order=order)


def degenerate_first_form(a02: float, a11: float, order: int = 6) -> FundamentalForms:
    m = 1.0 + a11 * a11
    n = order - 1
    return FundamentalForms(
        E=Jet2.from_terms({(0, 0): 1.0, (0, 2): m}, n),
        F=Jet2.from_terms({(1, 1): m, (0, 2): a02 * a11}, n),
        G=Jet2.from_terms({(2, 0): m, (1, 1): 2.0 * a02 * a11, (0, 2): a02 * a02}, n),
    )


# ----------------------------------------------------------------------
# closed-form extrinsic data

def second_form_closed(fam: DeformationFamily, u: float, v: float) -> tuple[float, float, float]:
    """(L, M, N) of the family member at (u, v), from the closed forms."""
    a02, a11, m = fam.a02, fam.a11, fam.m
    sm = math.sqrt(m)
    radicand = m * u * u + 2.0 * a02 * a11 * u * v + a02 * a02 * v * v * (1.0 + v * v)
    delta = sm * math.sqrt(max(radicand, 0.0))
    if delta == 0.0:
        raise ChartError("closed second form undefined on the singular locus")
    kap = fam.curve.kappa(fam.arc_parameter(v))
    L = 0.0
    M = -a02 * sm * v / delta
    N = a02 * sm * u / delta + delta * kap / (1.0 + m * v * v) ** 1.5
    return L, M, N


def extrinsic_invariants(kappa0: float, a02: float, a11: float) -> tuple[float, float, float]:
    """(a12, a03, b3) of the member with curvature kappa0 at the cross cap."""
    m = 1.0 + a11 * a11
    sm = math.sqrt(m)
    return (
        kappa0 * m * sm,
        3.0 * a02 * a11 * kappa0 * sm,
        -2.0 * a02 * kappa0 * sm,
    )


# ----------------------------------------------------------------------
# isometry verification

@dataclass(frozen=True)
class IsometryReport:
    jet_max_dev: float
    grid_max_dev: float
    jet_tol: float
    grid_tol: float
    passed: bool


def _first_form_at(f: SurfaceMap, u: float, v: float) -> tuple[float, float, float]:
    jet = f.local_jet(u, v, order=1)
    fu = jet.coeff_vector(1, 0)
    fv = jet.coeff_vector(0, 1)
    return float(fu @ fu), float(fu @ fv), float(fv @ fv)


def verify_isometry(
    f: SurfaceMap,
    g: SurfaceMap,
    grid: tuple[int, int] = (10, 10),
    jet_tol: float = 1e-9,
    grid_tol: float = 1e-6,
) -> IsometryReport:
    """Compare first fundamental forms coefficient-wise and on a grid."""
    ff, fg = first_form(f), first_form(g)
    jet_dev = max(
        ff.E.max_coeff_diff(fg.E),
        ff.F.max_coeff_diff(fg.F),
        ff.G.max_coeff_diff(fg.G),
    )
    (u0, u1), (v0, v1) = f.domain_hint
    nu, nv = grid
    grid_dev = 0.0
    for i in range(nu):
        for j in range(nv):
            uu = u0 + (u1 - u0) * (i + 0.5) / nu
            vv = v0 + (v1 - v0) * (j + 0.5) / nv
            Ef, Ff, Gf = _first_form_at(f, uu, vv)
            Eg, Fg, Gg = _first_form_at(g, uu, vv)
            grid_dev = max(grid_dev, abs(Ef - Eg), abs(Ff - Fg), abs(Gf - Gg))
    return IsometryReport(
        jet_max_dev=float(jet_dev),
        grid_max_dev=float(grid_dev),
        jet_tol=jet_tol,
        grid_tol=grid_tol,
        passed=jet_dev <= jet_tol and grid_dev <= grid_tol,
    )
