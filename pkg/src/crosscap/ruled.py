"""Ruled surfaces f(u,v) = gamma(v) + u xi(v): normalization, isometric
redeployment of the ruling, and singularity classification.

A ruled surface can always be brought to a normalized shape in which the
ruling direction xi is a unit-speed curve on the unit sphere: rescale u
by |xi(v)| and reparametrize v by the arc length of the scaled ruling.
Writing the directrix derivative in the resulting orthonormal moving
frame,

    gamma'(v) = a(v) xi + b(v) xi' + c(v) (xi x xi'),

the coefficient triple (a, b, c) together with |xi| = |xi'| = 1 pins the
first fundamental form completely:

    E = 1,  F = a,  G = a^2 + b^2 + c^2 + 2 b u + u^2.

Swapping the spherical curve xi for any other unit-speed spherical curve
while keeping (a, b, c) therefore deforms the surface isometrically
(redeploy).  The singular point at the origin is classified by open
criteria on the frame data; developable members (b = c = 0) fall into
the cuspidal edge / swallowtail / cuspidal cross cap trichotomy, and the
criteria being sufficient conditions only, anything failing every test
is reported as unclassified rather than guessed.

Surfaces carrying a spherical-curve backing (built by ``redeploy`` or
``from_frame``) evaluate and expand exactly anywhere in the chart;
purely polynomial data is exact as well, while normalized series without
a backing are exact at the origin and polynomial approximations away
from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .deformation import DeformationFamily, SphericalCurve, ruling_decomposition
from .errors import SingularPointError
from .jets import Jet2, Jet3, vpoly
from .numerics import SIMPSON_TOL, adaptive_simpson
from .surface import SurfaceMap

__all__ = [
    "RuledSurface",
    "FrameCoefficients",
    "from_polynomials",
    "from_frame",
    "from_deformation",
    "is_normalized",
    "normalize",
    "frame_coefficients",
    "reconstruct_directrix",
    "redeploy",
    "classify_singularity",
]

NORMALIZED_TOL = 1e-8


@dataclass(frozen=True)
class FrameCoefficients:
    """Coordinates of gamma' in the frame (xi, xi', xi x xi')."""

    a: Jet2
    b: Jet2
    c: Jet2

    def at(self, v: float) -> tuple[float, float, float]:
        return self.a(0.0, v), self.b(0.0, v), self.c(0.0, v)


@dataclass(frozen=True)
class RuledSurface:
    """Directrix and ruling as jets in v, optionally backed by an exact
    spherical curve plus frame coefficients."""

    gamma: Jet3
    xi: Jet3
    curve: SphericalCurve | None = None
    coeffs: FrameCoefficients | None = None

    @property
    def order(self) -> int:
        return min(self.gamma.order, self.xi.order)

    # ------------------------------------------------------------------
    # pointwise evaluation
    def xi_at(self, v: float) -> np.ndarray:
        if self.curve is not None:
            return self.curve.frame(v)[0]
        return self.xi(0.0, v)

    def _frame_directrix_speed(self, v: float) -> np.ndarray:
        c, e, n = self.curve.frame(v)
        a, b, cc = self.coeffs.at(v)
        return a * c + b * e + cc * n

    def gamma_at(self, v: float) -> np.ndarray:
        if self.curve is not None and self.coeffs is not None:
            base = self.gamma.coeff_vector(0, 0)
            return base + adaptive_simpson(self._frame_directrix_speed, 0.0, v, tol=SIMPSON_TOL)
        return self.gamma(0.0, v)

    def local_ruling(self, v0: float, order: int) -> tuple[Jet3, Jet3]:
        """Jets of (gamma, xi) around v = v0, exact for backed surfaces."""
        if v0 == 0.0:
            return self.gamma.truncated(min(order, self.gamma.order)), self.xi.truncated(
                min(order, self.xi.order)
            )
        if self.curve is not None and self.coeffs is not None:
            C, E, N = self.curve.series_at(v0, order)
            xi_l = Jet3(*(vpoly(C[:, i], order) for i in range(3)))
            xid_l = Jet3(*(vpoly(E[:, i], order) for i in range(3)))
            nu_l = Jet3(*(vpoly(N[:, i], order) for i in range(3)))
            a_l = self.coeffs.a.shifted_origin(0.0, v0).truncated(order)
            b_l = self.coeffs.b.shifted_origin(0.0, v0).truncated(order)
            c_l = self.coeffs.c.shifted_origin(0.0, v0).truncated(order)
            gp_l = (xi_l * a_l + xid_l * b_l + nu_l * c_l).truncated(order - 1)
            gamma_l = gp_l.integrate_v() + Jet3.constant_vector(self.gamma_at(v0), order)
            return gamma_l.truncated(order), xi_l
        return (
            self.gamma.shifted_origin(0.0, v0).truncated(order),
            self.xi.shifted_origin(0.0, v0).truncated(order),
        )

    def as_surface_map(self) -> SurfaceMap:
        n = self.order
        u = Jet2.variable("u", n)
        jet = Jet3(*(g + x * u for g, x in zip(self.gamma.components(), self.xi.components())))

        def evaluator(uu: float, vv: float) -> np.ndarray:
            return self.gamma_at(vv) + uu * self.xi_at(vv)

        def local_jet_fn(u0: float, v0: float, want: int) -> Jet3:
            gl, xl = self.local_ruling(v0, want + 1)
            ul = Jet2.variable("u", want + 1) + u0
            comps = [g + x * ul for g, x in zip(gl.components(), xl.components())]
            return Jet3(*comps).truncated(want)

        return SurfaceMap(
            jet=jet,
            evaluator=evaluator,
            local_jet_fn=local_jet_fn,
            domain_hint=((-1.0, 1.0), (-1.0, 1.0)),
        )


# ----------------------------------------------------------------------
# constructors

def from_polynomials(
    gamma: Sequence[Sequence[float]],
    xi: Sequence[Sequence[float]],
    order: int = 8,
) -> RuledSurface:
    """Ruled surface from polynomial directrix and ruling, one 3-vector per
    power of v."""
    g = np.asarray(gamma, dtype=float).reshape(-1, 3)
    x = np.asarray(xi, dtype=float).reshape(-1, 3)
    order = max(order, g.shape[0] - 1, x.shape[0] - 1)
    return RuledSurface(
        gamma=Jet3(*(vpoly(g[:, i], order) for i in range(3))),
        xi=Jet3(*(vpoly(x[:, i], order) for i in range(3))),
    )


def _frame_build(curve: SphericalCurve, fc: FrameCoefficients, order: int) -> RuledSurface:
    C, E, N = curve.series_at(0.0, order)
    xi = Jet3(*(vpoly(C[:, i], order) for i in range(3)))
    xid = Jet3(*(vpoly(E[:, i], order) for i in range(3)))
    nu = Jet3(*(vpoly(N[:, i], order) for i in range(3)))
    gp = (xi * fc.a + xid * fc.b + nu * fc.c).truncated(order - 1)
    gamma = gp.integrate_v()
    return RuledSurface(gamma=gamma, xi=xi, curve=curve, coeffs=fc)


def from_frame(
    curve: SphericalCurve,
    a: Sequence[float] | float = 0.0,
    b: Sequence[float] | float = 0.0,
    c: Sequence[float] | float = 0.0,
    order: int = 8,
) -> RuledSurface:
    """Ruled surface from a unit-speed spherical ruling and polynomial frame
    coefficients of the directrix derivative."""

    def as_jet(p) -> Jet2:
        if isinstance(p, (int, float)):
            return Jet2.constant(float(p), order)
        return vpoly(p, order)

    fc = FrameCoefficients(a=as_jet(a), b=as_jet(b), c=as_jet(c))
    return _frame_build(curve, fc, order)


def from_deformation(fam: DeformationFamily, order: int = 8) -> RuledSurface:
    """The deformation family member in its natural ruled presentation."""
    gamma, xi = ruling_decomposition(fam, order)
    return RuledSurface(gamma=gamma, xi=xi)


# ----------------------------------------------------------------------
# normalization

def is_normalized(rs: RuledSurface, tol: float = NORMALIZED_TOL) -> bool:
    one = Jet2.constant(1.0, rs.xi.order)
    if rs.xi.dot(rs.xi).max_coeff_diff(one) > tol:
        return False
    xid = rs.xi.deriv_v()
    return xid.dot(xid).max_coeff_diff(Jet2.constant(1.0, xid.order)) <= tol


def _invert_series(sigma: Jet2) -> Jet2:
    """Compositional inverse of a v-series with zero constant term."""
    n = sigma.order
    s1 = sigma.coeff(0, 1)
    if s1 == 0.0:
        raise SingularPointError("series has no linear term; not invertible")
    v = Jet2.variable("v", n)
    tail = sigma - v * s1
    w = v * (1.0 / s1)
    for _ in range(n):
        w = (v - tail.compose(Jet2.zero(n), w)) * (1.0 / s1)
    return w


def normalize(rs: RuledSurface, tol: float = NORMALIZED_TOL) -> RuledSurface:
    """Equivalent surface with |xi| = 1 and |xi'| = 1 as jet identities.

    Rescales u pointwise by |xi(v)| and reparametrizes v by the arc
    length of the unit ruling.  Requires xi(0) != 0 and xi'(0) != 0
    after scaling; the latter failing means the ruling direction is
    stationary and no spherical arc-length chart exists.
    """
    if is_normalized(rs, tol):
        return rs
    n2 = rs.xi.dot(rs.xi)
    if n2.coeff(0, 0) <= 0.0:
        raise SingularPointError("ruling vanishes at v = 0")
    xi1 = rs.xi * n2.sqrt().recip()
    d = xi1.deriv_v()
    speed2 = d.dot(d)
    if speed2.coeff(0, 0) <= tol * tol:
        raise SingularPointError("ruling direction is stationary at v = 0")
    sigma = speed2.sqrt().integrate_v()
    w = _invert_series(sigma)
    zero = Jet2.zero(w.order)
    return RuledSurface(
        gamma=rs.gamma.compose(zero, w),
        xi=xi1.compose(zero, w),
    )


# ----------------------------------------------------------------------
# frame data and redeployment

def frame_coefficients(rs: RuledSurface, tol: float = NORMALIZED_TOL) -> FrameCoefficients:
    """Project gamma' onto the orthonormal frame (xi, xi', xi x xi')."""
    if not is_normalized(rs, tol):
        raise ValueError("frame coefficients need a normalized ruled surface")
    xi = rs.xi
    xid = xi.deriv_v()
    xit = xi.truncated(xid.order)
    nu = xit.cross(xid)
    gp = rs.gamma.deriv_v()
    return FrameCoefficients(a=gp.dot(xit), b=gp.dot(xid), c=gp.dot(nu))


def reconstruct_directrix(fc: FrameCoefficients, rs: RuledSurface) -> Jet3:
    """a xi + b xi' + c (xi x xi'), for checking against gamma'."""
    xid = rs.xi.deriv_v()
    xit = rs.xi.truncated(xid.order)
    return xit * fc.a + xid * fc.b + xit.cross(xid) * fc.c


def redeploy(
    fc: FrameCoefficients,
    new_xi: SphericalCurve | Jet3,
    order: int | None = None,
    tol: float = NORMALIZED_TOL,
) -> RuledSurface:
    """Ruled surface with the same frame coefficients along a new unit-speed
    spherical ruling; isometric to any other surface sharing (a, b, c)."""
    n = order if order is not None else fc.a.order + 1
    if isinstance(new_xi, SphericalCurve):
        return _frame_build(new_xi, fc, n)
    probe = RuledSurface(gamma=Jet3.zero(new_xi.order), xi=new_xi)
    if not is_normalized(probe, tol):
        raise ValueError("redeployment ruling must be a unit-speed spherical curve")
    xid = new_xi.deriv_v()
    xit = new_xi.truncated(xid.order)
    nu = xit.cross(xid)
    gp = (xit * fc.a + xid * fc.b + nu * fc.c).truncated(n - 1)
    return RuledSurface(gamma=gp.integrate_v(), xi=new_xi.truncated(n))


# ----------------------------------------------------------------------
# classification

def _det3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return float(np.linalg.det(np.vstack([a, b, c])))


def classify_singularity(rs: RuledSurface, tol: float = 1e-9) -> str:
    """Classify the origin by the frame criteria.

    Decision order: cross cap on the raw data; then, among developable
    normalized surfaces, cuspidal cross cap, swallowtail, cuspidal edge;
    then regular; everything else is unclassified (the criteria are
    sufficient, not exhaustive).
    """
    gp0 = rs.gamma.partial_vector(0, 1)
    xi0 = rs.xi.coeff_vector(0, 0)
    xid0 = rs.xi.partial_vector(0, 1)
    if np.linalg.norm(gp0) <= tol:
        gpp0 = rs.gamma.partial_vector(0, 2)
        if abs(_det3(gpp0, xi0, xid0)) > tol:
            return "cross_cap"
    try:
        rsn = normalize(rs)
        fc = frame_coefficients(rsn)
    except (SingularPointError, ValueError):
        fc = None
    if fc is not None and fc.b.max_abs() <= tol and fc.c.max_abs() <= tol:
        a0 = fc.a.coeff(0, 0)
        a1 = fc.a.partial(0, 1)
        xi = rsn.xi
        xid = xi.deriv_v()
        nu = xi.truncated(xid.order).cross(xid)
        nu1 = nu.deriv_v()
        nu2 = nu1.deriv_v()
        x0 = xi.coeff_vector(0, 0)
        n0 = nu.coeff_vector(0, 0)
        if (
            abs(_det3(x0, n0, nu1.coeff_vector(0, 0))) <= tol
            and abs(a0) > tol
            and abs(_det3(x0, n0, nu2.coeff_vector(0, 0))) > tol
        ):
            return "cuspidal_cross_cap"
        if abs(a0) <= tol and abs(a1) > tol:
            return "swallowtail"
        if abs(a0) > tol:
            return "cuspidal_edge"
    if np.linalg.norm(np.cross(xi0, gp0)) > tol:
        return "regular"
    return "unclassified"
