"""Isometry invariants of a cross cap germ.

Two independent routes recover the canonical quadratic coefficients.  The
map route evaluates bracket and cross product expressions in the partial
derivatives of f at the origin, valid in any admissible coordinates once
the bracket det(f_u, f_uv, f_vv) is made positive by the domain flip.  The
metric route uses only the first fundamental form: every derivative
entering those expressions is a combination of E, F, G derivatives at the
origin, so the squared bracket, the triple products and finally the
quadratic coefficients come out of three small determinants.

The squared bracket is computed both from the Gram-style determinant in
(E, F, G) derivatives and from the Hessian of h = EG - F^2; the two must
agree, which guards the input against metrics that are not pull-backs of
admissible cross caps.  The derived identity

    a02 = sqrt(E(0,0)) * (h_vv(0,0) / 2)^(3/2) / bracket^2

is exposed separately; note the factor (h_vv/2)^(3/2): the cross product
norm satisfies |f_u x f_vv|^2 = h_vv/2 at the origin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MetricError
from .jets import Jet2
from .normalform import NormalForm
from .surface import DEFAULT_TOL, FundamentalForms, SurfaceMap, origin_derivatives, require_crosscap

ROUTE_TOL = 1e-9


@dataclass(frozen=True)
class IntrinsicTriple:
    a02: float
    a20: float
    a11: float
    delta_sq: float
    delta_sq_hessian: float | None = None


@dataclass(frozen=True)
class FocalConic:
    yy: float
    yz: float
    zz: float
    z: float
    kind: str  # "hyperbola" | "ellipse" | "parabola-degenerate"


@dataclass(frozen=True)
class ComboQuadruple:
    c1: float
    c2: float
    c3: float
    c4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4])


def _det3(rows) -> float:
    return float(np.linalg.det(np.vstack(rows)))


def intrinsic_from_map(f: SurfaceMap, tol: float = DEFAULT_TOL) -> IntrinsicTriple:
    """Quadratic canonical coefficients from derivatives of the map."""
    require_crosscap(f, tol)
    fu, _, fuu, fuv, fvv = origin_derivatives(f.jet)
    delta = _det3([fu, fuv, fvv])
    if delta < 0:
        # admissible flip (u,v) -> (-u,-v)
        fu = -fu
        delta = -delta
    nu_fu = float(np.linalg.norm(fu))
    cross = np.cross(fu, fvv)
    nc = float(np.linalg.norm(cross))
    d2 = delta * delta
    a02 = nu_fu * nc**3 / d2
    br_uu_vv = _det3([fu, fuu, fvv])
    br_uv_uu = _det3([fu, fuv, fuu])
    a20 = nc / (4.0 * nu_fu**3 * d2) * (br_uu_vv**2 + 4.0 * delta * br_uv_uu)
    gram = (fu @ fu) * (fvv @ fuv) - (fu @ fuv) * (fvv @ fu)
    a11 = (2.0 * delta * gram - nc**2 * br_uu_vv) / (2.0 * nu_fu * d2)
    return IntrinsicTriple(a02=float(a02), a20=float(a20), a11=float(a11), delta_sq=float(d2))


def intrinsic_from_metric(forms: FundamentalForms, tol: float = ROUTE_TOL) -> IntrinsicTriple:
    """Quadratic canonical coefficients from the first form alone."""
    E, F, G = forms.E, forms.F, forms.G
    E0 = E.partial(0, 0)
    if E0 <= 0:
        raise MetricError("E(0,0) must be positive")
    Eu, Euv, Evv = E.partial(1, 0), E.partial(1, 1), E.partial(0, 2)
    Fu, Fv = F.partial(1, 0), F.partial(0, 1)
    Fuu, Fuv = F.partial(2, 0), F.partial(1, 1)
    Guu, Guv, Gvv = G.partial(2, 0), G.partial(1, 1), G.partial(0, 2)

    gram = np.array(
        [
            [E0, Fu, Fv],
            [Fu, Guu / 2.0, Guv / 2.0],
            [Fv, Guv / 2.0, Gvv / 2.0],
        ]
    )
    d2 = float(np.linalg.det(gram))

    h = E * G - F * F
    h_vv = h.partial(0, 2)
    h_uu = h.partial(2, 0)
    h_uv = h.partial(1, 1)
    d2_hess = (h_uu * h_vv - h_uv * h_uv) / (4.0 * E0)
    if h_vv < -tol:
        raise MetricError("h_vv(0,0) < 0: metric is not positive semidefinite here")
    if d2 <= tol:
        raise MetricError("metric bracket determinant vanishes: not a cross cap metric")
    if abs(d2 - d2_hess) > max(1.0, abs(d2)) * 1e-9:
        raise MetricError(
            f"bracket determinant {d2:.12e} and Hessian route {d2_hess:.12e} disagree"
        )

    delta = math.sqrt(d2)
    # triple products reconstructed through Gram determinants, divided by the bracket
    m1 = (
        _det3(
            [
                [E0, Eu / 2.0, Fv],
                [Fu, Fuu - Euv / 2.0, Guv / 2.0],
                [Fv, Fuv - Evv / 2.0, Gvv / 2.0],
            ]
        )
        / delta
    )
    m2 = (
        _det3(
            [
                [E0, Fu, Eu / 2.0],
                [Fu, Guu / 2.0, Fuu - Euv / 2.0],
                [Fv, Guv / 2.0, Fuv - Evv / 2.0],
            ]
        )
        / delta
    )
    nc_sq = E0 * Gvv / 2.0 - Fv * Fv  # |f_u x f_vv|^2 = E*G_vv/2 - F_v^2
    if nc_sq <= 0:
        raise MetricError("metric gives |f_u x f_vv|^2 <= 0 at the origin")
    nc = math.sqrt(nc_sq)
    sqrtE = math.sqrt(E0)

    a02 = sqrtE * nc**3 / d2
    a20 = nc / (4.0 * sqrtE**3 * d2) * (m1 * m1 + 4.0 * delta * m2)
    gram2 = E0 * Guv / 2.0 - Fu * Fv
    a11 = (2.0 * delta * gram2 - nc_sq * m1) / (2.0 * sqrtE * d2)
    return IntrinsicTriple(a02=a02, a20=a20, a11=a11, delta_sq=d2, delta_sq_hessian=d2_hess)


def a02_from_height_hessian(forms: FundamentalForms) -> float:
    """a02 via sqrt(E) * (h_vv/2)^(3/2) / bracket^2 with h = EG - F^2."""
    E, F, G = forms.E, forms.F, forms.G
    h = E * G - F * F
    h_vv = h.partial(0, 2)
    if h_vv < 0:
        raise MetricError("h_vv(0,0) < 0")
    triple = intrinsic_from_metric(forms)
    return math.sqrt(E.partial(0, 0)) * (h_vv / 2.0) ** 1.5 / triple.delta_sq


def route_discrepancy(t1: IntrinsicTriple, t2: IntrinsicTriple) -> float:
    return float(
        max(
            abs(t1.a02 - t2.a02),
            abs(t1.a20 - t2.a20),
            abs(t1.a11 - t2.a11),
            abs(t1.delta_sq - t2.delta_sq),
        )
    )


def focal_conic(triple: IntrinsicTriple, tol: float = DEFAULT_TOL) -> FocalConic:
    """Conic of focal points in the normal plane, in (y, z) coordinates:

        y^2 + 2 a11 y z - (a20 a02 - a11^2) z^2 + a02 z = 0.
    """
    a02, a20, a11 = triple.a02, triple.a20, triple.a11
    if a02 <= 0:
        raise ValueError("focal conic needs a02 > 0")
    if a20 > tol:
        kind = "hyperbola"
    elif a20 < -tol:
        kind = "ellipse"
    else:
        kind = "parabola-degenerate"
    return FocalConic(
        yy=1.0,
        yz=2.0 * a11,
        zz=-(a20 * a02 - a11 * a11),
        z=a02,
        kind=kind,
    )


def classify_sign(triple: IntrinsicTriple, tol: float = DEFAULT_TOL) -> str:
    """'elliptic', 'hyperbolic' or 'degenerate' by the sign of a20.

    An elliptic cross cap (a20 > 0) has a hyperbola as focal conic and a
    hyperbolic one (a20 < 0) an ellipse; the crossed naming is standard.
    """
    if triple.a20 > tol:
        return "elliptic"
    if triple.a20 < -tol:
        return "hyperbolic"
    return "degenerate"


def isometry_combos(nf: NormalForm) -> ComboQuadruple:
    """Third-order coefficient combinations shared by isometric cross caps."""
    a02 = nf.a_coeff(0, 2)
    if a02 <= 0:
        raise ValueError("valid normal forms have a02 > 0")
    a20 = nf.a_coeff(2, 0)
    a11 = nf.a_coeff(1, 1)
    b3 = nf.b_coeff(3)
    m = 1.0 + a11 * a11
    return ComboQuadruple(
        c1=nf.a_coeff(0, 3) + 1.5 * a11 * b3,
        c2=nf.a_coeff(1, 2) + m * b3 / (2.0 * a02),
        c3=nf.a_coeff(2, 1) - a11 * a20 * b3 / (6.0 * a02),
        c4=nf.a_coeff(3, 0) - m * a20 * b3 / (2.0 * a02 * a02),
    )
