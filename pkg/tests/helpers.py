"""Randomized construction helpers shared by the test modules."""
from __future__ import annotations

import numpy as np

from crosscap import Jet2, SurfaceMap, canonical_crosscap
from crosscap.normalform import NormalForm


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Proper rotation matrix from a sign-fixed QR factorization."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


def random_canonical(rng: np.random.Generator, order: int = 4):
    """Canonical-shape cross cap with random tables; (map, a, b)."""
    a = {
        (0, 2): float(rng.uniform(0.5, 2.5)),
        (2, 0): float(rng.uniform(-1.0, 1.0)),
        (1, 1): float(rng.uniform(-1.0, 1.0)),
    }
    for d in range(3, order + 1):
        for j in range(d + 1):
            a[(j, d - j)] = float(rng.uniform(-1.0, 1.0))
    b = {i: float(rng.uniform(-1.0, 1.0)) for i in range(3, order + 1)}
    return canonical_crosscap(a, b, order=6), a, b


def admissible_diffeo(rng: np.random.Generator, order: int = 6) -> tuple[Jet2, Jet2]:
    """Origin-preserving domain change that keeps the degenerate direction.

    P_v(0) = 0 and both diagonal derivatives positive, so the bracket
    keeps its sign and the null direction of the pull-back metric stays
    along v.
    """
    p = {(1, 0): float(rng.uniform(0.6, 1.4))}
    q = {(0, 1): float(rng.uniform(0.6, 1.4)), (1, 0): float(rng.uniform(-0.5, 0.5))}
    for d in range(2, 4):
        for j in range(d + 1):
            p[(j, d - j)] = float(rng.uniform(-0.3, 0.3))
            q[(j, d - j)] = float(rng.uniform(-0.3, 0.3))
    return Jet2.from_terms(p, order), Jet2.from_terms(q, order)


def scramble(f: SurfaceMap, rng: np.random.Generator) -> SurfaceMap:
    """Rigid motion plus admissible reparametrization of a germ."""
    P, Q = admissible_diffeo(rng, f.jet.order)
    R = random_rotation(rng)
    T = rng.uniform(-1.0, 1.0, size=3)
    return SurfaceMap(jet=f.jet.compose(P, Q).rotated(R).translated(T))


def table_dev(nf: NormalForm, a: dict, b: dict) -> float:
    """Largest deviation between reduced tables and their targets."""
    seen = {(j, k): val for j, k, val in nf.a_table()}
    keys = set(seen) | {key for key in a if sum(key) <= nf.order}
    dev = max((abs(seen.get(k, 0.0) - a.get(k, 0.0)) for k in keys), default=0.0)
    bs = dict(nf.b_table())
    idx = set(bs) | {i for i in b if i <= nf.order}
    return max(dev, max((abs(bs.get(i, 0.0) - b.get(i, 0.0)) for i in idx), default=0.0))


def jet_first_form_at(f: SurfaceMap, u: float, v: float) -> tuple[float, float, float]:
    jet = f.local_jet(u, v, order=1)
    fu = jet.coeff_vector(1, 0)
    fv = jet.coeff_vector(0, 1)
    return float(fu @ fu), float(fu @ fv), float(fv @ fv)


def fd_first_form_at(
    f: SurfaceMap, u: float, v: float, step: float = 1e-5
) -> tuple[float, float, float]:
    """Central-difference first form of the evaluator, the jet oracle."""
    fu = (f(u + step, v) - f(u - step, v)) / (2.0 * step)
    fv = (f(u, v + step) - f(u, v - step)) / (2.0 * step)
    return float(fu @ fu), float(fu @ fv), float(fv @ fv)
