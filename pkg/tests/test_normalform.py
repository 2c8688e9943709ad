"""Reduction to the canonical coordinate form and its uniqueness."""
from __future__ import annotations

import numpy as np
import pytest

from crosscap import (
    NormalFormError,
    NotACrossCapError,
    canonical_crosscap,
    classify,
    frame,
    quadratic_crosscap,
    reduce_to_normal_form,
    standard_crosscap,
    surface_from_polynomial,
)
from crosscap.jets import Jet2
from crosscap.surface import SurfaceMap

from helpers import random_canonical, scramble, table_dev


def test_reduce_is_identity_on_canonical(rng):
    f, a, b = random_canonical(rng, order=4)
    nf = reduce_to_normal_form(f)
    assert not nf.flipped
    assert nf.residual <= 1e-9
    assert table_dev(nf, a, b) <= 1e-10
    assert np.allclose(nf.rotation, np.eye(3), atol=1e-12)
    assert np.allclose(nf.translation, 0.0, atol=1e-12)


def test_reduce_quadratic_example():
    # z = (u^2 + 2 u v + 3 v^2)/2 carries tables a20 = 1, a11 = 1, a02 = 3
    f = surface_from_polynomial(
        {(1, 0): [1, 0, 0], (1, 1): [0, 1, 1.0], (2, 0): [0, 0, 0.5], (0, 2): [0, 0, 1.5]},
        order=4,
    )
    nf = reduce_to_normal_form(f)
    assert nf.a_coeff(2, 0) == pytest.approx(1.0, abs=1e-12)
    assert nf.a_coeff(1, 1) == pytest.approx(1.0, abs=1e-12)
    assert nf.a_coeff(0, 2) == pytest.approx(3.0, abs=1e-12)


def test_scramble_roundtrip(rng):
    for _ in range(8):
        f, a, b = random_canonical(rng, order=4)
        g = scramble(f, rng)
        nf = reduce_to_normal_form(g, order=4)
        assert table_dev(nf, a, b) <= 1e-7
        assert nf.residual <= 1e-9
        assert nf.a_coeff(0, 2) > 0.0


def test_two_scrambles_agree(rng):
    f, _, _ = random_canonical(rng, order=4)
    nf1 = reduce_to_normal_form(scramble(f, rng), order=4)
    nf2 = reduce_to_normal_form(scramble(f, rng), order=4)
    dev = max(
        abs(v1 - v2)
        for (_, _, v1), (_, _, v2) in zip(nf1.a_table(), nf2.a_table())
    )
    devb = max(abs(v1 - v2) for (_, v1), (_, v2) in zip(nf1.b_table(), nf2.b_table()))
    assert max(dev, devb) <= 1e-8


def test_domain_flip_recovers_same_tables(rng):
    f, a, b = random_canonical(rng, order=4)
    u = Jet2.variable("u", f.jet.order)
    v = Jet2.variable("v", f.jet.order)
    flipped_map = SurfaceMap(jet=f.jet.compose(-u, -v))
    nf = reduce_to_normal_form(flipped_map, order=4)
    assert nf.flipped
    assert table_dev(nf, a, b) <= 1e-9


def test_mirror_of_standard_flips():
    mirrored = surface_from_polynomial(
        {(1, 0): [1, 0, 0], (1, 1): [0, 1, 0], (0, 2): [0, 0, -1.0]}, order=4
    )
    nf = reduce_to_normal_form(mirrored)
    assert nf.flipped
    assert nf.a_coeff(0, 2) == pytest.approx(2.0, abs=1e-12)
    assert nf.a_coeff(2, 0) == pytest.approx(0.0, abs=1e-12)


def test_canonical_map_recomposes(rng):
    f, _, _ = random_canonical(rng, order=4)
    g = scramble(f, rng)
    nf = reduce_to_normal_form(g, order=4)
    rebuilt = nf.canonical_map()
    again = reduce_to_normal_form(rebuilt)
    dev = max(
        abs(v1 - v2)
        for (_, _, v1), (_, _, v2) in zip(nf.a_table(), again.a_table())
    )
    assert dev <= 1e-9
    assert f.jet.truncated(4).max_coeff_diff(rebuilt.jet.truncated(4)) <= 1e-7


def test_classify_flags():
    quad = reduce_to_normal_form(quadratic_crosscap(1.0, 0.5, 2.0))
    flags = classify(quad)
    assert flags == {"degenerate": False, "quadratic": True, "normal_up_to_order": True}

    degen = reduce_to_normal_form(quadratic_crosscap(0.0, 0.5, 2.0))
    assert classify(degen)["degenerate"]

    with_b = reduce_to_normal_form(canonical_crosscap({(0, 2): 2.0}, {4: 1.0}, order=5))
    flags = classify(with_b)
    assert not flags["quadratic"] and not flags["normal_up_to_order"]

    with_a30 = reduce_to_normal_form(canonical_crosscap({(0, 2): 2.0, (3, 0): 1.0}, order=5))
    flags = classify(with_a30)
    assert not flags["quadratic"] and flags["normal_up_to_order"]


def test_frame_standard_and_translated():
    fr = frame(standard_crosscap())
    assert np.allclose(fr.point, 0.0)
    assert np.allclose(fr.tangent, [1.0, 0.0, 0.0])
    assert np.allclose(fr.principal_normal, [0.0, 0.0, 1.0])
    assert np.allclose(fr.conormal, [0.0, 1.0, 0.0])
    point, s1, s2 = fr.principal_plane
    normal = np.cross(s1, s2)
    assert np.allclose(np.cross(normal, fr.conormal), 0.0)
    assert np.linalg.norm(normal) > 0.5
    point, s1, s2 = fr.normal_plane
    assert abs(s1 @ fr.tangent) <= 1e-12 and abs(s2 @ fr.tangent) <= 1e-12

    shifted = SurfaceMap(jet=standard_crosscap().jet.translated([1.0, 2.0, 3.0]))
    assert np.allclose(frame(shifted).point, [1.0, 2.0, 3.0])


def test_reduce_errors():
    with pytest.raises(NotACrossCapError):
        reduce_to_normal_form(
            surface_from_polynomial({(1, 0): [1, 0, 0], (0, 1): [0, 1, 0]}, order=4)
        )
    with pytest.raises(NormalFormError) as err:
        reduce_to_normal_form(standard_crosscap(), order=1)
    assert err.value.degree == 1


def test_reduction_motions_are_rigid(rng):
    f, _, _ = random_canonical(rng, order=3)
    g = scramble(f, rng)
    nf = reduce_to_normal_form(g, order=3)
    assert np.allclose(nf.rotation @ nf.rotation.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(nf.rotation) == pytest.approx(1.0, abs=1e-12)
