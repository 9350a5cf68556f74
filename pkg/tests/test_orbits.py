import itertools

import pytest

from toricorbits.errors import IncompleteFanError, NotInDeltaTildeError
from toricorbits.fan import build_fan, is_face
from toricorbits.monoid import upsilon
from toricorbits.orbits import (
    bfs_oracle_classification,
    check_oracle_agreement,
    classes_from_partition,
    classify_aut0,
    closure_poset,
    cone_recognition,
    in_delta_tilde,
)
from toricorbits import compute_class_group

from conftest import suite


def classes(name):
    f = suite()[name]
    cg = compute_class_group(f)
    return f, cg, classify_aut0(f, cg)


def test_p2_single_class():
    f, _, cs = classes("P2")
    assert len(cs) == 1
    assert cs[0].cones == tuple(sorted(f.cones))
    assert cs[0].sigma_max == ()
    assert cs[0].dimension_range == (0, 2)


@pytest.mark.parametrize("s", range(1, 6))
def test_hirzebruch_classes(s):
    _, _, cs = classes(f"H{s}")
    assert sorted(len(c.cones) for c in cs) == [3, 6]
    small = next(c for c in cs if len(c.cones) == 3)
    assert small.sigma_max == (4,)
    assert set(small.cones) == {(4,), (1, 4), (3, 4)}


@pytest.mark.parametrize("s", range(2, 6))
def test_weighted_classes(s):
    _, _, cs = classes(f"W{s}")
    assert len(cs) == 2
    single = next(c for c in cs if len(c.cones) == 1)
    assert single.cones == ((1, 3),)
    assert single.sigma_max == (1, 3)


@pytest.mark.parametrize("s", range(1, 6))
def test_bsurface_classes(s):
    f, _, cs = classes(f"B{s}")
    assert len(cs) == 9
    assert all(c.cones == (c.sigma_max,) for c in cs)


def test_sigma_max_is_face_of_every_member(suite_fan):
    _, f, cg = suite_fan
    for c in classify_aut0(f, cg):
        assert all(is_face(f, c.sigma_max, cone) for cone in c.cones)
        lo, hi = c.dimension_range
        assert hi == f.dim - f.cone_dims[c.sigma_max]
        assert lo <= hi


def test_oracle_agreement(suite_fan):
    _, f, cg = suite_fan
    assert check_oracle_agreement(f, cg)
    part = bfs_oracle_classification(f)
    rebuilt = classes_from_partition(f, cg, part)
    assert [c.cones for c in rebuilt] == [c.cones for c in classify_aut0(f, cg)]


def test_incomplete_rejected():
    f = build_fan(2, [(1, 0), (0, 1)], [(1, 2)])
    with pytest.raises(IncompleteFanError):
        bfs_oracle_classification(f)


def _open_index(cs):
    return next(k for k, c in enumerate(cs) if () in c.cones)


@pytest.mark.parametrize("name", [f"H{s}" for s in range(1, 6)] + [f"W{s}" for s in range(2, 6)])
def test_two_chain(name):
    _, _, cs = classes(name)
    poset = closure_poset(cs)
    top = _open_index(cs)
    assert poset.reduction == ((1 - top, top),)
    assert poset.maximal() == [top]


def test_single_class_poset():
    _, _, cs = classes("P2")
    poset = closure_poset(cs)
    assert poset.order == frozenset() and poset.maximal() == [0]


@pytest.mark.parametrize("s", range(1, 6))
def test_bsurface_anti_isomorphic_to_faces(s):
    f, _, cs = classes(f"B{s}")
    poset = closure_poset(cs)
    cones = [c.sigma_max for c in cs]
    for i, j in itertools.permutations(range(len(cs)), 2):
        expected = cones[i] != cones[j] and is_face(f, cones[j], cones[i])
        assert ((i, j) in poset.order) == expected


def test_poset_transitive(small_fan):
    _, f, cg = small_fan
    order = closure_poset(classify_aut0(f, cg)).order
    for (a, b), (c, d) in itertools.product(order, repeat=2):
        if b == c:
            assert (a, d) in order
    assert not any((b, a) in order for a, b in order)


def test_delta_tilde_examples():
    f = suite()["B2"]
    assert in_delta_tilde(f, (1, 2))
    assert not in_delta_tilde(f, (1, 3))
    assert in_delta_tilde(f, ())
    w = suite()["W3"]
    assert not in_delta_tilde(w, (1, 2, 3))


@pytest.mark.parametrize("s", range(1, 4))
def test_recognition_rejects_opposite_rays(s):
    f = suite()[f"B{s}"]
    cg = compute_class_group(f)
    with pytest.raises(NotInDeltaTildeError):
        cone_recognition(f, cg, upsilon(f, cg), (1, 3))


def test_recognition_sweep(suite_fan):
    _, f, cg = suite_fan
    ups = upsilon(f, cg)
    checked = 0
    for k in range(f.n_rays + 1):
        for s in itertools.combinations(range(1, f.n_rays + 1), k):
            if not in_delta_tilde(f, s):
                continue
            assert cone_recognition(f, cg, ups, s) == (s in f)
            checked += 1
    assert checked >= len(f.cones)


def test_recognition_finds_non_fan_cone():
    f = suite()["H3"]
    cg = compute_class_group(f)
    ups = upsilon(f, cg)
    # rays (0,-1) and (0,1) are opposite, rays 1 and 3 span a pointed cone
    # that is not in the fan for s = 3
    assert in_delta_tilde(f, (1, 3))
    assert not cone_recognition(f, cg, ups, (1, 3))
