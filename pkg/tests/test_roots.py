import itertools

import pytest

from toricorbits import exact_linalg as xl
from toricorbits.errors import IncompleteFanError
from toricorbits.fan import build_fan
from toricorbits.roots import all_hm_pairs, demazure_roots, hm_connected_pairs, semisimple_roots

from conftest import p2_fan, suite


def brute_roots(fan, bound):
    out = set()
    for m in itertools.product(range(-bound, bound + 1), repeat=fan.dim):
        vals = [xl.dot(m, v) for v in fan.rays]
        if vals.count(-1) == 1 and all(v >= 0 for v in vals if v != -1):
            out.add((vals.index(-1) + 1, m))
    return out


def test_p2_roots():
    rs = demazure_roots(p2_fan())
    assert len(rs) == 6
    assert all(r.semisimple for r in rs)
    assert len(semisimple_roots(rs)) == 6


@pytest.mark.parametrize("s", range(1, 6))
def test_hirzebruch_roots(s):
    rs = demazure_roots(suite()[f"H{s}"])
    assert len(rs) == s + 3
    assert len(semisimple_roots(rs)) == 2
    assert sorted(r.m for r in rs if r.semisimple) == [(-1, 0), (1, 0)]


@pytest.mark.parametrize("s", range(2, 6))
def test_hirzebruch_equals_weighted(s):
    h = demazure_roots(suite()[f"H{s}"]).characters()
    w = demazure_roots(suite()[f"W{s}"]).characters()
    assert h == w


@pytest.mark.parametrize("s", range(1, 6))
def test_bsurface_has_no_roots(s):
    assert len(demazure_roots(suite()[f"B{s}"])) == 0


def test_roots_match_box_oracle(suite_fan):
    name, f, _ = suite_fan
    bound = 7 if f.dim <= 2 else 2
    rs = demazure_roots(f)
    assert {(r.eta_index, r.m) for r in rs} == brute_roots(f, bound)
    assert all(r.semisimple == (tuple(-x for x in r.m) in rs.characters()) for r in rs)


def test_incomplete_rejected():
    with pytest.raises(IncompleteFanError):
        demazure_roots(build_fan(2, [(1, 0), (0, 1)], [(1, 2)]))


def test_pair_properties(small_fan):
    _, f, _ = small_fan
    for root in demazure_roots(f):
        for s1, s2 in hm_connected_pairs(f, root):
            assert f.cone_dims[s2] == f.cone_dims[s1] + 1
            assert set(s1) < set(s2)
            assert all(xl.dot(root.m, f.ray(i)) <= 0 for i in s2)
            assert all(xl.dot(root.m, f.ray(i)) == 0 for i in s1)


def test_p2_pairs_connect_everything():
    f = p2_fan()
    edges = all_hm_pairs(f)
    touched = {c for e in edges for c in e}
    assert touched == set(f.cones)


def test_hirzebruch_pair_example():
    f = suite()["H2"]
    rs = demazure_roots(f)
    root = next(r for r in rs if r.m == (0, 1))
    pairs = hm_connected_pairs(f, root)
    # m = (0,1) pairs to -1 on ray 2 only
    assert ((), (2,)) in pairs
    assert all(2 in s2 and 2 not in s1 for s1, s2 in pairs)
