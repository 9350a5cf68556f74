"""Demazure roots and the H_m-connected cone pairs they induce."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import exact_linalg as xl
from .errors import IncompleteFanError, UnboundedSystemError
from .fan import Fan, faces_of, is_complete


@dataclass(frozen=True)
class DemazureRoot:
    m: tuple
    eta_index: int
    semisimple: bool = False


@dataclass(frozen=True)
class RootSet:
    roots: tuple  # grouped by eta_index, lexicographic within a group

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def characters(self) -> set:
        return {r.m for r in self.roots}

    def by_ray(self, i: int) -> list:
        return [r for r in self.roots if r.eta_index == i]


def root_polytope(fan: Fan, i: int) -> xl.HalfspaceSystem:
    """``<m, v_i> = -1`` and ``<m, v_j> >= 0`` for every other ray."""
    eqs = [(fan.ray(i), -1)]
    ineqs = [(tuple(-x for x in fan.ray(j)), 0) for j in range(1, fan.n_rays + 1) if j != i]
    return xl.HalfspaceSystem(fan.dim, ineqs, eqs)


def demazure_roots(fan: Fan) -> RootSet:
    if not is_complete(fan):
        raise IncompleteFanError("root enumeration requires a complete fan")
    raw = []
    for i in range(1, fan.n_rays + 1):
        try:
            pts = xl.lattice_points(root_polytope(fan, i))
        except UnboundedSystemError as exc:
            raise IncompleteFanError(f"root polytope of ray {i} is unbounded") from exc
        raw.extend((i, m) for m in pts)
    chars = {m for _, m in raw}
    roots = tuple(
        DemazureRoot(m, i, tuple(-x for x in m) in chars) for i, m in raw
    )
    return RootSet(roots)


def semisimple_roots(rs: RootSet) -> list:
    chars = rs.characters()
    return [r for r in rs if tuple(-x for x in r.m) in chars]


def hm_connected_pairs(fan: Fan, root: DemazureRoot) -> list:
    """Cone pairs (sigma1, sigma2) with m <= 0 on sigma2 and sigma1 = sigma2 ∩ m⊥ a facet."""
    pairs = []
    for s2 in fan.cones:
        vals = [xl.dot(root.m, fan.ray(i)) for i in s2]
        if any(v > 0 for v in vals):
            continue
        s1 = tuple(i for i, v in zip(s2, vals) if v == 0)
        if s1 == s2:
            continue
        if s1 in fan and fan.cone_dims[s1] == fan.cone_dims[s2] - 1 and s1 in faces_of(fan, s2):
            pairs.append((s1, s2))
    return pairs


def all_hm_pairs(fan: Fan, rs: Optional[RootSet] = None) -> set:
    rs = demazure_roots(fan) if rs is None else rs
    edges = set()
    for root in rs:
        edges.update(hm_connected_pairs(fan, root))
    return edges
