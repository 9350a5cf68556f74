"""Aut0(X)-orbits on torus orbits, their closure order, and fan reconstruction.

Two independent classifiers are provided: :func:`classify_aut0` partitions
cones by equality of Gamma(sigma), and :func:`bfs_oracle_classification`
takes connected components of the graph of H_m-connected pairs.  They must
agree; :func:`check_oracle_agreement` asserts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .class_group import ClassGroup
from .errors import IncompleteFanError, NotInDeltaTildeError
from .fan import Fan, cone_geometry, is_complete, is_face
from .monoid import DivisorMonoid, UpsilonCollection, gamma, generator_in, monoid_eq, monoid_leq
from .roots import RootSet, all_hm_pairs


@dataclass(frozen=True)
class OrbitClass:
    monoid: DivisorMonoid
    cones: tuple
    sigma_max: tuple
    dimension_range: tuple  # (min, max) of orbit dimensions d - dim(sigma)


@dataclass(frozen=True)
class OrbitPoset:
    classes: tuple
    order: frozenset  # (i, j): closure of class i is strictly inside closure of class j
    reduction: tuple  # transitive reduction of ``order``, sorted

    def maximal(self) -> list:
        return [j for j in range(len(self.classes)) if not any(i == j for i, _ in self.order)]


def _require_complete(fan):
    if not is_complete(fan):
        raise IncompleteFanError("orbit classification requires a complete fan")


def sigma_max(fan: Fan, cg: ClassGroup, monoid: DivisorMonoid) -> tuple:
    """Cone on the rays whose classes fall outside ``monoid``."""
    cone = tuple(i for i in range(1, fan.n_rays + 1) if not generator_in(monoid, i))
    if cone not in fan:
        raise AssertionError(f"sigma_max {list(cone)} is not a cone of the fan")
    if not monoid_eq(gamma(fan, cg, cone), monoid):
        raise AssertionError(f"Gamma(sigma_max) differs from the class monoid for {list(cone)}")
    return cone


def _make_class(fan, cg, monoid, cones):
    cones = tuple(sorted(cones))
    smax = sigma_max(fan, cg, monoid)
    if smax not in cones:
        raise AssertionError("sigma_max is not in its own class")
    for c in cones:
        if not is_face(fan, smax, c):
            raise AssertionError(f"sigma_max {list(smax)} is not a face of {list(c)}")
    dims = [fan.dim - fan.cone_dims[c] for c in cones]
    return OrbitClass(monoid, cones, smax, (min(dims), max(dims)))


def classify_aut0(fan: Fan, cg: ClassGroup) -> list:
    """Partition the cones by equality of Gamma(sigma)."""
    _require_complete(fan)
    groups = []
    for cone in sorted(fan.cones):
        g = gamma(fan, cg, cone)
        for entry in groups:
            if monoid_eq(entry[0], g):
                entry[1].append(cone)
                break
        else:
            groups.append([g, [cone]])
    return [_make_class(fan, cg, g, cs) for g, cs in groups]


def bfs_oracle_classification(fan: Fan, rs: Optional[RootSet] = None) -> list:
    """Connected components of the H_m-connected-pair graph on the fan's cones.

    Components are sorted lists of cones, ordered by their smallest cone.
    """
    _require_complete(fan)
    edges = all_hm_pairs(fan, rs)
    adj = {c: set() for c in fan.cones}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = set()
    comps = []
    for start in sorted(fan.cones):
        if start in seen:
            continue
        comp, queue = [], [start]
        seen.add(start)
        while queue:
            c = queue.pop()
            comp.append(c)
            for nb in adj[c]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        comps.append(sorted(comp))
    return comps


def classes_from_partition(fan: Fan, cg: ClassGroup, partition: Sequence[Sequence]) -> list:
    """Annotate an externally computed partition with monoids and sigma_max."""
    return [_make_class(fan, cg, gamma(fan, cg, min(part)), part) for part in partition]


def check_oracle_agreement(fan: Fan, cg: ClassGroup, rs: Optional[RootSet] = None) -> bool:
    a = [list(c.cones) for c in classify_aut0(fan, cg)]
    b = bfs_oracle_classification(fan, rs)
    return a == b


def closure_poset(classes: Sequence[OrbitClass]) -> OrbitPoset:
    """Closure order on Aut0-orbits, equal to inclusion of class monoids."""
    n = len(classes)
    order = set()
    for i in range(n):
        for j in range(n):
            if i != j and monoid_leq(classes[i].monoid, classes[j].monoid):
                order.add((i, j))
    reduction = sorted(
        (i, j) for i, j in order
        if not any((i, k) in order and (k, j) in order for k in range(n))
    )
    return OrbitPoset(tuple(classes), frozenset(order), tuple(reduction))


def in_delta_tilde(fan: Fan, s: Sequence[int]) -> bool:
    """Whether ``s`` generates a pointed cone whose extremal rays are exactly ``s``."""
    s = tuple(sorted(s))
    geo = cone_geometry(fan.vectors(s))
    return geo.pointed and len(geo.extremal) == len(s)


def cone_recognition(fan: Fan, cg: ClassGroup, ups: UpsilonCollection, s: Sequence[int]) -> bool:
    """Decide ``cone(s) in fan`` from Upsilon alone: Gamma(s) must be one of its monoids."""
    s = tuple(sorted(set(s)))
    if not in_delta_tilde(fan, s):
        raise NotInDeltaTildeError(
            f"rays {list(s)} do not generate a pointed cone with exactly these extremal rays"
        )
    return ups.index_of(gamma(fan, cg, s)) is not None


__all__ = [
    "OrbitClass",
    "OrbitPoset",
    "bfs_oracle_classification",
    "check_oracle_agreement",
    "classes_from_partition",
    "classify_aut0",
    "closure_poset",
    "cone_recognition",
    "in_delta_tilde",
    "sigma_max",
]
