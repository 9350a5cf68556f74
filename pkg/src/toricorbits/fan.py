"""Fans: rays, cones, faces, walls and the standard example families.

Cones are sorted tuples of 1-based ray indices; the empty tuple is the zero
cone.  Geometric data such as facet normals is recomputed on demand from the
ray vectors and memoized.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import exact_linalg as xl
from .errors import ConeNotInFanError, FanValidationError

Cone = tuple  # sorted tuple of 1-based ray indices


def primitive_vector(v: Sequence[int]) -> tuple:
    """Primitive lattice vector on the ray through ``v``."""
    v = tuple(int(x) for x in v)
    if not any(v):
        raise FanValidationError("zero vector has no primitive generator")
    return xl.primitive(v)


# ----------------------------------------------------------------------------
# Geometry of a single cone given by generators
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeGeometry:
    """Face structure of ``cone(vectors)``; index sets refer to positions in ``vectors``."""

    dim: int
    facets: tuple  # ((frozenset of positions, inward normal), ...)
    faces: frozenset  # frozensets of positions, including full and minimal face
    pointed: bool
    extremal: frozenset  # positions that span an extremal ray

    @property
    def minimal_face(self) -> frozenset:
        return min(self.faces, key=len)


@lru_cache(maxsize=None)
def cone_geometry(vectors: tuple) -> ConeGeometry:
    """Facets and faces of the cone generated by ``vectors`` (a tuple of int tuples).

    A facet is found for every (dim - 1)-subset of linearly independent
    generators whose hyperplane inside the linear span supports the cone.
    """
    n = len(vectors)
    k = xl.rank(vectors)
    allidx = frozenset(range(n))
    if k == 0:
        return ConeGeometry(0, (), frozenset([allidx]), True, frozenset())
    d = len(vectors[0])
    facets = {}
    for sub in itertools.combinations(range(n), k - 1):
        rows = [vectors[i] for i in sub]
        if xl.rank(rows) != k - 1:
            continue
        basis = xl.integer_kernel(rows, ncols=d)
        # the kernel modulo the span's annihilator is one-dimensional
        normal = next(w for w in basis if any(xl.dot(w, v) for v in vectors))
        values = [xl.dot(normal, v) for v in vectors]
        if any(x < 0 for x in values):
            if any(x > 0 for x in values):
                continue
            normal = tuple(-x for x in normal)
        zero = frozenset(i for i in range(n) if xl.dot(normal, vectors[i]) == 0)
        facets.setdefault(zero, normal)
    faces = {allidx}
    frontier = set(facets)
    while frontier:
        faces |= frontier
        nxt = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h not in faces:
                    nxt.add(h)
        frontier = nxt
    minimal = frozenset.intersection(allidx, *facets) if facets else allidx
    pointed = xl.rank([vectors[i] for i in minimal]) == 0
    extremal = set()
    if pointed:
        for i in range(n):
            containing = [f for f in facets if i in f]
            face = frozenset.intersection(allidx, *containing) if containing else allidx
            if xl.rank([vectors[j] for j in face]) == 1:
                extremal.add(i)
    return ConeGeometry(k, tuple(facets.items()), frozenset(faces), pointed, frozenset(extremal))


def cone_dimension(vectors: Iterable[Sequence[int]]) -> int:
    return xl.rank(list(vectors))


# ----------------------------------------------------------------------------
# Fan
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    """A validated fan.  Build with :func:`build_fan`, not directly."""

    dim: int
    rays: tuple
    max_cones: tuple
    cones: tuple  # every cone, ordered by dimension then lexicographically
    walls: tuple  # (cone1, cone2, shared facet) for maximal cones sharing a facet
    cone_dims: dict = field(compare=False, hash=False, repr=False)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray(self, i: int) -> tuple:
        return self.rays[i - 1]

    def vectors(self, cone: Sequence[int]) -> tuple:
        return tuple(self.rays[i - 1] for i in cone)

    def cone_dim(self, cone: Sequence[int]) -> int:
        return self.cone_dims[tuple(cone)]

    def __contains__(self, cone) -> bool:
        return tuple(cone) in self.cone_dims

    def cones_of_dim(self, k: int) -> list:
        return [c for c in self.cones if self.cone_dims[c] == k]

    def lex_cones(self) -> list:
        return sorted(self.cones)


def _check_separated(fan_rays, c1, c2):
    """Whether cone(c1) and cone(c2) meet exactly in their common listed face.

    Equivalent to a linear functional vanishing on the shared rays, positive on
    the rest of c1 and negative on the rest of c2.
    """
    if not fan_rays:
        return True
    d = len(fan_rays[0])
    common = set(c1) & set(c2)
    eqs = [(fan_rays[i - 1], 0) for i in common]
    ineqs = [(tuple(-x for x in fan_rays[i - 1]), -1) for i in c1 if i not in common]
    ineqs += [(fan_rays[i - 1], -1) for i in c2 if i not in common]
    return xl.is_feasible(xl.HalfspaceSystem(d, ineqs, eqs))


def build_fan(dim: int, rays: Sequence[Sequence[int]], max_cones: Iterable[Iterable[int]]) -> Fan:
    """Validate fan data and return the full face-closed :class:`Fan`.

    ``max_cones`` use 1-based ray indices and must list exactly the extremal
    rays of each cone.  Invalid data raises :class:`FanValidationError`.
    """
    dim = int(dim)
    if dim < 0:
        raise FanValidationError("lattice rank must be nonnegative")
    rays = tuple(tuple(int(x) for x in v) for v in rays)
    seen = {}
    for i, v in enumerate(rays, 1):
        if len(v) != dim:
            raise FanValidationError(f"ray {i} has length {len(v)}, expected {dim}", ray=i)
        if not any(v):
            raise FanValidationError(f"ray {i} is zero", ray=i)
        if math.gcd(*v) != 1:
            raise FanValidationError(f"ray {i} not primitive", ray=i)
        if v in seen:
            raise FanValidationError(f"ray {i} duplicates ray {seen[v]}", ray=i)
        seen[v] = i

    cones_in = []
    for ci, c in enumerate(max_cones, 1):
        c = tuple(int(x) for x in c)
        if len(set(c)) != len(c):
            raise FanValidationError(f"cone {ci} repeats a ray index", cone=ci)
        for i in c:
            if not 1 <= i <= len(rays):
                raise FanValidationError(f"cone {ci} refers to missing ray {i}", cone=ci, ray=i)
        c = tuple(sorted(c))
        for cj, other in enumerate(cones_in, 1):
            if other == c:
                raise FanValidationError(f"duplicate maximal cone {ci} (same as cone {cj})", cone=ci)
        cones_in.append(c)
    if not cones_in:
        raise FanValidationError("a fan needs at least one cone")

    for ci, c in enumerate(cones_in, 1):
        geo = cone_geometry(tuple(rays[i - 1] for i in c))
        if not geo.pointed:
            raise FanValidationError(f"cone {ci} is not pointed", cone=ci)
        for pos, i in enumerate(c):
            if pos not in geo.extremal:
                raise FanValidationError(f"ray {i} is not an extremal ray of cone {ci}", cone=ci, ray=i)

    for (ai, a), (bi, b) in itertools.combinations(enumerate(cones_in, 1), 2):
        if set(a) <= set(b) or set(b) <= set(a):
            small = ai if set(a) <= set(b) else bi
            raise FanValidationError(f"listed cone {small} is not maximal", cone=small)
        if not _check_separated(rays, a, b):
            raise FanValidationError(
                f"cones {ai} and {bi} do not intersect in a common face", cone=bi
            )

    used = set(itertools.chain.from_iterable(cones_in))
    for i in range(1, len(rays) + 1):
        if i not in used:
            raise FanValidationError(f"ray {i} lies in no maximal cone", ray=i)

    cone_dims = {}
    for c in cones_in:
        vecs = tuple(rays[i - 1] for i in c)
        geo = cone_geometry(vecs)
        for face in geo.faces:
            fc = tuple(sorted(c[p] for p in face))
            if fc not in cone_dims:
                cone_dims[fc] = xl.rank([rays[i - 1] for i in fc])
    cones = tuple(sorted(cone_dims, key=lambda c: (cone_dims[c], c)))

    walls = []
    maxes = tuple(sorted(cones_in))
    for a, b in itertools.combinations(maxes, 2):
        shared = tuple(sorted(set(a) & set(b)))
        if cone_dims[shared] == cone_dims[a] - 1 == cone_dims[b] - 1:
            walls.append((a, b, shared))
    return Fan(dim, rays, maxes, cones, tuple(walls), cone_dims)


def faces_of(fan: Fan, cone: Sequence[int]) -> list:
    """All faces of a fan cone, from the zero cone up to the cone itself."""
    cone = tuple(sorted(cone))
    if cone not in fan:
        raise ConeNotInFanError(f"cone {list(cone)} is not in the fan")
    geo = cone_geometry(fan.vectors(cone))
    faces = {tuple(sorted(cone[p] for p in f)) for f in geo.faces}
    return sorted(faces, key=lambda c: (fan.cone_dims[c], c))


def facets_of(fan: Fan, cone: Sequence[int]) -> list:
    k = fan.cone_dim(cone)
    return [f for f in faces_of(fan, cone) if fan.cone_dims[f] == k - 1]


def is_face(fan: Fan, face: Sequence[int], cone: Sequence[int]) -> bool:
    return tuple(sorted(face)) in set(faces_of(fan, cone))


def is_complete(fan: Fan) -> bool:
    """Support equals N_Q: full-dimensional maximal cones, every wall shared twice."""
    d = fan.dim
    if any(fan.cone_dims[c] != d for c in fan.max_cones):
        return False
    for tau in fan.cones_of_dim(d - 1) if d >= 1 else []:
        n = sum(1 for c in fan.max_cones if set(tau) <= set(c))
        if n != 2:
            return False
    return True


@dataclass(frozen=True)
class FanProperties:
    simplicial: bool
    smooth: bool


def fan_properties(fan: Fan) -> FanProperties:
    simplicial = all(len(c) == fan.cone_dims[c] for c in fan.cones)
    smooth = simplicial
    if smooth:
        for c in fan.max_cones:
            if not c:
                continue
            snf = xl.smith_normal_form(fan.vectors(c))
            if any(x != 1 for x in snf.invariant_factors):
                smooth = False
                break
    return FanProperties(simplicial, smooth)


# ----------------------------------------------------------------------------
# Example families and products
# ----------------------------------------------------------------------------

def projective_space(n: int) -> Fan:
    if n < 1:
        raise ValueError("projective_space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = itertools.combinations(range(1, n + 2), n)
    return build_fan(n, rays, cones)


def hirzebruch(s: int) -> Fan:
    if s < 1:
        raise ValueError("hirzebruch needs s >= 1")
    return build_fan(2, [(1, 0), (0, -1), (-1, s), (0, 1)], [(1, 2), (2, 3), (3, 4), (4, 1)])


def weighted_p11s(s: int) -> Fan:
    if s < 2:
        raise ValueError("weighted_p11s needs s >= 2")
    return build_fan(2, [(1, 0), (0, -1), (-1, s)], [(1, 2), (2, 3), (3, 1)])


def b_surface(s: int) -> Fan:
    if s < 1:
        raise ValueError("b_surface needs s >= 1")
    return build_fan(2, [(s, 1), (s, -1), (-s, -1), (-s, 1)], [(1, 2), (2, 3), (3, 4), (4, 1)])


def point_fan() -> Fan:
    """The fan of a point: rank 0, no rays, just the zero cone."""
    return build_fan(0, [], [()])


FAMILIES = {
    "pp": projective_space,
    "projective_space": projective_space,
    "hirzebruch": hirzebruch,
    "wp11s": weighted_p11s,
    "weighted_p11s": weighted_p11s,
    "bsurface": b_surface,
    "b_surface": b_surface,
}


def make_family(family: str, param: int) -> Fan:
    try:
        ctor = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return ctor(int(param))


def product_fan(f1: Fan, f2: Fan) -> Fan:
    """Fan of the product variety, living in N1 + N2."""
    z1, z2 = (0,) * f1.dim, (0,) * f2.dim
    rays = [v + z2 for v in f1.rays] + [z1 + w for w in f2.rays]
    r1 = f1.n_rays
    cones = [a + tuple(i + r1 for i in b) for a in f1.max_cones for b in f2.max_cones]
    return build_fan(f1.dim + f2.dim, rays, cones)
