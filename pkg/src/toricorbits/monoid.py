"""Monoids Gamma(S) in Cl(X) generated by the classes of rays outside S.

Membership ``[E] in Gamma(S)`` means ``E - sum a_i D_i`` is principal for some
``a_i >= 0`` supported off ``S``, i.e. the polytope

    {m in M : <m, v_j> = E_j for j in S,  <m, v_j> <= E_j otherwise}

contains a lattice point.  It is bounded whenever the fan is complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import exact_linalg as xl
from .class_group import ClassElement, ClassGroup
from .fan import Fan


@dataclass(frozen=True)
class DivisorMonoid:
    complement_indices: tuple  # the ray subset S
    generators: tuple  # [D_i] for i not in S, in index order
    group: ClassGroup = field(repr=False)

    @property
    def generator_indices(self) -> tuple:
        return tuple(i for i in range(1, self.group.n_rays + 1) if i not in self.complement_indices)

    def __contains__(self, e: ClassElement) -> bool:
        return contains(self, e, self.group.lift(e))


@lru_cache(maxsize=None)
def _member(rays: tuple, subset: frozenset, witness: tuple) -> bool:
    if not rays:
        return not any(witness)
    d = len(rays[0])
    eqs, ineqs = [], []
    for j, (v, e) in enumerate(zip(rays, witness), 1):
        (eqs if j in subset else ineqs).append((v, e))
    return xl.has_lattice_point(xl.HalfspaceSystem(d, ineqs, eqs))


def gamma(fan: Fan, cg: ClassGroup, s: Sequence[int]) -> DivisorMonoid:
    """Gamma(S) for an explicit ray subset (pass ``sigma(1)`` for fan cones)."""
    s = tuple(sorted(set(int(i) for i in s)))
    for i in s:
        if not 1 <= i <= fan.n_rays:
            raise IndexError(f"ray index {i} out of range")
    gens = tuple(cg.divisor_class(i) for i in range(1, fan.n_rays + 1) if i not in s)
    return DivisorMonoid(s, gens, cg)


def contains(m: DivisorMonoid, e: ClassElement, witness_divisor: Sequence[int]) -> bool:
    """Exact membership of ``e`` (represented by ``witness_divisor``) in ``m``."""
    witness = tuple(int(x) for x in witness_divisor)
    if m.group.class_of_divisor(witness) != e:
        raise ValueError("witness divisor does not represent the given class")
    return _member(m.group.rays, frozenset(m.complement_indices), witness)


def _indicator(r: int, i: int) -> tuple:
    return tuple(int(j == i) for j in range(1, r + 1))


def generator_in(m: DivisorMonoid, i: int) -> bool:
    """Whether ``[D_i]`` lies in ``m``."""
    if i not in m.complement_indices:
        return True
    return _member(m.group.rays, frozenset(m.complement_indices), _indicator(m.group.n_rays, i))


def monoid_leq(m1: DivisorMonoid, m2: DivisorMonoid) -> bool:
    """Inclusion ``m1`` is contained in ``m2``."""
    if m1.group != m2.group:
        raise ValueError("monoids live in different class groups")
    return all(generator_in(m2, i) for i in m1.generator_indices)


def monoid_eq(m1: DivisorMonoid, m2: DivisorMonoid) -> bool:
    return monoid_leq(m1, m2) and monoid_leq(m2, m1)


@dataclass(frozen=True)
class UpsilonEntry:
    monoid: DivisorMonoid
    cones: tuple


@dataclass(frozen=True)
class UpsilonCollection:
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def index_of(self, m: DivisorMonoid):
        """Position of the entry equal to ``m``, or ``None``."""
        for k, entry in enumerate(self.entries):
            if monoid_eq(entry.monoid, m):
                return k
        return None


def upsilon(fan: Fan, cg: ClassGroup) -> UpsilonCollection:
    """Distinct Gamma(sigma) over all cones, ordered by their lexicographically first cone."""
    groups = []  # [monoid, [cones]]
    for cone in sorted(fan.cones):
        g = gamma(fan, cg, cone)
        for entry in groups:
            if monoid_eq(entry[0], g):
                entry[1].append(cone)
                break
        else:
            groups.append([g, [cone]])
    return UpsilonCollection(tuple(UpsilonEntry(g, tuple(cs)) for g, cs in groups))
