"""Fan symmetries, the class-group automorphisms they induce, Aut(X)-orbits,
and recognition of products of projective spaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import exact_linalg as xl
from .class_group import ClassElement, ClassGroup
from .errors import IncompleteFanError
from .fan import Fan, is_complete
from .monoid import gamma, monoid_eq, upsilon
from .orbits import OrbitClass, classify_aut0
from .roots import RootSet, demazure_roots, semisimple_roots


@dataclass(frozen=True)
class FanSymmetry:
    perm: tuple  # perm[i - 1] = f(i), 1-based
    matrix: tuple  # psi, d x d, psi @ v_i == v_f(i)

    def image(self, cone: Sequence[int]) -> tuple:
        return tuple(sorted(self.perm[i - 1] for i in cone))

    def compose(self, other: "FanSymmetry") -> "FanSymmetry":
        """``self`` after ``other``."""
        perm = tuple(self.perm[j - 1] for j in other.perm)
        return FanSymmetry(perm, xl.matmul(self.matrix, other.matrix))

    def inverse(self) -> "FanSymmetry":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm, 1):
            inv[j - 1] = i
        d = len(self.matrix)
        cols = [xl.solve_integer_system(self.matrix, tuple(int(i == k) for i in range(d)))[0]
                for k in range(d)]
        return FanSymmetry(tuple(inv), xl.transpose(tuple(cols), d))


def _ray_signature(fan: Fan, i: int) -> tuple:
    incident = [len(c) for c in fan.max_cones if i in c]
    two_cones = sum(1 for c in fan.cones if len(c) == 2 and i in c and fan.cone_dims[c] == 2)
    return (len(incident), tuple(sorted(incident)), two_cones)


def _spanning_rays(fan: Fan) -> list:
    basis = []
    for i in range(1, fan.n_rays + 1):
        if xl.rank([fan.ray(j) for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
        if len(basis) == fan.dim:
            break
    return basis


def fan_symmetries(fan: Fan) -> list:
    """All lattice automorphisms preserving the fan, sorted by ray permutation.

    Images are assigned to a fixed spanning set of rays by backtracking; each
    full assignment determines at most one integer matrix.
    """
    d, r = fan.dim, fan.n_rays
    if d == 0:
        return [FanSymmetry((), ())]
    basis = _spanning_rays(fan)
    if len(basis) < d:
        raise ValueError("rays do not span N; the symmetry group is not finite")
    sig = {i: _ray_signature(fan, i) for i in range(1, r + 1)}
    basis_rows = tuple(fan.ray(b) for b in basis)
    ray_index = {v: i for i, v in enumerate(fan.rays, 1)}
    max_set = set(fan.max_cones)
    found = []

    def candidates(k, used):
        for j in range(1, r + 1):
            if j not in used and sig[j] == sig[basis[k]]:
                yield j

    def extend(assigned):
        k = len(assigned)
        if k == d:
            sym = _complete(assigned)
            if sym is not None:
                found.append(sym)
            return
        for j in candidates(k, assigned):
            extend(assigned + [j])

    def _complete(images):
        rows = []
        for c in range(d):
            sol = xl.solve_integer_system(basis_rows, tuple(fan.ray(j)[c] for j in images))
            if sol is None:
                return None
            rows.append(sol[0])
        psi = tuple(rows)
        if abs(xl.det(psi)) != 1:
            return None
        perm = []
        for v in fan.rays:
            j = ray_index.get(xl.matvec(psi, v))
            if j is None:
                return None
            perm.append(j)
        sym = FanSymmetry(tuple(perm), psi)
        if {sym.image(c) for c in fan.max_cones} != max_set:
            return None
        return sym

    extend([])
    return sorted(found, key=lambda s: s.perm)


# ----------------------------------------------------------------------------
# Induced maps on Cl(X)
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassAutomorphism:
    symmetry: FanSymmetry
    group: ClassGroup
    matrix: tuple  # column j: coordinates (residues, then free) of the image of generator j

    def permute_divisor(self, x: Sequence[int]) -> tuple:
        out = [0] * len(x)
        for i, c in enumerate(x):
            out[self.symmetry.perm[i] - 1] = c
        return tuple(out)

    def __call__(self, e: ClassElement) -> ClassElement:
        coords = e.residues + tuple(e.free)
        img = xl.matvec(self.matrix, coords)
        t = len(self.group.torsion)
        return self.group.element(img[t:], img[:t])


def induced_class_map(sym: FanSymmetry, cg: ClassGroup) -> ClassAutomorphism:
    """phi with phi([D_i]) = [D_f(i)], checked to be well defined on Cl(X)."""
    r = cg.n_rays
    perm = sym.perm

    def permute(x):
        out = [0] * r
        for i, c in enumerate(x):
            out[perm[i] - 1] = c
        return tuple(out)

    if cg.rays:
        d = len(cg.rays[0])
        for k in range(d):
            col = tuple(row[k] for row in cg.rays)
            if xl.solve_integer_system(cg.rays, permute(col)) is None:
                raise AssertionError("ray permutation does not preserve principal divisors")
    ngen = len(cg.torsion) + cg.free_rank
    t = len(cg.torsion)
    cols = []
    for j in range(ngen):
        unit = tuple(int(i == j) for i in range(ngen))
        e = cg.element(unit[t:], unit[:t])
        img = cg.class_of_divisor(permute(cg.lift(e)))
        cols.append(img.residues + img.free)
    matrix = xl.transpose(tuple(cols), ngen)
    phi = ClassAutomorphism(sym, cg, matrix)
    for i in range(1, r + 1):
        if phi(cg.divisor_class(i)) != cg.divisor_class(perm[i - 1]):
            raise AssertionError(f"phi([D_{i}]) != [D_{perm[i - 1]}]")
    return phi


def preserves_upsilon(fan: Fan, cg: ClassGroup, sym: FanSymmetry, ups=None) -> bool:
    """Whether phi maps every monoid of Upsilon onto a monoid of Upsilon."""
    ups = upsilon(fan, cg) if ups is None else ups
    for entry in ups:
        s = entry.monoid.complement_indices
        if ups.index_of(gamma(fan, cg, sym.image(s))) is None:
            return False
    return True


# ----------------------------------------------------------------------------
# Aut(X)-orbits
# ----------------------------------------------------------------------------

def classify_aut(fan: Fan, cg: ClassGroup, classes: Sequence[OrbitClass]) -> list:
    """Merge Aut0-classes along fan symmetries; returns lists of OrbitClass."""
    n = len(classes)
    where = {c: k for k, cls in enumerate(classes) for c in cls.cones}
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ups = None
    for sym in fan_symmetries(fan):
        phi = None
        for i, cls in enumerate(classes):
            targets = {where[sym.image(c)] for c in cls.cones}
            if len(targets) != 1:
                raise AssertionError("a fan symmetry splits an Aut0-class")
            (j,) = targets
            if i == j:
                continue
            if phi is None:
                phi = induced_class_map(sym, cg)
                ups = upsilon(fan, cg) if ups is None else ups
                if not preserves_upsilon(fan, cg, sym, ups):
                    raise AssertionError("phi does not preserve Upsilon")
            # phi(Gamma(S)) = Gamma(f(S)) because phi permutes the [D_i]
            image = gamma(fan, cg, sym.image(cls.monoid.complement_indices))
            if not monoid_eq(image, classes[j].monoid):
                raise AssertionError("phi does not carry the class monoid to its target")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(classes[k])
    return [groups[k] for k in sorted(groups)]


def _require_complete(fan):
    if not is_complete(fan):
        raise IncompleteFanError("this operation requires a complete fan")


def is_transitive(fan: Fan, cg: ClassGroup) -> bool:
    _require_complete(fan)
    classes = classify_aut0(fan, cg)
    if len(classes) == 1:
        return True
    return len(classify_aut(fan, cg, classes)) == 1


def decompose_product(fan: Fan, cg: ClassGroup, rs: Optional[RootSet] = None) -> Optional[tuple]:
    """Factor dimensions ``(k_1 <= ... <= k_s)`` if the fan is that of a product
    of projective spaces, else ``None``.

    The answer is confirmed by rebuilding the product fan under the recovered
    lattice splitting.
    """
    _require_complete(fan)
    d, r = fan.dim, fan.n_rays
    rs = demazure_roots(fan) if rs is None else rs
    ss = semisimple_roots(rs)
    if xl.rank([root.m for root in ss]) != d:
        return None

    parent = list(range(r + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for root in ss:
        for j in range(1, r + 1):
            if xl.dot(root.m, fan.ray(j)) == 1:
                a, b = find(root.eta_index), find(j)
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(1, r + 1):
        groups.setdefault(find(i), []).append(i)
    groups = [groups[k] for k in sorted(groups)]

    basis = []
    for g in groups:
        if len(g) < 2:
            return None
        total = tuple(sum(col) for col in zip(*(fan.ray(i) for i in g)))
        if any(total):
            return None
        basis.extend(g[:-1])
    if len(basis) != d or abs(xl.det(tuple(fan.ray(i) for i in basis))) != 1:
        return None

    expected = {
        tuple(sorted(itertools.chain.from_iterable(
            [i for i in g if i != omit] for g, omit in zip(groups, omits))))
        for omits in itertools.product(*groups)
    }
    if expected != set(fan.max_cones):
        return None
    if len(upsilon(fan, cg)) != 1:
        return None
    return tuple(sorted(len(g) - 1 for g in groups))


def describe_product(dims: Sequence[int]) -> str:
    if not dims:
        return "point"
    return " × ".join(f"P^{k}" for k in dims)


__all__ = [
    "ClassAutomorphism",
    "FanSymmetry",
    "classify_aut",
    "decompose_product",
    "describe_product",
    "fan_symmetries",
    "induced_class_map",
    "is_transitive",
    "preserves_upsilon",
]
