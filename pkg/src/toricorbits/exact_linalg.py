"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples of Python ints, so every intermediate value
is an unbounded integer.  Nothing here touches floating point.

The polyhedral routines work on :class:`HalfspaceSystem` objects and use
Fourier-Motzkin elimination over the rationals.  That is exponential in the
worst case but exact and perfectly adequate in dimension <= 6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import UnboundedSystemError

IntMatrix = tuple  # tuple[tuple[int, ...], ...]
IntVector = tuple  # tuple[int, ...]


# ----------------------------------------------------------------------------
# Basic matrix helpers
# ----------------------------------------------------------------------------

def as_matrix(rows) -> IntMatrix:
    """Coerce a nested sequence of integers into an immutable IntMatrix."""
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def transpose(a: IntMatrix, ncols: Optional[int] = None) -> IntMatrix:
    """Transpose; ``ncols`` is needed only when ``a`` has no rows."""
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer vectors."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f, g = m[i][c], m[r][c]
                m[i] = [g * x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = math.gcd(*v) if len(v) else 0
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


# ----------------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.V))))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)

    @property
    def invariant_factors(self) -> tuple:
        return tuple(x for x in self.diagonal if x != 0)


def smith_normal_form(a) -> SmithDecomposition:
    """Smith normal form with transforms.

    The diagonal is ``d_1 | d_2 | ... | d_t`` (all positive) followed by zeros.
    Output is deterministic for equal input.
    """
    return _smith(as_matrix(a))


@lru_cache(maxsize=4096)
def _smith(a: IntMatrix) -> SmithDecomposition:
    m = len(a)
    n = len(a[0]) if a else 0
    A = [list(r) for r in a]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder sits in row/column t; make it the pivot
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                        best = i
                bi = best
                bj = None
                for j in range(t, n):
                    if A[t][j] and (bj is None or abs(A[t][j]) < abs(A[t][bj])):
                        bj = j
                if abs(A[t][bj]) < abs(A[bi][t]):
                    swap_cols(t, bj)
                else:
                    swap_rows(t, bi)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(as_matrix(U), tuple(tuple(r) for r in A), as_matrix(V))


# ----------------------------------------------------------------------------
# Linear Diophantine systems
# ----------------------------------------------------------------------------

def solve_integer_system(a, b: Sequence[int]):
    """Solve ``a @ x == b`` over the integers.

    Returns ``(x, kernel)`` where ``x`` is one integer solution and ``kernel``
    is a basis of the integer kernel of ``a``, or ``None`` when no integer
    solution exists (whether or not a rational one does).
    """
    a = as_matrix(a)
    b = tuple(int(x) for x in b)
    if len(b) != len(a):
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {len(a)} rows")
    if not a:
        raise ValueError("matrix with no rows has unknown column count")
    n = len(a[0])
    dec = smith_normal_form(a)
    c = matvec(dec.U, b)
    t = dec.rank
    y = [0] * n
    for i, ci in enumerate(c):
        if i < t:
            q, r = divmod(ci, dec.S[i][i])
            if r:
                return None
            y[i] = q
        elif ci:
            return None
    x = matvec(dec.V, y)
    vt = transpose(dec.V, n)
    kernel = tuple(vt[j] for j in range(t, n))
    return x, kernel


def integer_kernel(a, ncols: Optional[int] = None) -> tuple:
    """Basis of the integer kernel of ``a``; ``ncols`` required when ``a`` is empty."""
    a = as_matrix(a)
    if not a:
        return identity(ncols or 0)
    return solve_integer_system(a, (0,) * len(a))[1]


# ----------------------------------------------------------------------------
# Rational halfspace systems
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfspaceSystem:
    """``<a, x> <= b`` for each inequality and ``<a, x> == b`` for each equality."""

    dim: int
    inequalities: tuple = ()
    equalities: tuple = ()

    def __post_init__(self):
        def norm(rows):
            out = []
            for a, b in rows:
                a = tuple(a)
                if len(a) != self.dim:
                    raise ValueError(f"constraint {a} does not match dimension {self.dim}")
                out.append((a, b))
            return tuple(out)

        object.__setattr__(self, "inequalities", norm(self.inequalities))
        object.__setattr__(self, "equalities", norm(self.equalities))

    def satisfied_by(self, x: Sequence) -> bool:
        return all(dot(a, x) <= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equalities
        )


RationalHalfspaceSystem = HalfspaceSystem


def _normalize(a, b):
    """Scale a constraint to coprime integers (positive scale only)."""
    a = [Fraction(x) for x in a]
    b = Fraction(b)
    den = math.lcm(*(x.denominator for x in a), b.denominator)
    ai = [int(x * den) for x in a]
    bi = int(b * den)
    g = math.gcd(*ai, bi)
    if g > 1:
        ai = [x // g for x in ai]
        bi //= g
    return tuple(ai), bi


class _Infeasible(Exception):
    pass


def _eliminate(ineqs: set, eqs: set, k: int):
    """Project out variable ``k``; raise ``_Infeasible`` on a contradiction."""
    pivot = None
    for e in sorted(eqs):
        if e[0][k]:
            pivot = e
            break
    new_ineqs, new_eqs = set(), set()
    if pivot is not None:
        pa, pb = pivot
        pk = pa[k]
        s = 1 if pk > 0 else -1
        for a, b in ineqs:
            if a[k]:
                # |pk| * c - sign(pk) * c_k * pivot
                c = a[k]
                na = tuple(abs(pk) * x - s * c * y for x, y in zip(a, pa))
                nb = abs(pk) * b - s * c * pb
                new_ineqs.add(_normalize(na, nb))
            else:
                new_ineqs.add((a, b))
        for a, b in eqs:
            if (a, b) == pivot:
                continue
            if a[k]:
                c = a[k]
                na = tuple(pk * x - c * y for x, y in zip(a, pa))
                nb = pk * b - c * pb
                na, nb = _normalize(na, nb)
                new_eqs.add(_canonical_eq(na, nb))
            else:
                new_eqs.add((a, b))
    else:
        new_eqs = set(eqs)
        pos = [c for c in ineqs if c[0][k] > 0]
        neg = [c for c in ineqs if c[0][k] < 0]
        new_ineqs = {c for c in ineqs if c[0][k] == 0}
        for pa, pb in pos:
            for na_, nb_ in neg:
                p, q = pa[k], -na_[k]
                a = tuple(q * x + p * y for x, y in zip(pa, na_))
                b = q * pb + p * nb_
                new_ineqs.add(_normalize(a, b))
    return _prune(new_ineqs, new_eqs)


def _canonical_eq(a, b):
    # equalities are sign-ambiguous; fix the first nonzero coefficient positive
    for x in a:
        if x:
            if x < 0:
                return tuple(-y for y in a), -b
            break
    return a, b


def _prune(ineqs: set, eqs: set):
    out_i, out_e = set(), set()
    for a, b in ineqs:
        if not any(a):
            if b < 0:
                raise _Infeasible
        else:
            out_i.add((a, b))
    for a, b in eqs:
        if not any(a):
            if b != 0:
                raise _Infeasible
        else:
            out_e.add((a, b))
    return out_i, out_e


def _initial(sys: HalfspaceSystem):
    ineqs = {_normalize(a, b) for a, b in sys.inequalities}
    eqs = {_canonical_eq(*_normalize(a, b)) for a, b in sys.equalities}
    return _prune(ineqs, eqs)


def _interval(ineqs, eqs, j):
    """Bounds on variable ``j`` from constraints mentioning only ``j``."""
    lo, hi = None, None
    for a, b in eqs:
        v = Fraction(b, a[j])
        lo = v if lo is None else max(lo, v)
        hi = v if hi is None else min(hi, v)
    for a, b in ineqs:
        v = Fraction(b, a[j])
        if a[j] > 0:
            hi = v if hi is None else min(hi, v)
        else:
            lo = v if lo is None else max(lo, v)
    return lo, hi


@dataclass(frozen=True)
class CoordinateBounds:
    """Per-coordinate exact bounds; ``None`` on a side means unbounded there."""

    empty: bool
    intervals: tuple = field(default=())

    @property
    def bounded(self) -> bool:
        return self.empty or all(lo is not None and hi is not None for lo, hi in self.intervals)


def coordinate_bounds(sys: HalfspaceSystem, order: Optional[Sequence[int]] = None) -> CoordinateBounds:
    """Exact min and max of every coordinate over the rational solution set.

    ``order`` fixes the sequence in which the other variables are eliminated;
    the result does not depend on it.
    """
    n = sys.dim
    order = list(range(n)) if order is None else list(order)
    try:
        ineqs, eqs = _initial(sys)
        intervals = []
        for j in range(n):
            ci, ce = ineqs, eqs
            for k in order:
                if k != j:
                    ci, ce = _eliminate(ci, ce, k)
            lo, hi = _interval(ci, ce, j)
            if lo is not None and hi is not None and lo > hi:
                raise _Infeasible
            intervals.append((lo, hi))
    except _Infeasible:
        return CoordinateBounds(True, tuple((None, None) for _ in range(n)))
    return CoordinateBounds(False, tuple(intervals))


def is_feasible(sys: HalfspaceSystem) -> bool:
    """Whether the system has a rational solution."""
    try:
        ci, ce = _initial(sys)
        for k in range(sys.dim):
            ci, ce = _eliminate(ci, ce, k)
    except _Infeasible:
        return False
    return True


def iter_lattice_points(sys: HalfspaceSystem) -> Iterator[IntVector]:
    """Yield the integer points of a bounded system in lexicographic order."""
    bounds = coordinate_bounds(sys)
    if bounds.empty:
        return
    if not bounds.bounded:
        raise UnboundedSystemError("lattice point enumeration needs a bounded system")
    n = sys.dim
    try:
        ineqs, eqs = _initial(sys)
        # levels[k] is the projection onto coordinates 0..k
        levels = [None] * n
        ci, ce = ineqs, eqs
        for k in range(n - 1, -1, -1):
            levels[k] = (ci, ce)
            if k:
                ci, ce = _eliminate(ci, ce, k)
    except _Infeasible:
        return
    if n == 0:
        yield ()
        return

    # constraints at each level restricted to those that involve variable k
    split = []
    for k in range(n):
        ci, ce = levels[k]
        split.append(([c for c in ci if c[0][k]], [c for c in ce if c[0][k]]))

    prefix = [0] * n

    def walk(k):
        ci, ce = split[k]
        lo, hi = None, None
        for a, b in ce:
            r = Fraction(b - sum(a[i] * prefix[i] for i in range(k)), a[k])
            if r.denominator != 1:
                return
            lo = r if lo is None else max(lo, r)
            hi = r if hi is None else min(hi, r)
        for a, b in ci:
            r = Fraction(b - sum(a[i] * prefix[i] for i in range(k)), a[k])
            if a[k] > 0:
                hi = r if hi is None else min(hi, r)
            else:
                lo = r if lo is None else max(lo, r)
        blo, bhi = bounds.intervals[k]
        lo = blo if lo is None else max(lo, blo)
        hi = bhi if hi is None else min(hi, bhi)
        for v in range(math.ceil(lo), math.floor(hi) + 1):
            prefix[k] = v
            if k == n - 1:
                yield tuple(prefix)
            else:
                yield from walk(k + 1)

    yield from walk(0)


def lattice_points(sys: HalfspaceSystem) -> list:
    """All integer points of a bounded system, lexicographically ordered.

    Raises :class:`UnboundedSystemError` if any coordinate is unbounded.
    """
    return list(iter_lattice_points(sys))


def has_lattice_point(sys: HalfspaceSystem) -> bool:
    return next(iter_lattice_points(sys), None) is not None
