"""Divisor class group as the cokernel of ``m -> sum <m, v_i> D_i``.

With ``U @ P @ V = S`` the Smith form of the ray matrix ``P`` (rows are ray
generators), a divisor ``x`` in Z^r has class ``U @ x`` read modulo the
diagonal of ``S``: coordinates with invariant factor 1 vanish, those with
factor ``d >= 2`` become residues mod ``d``, the rest form the free part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import exact_linalg as xl
from .errors import IncompleteFanError
from .fan import Fan, is_complete


@dataclass(frozen=True)
class ClassElement:
    free: tuple
    residues: tuple
    moduli: tuple

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        red = tuple(int(r) % d for r, d in zip(self.residues, self.moduli))
        object.__setattr__(self, "residues", red)

    def _check(self, other):
        if not isinstance(other, ClassElement) or other.moduli != self.moduli \
                or len(other.free) != len(self.free):
            raise TypeError("class elements from different groups")

    def __add__(self, other):
        self._check(other)
        return ClassElement(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.residues, other.residues)),
            self.moduli,
        )

    def __neg__(self):
        return ClassElement(tuple(-a for a in self.free), tuple(-a for a in self.residues), self.moduli)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        k = int(k)
        return ClassElement(tuple(k * a for a in self.free), tuple(k * a for a in self.residues), self.moduli)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.residues)

    def __str__(self):
        if len(self.free) == 1:
            s = str(self.free[0])
        elif self.free:
            s = "(" + ", ".join(map(str, self.free)) + ")"
        else:
            s = "0"
        if self.moduli:
            tors = ", ".join(f"{r} mod {d}" for r, d in zip(self.residues, self.moduli))
            s += f" + ({tors})"
        return s


@dataclass(frozen=True)
class ClassGroup:
    """Cl(X) = Z^free_rank + sum of Z/torsion[j], with the divisor projection."""

    rays: tuple  # ray matrix, r x d
    free_rank: int
    torsion: tuple
    projection: tuple  # rows: torsion coordinates first, then free coordinates
    lift_matrix: tuple  # inverse of U restricted to the non-trivial coordinates

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def element(self, free=(), residues=()) -> ClassElement:
        return ClassElement(tuple(free), tuple(residues), self.torsion)

    def zero(self) -> ClassElement:
        return self.element((0,) * self.free_rank, (0,) * len(self.torsion))

    def class_of_divisor(self, coeffs: Sequence[int]) -> ClassElement:
        """Project a T-invariant divisor given by its coefficient vector."""
        if len(coeffs) != self.n_rays:
            raise ValueError(f"divisor has {len(coeffs)} coefficients, fan has {self.n_rays} rays")
        y = xl.matvec(self.projection, coeffs)
        t = len(self.torsion)
        return self.element(y[t:], y[:t])

    def divisor_class(self, i: int) -> ClassElement:
        """``[D_i]`` for the 1-based ray index ``i``."""
        if not 1 <= i <= self.n_rays:
            raise IndexError(f"ray index {i} out of range 1..{self.n_rays}")
        return self.class_of_divisor(tuple(int(j == i - 1) for j in range(self.n_rays)))

    def lift(self, e: ClassElement) -> tuple:
        """A divisor whose class is ``e``."""
        coords = e.residues + e.free
        return tuple(sum(row[j] * coords[j] for j in range(len(coords))) for row in self.lift_matrix)

    def principal_divisor(self, m: Sequence[int]) -> tuple:
        return xl.matvec(self.rays, m)

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _inverse_unimodular(u: tuple) -> tuple:
    n = len(u)
    cols = []
    for j in range(n):
        e = tuple(int(i == j) for i in range(n))
        x, _ = xl.solve_integer_system(u, e)
        cols.append(x)
    return xl.transpose(tuple(cols), n)


def compute_class_group(fan: Fan) -> ClassGroup:
    """Class group of the complete toric variety of ``fan``."""
    if not is_complete(fan):
        raise IncompleteFanError("class group computation requires a complete fan")
    r = fan.n_rays
    rays = fan.rays
    if r == 0:
        return ClassGroup((), 0, (), (), ())
    dec = xl.smith_normal_form(rays)
    diag = dec.diagonal
    t = dec.rank
    tors_rows = [i for i in range(t) if diag[i] > 1]
    free_rows = list(range(t, r))
    keep = tors_rows + free_rows
    projection = tuple(dec.U[i] for i in keep)
    uinv = _inverse_unimodular(dec.U)
    lift_matrix = tuple(tuple(row[i] for i in keep) for row in uinv)
    return ClassGroup(
        rays=rays,
        free_rank=len(free_rows),
        torsion=tuple(diag[i] for i in tors_rows),
        projection=projection,
        lift_matrix=lift_matrix,
    )


def divisor_class(cg: ClassGroup, i: int) -> ClassElement:
    return cg.divisor_class(i)


def class_of_divisor(cg: ClassGroup, coeffs: Sequence[int]) -> ClassElement:
    return cg.class_of_divisor(coeffs)
