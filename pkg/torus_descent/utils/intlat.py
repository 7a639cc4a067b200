"""Exact integer lattices in Z^n stored in canonical row Hermite normal form."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .misc import LatticeMismatchError, NotContainedError, as_object_array

ALPHA = "alpha"
OMEGA = "omega"
BASES = (ALPHA, OMEGA)


@dataclass(frozen=True)
class WeightVec:
    """Integer coordinate vector tagged with the basis it is written in."""

    coords: Tuple[int, ...]
    basis: str = OMEGA

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "WeightVec") -> "WeightVec":
        _check_same_basis(self, other)
        return WeightVec(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis)

    def __sub__(self, other: "WeightVec") -> "WeightVec":
        _check_same_basis(self, other)
        return WeightVec(tuple(a - b for a, b in zip(self.coords, other.coords)), self.basis)

    def __neg__(self) -> "WeightVec":
        return WeightVec(tuple(-a for a in self.coords), self.basis)

    def scale(self, k: int) -> "WeightVec":
        return WeightVec(tuple(k * a for a in self.coords), self.basis)

    def to_json(self):
        return {"basis": self.basis, "coords": list(self.coords)}


def _check_same_basis(u, v):
    if u.basis != v.basis or len(u.coords) != len(v.coords):
        raise LatticeMismatchError(
            f"vectors live in different spaces: {u.basis}^{len(u.coords)} vs {v.basis}^{len(v.coords)}"
        )


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^n given by the rows of its Hermite normal form.

    Two lattices are equal exactly when their dataclass fields are equal, since
    the row form is canonical. Build instances with :func:`hnf`.
    """

    ambient_rank: int
    rows: Tuple[Tuple[int, ...], ...]
    basis: str = ALPHA

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    @property
    def matrix(self) -> np.ndarray:
        return as_object_array(self.rows, self.ambient_rank)

    def pivots(self) -> Tuple[int, ...]:
        return tuple(_pivot_column(row) for row in self.rows)

    def to_json(self):
        return {
            "ambient_rank": self.ambient_rank,
            "basis": self.basis,
            "rows": [list(row) for row in self.rows],
        }


@dataclass(frozen=True)
class TorsionProfile:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group, all > 1."""

    invariant_factors: Tuple[int, ...]
    free_rank: int = 0

    @property
    def order(self) -> Union[int, float]:
        if self.free_rank:
            return math.inf
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> Union[int, float]:
        if self.free_rank:
            return math.inf
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def to_json(self):
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "order": "infinite" if self.free_rank else self.order,
        }


def _pivot_column(row: Sequence[int]) -> int:
    for col, value in enumerate(row):
        if value:
            return col
    raise ValueError("zero row has no pivot")


def _row_echelon(rows: Iterable[Sequence[int]], ncols: int) -> List[Tuple[int, ...]]:
    work = [[int(x) for x in row] for row in rows]
    work = [row for row in work if any(row)]
    r = 0
    for col in range(ncols):
        if r == len(work):
            break
        if all(work[i][col] == 0 for i in range(r, len(work))):
            continue
        # Euclid on the column: smallest pivot first, remainders below it
        while True:
            best = min(
                (i for i in range(r, len(work)) if work[i][col]),
                key=lambda i: abs(work[i][col]),
            )
            work[r], work[best] = work[best], work[r]
            pivot = work[r]
            clean = True
            for i in range(r + 1, len(work)):
                a = work[i][col]
                if a:
                    q = a // pivot[col]
                    work[i] = [x - q * y for x, y in zip(work[i], pivot)]
                    if work[i][col]:
                        clean = False
            if clean:
                break
        if work[r][col] < 0:
            work[r] = [-x for x in work[r]]
        pivot = work[r]
        for i in range(r):
            q = work[i][col] // pivot[col]
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], pivot)]
        r += 1
    return [tuple(row) for row in work[:r]]


def hnf(generators, ambient_rank: Optional[int] = None, basis: str = ALPHA) -> IntLattice:
    """Canonical lattice spanned by the integer rows of ``generators``."""
    rows = [tuple(int(x) for x in row) for row in (generators.tolist() if isinstance(generators, np.ndarray) else generators)]
    if ambient_rank is None:
        if isinstance(generators, np.ndarray) and generators.ndim == 2:
            ambient_rank = generators.shape[1]
        elif rows:
            ambient_rank = len(rows[0])
        else:
            raise ValueError("ambient_rank is required for an empty generating set")
    if any(len(row) != ambient_rank for row in rows):
        raise ValueError(f"all generators must have length {ambient_rank}")
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    return IntLattice(ambient_rank, tuple(_row_echelon(rows, ambient_rank)), basis)


def full_lattice(rank: int, basis: str = ALPHA) -> IntLattice:
    return hnf(np.identity(rank, dtype=object), rank, basis)


def scaled(lattice: IntLattice, k: int) -> IntLattice:
    return hnf([[k * x for x in row] for row in lattice.rows], lattice.ambient_rank, lattice.basis)


def transform(lattice: IntLattice, matrix: np.ndarray) -> IntLattice:
    """Image of ``lattice`` under the integer matrix acting on column vectors."""
    if not lattice.rows:
        return lattice
    return hnf(lattice.matrix.dot(matrix.T), lattice.ambient_rank, lattice.basis)


def _check_compatible(a: IntLattice, b: IntLattice):
    if a.ambient_rank != b.ambient_rank or a.basis != b.basis:
        raise LatticeMismatchError(
            f"cannot combine a lattice in {a.basis}^{a.ambient_rank} with one in {b.basis}^{b.ambient_rank}"
        )


def lattice_sum(a: IntLattice, b: IntLattice) -> IntLattice:
    _check_compatible(a, b)
    return hnf(list(a.rows) + list(b.rows), a.ambient_rank, a.basis)


def intersect(a: IntLattice, b: IntLattice) -> IntLattice:
    """L1 ∩ L2 from the echelon form of [[B1, B1], [B2, 0]]."""
    _check_compatible(a, b)
    n = a.ambient_rank
    if not a.rows or not b.rows:
        return IntLattice(n, (), a.basis)
    zeros = (0,) * n
    stacked = [row + row for row in a.rows] + [row + zeros for row in b.rows]
    echelon = _row_echelon(stacked, 2 * n)
    common = [row[n:] for row in echelon if not any(row[:n])]
    return hnf(common, n, a.basis)


def intersect_all(lattices: Sequence[IntLattice]) -> IntLattice:
    if not lattices:
        raise ValueError("cannot intersect an empty family of lattices")
    result = lattices[0]
    for lattice in lattices[1:]:
        result = intersect(result, lattice)
    return result


def coordinates(lattice: IntLattice, vector: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Integer coefficients of ``vector`` in the row basis, or None if it is not a member."""
    rest = [int(x) for x in vector]
    if len(rest) != lattice.ambient_rank:
        raise LatticeMismatchError(
            f"vector of length {len(rest)} in a lattice of ambient rank {lattice.ambient_rank}"
        )
    coeffs = []
    for row in lattice.rows:
        col = _pivot_column(row)
        if any(rest[:col]):
            return None
        if rest[col] % row[col]:
            return None
        q = rest[col] // row[col]
        if q:
            rest = [x - q * y for x, y in zip(rest, row)]
        coeffs.append(q)
    if any(rest):
        return None
    return tuple(coeffs)


NOT_IN_Q = "not in Q"


def membership(
    lattice: IntLattice, vector: Union[WeightVec, Sequence[int]], system=None
) -> Tuple[bool, Optional[str]]:
    """Whether ``vector`` lies in ``lattice``, plus a note when the vector is not even in Q.

    An omega-vector tested against an alpha-lattice is converted exactly through
    ``system.alpha_coords``; a non-integral result is reported as (False, NOT_IN_Q).
    """
    if isinstance(vector, WeightVec):
        if vector.basis != lattice.basis:
            if system is None or (vector.basis, lattice.basis) != (OMEGA, ALPHA):
                raise LatticeMismatchError(
                    f"vector in the {vector.basis} basis, lattice in the {lattice.basis} basis"
                )
            if len(vector) != lattice.ambient_rank:
                raise LatticeMismatchError(
                    f"vector of length {len(vector)} in a lattice of ambient rank {lattice.ambient_rank}"
                )
            alpha = system.alpha_coords(vector)
            if any(x.denominator != 1 for x in alpha):
                return False, NOT_IN_Q
            vector = WeightVec(tuple(int(x) for x in alpha), ALPHA)
        vector = vector.coords
    return coordinates(lattice, vector) is not None, None


def contains(lattice: IntLattice, vector: Union[WeightVec, Sequence[int]], system=None) -> bool:
    return membership(lattice, vector, system)[0]


def is_sublattice(small: IntLattice, big: IntLattice) -> bool:
    _check_compatible(small, big)
    return all(coordinates(big, row) is not None for row in small.rows)


def _relative_coordinates(big: IntLattice, small: IntLattice) -> List[Tuple[int, ...]]:
    _check_compatible(small, big)
    coords = []
    for row in small.rows:
        c = coordinates(big, row)
        if c is None:
            raise NotContainedError(f"row {list(row)} is not in the ambient lattice")
        coords.append(c)
    return coords


def index(big: IntLattice, small: IntLattice) -> Union[int, float]:
    """[big : small]; ``math.inf`` when small has lower rank."""
    coords = _relative_coordinates(big, small)
    if small.rank < big.rank:
        return math.inf
    echelon = _row_echelon(coords, big.rank)
    return math.prod(row[i] for i, row in enumerate(echelon))


def torsion_quotient(ambient: IntLattice, sub: IntLattice) -> TorsionProfile:
    """Invariant factors of ambient / sub (Smith normal form of the relative coordinates)."""
    coords = _relative_coordinates(ambient, sub)
    free_rank = ambient.rank - sub.rank
    if not coords:
        return TorsionProfile((), free_rank)
    matrix = DomainMatrix([[ZZ(x) for x in row] for row in coords], (len(coords), ambient.rank), ZZ)
    factors = sorted(abs(int(d)) for d in invariant_factors(matrix))
    return TorsionProfile(tuple(d for d in factors if d > 1), free_rank)


def rational_apply(matrix: Sequence[Sequence[Fraction]], vector: Sequence[int]) -> Tuple[Fraction, ...]:
    """matrix @ vector over Q, for pre-inverted change-of-basis matrices."""
    return tuple(sum((Fraction(m) * v for m, v in zip(row, vector)), Fraction(0)) for row in matrix)
