"""Root data for simple Lie types in Bourbaki numbering.

Cartan matrices follow C[i][j] = <alpha_j, alpha_i^vee>, so a weight with
alpha-coordinates v has omega-coordinates C v.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import List, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher
from sympy import Matrix

from ..utils.intlat import ALPHA, OMEGA, IntLattice, WeightVec, full_lattice, hnf, rational_apply
from ..utils.misc import InadmissibleTypeError, NonIntegralWeightError, as_object_array

Vector = Tuple[int, ...]
Cartan = Tuple[Tuple[int, ...], ...]

_TYPE_PATTERN = re.compile(r"^\s*([A-Ga-g])_?(\d+)\s*$")


@dataclass(frozen=True, order=True)
class TypeLabel:
    """A simple Lie type such as A3 or E8.

    D3 is normalised to A3 and B2 to C2, so each isomorphism class has one label.
    """

    letter: str
    rank: int

    def __post_init__(self):
        letter = str(self.letter).upper()
        rank = self.rank
        if isinstance(rank, bool) or not isinstance(rank, int):
            raise InadmissibleTypeError(f"rank must be an integer, got {rank!r}")
        if letter == "D" and rank == 3:
            letter = "A"
        elif letter == "B" and rank == 2:
            letter = "C"
        admissible = {
            "A": rank >= 1,
            "B": rank >= 3,
            "C": rank >= 2,
            "D": rank >= 4,
            "E": rank in (6, 7, 8),
            "F": rank == 4,
            "G": rank == 2,
        }
        if not admissible.get(letter, False):
            raise InadmissibleTypeError(f"{self.letter}{rank} is not a simple Lie type")
        object.__setattr__(self, "letter", letter)

    @classmethod
    def parse(cls, text: Union[str, "TypeLabel"]) -> "TypeLabel":
        if isinstance(text, TypeLabel):
            return text
        match = _TYPE_PATTERN.match(str(text))
        if match is None:
            raise InadmissibleTypeError(f"cannot parse Lie type {text!r}")
        return cls(match.group(1), int(match.group(2)))

    def __str__(self):
        return f"{self.letter}{self.rank}"


def cartan_matrix(label: TypeLabel) -> Cartan:
    n = label.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if label.letter in "ABCF":
        for i in range(n - 1):
            bond(i, i + 1)
        if label.letter == "B":
            c[n - 1][n - 2] = -2
        elif label.letter == "C":
            c[n - 2][n - 1] = -2
        elif label.letter == "F":
            c[2][1] = -2
    elif label.letter == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif label.letter == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif label.letter == "G":
        bond(0, 1, -3, -1)
    return tuple(tuple(row) for row in c)


def positive_roots_of(cartan: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    """Positive roots in simple-root coordinates, ordered by height.

    Uses root strings: if beta - p*alpha_i is the bottom of the alpha_i-string
    through beta, then beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0.
    """
    n = len(cartan)
    layer = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(layer)
    ordered = list(layer)
    while layer:
        found = set()
        for beta in layer:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in roots:
                        break
                    p += 1
                q = p - sum(cartan[i][j] * beta[j] for j in range(n))
                if q > 0:
                    up = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
                    if up not in roots:
                        found.add(up)
        layer = sorted(found)
        roots.update(layer)
        ordered.extend(layer)
    return tuple(ordered)


def symmetrizer(cartan: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Smallest positive integers d with d_i C[i][j] = d_j C[j][i]."""
    n = len(cartan)
    d: List[Fraction] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
    denominator = math.lcm(*(x.denominator for x in d))
    scaled = [int(x * denominator) for x in d]
    common = math.gcd(*scaled)
    return tuple(x // common for x in scaled)


def _validate_cartan(matrix: Sequence[Sequence[int]], require_connected: bool = True) -> Cartan:
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError("a Cartan matrix must be square and non-empty")
    for i in range(n):
        if rows[i][i] != 2:
            raise ValueError(f"diagonal entry {i} is {rows[i][i]}, expected 2")
        for j in range(n):
            if i != j and (rows[i][j] > 0 or (rows[i][j] == 0) != (rows[j][i] == 0)):
                raise ValueError(f"entries ({i},{j}) and ({j},{i}) do not form a Cartan matrix")
    if require_connected and not nx.is_connected(_dynkin_graph(rows).to_undirected()):
        raise ValueError("Cartan matrix is reducible")
    return rows


def _dynkin_graph(cartan: Cartan) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(cartan)))
    for i, row in enumerate(cartan):
        for j, value in enumerate(row):
            if i != j and value:
                graph.add_edge(i, j, weight=value)
    return graph


def _labels_of_rank(rank: int) -> List[TypeLabel]:
    labels = set()
    for letter in "ABCDEFG":
        try:
            label = TypeLabel(letter, rank)
        except InadmissibleTypeError:
            continue
        labels.add(label)
    return sorted(labels)


@lru_cache(maxsize=None)
def _classify(cartan: Cartan) -> Tuple[TypeLabel, Tuple[int, ...]]:
    graph = _dynkin_graph(cartan)
    for label in _labels_of_rank(len(cartan)):
        matcher = DiGraphMatcher(
            graph,
            _dynkin_graph(cartan_matrix(label)),
            edge_match=lambda a, b: a["weight"] == b["weight"],
        )
        perms = [tuple(mapping[i] for i in range(len(cartan))) for mapping in matcher.isomorphisms_iter()]
        if perms:
            return label, min(perms)
    raise ValueError("Cartan matrix is not of finite type")


def classify_cartan(matrix: Sequence[Sequence[int]]) -> Tuple[TypeLabel, Tuple[int, ...]]:
    """Identify an irreducible Cartan matrix.

    Returns the type and the lexicographically smallest permutation ``perm`` with
    ``matrix[a][b] == bourbaki[perm[a]][perm[b]]`` (0-based).
    """
    return _classify(_validate_cartan(matrix))


@dataclass(frozen=True)
class RootSystem:
    label: TypeLabel
    cartan: Cartan
    positive_roots: Tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return self.label.rank

    @cached_property
    def cartan_array(self) -> np.ndarray:
        return as_object_array(self.cartan, self.rank)

    @cached_property
    def theta(self) -> Vector:
        return self.positive_roots[-1]

    @property
    def marks(self) -> Vector:
        return self.theta

    @cached_property
    def roots(self) -> Tuple[Vector, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def symmetrizer(self) -> Tuple[int, ...]:
        return symmetrizer(self.cartan)

    @cached_property
    def inverse_cartan(self) -> Tuple[Tuple[Fraction, ...], ...]:
        # C^{-1} = adj(C) / det(C); sympy keeps both integral
        cartan = Matrix(self.cartan)
        det = int(cartan.det())
        adjugate = cartan.adjugate()
        return tuple(
            tuple(Fraction(int(adjugate[i, j]), det) for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def positive_roots_omega(self) -> Tuple[Vector, ...]:
        return tuple(self.to_omega(WeightVec(r, ALPHA)).coords for r in self.positive_roots)

    def is_root(self, vector: Sequence[int]) -> bool:
        return tuple(vector) in self.root_set

    def height(self, vector: Sequence[int]) -> int:
        return sum(vector)

    def pairing(self, beta: Sequence[int], i: int) -> int:
        """<beta, alpha_i^vee> for beta in alpha-coordinates."""
        return sum(c * b for c, b in zip(self.cartan[i], beta))

    def inner(self, u: Sequence[int], v: Sequence[int]):
        """W-invariant form on alpha-coordinates, normalised by the symmetrizer."""
        d = self.symmetrizer
        n = self.rank
        return sum(u[i] * d[i] * self.cartan[i][j] * v[j] for i in range(n) for j in range(n))

    def coroot_pairing(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        """<beta, gamma^vee> = 2 (beta, gamma) / (gamma, gamma)."""
        value = Fraction(2 * self.inner(beta, gamma), self.inner(gamma, gamma))
        if value.denominator != 1:
            raise ValueError(f"{gamma} is not a root of {self.label}")
        return int(value)

    def to_omega(self, vector: WeightVec) -> WeightVec:
        if vector.basis == OMEGA:
            return vector
        return WeightVec(tuple(self.pairing(vector.coords, i) for i in range(self.rank)), OMEGA)

    def alpha_coords(self, vector: WeightVec) -> Tuple[Fraction, ...]:
        if vector.basis == ALPHA:
            return tuple(Fraction(x) for x in vector.coords)
        return rational_apply(self.inverse_cartan, vector.coords)

    def to_alpha(self, vector: WeightVec) -> WeightVec:
        coords = self.alpha_coords(vector)
        if any(x.denominator != 1 for x in coords):
            raise NonIntegralWeightError(
                f"{list(vector.coords)} is not in the root lattice of {self.label}"
            )
        return WeightVec(tuple(int(x) for x in coords), ALPHA)

    def is_dominant(self, vector: WeightVec) -> bool:
        return all(x >= 0 for x in self.to_omega(vector).coords)


@lru_cache(maxsize=None)
def _build(label: TypeLabel) -> RootSystem:
    cartan = cartan_matrix(label)
    system = RootSystem(label, cartan, positive_roots_of(cartan))
    logging.debug(f"built root system {label}: {len(system.positive_roots)} positive roots")
    return system


def build_root_system(label: Union[TypeLabel, str]) -> RootSystem:
    return _build(TypeLabel.parse(label))


def local_cartan(simple_roots: Sequence[Sequence[int]], system: RootSystem) -> Cartan:
    """Cartan matrix <gamma_b, gamma_a^vee> of a family of ambient roots."""
    for gamma in simple_roots:
        if not system.is_root(gamma):
            raise ValueError(f"{list(gamma)} is not a root of {system.label}")
    return tuple(
        tuple(system.coroot_pairing(gb, ga) for gb in simple_roots) for ga in simple_roots
    )


def highest_root_local(
    simple_roots: Sequence[Sequence[int]], system: RootSystem
) -> Tuple[Vector, Vector]:
    """Highest root of the irreducible system spanned by ``simple_roots``.

    Returns its coefficients on the given simple roots and its ambient
    alpha-coordinates.
    """
    cartan = _validate_cartan(local_cartan(simple_roots, system))
    local = positive_roots_of(cartan)[-1]
    ambient = tuple(
        sum(c * gamma[k] for c, gamma in zip(local, simple_roots)) for k in range(system.rank)
    )
    if not system.is_root(ambient):
        raise ValueError(f"{list(ambient)} is not a root of {system.label}")
    return local, ambient


def highest_root(simple_roots: Sequence[Sequence[int]], system: RootSystem) -> WeightVec:
    return WeightVec(highest_root_local(simple_roots, system)[1], ALPHA)


def fundamental_weights(system: RootSystem) -> Tuple[Tuple[Fraction, ...], ...]:
    """alpha-coordinates of omega_1, ..., omega_l (the columns of C^{-1})."""
    inverse = system.inverse_cartan
    return tuple(tuple(inverse[i][j] for i in range(system.rank)) for j in range(system.rank))


def root_lattice(system: RootSystem, basis: str = ALPHA) -> IntLattice:
    if basis == ALPHA:
        return full_lattice(system.rank, ALPHA)
    # alpha_j in omega-coordinates is column j of C
    return hnf(system.cartan_array.T, system.rank, OMEGA)


def weight_lattice(system: RootSystem, basis: str = OMEGA) -> IntLattice:
    if basis == OMEGA:
        return full_lattice(system.rank, OMEGA)
    rows = []
    for weight in fundamental_weights(system):
        if any(x.denominator != 1 for x in weight):
            raise NonIntegralWeightError(
                f"the weight lattice of {system.label} has no integral alpha-coordinates"
            )
        rows.append([int(x) for x in weight])
    return hnf(rows, system.rank, ALPHA)
