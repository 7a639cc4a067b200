"""Descent lattices L(g): the weights in the intersection of the root lattices
of all full-rank closed subsystems of g, computed three independent ways.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

from .load_config import active_config
from .modeling.rootsys import TypeLabel, build_root_system, fundamental_weights, root_lattice, weight_lattice
from .modeling.subsys import RootSubsystem, enumerate_all, full_subsystem, maximal_subsystems
from .modeling.weylcore import orbit, reflection_action, weyl_core
from .utils.intlat import (
    ALPHA,
    NOT_IN_Q,
    OMEGA,
    IntLattice,
    WeightVec,
    contains,
    full_lattice,
    hnf,
    index,
    intersect_all,
    membership,
    torsion_quotient,
)

METHODS = ("recursive", "direct", "closed_form")


@dataclass(frozen=True)
class DescentLattice:
    type: TypeLabel
    lattice: IntLattice
    method: str

    @property
    def index_in_root_lattice(self) -> int:
        return index(full_lattice(self.type.rank, ALPHA), self.lattice)

    def to_json(self):
        return {
            "type": str(self.type),
            "method": self.method,
            "basis": self.lattice.basis,
            "rows": [list(row) for row in self.lattice.rows],
            "index": self.index_in_root_lattice,
        }


@dataclass(frozen=True)
class DescentReport:
    type: TypeLabel
    lambda_omega: WeightVec
    parabolic: Tuple[int, ...]
    ample: bool
    in_q: bool
    member: bool

    @property
    def descends(self) -> bool:
        return self.ample and self.member

    def to_json(self):
        return {
            "type": str(self.type),
            "lambda_omega": list(self.lambda_omega.coords),
            "parabolic": list(self.parabolic),
            "ample": self.ample,
            "in_Q": self.in_q,
            "member": self.member,
            "descends": self.descends,
            # membership of a non-ample weight carries no geometric meaning
            "membership_only": not self.ample,
        }


def _admit(label: Union[TypeLabel, str]) -> TypeLabel:
    label = TypeLabel.parse(label)
    max_rank = active_config().max_rank
    if label.rank > max_rank:
        raise ValueError(f"{label} exceeds the supported rank {max_rank}")
    return label


def _embed(sub: RootSubsystem, lattices: Iterable[IntLattice]) -> IntLattice:
    """Sum over components of the component lattice written in ambient roots."""
    n = len(sub.simple_roots)
    rows = []
    for component, lattice in zip(sub.components, lattices):
        gammas = [None] * len(component.positions)
        for a, j in enumerate(component.permutation):
            gammas[j] = sub.simple_roots[component.positions[a]]
        for row in lattice.rows:
            rows.append([sum(c * g[k] for c, g in zip(row, gammas)) for k in range(n)])
    return hnf(rows, n, ALPHA)


@lru_cache(maxsize=None)
def _recursive_lattice(label: TypeLabel) -> IntLattice:
    if label.letter == "A":
        return full_lattice(label.rank, ALPHA)
    logging.debug(f"recursing into the maximal subsystems of {label}")
    sums = []
    for sub in maximal_subsystems(full_subsystem(label)):
        sums.append(_embed(sub, [_recursive_lattice(c.label) for c in sub.components]))
    return weyl_core(reflection_action(label), intersect_all(sums))


@lru_cache(maxsize=None)
def _direct_lattice(label: TypeLabel) -> IntLattice:
    lattices = [sub.root_lattice for sub in enumerate_all(label)]
    return weyl_core(reflection_action(label), intersect_all(lattices))


def _lambda_multiple(label: TypeLabel, k: int) -> IntLattice:
    rows = []
    for weight in fundamental_weights(build_root_system(label)):
        row = [k * x for x in weight]
        assert all(x.denominator == 1 for x in row), f"{k} does not annihilate the weight lattice of {label}"
        rows.append([int(x) for x in row])
    return hnf(rows, label.rank, ALPHA)


def _diagonal(entries: Sequence[int]) -> IntLattice:
    n = len(entries)
    return hnf([[d if i == j else 0 for j in range(n)] for i, d in enumerate(entries)], n, ALPHA)


def closed_form_lattice(label: Union[TypeLabel, str]) -> IntLattice:
    """The descent lattice of each type as a hard-coded generating set."""
    label = TypeLabel.parse(label)
    n = label.rank
    letter = label.letter
    if letter == "A":
        return full_lattice(n, ALPHA)
    if letter == "B":
        return _diagonal([2] * n)
    if letter == "C":
        return _diagonal([2] * (n - 1) + [1])
    if letter == "D":
        def e(*positions):
            return [1 if i in positions else 0 for i in range(n)]

        if n == 4:
            # n1 a1 + 2 n2 a2 + n3 a3 + n4 a4 with n1 + n3 + n4 even
            rows = [[2, 0, 0, 0], [0, 2, 0, 0], e(0, 2), e(2, 3)]
        else:
            # even on a1..a_{l-2}; n_{l-1} + n_l even
            rows = [[2 * x for x in e(i)] for i in range(n - 1)] + [e(n - 2, n - 1)]
        return hnf(rows, n, ALPHA)
    if letter == "G":
        return _diagonal([6, 2])
    if letter == "F":
        return _diagonal([6, 6, 12, 12])
    if label == TypeLabel("E", 6):
        return _lambda_multiple(label, 6)
    if label == TypeLabel("E", 7):
        return _lambda_multiple(label, 12)
    return _diagonal([60] * 8)


def descent_lattice(label: Union[TypeLabel, str], method: str = "recursive") -> DescentLattice:
    label = _admit(label)
    if method == "recursive":
        lattice = _recursive_lattice(label)
    elif method == "direct":
        lattice = _direct_lattice(label)
    elif method == "closed_form":
        lattice = closed_form_lattice(label)
    else:
        raise ValueError(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")
    return DescentLattice(label, lattice, method)


def _as_omega(label: TypeLabel, weight: Union[WeightVec, Sequence[int]]) -> WeightVec:
    if not isinstance(weight, WeightVec):
        weight = WeightVec(tuple(weight), OMEGA)
    if len(weight) != label.rank:
        raise ValueError(f"weight {list(weight.coords)} has length {len(weight)}, expected {label.rank}")
    return build_root_system(label).to_omega(weight)


def _member(label: TypeLabel, weight: WeightVec) -> Tuple[bool, bool]:
    member, note = membership(descent_lattice(label).lattice, weight, build_root_system(label))
    return note != NOT_IN_Q, member


def descends(
    label: Union[TypeLabel, str],
    weight: Union[WeightVec, Sequence[int]],
    parabolic: Iterable[int] = (),
) -> DescentReport:
    """Decide whether the line bundle of ``weight`` on G/P descends to the torus quotient.

    ``parabolic`` lists the 1-based simple roots of the Levi factor of P.
    """
    label = _admit(label)
    weight = _as_omega(label, weight)
    parabolic = tuple(sorted(set(parabolic)))
    if any(not 1 <= i <= label.rank for i in parabolic):
        raise ValueError(f"parabolic indices {list(parabolic)} must lie in 1..{label.rank}")
    ample = all(
        (x == 0) if i + 1 in parabolic else (x > 0) for i, x in enumerate(weight.coords)
    )
    in_q, member = _member(label, weight)
    return DescentReport(label, weight, parabolic, ample, in_q, member)


def verify_type(label: Union[TypeLabel, str]) -> Tuple[bool, dict]:
    label = _admit(label)
    results = {method: descent_lattice(label, method) for method in METHODS}
    equal = len({r.lattice for r in results.values()}) == 1
    report = {
        "type": str(label),
        "equal": equal,
        "lattices": {method: [list(row) for row in r.lattice.rows] for method, r in results.items()},
        "index": {method: r.index_in_root_lattice for method, r in results.items()},
    }
    if equal:
        logging.info(f"{label}: all methods agree, [Q : L] = {report['index']['recursive']}")
    else:
        logging.warning(f"{label}: descent lattices disagree")
    return equal, report


def quotient_exponent(label: Union[TypeLabel, str]) -> int:
    """Least N with N Q contained in L(g)."""
    label = _admit(label)
    return torsion_quotient(full_lattice(label.rank, ALPHA), descent_lattice(label).lattice).exponent


def minimal_descending_multiple(label: Union[TypeLabel, str], weight: Union[WeightVec, Sequence[int]]) -> int:
    """Least n >= 1 with n * weight in L(g)."""
    label = _admit(label)
    weight = _as_omega(label, weight)
    system = build_root_system(label)
    weight_exponent = torsion_quotient(weight_lattice(system, OMEGA), root_lattice(system, OMEGA)).exponent
    bound = weight_exponent * quotient_exponent(label)
    for n in range(1, bound + 1):
        if _member(label, weight.scale(n))[1]:
            return n
    raise RuntimeError(f"no multiple of {list(weight.coords)} up to {bound} lies in L({label})")


def descent_witness(
    label: Union[TypeLabel, str],
    weight: Union[WeightVec, Sequence[int]],
    cap: Optional[int] = None,
) -> Optional[Tuple[RootSubsystem, WeightVec]]:
    """A subsystem s and a Weyl translate mu of ``weight`` with mu outside the root lattice of s.

    Returns None when ``weight`` lies in L(g).
    """
    label = _admit(label)
    weight = _as_omega(label, weight)
    in_q, member = _member(label, weight)
    if member:
        return None
    if not in_q:
        return full_subsystem(label), weight
    system = build_root_system(label)
    subsystems = enumerate_all(label)
    for mu in sorted(orbit(reflection_action(label), weight, cap), key=lambda v: v.coords):
        for sub in subsystems:
            if not contains(sub.root_lattice, mu, system):
                return sub, mu
    raise RuntimeError(f"{list(weight.coords)} is outside L({label}) but no witness was found")
