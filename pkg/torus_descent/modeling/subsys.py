"""Closed full-rank root subsystems, reached from the whole system by iterated
extended-diagram deletions (remove a node whose highest-root mark is prime,
adjoin minus the highest root of its component).
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import FrozenSet, List, Sequence, Tuple, Union

import networkx as nx
from sympy import isprime

from ..utils.intlat import ALPHA, IntLattice, hnf
from .rootsys import (
    RootSystem,
    TypeLabel,
    Vector,
    build_root_system,
    classify_cartan,
    highest_root_local,
    local_cartan,
)


@dataclass(frozen=True)
class Component:
    """One irreducible piece of a subsystem.

    ``positions`` index into the subsystem's simple roots; ``permutation[a]`` is
    the Bourbaki node of ``positions[a]`` in ``label``.
    """

    label: TypeLabel
    positions: Tuple[int, ...]
    permutation: Tuple[int, ...]
    marks: Tuple[int, ...]
    highest_root: Vector


@dataclass(frozen=True)
class RootSubsystem:
    ambient: TypeLabel
    simple_roots: Tuple[Vector, ...]
    components: Tuple[Component, ...]
    root_lattice: IntLattice

    @property
    def component_labels(self) -> Tuple[TypeLabel, ...]:
        return tuple(c.label for c in self.components)

    @cached_property
    def roots(self) -> FrozenSet[Vector]:
        """All roots (both signs) in ambient alpha-coordinates."""
        return subsystem_roots(self)

    def to_json(self):
        return {
            "components": [str(label) for label in self.component_labels],
            "simple_roots": [list(r) for r in self.simple_roots],
            "root_lattice": self.root_lattice.to_json(),
        }


def make_subsystem(system: RootSystem, simple_roots: Sequence[Sequence[int]]) -> RootSubsystem:
    """Describe the subsystem with the given simple roots (ambient alpha-coordinates)."""
    simple_roots = tuple(tuple(int(x) for x in r) for r in simple_roots)
    cartan = local_cartan(simple_roots, system)
    lattice = hnf(simple_roots, system.rank, ALPHA)
    if len(simple_roots) != system.rank or not lattice.is_full_rank:
        raise ValueError(f"{len(simple_roots)} roots do not form a full-rank simple system")

    graph = nx.Graph()
    graph.add_nodes_from(range(len(simple_roots)))
    graph.add_edges_from(
        (a, b) for a in range(len(cartan)) for b in range(a + 1, len(cartan)) if cartan[a][b]
    )
    groups = sorted(tuple(sorted(c)) for c in nx.connected_components(graph))

    components = []
    for positions in groups:
        block = [[cartan[a][b] for b in positions] for a in positions]
        label, permutation = classify_cartan(block)
        local, theta = highest_root_local([simple_roots[a] for a in positions], system)
        components.append(Component(label, positions, permutation, local, theta))
    return RootSubsystem(system.label, simple_roots, tuple(components), lattice)


def full_subsystem(label: Union[TypeLabel, str]) -> RootSubsystem:
    system = build_root_system(label)
    simple = [tuple(1 if j == i else 0 for j in range(system.rank)) for i in range(system.rank)]
    return make_subsystem(system, simple)


@lru_cache(maxsize=None)
def _bourbaki_positive_roots(label: TypeLabel) -> Tuple[Vector, ...]:
    return build_root_system(label).positive_roots


def subsystem_roots(sub: RootSubsystem) -> FrozenSet[Vector]:
    n = len(sub.simple_roots)
    roots = set()
    for component in sub.components:
        # Bourbaki node j of the component sits at local position a with permutation[a] == j
        gammas = [None] * len(component.positions)
        for a, j in enumerate(component.permutation):
            gammas[j] = sub.simple_roots[component.positions[a]]
        for coeffs in _bourbaki_positive_roots(component.label):
            root = tuple(sum(c * g[k] for c, g in zip(coeffs, gammas)) for k in range(n))
            roots.add(root)
            roots.add(tuple(-x for x in root))
    return frozenset(roots)


def maximal_subsystems(sub: RootSubsystem) -> List[RootSubsystem]:
    """Maximal closed full-rank subsystems of ``sub``.

    For each component and each node whose mark is prime, the node's simple
    root is replaced by minus the component's highest root.
    """
    system = build_root_system(sub.ambient)
    result = []
    for component in sub.components:
        minus_theta = tuple(-x for x in component.highest_root)
        for a, position in enumerate(component.positions):
            if not isprime(component.marks[a]):
                continue
            simple = list(sub.simple_roots)
            simple[position] = minus_theta
            result.append(make_subsystem(system, simple))
    return result


def _descendants(label: TypeLabel) -> List[RootSubsystem]:
    root = full_subsystem(label)
    seen = {root.roots}
    found = [root]
    queue = deque([root])
    while queue:
        for child in maximal_subsystems(queue.popleft()):
            if child.roots not in seen:
                seen.add(child.roots)
                found.append(child)
                queue.append(child)
    return found


@lru_cache(maxsize=None)
def _enumerate_all(label: TypeLabel) -> Tuple[RootSubsystem, ...]:
    distinct = {}
    for sub in _descendants(label):
        distinct.setdefault(sub.root_lattice, sub)
    result = tuple(distinct[key] for key in sorted(distinct, key=lambda lattice: lattice.rows))
    logging.info(f"{label}: {len(result)} subsystem lattices")
    return result


def enumerate_all(label: Union[TypeLabel, str]) -> List[RootSubsystem]:
    """Closed full-rank subsystems reachable by deletions, one per root lattice."""
    return list(_enumerate_all(TypeLabel.parse(label)))


def is_closed(sub: RootSubsystem) -> bool:
    system = build_root_system(sub.ambient)
    roots = sub.roots
    for a in roots:
        for b in roots:
            total = tuple(x + y for x, y in zip(a, b))
            if system.is_root(total) and total not in roots:
                return False
    return True
