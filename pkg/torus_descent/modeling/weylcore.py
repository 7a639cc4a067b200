import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple, Union

import numpy as np

from ..load_config import active_config
from ..utils.intlat import ALPHA, IntLattice, WeightVec, index, intersect, transform
from ..utils.misc import OrbitOverflowError
from .rootsys import RootSystem, TypeLabel, build_root_system


@dataclass(frozen=True, eq=False)
class ReflectionAction:
    """Simple reflections s_1, ..., s_l as integer matrices on column vectors.

    ``alpha_matrices[i]`` acts on alpha-coordinates, ``omega_matrices[i]`` on
    omega-coordinates.
    """

    system: RootSystem
    alpha_matrices: Tuple[np.ndarray, ...]
    omega_matrices: Tuple[np.ndarray, ...]

    @property
    def rank(self) -> int:
        return self.system.rank

    def matrices(self, basis: str) -> Tuple[np.ndarray, ...]:
        return self.alpha_matrices if basis == ALPHA else self.omega_matrices


@lru_cache(maxsize=None)
def _reflection_action(label: TypeLabel) -> ReflectionAction:
    system = build_root_system(label)
    n = system.rank
    cartan = system.cartan_array
    alpha, omega = [], []
    for i in range(n):
        # s_i v = v - <v, alpha_i^vee> alpha_i
        s = np.identity(n, dtype=object)
        s[i, :] -= cartan[i, :]
        alpha.append(s)
        # s_i nu = nu - nu_i (C e_i)
        t = np.identity(n, dtype=object)
        t[:, i] -= cartan[:, i]
        omega.append(t)
    return ReflectionAction(system, tuple(alpha), tuple(omega))


def reflection_action(label: Union[TypeLabel, str, RootSystem]) -> ReflectionAction:
    if isinstance(label, RootSystem):
        label = label.label
    return _reflection_action(TypeLabel.parse(label))


def reflect(action: ReflectionAction, i: int, vector: WeightVec) -> WeightVec:
    """s_i applied to ``vector`` (0-based ``i``), in the vector's own basis."""
    if not 0 <= i < action.rank:
        raise IndexError(f"reflection index {i} out of range for rank {action.rank}")
    if len(vector) != action.rank:
        raise ValueError(f"vector of length {len(vector)} for rank {action.rank}")
    matrix = action.matrices(vector.basis)[i]
    return WeightVec(tuple(matrix.dot(np.array(vector.coords, dtype=object)).tolist()), vector.basis)


def is_w_stable(action: ReflectionAction, lattice: IntLattice) -> bool:
    return all(transform(lattice, s) == lattice for s in action.matrices(lattice.basis))


def weyl_core(action: ReflectionAction, lattice: IntLattice, return_rounds: bool = False):
    """Largest W-stable sublattice of a full-rank lattice.

    Repeats M <- M ∩ s_i M over the simple reflections until a whole pass leaves
    M unchanged. Every change strictly lowers M, so the loop is finite.
    """
    if lattice.ambient_rank != action.rank:
        raise ValueError(f"lattice of ambient rank {lattice.ambient_rank} for rank {action.rank}")
    if not lattice.is_full_rank:
        raise ValueError("the Weyl core is only defined for full-rank lattices")

    current = lattice
    matrices = action.matrices(lattice.basis)
    rounds = 0
    while True:
        rounds += 1
        changed = False
        for s in matrices:
            image = transform(current, s)
            if image != current:
                shrunk = intersect(current, image)
                assert index(current, shrunk) > 1
                current = shrunk
                changed = True
        if not changed:
            break
    logging.debug(
        f"weyl core of {action.system.label}: {rounds} rounds, index {index(lattice, current)}"
    )
    if return_rounds:
        return current, rounds
    return current


def orbit(action: ReflectionAction, vector: WeightVec, cap: Optional[int] = None) -> FrozenSet[WeightVec]:
    cap = cap or active_config().orbit_cap
    seen = {vector}
    queue = deque([vector])
    while queue:
        current = queue.popleft()
        for i in range(action.rank):
            image = reflect(action, i, current)
            if image not in seen:
                seen.add(image)
                if len(seen) > cap:
                    raise OrbitOverflowError(
                        f"orbit of {list(vector.coords)} in {action.system.label} exceeds {cap} elements"
                    )
                queue.append(image)
    return frozenset(seen)


def weyl_group_elements(action: ReflectionAction, cap: Optional[int] = None, basis: str = ALPHA) -> List[np.ndarray]:
    """All elements of W as integer matrices, found by closing under simple reflections."""
    cap = cap or active_config().orbit_cap
    generators = action.matrices(basis)
    identity = np.identity(action.rank, dtype=object)
    seen = {_matrix_key(identity)}
    elements = [identity]
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in generators:
            sw = s.dot(w)
            key = _matrix_key(sw)
            if key not in seen:
                seen.add(key)
                if len(seen) > cap:
                    raise OrbitOverflowError(f"Weyl group of {action.system.label} exceeds {cap} elements")
                elements.append(sw)
                queue.append(sw)
    return elements


def _matrix_key(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix.tolist())


def dominant_conjugate(system: RootSystem, nu: Tuple[int, ...]) -> Tuple[int, ...]:
    """The dominant element of W nu for nu in omega-coordinates."""
    nu = list(nu)
    while True:
        negative = next((i for i, x in enumerate(nu) if x < 0), None)
        if negative is None:
            return tuple(nu)
        k = nu[negative]
        nu = [x - k * system.cartan[j][negative] for j, x in enumerate(nu)]

