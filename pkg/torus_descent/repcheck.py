"""Weight multiplicities of irreducible representations by Freudenthal's formula.

Used as an independent check that the zero weight occurs in V(lambda) exactly
when lambda lies in the root lattice. Desk-scale only: rank and dimension are
guarded by the ``repcheck`` section of the configuration.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple, Union

from .load_config import active_config
from .modeling.rootsys import RootSystem, TypeLabel, build_root_system
from .modeling.weylcore import dominant_conjugate, orbit, reflect, reflection_action
from .utils.intlat import OMEGA, WeightVec
from .utils.misc import GuardExceededError

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class WeightSystem:
    type: TypeLabel
    highest_weight: WeightVec
    multiplicities: Dict[WeightVec, int]

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities.values())

    def to_json(self):
        return {
            "type": str(self.type),
            "highest_weight": list(self.highest_weight.coords),
            "dimension": self.dimension,
            "weights": [
                {"weight": list(w.coords), "multiplicity": m}
                for w, m in sorted(self.multiplicities.items(), key=lambda item: item[0].coords)
            ],
        }


def _pairing(system: RootSystem, weight: Weight, root: Sequence[int]) -> int:
    """(weight, root) for weight in omega- and root in alpha-coordinates."""
    d = system.symmetrizer
    return sum(r * d[j] * w for j, (w, r) in enumerate(zip(weight, root)))


def _norm(system: RootSystem, weight: Weight) -> Fraction:
    alpha = system.alpha_coords(WeightVec(weight, OMEGA))
    d = system.symmetrizer
    return sum((alpha[j] * d[j] * w for j, w in enumerate(weight)), Fraction(0))


def _as_omega(system: RootSystem, weight: Union[WeightVec, Sequence[int]]) -> Weight:
    if not isinstance(weight, WeightVec):
        weight = WeightVec(tuple(weight), OMEGA)
    if len(weight) != system.rank:
        raise ValueError(f"weight {list(weight.coords)} has length {len(weight)}, expected {system.rank}")
    return system.to_omega(weight).coords


def _dominant(system: RootSystem, weight: Union[WeightVec, Sequence[int]]) -> Weight:
    weight = _as_omega(system, weight)
    if min(weight) < 0:
        raise ValueError(f"highest weight {list(weight)} is not dominant")
    return weight


def weyl_dimension(label: Union[TypeLabel, str], highest_weight: Union[WeightVec, Sequence[int]]) -> int:
    system = build_root_system(label)
    lam = _dominant(system, highest_weight)
    numerator, denominator = 1, 1
    rho = (1,) * system.rank
    shifted = tuple(x + 1 for x in lam)
    for beta in system.positive_roots:
        numerator *= _pairing(system, shifted, beta)
        denominator *= _pairing(system, rho, beta)
    assert numerator % denominator == 0
    return numerator // denominator


def _guarded(label: Union[TypeLabel, str], highest_weight) -> Tuple[TypeLabel, Weight]:
    label = TypeLabel.parse(label)
    guards = active_config().repcheck
    if label.rank > guards.max_rank:
        raise GuardExceededError(f"{label} exceeds the multiplicity oracle's rank limit {guards.max_rank}")
    lam = _dominant(build_root_system(label), highest_weight)
    dimension = weyl_dimension(label, lam)
    if dimension > guards.max_dimension:
        raise GuardExceededError(
            f"V({list(lam)}) of {label} has dimension {dimension} > {guards.max_dimension}"
        )
    return label, lam


@lru_cache(maxsize=None)
def _dominant_multiplicities(label: TypeLabel, lam: Weight) -> Dict[Weight, int]:
    system = build_root_system(label)
    positive = list(zip(system.positive_roots, system.positive_roots_omega))

    # dominant weights below lam, each reached through dominant weights
    level = {lam: 0}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for beta, beta_omega in positive:
            nu = tuple(m - b for m, b in zip(mu, beta_omega))
            if min(nu) >= 0 and nu not in level:
                level[nu] = level[mu] + sum(beta)
                queue.append(nu)

    top = _norm(system, tuple(x + 1 for x in lam))
    multiplicity = {lam: 1}
    for mu in sorted(level, key=lambda w: (level[w], w)):
        if mu == lam:
            continue
        total = 0
        for beta, beta_omega in positive:
            k = 1
            while True:
                nu = tuple(m + k * b for m, b in zip(mu, beta_omega))
                m_nu = multiplicity.get(dominant_conjugate(system, nu))
                if m_nu is None:
                    break
                total += m_nu * _pairing(system, nu, beta)
                k += 1
        value = Fraction(2 * total) / (top - _norm(system, tuple(x + 1 for x in mu)))
        if value.denominator != 1:
            raise RuntimeError(f"non-integral multiplicity {value} at {list(mu)} in V({list(lam)})")
        multiplicity[mu] = int(value)
    logging.debug(f"V({list(lam)}) of {label}: {len(multiplicity)} dominant weights")
    return multiplicity


def weight_multiplicity(
    label: Union[TypeLabel, str],
    highest_weight: Union[WeightVec, Sequence[int]],
    weight: Union[WeightVec, Sequence[int]],
) -> int:
    """dim V(highest_weight)_weight, exactly."""
    label, lam = _guarded(label, highest_weight)
    system = build_root_system(label)
    mu = dominant_conjugate(system, _as_omega(system, weight))
    return _dominant_multiplicities(label, lam).get(mu, 0)


def zero_weight_nonzero(label: Union[TypeLabel, str], highest_weight: Union[WeightVec, Sequence[int]]) -> bool:
    label = TypeLabel.parse(label)
    return weight_multiplicity(label, highest_weight, (0,) * label.rank) > 0


def weight_system(label: Union[TypeLabel, str], highest_weight: Union[WeightVec, Sequence[int]]) -> WeightSystem:
    label, lam = _guarded(label, highest_weight)
    action = reflection_action(label)
    multiplicities = {}
    for mu, m in _dominant_multiplicities(label, lam).items():
        for weight in orbit(action, WeightVec(mu, OMEGA)):
            multiplicities[weight] = m
    highest = WeightVec(lam, OMEGA)
    assert multiplicities[highest] == 1
    for weight, m in multiplicities.items():
        for i in range(label.rank):
            assert multiplicities.get(reflect(action, i, weight)) == m
    result = WeightSystem(label, highest, multiplicities)
    assert result.dimension == weyl_dimension(label, lam)
    return result
