from .descent import (
    DescentLattice,
    DescentReport,
    closed_form_lattice,
    descends,
    descent_lattice,
    descent_witness,
    minimal_descending_multiple,
    quotient_exponent,
    verify_type,
)
from .modeling.rootsys import TypeLabel, build_root_system
from .utils.intlat import IntLattice, WeightVec

__all__ = [
    "DescentLattice",
    "DescentReport",
    "IntLattice",
    "TypeLabel",
    "WeightVec",
    "build_root_system",
    "closed_form_lattice",
    "descends",
    "descent_lattice",
    "descent_witness",
    "minimal_descending_multiple",
    "quotient_exponent",
    "verify_type",
]
