import json
from typing import Any, List, Sequence, Tuple

import numpy as np


class InadmissibleTypeError(ValueError):
    """Raised for a (letter, rank) pair that names no simple Lie type."""


class NonIntegralWeightError(ValueError):
    """Raised when a weight has no integral coordinates in the requested basis."""


class LatticeMismatchError(ValueError):
    """Raised when two lattices do not share ambient rank and basis tag."""


class NotContainedError(ValueError):
    """Raised when a claimed sublattice is not contained in its ambient lattice."""


class OrbitOverflowError(RuntimeError):
    """Raised when a Weyl orbit or group enumeration exceeds its cap."""


class GuardExceededError(ValueError):
    """Raised when a representation is too large for the Freudenthal oracle."""


def parse_vector(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        raise ValueError("empty vector")
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"not a comma-separated integer vector: {text!r}") from None


def parse_vector_list(text: str) -> List[Tuple[int, ...]]:
    """Parse ``"1,0;0,2"`` into ``[(1, 0), (0, 2)]``."""
    return [parse_vector(part) for part in text.split(";") if part.strip()]


def parse_index_set(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(sorted(set(parse_vector(text))))


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def as_object_array(rows: Sequence[Sequence[int]], ncols: int) -> np.ndarray:
    # object dtype keeps Python ints, so products never overflow
    if len(rows) == 0:
        return np.empty((0, ncols), dtype=object)
    array = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if array.shape[1] != ncols:
        raise ValueError(f"expected {ncols} columns, got {array.shape[1]}")
    return array
