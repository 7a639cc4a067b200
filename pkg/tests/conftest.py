import numpy as np
import pytest

SMALL_TYPES = ["A1", "A2", "A3", "A4", "C2", "G2", "B3", "C3", "B4", "C4", "D4", "F4"]
CLASSICAL_TYPES = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(3, 9)]
    + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(4, 9)]
)
EXCEPTIONAL_TYPES = ["G2", "F4", "E6", "E7", "E8"]


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
