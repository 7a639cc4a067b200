import pytest

from oracles import literal_core
from torus_descent.descent import closed_form_lattice
from torus_descent.modeling.rootsys import build_root_system
from torus_descent.modeling.weylcore import (
    dominant_conjugate,
    is_w_stable,
    orbit,
    reflect,
    reflection_action,
    weyl_core,
    weyl_group_elements,
)
from torus_descent.utils.intlat import ALPHA, OMEGA, WeightVec, full_lattice, hnf, index, is_sublattice
from torus_descent.utils.misc import OrbitOverflowError


def _random_full_rank(rng, rank, low=-6, high=6):
    while True:
        lattice = hnf(rng.integers(low, high + 1, size=(rank, rank)).tolist(), rank)
        if lattice.is_full_rank:
            return lattice


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("C2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("F4", 1152)])
def test_weyl_group_order(name, order):
    assert len(weyl_group_elements(reflection_action(name), cap=2000)) == order


def test_weyl_group_cap():
    with pytest.raises(OrbitOverflowError):
        weyl_group_elements(reflection_action("F4"), cap=100)


def test_reflections_are_involutions():
    action = reflection_action("F4")
    v = WeightVec((1, -2, 3, 5), ALPHA)
    for i in range(4):
        assert reflect(action, i, reflect(action, i, v)) == v
        w = WeightVec((1, -2, 3, 5), OMEGA)
        assert reflect(action, i, reflect(action, i, w)) == w


def test_reflection_agrees_across_bases():
    system = build_root_system("G2")
    action = reflection_action(system)
    for coords in [(1, 0), (0, 1), (3, -2), (6, 2)]:
        v = WeightVec(coords, ALPHA)
        for i in range(2):
            assert system.to_omega(reflect(action, i, v)) == reflect(action, i, system.to_omega(v))


def test_simple_reflection_negates_its_root():
    action = reflection_action("E6")
    for i in range(6):
        e_i = WeightVec(tuple(1 if k == i else 0 for k in range(6)), ALPHA)
        assert reflect(action, i, e_i) == -e_i


def test_reflect_rejects_bad_input():
    action = reflection_action("A2")
    with pytest.raises(IndexError):
        reflect(action, 2, WeightVec((1, 0), ALPHA))
    with pytest.raises(ValueError):
        reflect(action, 0, WeightVec((1, 0, 0), ALPHA))


def test_orbits():
    action = reflection_action("G2")
    roots = orbit(action, WeightVec((1, 0), ALPHA))
    assert len(roots) == 6
    assert {v.coords for v in roots} | {v.coords for v in orbit(action, WeightVec((0, 1), ALPHA))} == set(
        build_root_system("G2").roots
    )
    assert len(orbit(action, WeightVec((1, 1), OMEGA))) == 12
    assert orbit(action, WeightVec((0, 0), OMEGA)) == {WeightVec((0, 0), OMEGA)}


def test_orbit_cap_is_a_signal():
    with pytest.raises(OrbitOverflowError):
        orbit(reflection_action("E8"), WeightVec((1,) * 8, OMEGA), cap=500)


def test_dominant_conjugate():
    system = build_root_system("A2")
    assert dominant_conjugate(system, (-1, 0)) == (0, 1)
    assert dominant_conjugate(system, (2, -3)) == (1, 2)


def test_g2_core_of_three_a1_two_a2():
    action = reflection_action("G2")
    core, rounds = weyl_core(action, hnf([[3, 0], [0, 2]]), return_rounds=True)
    assert core == hnf([[6, 0], [0, 2]])
    assert rounds >= 1


def test_c_type_lattice_is_stable():
    for rank in range(2, 9):
        action = reflection_action(f"C{rank}")
        lattice = closed_form_lattice(f"C{rank}")
        assert is_w_stable(action, lattice)
        assert weyl_core(action, lattice) == lattice


def test_root_lattice_is_stable():
    action = reflection_action("E7")
    assert is_w_stable(action, full_lattice(7))


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_core_matches_literal_intersection(name, rng):
    action = reflection_action(name)
    for _ in range(100):
        lattice = _random_full_rank(rng, 2)
        core = weyl_core(action, lattice)
        assert core == literal_core(name, lattice)
        assert is_w_stable(action, core)
        assert is_sublattice(core, lattice)


@pytest.mark.parametrize("name", ["A3", "B3", "C3"])
def test_core_is_monotone_and_idempotent(name, rng):
    action = reflection_action(name)
    for _ in range(30):
        big = _random_full_rank(rng, 3, low=-3, high=3)
        mixer = _random_full_rank(rng, 3, low=-2, high=2)
        small = hnf(mixer.matrix.dot(big.matrix), 3)
        core_big = weyl_core(action, big)
        core_small = weyl_core(action, small)
        assert is_sublattice(core_small, core_big)
        assert weyl_core(action, core_big) == core_big
        assert index(full_lattice(3), core_big) < float("inf")


def test_core_rejects_lower_rank():
    with pytest.raises(ValueError):
        weyl_core(reflection_action("A2"), hnf([[1, 1]], 2))


def test_unstable_lattices():
    assert not is_w_stable(reflection_action("G2"), hnf([[3, 0], [0, 2]]))
    assert not is_w_stable(reflection_action("D4"), hnf([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_root_orbits_in_small_types():
    assert len(orbit(reflection_action("A2"), WeightVec((1, 0), ALPHA))) == 6
    with pytest.raises(OrbitOverflowError):
        orbit(reflection_action("A3"), WeightVec((1, 0, 0), ALPHA), cap=3)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"])
def test_simply_laced_roots_form_one_orbit(name):
    rank = build_root_system(name).rank
    simple = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    roots = {v.coords for v in orbit(reflection_action(name), WeightVec(simple[0], ALPHA))}
    assert set(simple) <= roots
