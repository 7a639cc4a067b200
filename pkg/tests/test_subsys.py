import pytest

from conftest import SMALL_TYPES
from oracles import brute_force_subsystem_lattices, w_class_key
from torus_descent.modeling.rootsys import TypeLabel, build_root_system, highest_root
from torus_descent.modeling.subsys import (
    enumerate_all,
    full_subsystem,
    is_closed,
    make_subsystem,
    maximal_subsystems,
)
from torus_descent.utils.intlat import full_lattice, hnf

CHART_COUNTS = {
    "G2": 2,
    "F4": 3,
    "E6": 4,
    "E7": 5,
    "E8": 5,
}


def _chart_count(label):
    n = label.rank
    if label.letter == "A":
        return 0
    if label.letter in "BC":
        return n - 1
    if label.letter == "D":
        return n - 3
    return CHART_COUNTS[str(label)]


@pytest.mark.parametrize(
    "name",
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(3, 9)]
    + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + ["G2", "F4", "E6", "E7", "E8"],
)
def test_chart_counts(name):
    label = TypeLabel.parse(name)
    assert len(maximal_subsystems(full_subsystem(label))) == _chart_count(label)


def test_g2_maximal_subsystems():
    subs = maximal_subsystems(full_subsystem("G2"))
    assert sorted(tuple(str(l) for l in s.component_labels) for s in subs) == [("A1", "A1"), ("A2",)]
    assert {s.root_lattice for s in subs} == {hnf([[3, 0], [0, 1]]), hnf([[1, 0], [0, 2]])}


def test_g2_enumeration():
    lattices = {s.root_lattice for s in enumerate_all("G2")}
    assert lattices == {full_lattice(2), hnf([[3, 0], [0, 1]]), hnf([[1, 0], [0, 2]])}


def test_e8_maximal_component_types():
    types = sorted(
        tuple(sorted(str(l) for l in s.component_labels)) for s in maximal_subsystems(full_subsystem("E8"))
    )
    assert types == sorted([("D8",), ("A8",), ("A4", "A4"), ("A2", "E6"), ("A1", "E7")])


def test_d4_maximal_subsystem():
    (sub,) = maximal_subsystems(full_subsystem("D4"))
    assert [str(l) for l in sub.component_labels] == ["A1"] * 4
    assert sub.root_lattice == hnf([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_subsystem_component_highest_roots():
    e8 = build_root_system("E8")
    for sub in maximal_subsystems(full_subsystem("E8")):
        for component in sub.components:
            simple = [sub.simple_roots[a] for a in component.positions]
            assert highest_root(simple, e8).coords == component.highest_root


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_enumerated_subsystems_are_closed(name):
    for sub in enumerate_all(name):
        assert is_closed(sub)
        assert sub.root_lattice.is_full_rank


@pytest.mark.parametrize("name", ["B3", "G2", "F4", "E6"])
def test_enumeration_is_closed_under_deletion(name):
    lattices = {s.root_lattice for s in enumerate_all(name)}
    for sub in enumerate_all(name):
        for child in maximal_subsystems(sub):
            assert child.root_lattice in lattices


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "C2", "G2", "B3", "C3", "D4"])
def test_enumeration_matches_brute_force(name):
    enumerated = {s.root_lattice for s in enumerate_all(name)}
    brute = brute_force_subsystem_lattices(name)
    assert enumerated <= brute
    assert {w_class_key(name, l) for l in brute} == {w_class_key(name, l) for l in enumerated}


@pytest.mark.slow
@pytest.mark.parametrize("name", ["A4", "B4", "C4", "F4"])
def test_enumeration_matches_brute_force_rank_four(name):
    enumerated = {s.root_lattice for s in enumerate_all(name)}
    brute = brute_force_subsystem_lattices(name)
    assert enumerated <= brute
    assert {w_class_key(name, l) for l in brute} == {w_class_key(name, l) for l in enumerated}


def test_subsystem_roots_from_components():
    sub = maximal_subsystems(full_subsystem("G2"))
    a2 = next(s for s in sub if [str(l) for l in s.component_labels] == ["A2"])
    assert len(a2.roots) == 6
    assert all(build_root_system("G2").is_root(r) for r in a2.roots)


def test_make_subsystem_rejects_dependent_roots():
    system = build_root_system("A2")
    with pytest.raises(ValueError):
        make_subsystem(system, [(1, 0), (-1, 0)])
    with pytest.raises(ValueError):
        make_subsystem(system, [(1, 0)])


def test_subsystem_json():
    payload = full_subsystem("C2").to_json()
    assert payload["components"] == ["C2"]
    assert payload["simple_roots"] == [[1, 0], [0, 1]]
