"""Tests for bin/finite_algebras.py - the finite test algebras C = O[t]/(relations, π^m) and their catalog."""

import pytest

from finite_algebras import InvalidAlgebra, catalog_from_data, default_catalog, load_catalog, make_algebra


def test_default_catalog_shapes(base3):
    names = [C.name for C in default_catalog(base3)]
    assert names == [
        "Z/3",
        "Z/9",
        "Z/27",
        "F_3[t]/(t^2)",
        "F_3[t]/(t^3)",
        "F_3[t]/(t^4)",
        "(Z/9)[t]/(t^2)",
    ]


def test_default_catalog_over_a_ramified_base(base5):
    catalog = default_catalog(base5)
    assert catalog[1].name == "O/π^2"
    # O/π^3 has coordinates mod 25 (constant) and mod 5 (π)
    assert catalog[2].moduli == (25, 5)
    assert catalog[2].size == 125


def test_sizes_and_units(z9, dual3):
    assert z9.size == 9
    assert len(z9.units()) == 6
    assert dual3.size == 9
    assert len(dual3.nilradical()) == 3


def test_nilpotent_generator(dual3):
    t = dual3.generator("t")
    assert t * t == dual3.zero
    assert dual3.is_nilpotent(t)
    assert dual3.is_unit(dual3.one + t)
    assert str(2 * t + 1) == "1 + 2·t"


def test_pi_is_nilpotent(base5):
    C = make_algebra(base5, 3)
    assert C.pi**2 != C.zero
    assert C.pi**3 == C.zero
    assert C.pi * C.pi == C.coerce(5)


def test_monomial_relations_cut_the_basis(base3):
    C = make_algebra(base3, 1, [("s", 2), ("t", 2)], [["s", "t"]])
    assert C.size == 27
    assert C.generator("s") * C.generator("t") == C.zero
    assert C.ideal_nilpotency == 2


def test_ring_axioms_hold(base5, rng):
    C = make_algebra(base5, 3, [("t", 2)])
    assert C.check_ring_axioms(rng, samples=30) == []


def test_reduction_map_is_the_quotient(base3):
    big, small = make_algebra(base3, 3), make_algebra(base3, 2)
    reduce = big.reduction_map(small)
    assert reduce(big.coerce(10)) == small.coerce(1)
    with pytest.raises(InvalidAlgebra, match="not a quotient"):
        small.reduction_map(big)


def test_representative_pi_divide(base3):
    lifted = make_algebra(base3, 3)
    assert lifted.representative_pi_divide(lifted.coerce(18), 2) == lifted.coerce(2)


@pytest.mark.parametrize(
    "kwargs, fragment",
    [
        ({"pi_power": 0}, "nilpotent"),
        ({"pi_power": 1, "nilpotent": [("t", 0)]}, "order"),
        ({"pi_power": 1, "nilpotent": [("t", 2), ("t", 3)]}, "duplicate"),
        ({"pi_power": 1, "nilpotent": [("t", 2)], "relations": [["s"]]}, "unknown generator"),
        ({"pi_power": 1, "nilpotent": [("t", 2)], "relations": [[]]}, "empty relation"),
        ({"pi_power": 1, "nilpotent": [("2t", 2)]}, "identifier"),
    ],
)
def test_make_algebra_rejects(base3, kwargs, fragment):
    with pytest.raises(InvalidAlgebra, match=fragment):
        make_algebra(base3, **kwargs)


def test_catalog_from_data(base3):
    catalog = catalog_from_data(
        base3,
        {"algebras": [{"pi_power": 2}, {"name": "dual", "pi_power": 1, "nilpotent": [{"name": "t", "order": 2}]}]},
    )
    assert [C.name for C in catalog] == ["Z/9", "dual"]


@pytest.mark.parametrize(
    "data, fragment",
    [
        ({}, "exactly one key"),
        ({"algebras": []}, "non-empty"),
        ({"algebras": [{"pi_power": 1, "colour": "red"}]}, "unknown keys"),
        ({"algebras": [{"nilpotent": []}]}, "missing pi_power"),
        ({"algebras": [{"pi_power": 1, "nilpotent": [["t", 2]]}]}, "generators"),
    ],
)
def test_catalog_from_data_rejects(base3, data, fragment):
    with pytest.raises(InvalidAlgebra, match=fragment):
        catalog_from_data(base3, data)


def test_load_catalog_reads_json5(base3, tmp_path):
    path = tmp_path / "catalog.json5"
    path.write_text('{\n  // small ones only\n  algebras: [{pi_power: 1}, {pi_power: 2,},],\n}\n')
    assert [C.name for C in load_catalog(base3, path)] == ["Z/3", "Z/9"]


def test_load_catalog_errors(base3, tmp_path):
    with pytest.raises(InvalidAlgebra, match="cannot read"):
        load_catalog(base3, tmp_path / "missing.json5")
    bad = tmp_path / "bad.json5"
    bad.write_text("{algebras: [")
    with pytest.raises(InvalidAlgebra, match="not valid JSON5"):
        load_catalog(base3, bad)
