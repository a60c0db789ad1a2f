"""Tests for bin/formal_groups.py - truncated formal group laws, their transformations, logarithm and
exponential with valuations, the additive-isomorphism certificate and law files.

Valuation expectations for the scaled multiplicative law Ĝ_m{1} = x + y + πxy:
  log coefficient at T^j is ±π^(j−1)/j, so at j = p^r its valuation is p^r − 1 − e·r;
  exp coefficient at T^j is π^(j−1)/j!, one less than v_π(π^j/j!) = (j(p−1−e) + e·s_p(j))/(p−1).
"""

import json
from fractions import Fraction

import pytest

from formal_groups import (
    InvalidLaw,
    additive_law,
    certify_additive_iso,
    dump_law,
    elliptic_law,
    exponential,
    exponential_inverts_logarithm,
    exponential_valuation_formula,
    kernel_law,
    kernel_law_matches,
    law_from_data,
    law_from_polynomial,
    law_ring,
    law_to_data,
    load_law,
    logarithm,
    logarithm_is_additive,
    logarithm_valuation_at_power,
    multiplicative_law,
    named_law,
    random_conjugate_law,
    scale_law,
    scaled_logarithm_integral,
    scaled_multiplicative_law,
    twist_phi,
    validate_law,
)
from padic_base import standard_base

# ── laws and their axioms ────────────────────────────────────────────────────


def test_standard_laws_satisfy_the_axioms(base3, base5):
    for law in (additive_law(base3, 6), multiplicative_law(base5, 6), elliptic_law(base3, -1, 1, 6)):
        checks = validate_law(law)
        assert [c.name for c in checks] == ["F(x, 0) = x", "F(0, y) = y", "F(x, y) = F(y, x)", "F(F(x, y), z) = F(x, F(y, z))"]
        assert all(c.green for c in checks), law.name


def test_random_conjugates_are_laws(base3, rng):
    for kind in ("additive", "multiplicative"):
        law = random_conjugate_law(base3, rng, 6, kind)
        assert all(c.green for c in validate_law(law)), law.name
        assert law.is_integral()


def test_a_non_commutative_series_is_caught(base3):
    ring = law_ring(base3)
    x, y = ring.gen("x"), ring.gen("y")
    bad = law_from_polynomial(ring, x + y + x * y**2, 4, "bad")
    red = [c for c in validate_law(bad) if not c.green]
    assert [c.name for c in red] == ["F(x, y) = F(y, x)", "F(F(x, y), z) = F(x, F(y, z))"]
    assert "x*y**2" in red[0].witness


def test_elliptic_law_starts_at_degree_five(base3):
    law = elliptic_law(base3, -1, 1, 6)
    coefficients = law.coefficients()
    assert coefficients[(1, 0)] == base3.field_element(1)
    assert all(alpha + beta in (1, 5, 6) for (alpha, beta) in coefficients)


# ── transformations ──────────────────────────────────────────────────────────


def test_scale_law(base5):
    scaled = scale_law(multiplicative_law(base5, 6), 2)
    ring = scaled.ring
    x, y = ring.gen("x"), ring.gen("y")
    assert scaled.name == "Gm{2}"
    assert ring.equal(scaled.series, x + y + 5 * x * y)
    with pytest.raises(ValueError):
        scale_law(scaled, 0)


def test_twist_is_trivial_without_parameters(base3):
    law = elliptic_law(base3, -1, 1, 6)
    twisted = twist_phi(law)
    assert twisted.name == "E(a=-1,b=1)^φ"
    assert law.ring.equal(twisted.series, law.series)


def test_kernel_law_of_gm_is_the_scaled_law(base3, base5):
    for base in (base3, base5):
        gm = multiplicative_law(base, 6)
        assert gm.ring.equal(kernel_law(gm).series, scaled_multiplicative_law(base, 1, 6).series)
        assert kernel_law_matches(gm).green


def test_kernel_law_of_other_laws(base3, rng):
    assert kernel_law_matches(additive_law(base3, 6)).green
    assert kernel_law_matches(elliptic_law(base3, -1, 1, 6)).green
    assert kernel_law_matches(random_conjugate_law(base3, rng, 5)).green


# ── logarithm and exponential ────────────────────────────────────────────────


def test_logarithm_and_exponential_of_gm(base3):
    gm = multiplicative_law(base3, 8)
    L, E = logarithm(gm), exponential(gm)
    assert L.coefficient(3) == base3.field_element(Fraction(1, 3))
    assert L.coefficient(4) == base3.field_element(Fraction(-1, 4))
    assert E.coefficient(3) == base3.field_element(Fraction(1, 6))
    assert L.first_non_integral() == 3
    assert L.valuations[3] == -1
    assert logarithm_is_additive(gm, L, 8).green
    assert exponential_inverts_logarithm(L, E, 8).green


def test_logarithm_beyond_a_truncated_law_is_refused(base3, rng):
    law = random_conjugate_law(base3, rng, 6)
    with pytest.raises(InvalidLaw, match="only known to degree 6"):
        logarithm_is_additive(law, logarithm(law), 8)


@pytest.mark.parametrize("p, e", [(3, 1), (5, 2), (2, 1)])
def test_scaled_law_valuations(p, e):
    base = standard_base(p, e)
    D = 30
    law = scaled_multiplicative_law(base, 1, D)
    L, E = logarithm(law), exponential(law)
    for r in range(3):
        if p**r <= D:
            assert L.valuations[p**r] == logarithm_valuation_at_power(base, r)
    for j in range(1, D + 1):
        assert E.valuations[j] + 1 == exponential_valuation_formula(base, j)


def test_exponential_valuations_stay_at_one_on_powers_of_p_when_e_is_p_minus_1():
    base = standard_base(3, 2)
    E = exponential(scaled_multiplicative_law(base, 1, 27))
    for j in (3, 9, 27):
        assert exponential_valuation_formula(base, j) == 1
        # E carries π^(j−1)/j!, one π short of π^j/j!
        assert E.valuations[j] == 0


def test_scaled_logarithm_integrality(base3, base5, base2):
    assert scaled_logarithm_integral(base3, 1, 27) == (True, True)
    assert scaled_logarithm_integral(base5, 1, 25) == (True, True)
    assert scaled_logarithm_integral(base2, 1, 16)[0] is False


# ── the certificate ──────────────────────────────────────────────────────────


@pytest.mark.parametrize("p, e", [(3, 1), (5, 2), (7, 3)])
def test_certified_when_p_is_large_enough(p, e):
    certificate = certify_additive_iso(scaled_multiplicative_law(standard_base(p, e), 1, 24))
    assert certificate.certified, certificate.reason
    assert certificate.law == "Gm{1}"


def test_refused_when_exp_valuations_stall(base2):
    certificate = certify_additive_iso(scaled_multiplicative_law(base2, 1, 16))
    assert not certificate.certified
    assert "exp valuations do not grow" in certificate.reason
    assert certificate.first_failure[0] == "exp"


def test_refused_when_the_logarithm_is_not_integral(base3):
    certificate = certify_additive_iso(multiplicative_law(base3, 12))
    assert not certificate.certified
    assert certificate.first_failure == ("log", 3, -1)


# ── law files ────────────────────────────────────────────────────────────────


def test_law_data(base5):
    law = scaled_multiplicative_law(base5, 1, 4)
    data = law_to_data(law)
    assert data == {"D": 4, "name": "Gm{1}", "exact": True, "monomials": [[0, 1, ["1", "0"]], [1, 0, ["1", "0"]], [1, 1, ["0", "1"]]]}
    again = law_from_data(base5, data)
    assert again.ring.equal(again.series, law.series)
    assert json.loads(dump_law(law)) == data


def test_load_law_and_named_laws(base3, tmp_path, rng):
    path = tmp_path / "law.json5"
    path.write_text("{D: 5, name: 'mine', monomials: [[1, 0, 1], [0, 1, 1], [1, 1, '3']]}")
    law = named_law(base3, str(path), 5)
    assert law.name == "mine"
    assert law.coefficient(1, 1) == base3.field_element(3)
    assert named_law(base3, "Gm{2}", 6).name == "Gm{2}"
    assert named_law(base3, "Ga", 6).name == "Ga"
    assert named_law(base3, "random", 6, rng).name.startswith("Gm^f[")
    assert load_law(base3, path).D == 5


@pytest.mark.parametrize(
    "data, fragment",
    [
        ({"monomials": []}, "needs integer 'D'"),
        ({"D": 4, "monomials": [[1, 0]]}, "is not"),
        ({"D": 4, "monomials": [[1, 0, ["x"]]]}, "coefficient"),
    ],
)
def test_law_data_errors(base3, data, fragment):
    with pytest.raises(InvalidLaw, match=fragment):
        law_from_data(base3, data)


def test_missing_law_file(base3, tmp_path):
    with pytest.raises(InvalidLaw, match="cannot read law file"):
        named_law(base3, str(tmp_path / "nope.json5"))
