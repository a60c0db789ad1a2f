"""Tests for bin/witt_core.py - π-typical Witt vectors, the ghost map, F, V, exp_δ and the universal
polynomials.

Over O the ghost map is injective, so most identities are checked on the ghost side; over the finite
algebras the precision-lift route is checked against the universal polynomials, which never divide.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finite_algebras import make_algebra
from padic_base import PolynomialRing, make_base, standard_base
from witt_core import (
    LengthMismatch,
    NotInImage,
    TorsionCoefficients,
    WittRing,
    WittVector,
    evaluate_universal,
    exp_delta,
    frobenius,
    ghost,
    ghost_inverse,
    ghost_vector,
    polynomial_terms,
    teichmuller,
    universal_polynomials,
    universal_ring,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
    witt_one,
    witt_ring_of,
    witt_scalar_mul,
    witt_vector,
    witt_zero,
)

components = st.lists(st.integers(-20, 20), min_size=3, max_size=3)

# ── ghost map ────────────────────────────────────────────────────────────────


def test_ghost_components(base3):
    assert ghost(witt_vector(base3, [1, 2, 0])) == ghost_vector(base3, [1, 7, 25])


def test_ghost_inverse_recovers_the_vector(base3):
    assert ghost_inverse(ghost_vector(base3, [1, 7, 25])) == witt_vector(base3, [1, 2, 0])


def test_ghost_inverse_names_the_failing_slot(base3):
    with pytest.raises(NotInImage) as excinfo:
        ghost_inverse(ghost_vector(base3, [1, 2]))
    assert excinfo.value.index == 1


def test_ghost_inverse_needs_a_torsion_free_ring(z9):
    with pytest.raises(TorsionCoefficients):
        ghost_inverse(ghost_vector(z9, [1, 1]))


@settings(max_examples=30, deadline=None)
@given(components, components)
def test_ghost_is_a_ring_homomorphism_over_o(a, b):
    for base in (standard_base(3, 1), standard_base(5, 2)):
        u, v = witt_vector(base, a), witt_vector(base, b)
        assert ghost(u + v) == ghost(u) + ghost(v)
        assert ghost(u * v) == ghost(u) * ghost(v)
        assert ghost(-u) == -ghost(u)


# ── addition, multiplication, F and V ────────────────────────────────────────


def test_one_plus_one(base3):
    # S_1(1, 1) = (1 + 1 − 2³)/3
    assert witt_add(witt_one(base3, 1), witt_one(base3, 1)) == witt_vector(base3, [2, -2])


def test_identities(base5, rng):
    u = witt_vector(base5, [base5.random_element(rng, 5) for _ in range(3)])
    assert u + witt_zero(base5, 2) == u
    assert u * witt_one(base5, 2) == u
    assert u + witt_neg(u) == witt_zero(base5, 2)


def test_frobenius_after_verschiebung_is_pi(base5, rng):
    u = witt_vector(base5, [base5.random_element(rng, 5) for _ in range(2)])
    assert frobenius(verschiebung(u)) == u * base5.pi


def test_verschiebung_products(base3, rng):
    a = witt_vector(base3, [base3.random_element(rng, 5) for _ in range(2)])
    b = witt_vector(base3, [base3.random_element(rng, 5) for _ in range(2)])
    assert verschiebung(a) * verschiebung(b) == verschiebung(a * b * base3.pi)


def test_teichmuller_is_multiplicative(base3):
    assert teichmuller(base3, 2, 2) * teichmuller(base3, 5, 2) == teichmuller(base3, 10, 2)


def test_exp_delta_over_o_has_constant_ghost(base5):
    r = base5.element([2, 1])
    assert ghost(exp_delta(base5, r, 2)) == ghost_vector(base5, [r, r, r])


def test_exp_delta_of_an_integer(base3):
    # ghost (2, 2): 2³ + 3a_1 = 2
    assert exp_delta(base3, 2, 1) == witt_vector(base3, [2, -2])


def test_exp_delta_of_a_variable_is_its_teichmuller_vector(base3):
    ring = PolynomialRing(base3, ["x"])
    x = ring.gen("x")
    assert exp_delta(ring, x, 2) == teichmuller(ring, x, 2)


def test_ghost_with_a_negative_uniformizer():
    base = make_base(3, 1, [1, 3])
    assert ghost(witt_vector(base, [1, 1])) == ghost_vector(base, [1, -2])
    ring = universal_ring(base, 1)
    x0, x1, y0, y1 = (ring.gen(name) for name in ("x0", "x1", "y0", "y1"))
    S = universal_polynomials(base, 1, "add")
    assert ring.equal(S[1], x1 + y1 + x0**2 * y0 + x0 * y0**2)


def test_vectors_over_different_rings_differ(z9, base3):
    other = make_algebra(base3, 2)
    assert witt_vector(z9, [1, 2]) != witt_vector(other, [1, 2])
    assert witt_vector(z9, [1, 2]) == witt_vector(z9, [1, 2])


def test_equal_vectors_hash_alike(base5):
    ring = PolynomialRing(base5, ["x"])
    u = WittVector(ring, (ring.pi**2,))
    v = WittVector(ring, (ring.coerce(5),))
    assert u == v
    assert hash(u) == hash(v)
    assert len({u, v}) == 1


def test_length_mismatch(base3):
    with pytest.raises(LengthMismatch):
        witt_add(witt_one(base3, 1), witt_one(base3, 2))
    with pytest.raises(LengthMismatch):
        frobenius(witt_one(base3, 0))


# ── universal polynomials ────────────────────────────────────────────────────


def test_s1_for_p3(base3):
    ring = universal_ring(base3, 1)
    x0, x1, y0, y1 = (ring.gen(name) for name in ("x0", "x1", "y0", "y1"))
    S = universal_polynomials(base3, 1, "add")
    assert S[0] == x0 + y0
    assert ring.equal(S[1], x1 + y1 - x0**2 * y0 - x0 * y0**2)


def test_s1_for_p2(base2):
    ring = universal_ring(base2, 1)
    S = universal_polynomials(base2, 1, "add")
    assert ring.equal(S[1], ring.gen("x1") + ring.gen("y1") - ring.gen("x0") * ring.gen("y0"))


def test_p0_and_f0(base3):
    ring = universal_ring(base3, 1)
    assert universal_polynomials(base3, 1, "mul")[0] == ring.gen("x0") * ring.gen("y0")
    # F_0 = x0³ + 3·x1
    assert ring.equal(universal_polynomials(base3, 1, "frobenius")[0], ring.gen("x0") ** 3 + 3 * ring.gen("x1"))


def test_universal_polynomials_over_a_ramified_base_have_integral_coefficients(base5):
    for op in ("add", "mul", "neg"):
        for poly in universal_polynomials(base5, 1, op):
            for term in polynomial_terms(base5, 1, poly):
                assert all(isinstance(c, int) for c in term["coeff"])


def test_unknown_operation(base3):
    with pytest.raises(ValueError, match="unknown operation"):
        universal_polynomials(base3, 1, "div")


def test_polynomial_terms_shape(base3):
    terms = polynomial_terms(base3, 1, universal_polynomials(base3, 1, "add")[0])
    assert terms == [{"monomial": {"x0": 1}, "coeff": [1]}, {"monomial": {"y0": 1}, "coeff": [1]}]


@pytest.mark.parametrize("op", ["add", "mul"])
def test_precision_route_agrees_with_universal_polynomials(z9, dual3, rng, op):
    combine = witt_add if op == "add" else witt_mul
    for C in (z9, dual3):
        for _ in range(20):
            u = witt_vector(C, [C.random_element(rng) for _ in range(2)])
            v = witt_vector(C, [C.random_element(rng) for _ in range(2)])
            expected = evaluate_universal(C.base, 1, op, C, u.components, v.components)
            assert list(combine(u, v).components) == expected


# ── Witt rings of finite algebras ────────────────────────────────────────────


def test_witt_ring_of_f3_is_z9(base3):
    W = WittRing(make_algebra(base3, 1), 1)
    assert repr(W) == "W_1(Z/3)"
    assert W.size == 9
    assert len(list(W.elements())) == 9
    assert W.pi_nilpotency == 2
    # additive order of 1 is 9
    total, order = W.one, 1
    while total:
        total, order = total + W.one, order + 1
    assert order == 9


def test_witt_ring_units(z9):
    W = WittRing(z9, 1)
    assert W.is_unit(W.one)
    assert not W.is_unit(W.pi)
    with pytest.raises(LengthMismatch):
        W.element([1])


def test_scalar_action_of_o(base5, rng):
    v = witt_vector(base5, [base5.random_element(rng) for _ in range(3)])
    assert witt_scalar_mul(2, v) == v + v
    assert witt_scalar_mul(1, v) == v
    assert witt_ring_of(make_algebra(base5, 2), 1).name == "W_1(O/π^2)"
