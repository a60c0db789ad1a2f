"""Tests for bin/jet_algebras.py - jet algebras, Witt coordinates p_i, the kernel algebra N_nA and the
lateral pullback.

The p = 3, e = 1 values are worked out by hand: H̄_2 = x⁶y + 3x³y² + 3y³, so
p_2 = x″ + x⁶x′ + 3x³(x′)² + 3(x′)³.
"""

import pytest

from jet_algebras import (
    appendix_ring,
    carry_polynomial,
    check_lateral_pullback,
    coordinate_ring,
    frobenius_compatibility_holds,
    ghost_identity_holds,
    h_bar_polynomial,
    jet_algebra,
    jet_coaddition_matches_witt,
    jet_coordinates_inverse,
    jet_symbol,
    kernel_coordinates_inverse,
    kernel_delta,
    kernel_frobenius_pullback,
    kernel_ring,
    lateral_pullback,
    multiplicative_coproduct_holds,
    pullback_along_iterate,
    restrict_to_kernel,
    scaled_prolongation_holds,
    theta,
    theta_plus,
    verify_coordinate_theorem,
    witt_coordinates,
)
from padic_base import PolynomialRing, UndeclaredVariable, standard_base
from witt_core import witt_vector


def test_jet_symbols():
    assert [jet_symbol("x", k) for k in range(4)] == ["x", "x′", "x″", "x^(3)"]


def test_prolong_of_a_square(base3):
    J = jet_algebra(base3, 2)
    x, dx = J.var("x", 0), J.var("x", 1)
    assert J.ring.equal(J.prolong(x**2), 2 * x**3 * dx + 3 * dx**2)


def test_prolong_agrees_with_the_axioms(base5, rng):
    J = jet_algebra(base5, 2)
    lower = PolynomialRing(base5, ["x_0", "x_1"])
    for _ in range(5):
        f = J.ring.coerce(lower.random_element(rng))
        assert J.ring.equal(J.prolong(f), J.prolong_by_axioms(f))


def test_prolonging_past_the_order_is_an_error(base3):
    J = jet_algebra(base3, 1)
    with pytest.raises(UndeclaredVariable):
        J.prolong(J.var("x", 1))


def test_carry_polynomial(base3):
    ring = PolynomialRing(base3, ["a", "b"])
    a, b = ring.gen("a"), ring.gen("b")
    assert ring.equal(carry_polynomial(ring, a, b), -(a**2) * b - a * b**2)


# ── H̄_n and Witt coordinates ────────────────────────────────────────────────


def test_h_bar_2_for_p3(base3):
    ring = appendix_ring(base3, 2)
    x, y = ring.gen("x0"), ring.gen("y0")
    assert ring.equal(h_bar_polynomial(base3, 2), x**6 * y + 3 * x**3 * y**2 + 3 * y**3)


def test_h_bar_needs_n_at_least_one(base3):
    with pytest.raises(ValueError):
        h_bar_polynomial(base3, 0)


@pytest.mark.parametrize("p, e, n", [(2, 1, 3), (3, 1, 3), (5, 2, 3)])
def test_h_bar_is_integral(p, e, n):
    # building it raises IntegralityFailure otherwise
    assert h_bar_polynomial(standard_base(p, e), n)


def test_witt_coordinates_for_p3(base3):
    coordinates = witt_coordinates(base3, 2)
    J = coordinates.algebra
    x = [J.var("x", i) for i in range(3)]
    p = coordinates["x"]
    assert p[0] == x[0]
    assert p[1] == x[1]
    assert J.ring.equal(p[2], x[2] + x[0] ** 6 * x[1] + 3 * x[0] ** 3 * x[1] ** 2 + 3 * x[1] ** 3)
    # p_i⁺ = p_i at x = 0
    assert J.ring.equal(coordinates.kernel["x"][1], x[2] + 3 * x[1] ** 3)


@pytest.mark.parametrize("p, e, n", [(2, 1, 3), (3, 1, 3), (5, 2, 2)])
def test_ghost_identity(p, e, n):
    assert ghost_identity_holds(standard_base(p, e), n)


def test_inverse_coordinates(base3):
    ring = coordinate_ring(base3, 2)
    p0, p1, p2 = (ring.gen(f"p{i}") for i in range(3))
    inverse = jet_coordinates_inverse(base3, 2)
    assert inverse[1] == p1
    assert ring.equal(inverse[2], p2 - p0**6 * p1 - 3 * p0**3 * p1**2 - 3 * p1**3)
    kernel = kernel_ring(base3, 2)
    k1, k2 = kernel.gen("p1"), kernel.gen("p2")
    assert kernel.equal(kernel_coordinates_inverse(base3, 2)[1], k2 - 3 * k1**3)


def test_restriction_sends_p_i_to_the_kernel_generator(base3):
    p = witt_coordinates(base3, 2)["x"]
    kernel = kernel_ring(base3, 2)
    assert kernel.equal(restrict_to_kernel(base3, 2, p[2]), kernel.gen("p2"))
    assert kernel.equal(restrict_to_kernel(base3, 2, p[0]), kernel.zero)


# ── Θ, Θ⁺ and the lateral pullback ───────────────────────────────────────────


def test_theta_builds_vectors(base3):
    assert theta([1, 2], base3) == witt_vector(base3, [1, 2])
    assert theta({0: 1, 1: 2}, base3) == witt_vector(base3, [1, 2])
    point = theta_plus({1: 4, 2: 5}, base3)
    assert point.head == base3.zero
    assert point.tail == (base3.element(4), base3.element(5))


def test_kernel_frobenius_pullback(base3):
    ring = kernel_ring(base3, 2)
    p1, p2 = ring.gen("p1"), ring.gen("p2")
    (image,) = kernel_frobenius_pullback(base3, 2)
    assert ring.equal(image, p1**3 + 3 * p2)
    assert ring.equal(kernel_delta(base3, 2)["p1"], p2)
    assert kernel_frobenius_pullback(base3, 1) == ()


def test_displayed_pullback_is_the_iterate_before(base3):
    comparisons = check_lateral_pullback(base3, 3)
    assert [c.i for c in comparisons] == [1, 2, 3]
    assert [c.matches_iterate for c in comparisons] == [0, 1, 2]


def test_lateral_pullback_closed_form(base3):
    ring = kernel_ring(base3, 3)
    p1, p2, p3 = (ring.gen(f"p{i}") for i in (1, 2, 3))
    assert ring.equal(lateral_pullback(base3, 3, 3)["p1"], p1**9 + 3 * p2**3 + 9 * p3)
    assert ring.equal(pullback_along_iterate(base3, 3, 2), p1**9 + 3 * p2**3 + 9 * p3)
    with pytest.raises(ValueError):
        lateral_pullback(base3, 4, 3)


def test_frobenius_compatibility(base3):
    J = jet_algebra(base3, 2)
    assert frobenius_compatibility_holds(base3, 2, J.var("x", 0))
    assert frobenius_compatibility_holds(base3, 2, J.var("x", 0) ** 2 + 1)
    with pytest.raises(ValueError):
        frobenius_compatibility_holds(base3, 1, J.var("x", 0))


# ── jets of Ĝ_a and Ĝ_m ──────────────────────────────────────────────────────


@pytest.mark.parametrize("op", ["add", "mul"])
def test_coaddition_in_witt_coordinates(base3, base5, op):
    assert jet_coaddition_matches_witt(base3, 2, op)
    assert jet_coaddition_matches_witt(base5, 1, op)


def test_multiplicative_coproduct(base3, base5):
    assert multiplicative_coproduct_holds(base3)
    assert multiplicative_coproduct_holds(base5)


@pytest.mark.parametrize("nu", [0, 1, 2])
def test_scaled_prolongation(base3, nu):
    assert scaled_prolongation_holds(base3, nu)


@pytest.mark.parametrize("p, e, n", [(3, 1, 3), (2, 1, 2), (5, 2, 2)])
def test_coordinate_theorem(p, e, n):
    result = verify_coordinate_theorem(standard_base(p, e), n)
    assert result.green, result.failures
    assert len(result.images_match) == n + 1
