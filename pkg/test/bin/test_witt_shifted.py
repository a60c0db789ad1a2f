"""Tests for bin/witt_shifted.py - shifted Witt vectors W_n⁺(B) and the lateral Frobenius F⁺."""

import pytest

from padic_base import PolynomialRing
from witt_core import LengthMismatch, frobenius, verschiebung, witt_add, witt_vector
from witt_shifted import (
    augmentation,
    decompose,
    iterate_closed_form,
    iterate_first_entry,
    lateral_frobenius,
    lateral_iterate,
    random_shifted,
    shifted_ghost,
    shifted_one,
    shifted_structure,
    shifted_vector,
    shifted_zero,
)


@pytest.fixture
def over_o(base5):
    return shifted_structure(base5)


def test_full_vector_carries_the_head(over_o, base5):
    v = shifted_vector(over_o, base5.pi, [1, 2])
    assert v.full() == witt_vector(base5, [base5.pi, 1, 2])
    assert str(v) == "(π; 1, 2)"


def test_sum_and_product_are_computed_on_full_vectors(over_o, rng):
    u, v = random_shifted(over_o, 2, rng), random_shifted(over_o, 2, rng)
    assert (u + v).full() == u.full() + v.full()
    assert (u * v).full() == u.full() * v.full()
    assert (u - v).full() == u.full() - v.full()


def test_unit_zero_and_augmentation(over_o, base5, rng):
    v = random_shifted(over_o, 2, rng)
    assert shifted_one(over_o, 2) * v == v
    assert shifted_zero(over_o, 2) + v == v
    assert augmentation(shifted_vector(over_o, 4, [1, 2])) == base5.element(4)


def test_decomposition(over_o, rng):
    v = random_shifted(over_o, 2, rng)
    exponential, beta = decompose(v)
    assert witt_add(exponential, verschiebung(beta)) == v.full()


def test_lateral_frobenius_keeps_the_head(over_o, rng):
    v = random_shifted(over_o, 3, rng)
    image = lateral_frobenius(v)
    assert image.head == v.head
    assert image.n == 2
    assert image.structure.twist == 1


def test_lateral_frobenius_is_a_ring_map_over_o(over_o, rng):
    for _ in range(5):
        u, v = random_shifted(over_o, 2, rng), random_shifted(over_o, 2, rng)
        assert lateral_frobenius(u + v) == lateral_frobenius(u) + lateral_frobenius(v)
        assert lateral_frobenius(u * v) == lateral_frobenius(u) * lateral_frobenius(v)


def test_lateral_frobenius_is_a_ring_map_over_a_polynomial_head(base3, rng):
    structure = shifted_structure(PolynomialRing(base3, ["x"]))
    for _ in range(3):
        u, v = random_shifted(structure, 2, rng), random_shifted(structure, 2, rng)
        assert lateral_frobenius(u + v) == lateral_frobenius(u) + lateral_frobenius(v)
        assert lateral_frobenius(u * v) == lateral_frobenius(u) * lateral_frobenius(v)


def test_shifted_ghost_drops_the_first_tail_slot(over_o, rng):
    v = random_shifted(over_o, 3, rng)
    head, tail = shifted_ghost(v)
    image_head, image_tail = shifted_ghost(lateral_frobenius(v))
    assert image_head == head
    assert image_tail == tail[1:]


@pytest.mark.parametrize("head", [0, 1, -1])
def test_heads_with_zero_delta_reduce_to_frobenius_of_the_tail(over_o, base5, head):
    tail = [base5.element([1, 2]), base5.element(3), base5.element([0, 4])]
    image = lateral_frobenius(shifted_vector(over_o, head, tail))
    assert witt_vector(base5, image.tail) == frobenius(witt_vector(base5, tail))


def test_lateral_frobenius_needs_a_tail(over_o):
    with pytest.raises(LengthMismatch):
        lateral_frobenius(shifted_vector(over_o, 1, []))


# ── iterates ─────────────────────────────────────────────────────────────────


@pytest.mark.parametrize("i", [1, 2])
def test_iterate_first_entry_ends_in_b_i_plus_one(base3, i):
    ring, entry = iterate_first_entry(base3, 3, i)
    assert ring.equal(entry, iterate_closed_form(ring, i, i + 1))
    assert not ring.equal(entry, iterate_closed_form(ring, i, i))


def test_first_iterate_by_hand(base3):
    ring, entry = iterate_first_entry(base3, 2, 1)
    b1, b2 = ring.gen("b1"), ring.gen("b2")
    assert ring.equal(entry, b1**3 + 3 * b2)


def test_iterate_out_of_range(base3):
    with pytest.raises(LengthMismatch, match="1 ≤ i ≤ n − 1"):
        iterate_first_entry(base3, 3, 3)


def test_lateral_iterate_length(over_o, rng):
    assert lateral_iterate(random_shifted(over_o, 3, rng), 2).n == 1
