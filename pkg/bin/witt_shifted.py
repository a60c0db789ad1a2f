"""
Shifted Witt vectors W_n⁺(B) = R ×_B W_n(B) and the lateral Frobenius.

R is the head ring (O, or a polynomial ring O[x, …] with its Frobenius lift) and B an R-algebra through
ρ: R → B. A shifted vector is stored as its head r ∈ R and tail (b_1, …, b_n) over B; the full Witt
vector it stands for is (ρ(r), b_1, …, b_n), so the fibre-product constraint holds by construction.
Addition and multiplication are the Witt operations on full vectors, with the head combined in R.

Lateral Frobenius. A shifted vector decomposes uniquely as v = W_n(ρ)(exp_δ(r)) + V(β) with
β ∈ W_(n−1)(B), and

    F⁺(v) = W_(n−1)(ρ∘φ)(exp_δ(r)) + V(F(β)),

which is the identity on the head and F on β. The result lives over the φ-twisted algebra (structure
map ρ∘φ), recorded as `twist` + 1. Its shifted ghost is the source's with tail slot 1 dropped. When
δ(r) = 0 (r = 0, r = ±1, or a variable with φ(x) = x^q) the decomposition is v = [ρ(r)] + V(tail), so
F⁺ reduces to "tail ↦ F(tail)".
"""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

from padic_base import BaseContext, PolynomialRing
from witt_core import (
    LengthMismatch,
    WittVector,
    exp_delta,
    frobenius,
    ghost,
    verschiebung,
    witt_add,
    witt_mul,
    witt_sub,
)


@dataclass(frozen=True, eq=False)
class ShiftedStructure:
    """(R, B, ρ) for shifted vectors, with `twist` k meaning the structure map is ρ∘φ^k."""

    head_ring: Any
    ring: Any
    rho: Callable[[Any], Any]
    twist: int = 0

    def head_frobenius(self, r: Any) -> Any:
        if isinstance(self.head_ring, PolynomialRing):
            return self.head_ring.frobenius_lift(r)
        if isinstance(self.head_ring, BaseContext):
            return r
        raise TypeError(f"{self.head_ring!r} carries no Frobenius lift")

    def structure_map(self, r: Any, extra: int = 0) -> Any:
        """ρ∘φ^(twist+extra) applied to r ∈ R."""
        for _ in range(self.twist + extra):
            r = self.head_frobenius(r)
        return self.ring.normalize(self.rho(r))

    def twisted(self) -> ShiftedStructure:
        return ShiftedStructure(self.head_ring, self.ring, self.rho, self.twist + 1)


def shifted_structure(head_ring: Any, ring: Any | None = None, rho: Callable[[Any], Any] | None = None) -> ShiftedStructure:
    """R = `head_ring`, B = `ring` (default R itself), ρ = coercion into B unless given."""
    ring = head_ring if ring is None else ring
    return ShiftedStructure(head_ring, ring, rho if rho is not None else ring.coerce)


class ShiftedWittVector:
    """(head; b_1, …, b_n) ∈ W_n⁺(B)."""

    __slots__ = ("structure", "head", "tail")

    def __init__(self, structure: ShiftedStructure, head: Any, tail: Sequence[Any]):
        self.structure = structure
        self.head = head
        self.tail = tuple(tail)

    @property
    def n(self) -> int:
        return len(self.tail)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShiftedWittVector) or other.n != self.n:
            return False
        if self.structure.twist != other.structure.twist:
            return False
        ring = self.structure.ring
        return self.structure.head_ring.equal(self.head, other.head) and all(
            ring.equal(a, b) for a, b in zip(self.tail, other.tail)
        )

    def __hash__(self) -> int:
        return hash((self.head, self.tail))

    def __repr__(self) -> str:
        return f"ShiftedWittVector({self})"

    def __str__(self) -> str:
        return f"({_show(self.head)}; " + ", ".join(_show(c) for c in self.tail) + ")"

    def __add__(self, other: ShiftedWittVector) -> ShiftedWittVector:
        return shifted_add(self, other)

    def __mul__(self, other: ShiftedWittVector) -> ShiftedWittVector:
        return shifted_mul(self, other)

    def __sub__(self, other: ShiftedWittVector) -> ShiftedWittVector:
        return shifted_sub(self, other)

    def full(self) -> WittVector:
        """The image (ρ(head), b_1, …, b_n) in W_n(B): the vertical map of the fibre-product square."""
        return WittVector(self.structure.ring, (self.structure.structure_map(self.head), *self.tail))


def _show(value: Any) -> str:
    return str(value.as_expr()) if hasattr(value, "as_expr") else str(value)


def shifted_vector(structure: ShiftedStructure, head: Any, tail: Sequence[Any]) -> ShiftedWittVector:
    head_ring, ring = structure.head_ring, structure.ring
    return ShiftedWittVector(
        structure,
        head_ring.normalize(head_ring.coerce(head)),
        [ring.normalize(ring.coerce(b)) for b in tail],
    )


def shifted_one(structure: ShiftedStructure, n: int) -> ShiftedWittVector:
    return ShiftedWittVector(structure, structure.head_ring.one, (structure.ring.zero,) * n)


def shifted_zero(structure: ShiftedStructure, n: int) -> ShiftedWittVector:
    return ShiftedWittVector(structure, structure.head_ring.zero, (structure.ring.zero,) * n)


def random_shifted(structure: ShiftedStructure, n: int, rng: random.Random, zero_head: bool = False) -> ShiftedWittVector:
    head = structure.head_ring.zero if zero_head else structure.head_ring.random_element(rng)
    return shifted_vector(structure, head, [structure.ring.random_element(rng) for _ in range(n)])


# ── ring structure ───────────────────────────────────────────────────────────


def _check_pair(u: ShiftedWittVector, v: ShiftedWittVector) -> None:
    if u.n != v.n:
        raise LengthMismatch(f"shifted vectors of lengths {u.n} and {v.n}")
    if u.structure is not v.structure and (
        u.structure.ring != v.structure.ring or u.structure.twist != v.structure.twist
    ):
        raise LengthMismatch("shifted vectors over different algebras")


def _combine(u: ShiftedWittVector, head: Any, full: WittVector) -> ShiftedWittVector:
    head_ring = u.structure.head_ring
    return ShiftedWittVector(u.structure, head_ring.normalize(head), full.components[1:])


def shifted_add(u: ShiftedWittVector, v: ShiftedWittVector) -> ShiftedWittVector:
    _check_pair(u, v)
    return _combine(u, u.head + v.head, witt_add(u.full(), v.full()))


def shifted_mul(u: ShiftedWittVector, v: ShiftedWittVector) -> ShiftedWittVector:
    _check_pair(u, v)
    return _combine(u, u.head * v.head, witt_mul(u.full(), v.full()))


def shifted_sub(u: ShiftedWittVector, v: ShiftedWittVector) -> ShiftedWittVector:
    _check_pair(u, v)
    return _combine(u, u.head - v.head, witt_sub(u.full(), v.full()))


def augmentation(v: ShiftedWittVector) -> Any:
    """w_0⁺: the head, an R-algebra map W_n⁺(B) → R."""
    return v.head


def shifted_ghost(v: ShiftedWittVector) -> tuple[Any, tuple[Any, ...]]:
    """(r, (w_1, …, w_n)) with w_i the ghost polynomials at (ρ(r), b_1, …, b_i); the head stays in R."""
    return v.head, ghost(v.full()).components[1:]


# ── lateral Frobenius ────────────────────────────────────────────────────────


def _structure_image(structure: ShiftedStructure, vector: WittVector, extra: int) -> WittVector:
    return WittVector(structure.ring, [structure.structure_map(c, extra) for c in vector.components])


def decompose(v: ShiftedWittVector) -> tuple[WittVector, WittVector]:
    """(W_n(ρ)(exp_δ(r)), β) with v = W_n(ρ)(exp_δ(r)) + V(β)."""
    structure = v.structure
    exponential = _structure_image(structure, exp_delta(structure.head_ring, v.head, v.n), 0)
    difference = witt_sub(v.full(), exponential)
    return exponential, WittVector(structure.ring, difference.components[1:])


def lateral_frobenius(v: ShiftedWittVector) -> ShiftedWittVector:
    """F⁺: W_n⁺(B) → W_(n−1)⁺(^φB); head preserved, F on the V-part (see module docstring)."""
    if v.n < 1:
        raise LengthMismatch("the lateral Frobenius needs n ≥ 1")
    structure = v.structure
    target = structure.twisted()
    _, beta = decompose(v)
    head_part = _structure_image(structure, exp_delta(structure.head_ring, v.head, v.n - 1), 1)
    if v.n == 1:
        return ShiftedWittVector(target, v.head, ())
    full = witt_add(head_part, verschiebung(frobenius(beta)))
    return ShiftedWittVector(target, v.head, full.components[1:])


def lateral_iterate(v: ShiftedWittVector, i: int) -> ShiftedWittVector:
    """(F⁺)^i(v)."""
    for _ in range(i):
        v = lateral_frobenius(v)
    return v


def iterate_first_entry(base: BaseContext, n: int, i: int) -> tuple[PolynomialRing, Any]:
    """The first tail entry of (F⁺)^i(0; b_1, …, b_n) as a polynomial in b_1..b_n over O."""
    if not 1 <= i <= n - 1:
        raise LengthMismatch(f"(F⁺)^{i} of a length-{n} tail has no first entry; need 1 ≤ i ≤ n − 1")
    ring = PolynomialRing(base, [f"b{k}" for k in range(1, n + 1)])
    structure = shifted_structure(base, ring)
    v = ShiftedWittVector(structure, base.zero, [ring.gen(f"b{k}") for k in range(1, n + 1)])
    return ring, lateral_iterate(v, i).tail[0]


def iterate_closed_form(ring: PolynomialRing, i: int, last: int) -> Any:
    """Σ_(k<i) π^k b_(k+1)^(q^(i−k)) + π^i b_last: the iterate pattern with a chosen final index."""
    q = ring.base.q
    total = ring.zero
    for k in range(i):
        total += ring.pi**k * ring.gen(f"b{k + 1}") ** (q ** (i - k))
    total += ring.pi**i * ring.gen(f"b{last}")
    return ring.normalize(total)
