"""
π-typical Witt vectors of length n+1 over any coefficient ring of the package.

A `WittVector` is a component tuple (a_0, …, a_n) over a coefficient ring B. The ring structure is the
one making the ghost map

    w_i = a_0^(q^i) + π a_1^(q^(i−1)) + … + π^i a_i

a ring homomorphism into B^(n+1). How an operation is evaluated depends on B:

  - π-torsion-free B (O itself, polynomial rings O[x, …]): through the ghost side, exactly. Apply the
    operation to ghost components and invert by successive exact division by π.
  - finite test algebras: the same ghost computation on integral representatives in the algebra with
    n more π-adic digits (`precision_lift`), then reduced. Each division by π^i loses i digits, so n
    extra digits leave every component exact modulo the original π-power.
  - any other torsion ring: the universal polynomials S_i, P_i, N_i, F_i, computed once per (base, n)
    by ghost inversion over Z[π][x_0..x_n, y_0..y_n]/(E) and evaluated without division.

The three routes agree (the universal polynomials have O-coefficients); the tests pin that on the
finite algebras where the universal polynomials are small enough to evaluate.

Verschiebung is componentwise, V(a) = (0, a_0, …, a_n). Frobenius is the ghost left shift. exp_δ is the
ring homomorphism R → W_n(R) whose ghost is (r, φ(r), …, φ^n(r)); it is how O acts on every W_n(B), so
`WittRing.pi` is the image of exp_δ(π), not the Teichmüller lift of π.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

from sympy.polys.rings import PolyElement

from padic_base import (
    BaseContext,
    JetspaceError,
    NotDivisible,
    OElement,
    PolynomialRing,
    evaluate_terms,
)

MAX_COMPONENTS = 6


class NotInImage(JetspaceError):
    """A ghost vector that is not the ghost of any Witt vector: an exact division by π failed."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class LengthMismatch(JetspaceError):
    """Two Witt vectors of different lengths, or over different coefficient rings, were combined."""


class TorsionCoefficients(JetspaceError):
    """An operation that needs exact division by π was asked of a ring with π-torsion."""


# ── values ───────────────────────────────────────────────────────────────────


class WittVector:
    """(a_0, …, a_n) over `ring`; arithmetic operators are the Witt ring operations."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: Any, components: Sequence[Any]):
        self.ring = ring
        self.components = tuple(components)

    @property
    def n(self) -> int:
        return len(self.components) - 1

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Any:
        return self.components[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WittVector) or len(other) != len(self) or other.ring != self.ring:
            return False
        return all(self.ring.equal(a, b) for a, b in zip(self.components, other.components))

    def __hash__(self) -> int:
        # equal vectors have equal normal forms
        return hash(tuple(self.ring.normalize(c) for c in self.components))

    def __repr__(self) -> str:
        return f"WittVector({self})"

    def __str__(self) -> str:
        return "(" + ", ".join(_show(c) for c in self.components) + ")"

    def __add__(self, other: Any) -> WittVector:
        if not isinstance(other, WittVector):
            return NotImplemented
        return witt_add(self, other)

    def __sub__(self, other: Any) -> WittVector:
        if not isinstance(other, WittVector):
            return NotImplemented
        return witt_sub(self, other)

    def __neg__(self) -> WittVector:
        return witt_neg(self)

    def __mul__(self, other: Any) -> WittVector:
        if isinstance(other, WittVector):
            return witt_mul(self, other)
        if isinstance(other, (int, OElement)):
            return witt_mul(self, scalar(self.ring, other, self.n))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> WittVector:
        result = witt_one(self.ring, self.n)
        square = self
        while exponent:
            if exponent & 1:
                result = result * square
            exponent >>= 1
            if exponent:
                square = square * square
        return result

    def __bool__(self) -> bool:
        return any(not self.ring.equal(c, self.ring.zero) for c in self.components)


def _show(value: Any) -> str:
    if isinstance(value, PolyElement):
        return str(value.as_expr())
    return str(value)


def witt_vector(ring: Any, components: Sequence[Any]) -> WittVector:
    """A Witt vector with every component coerced into `ring` and normalized."""
    if len(components) - 1 > MAX_COMPONENTS:
        raise LengthMismatch(f"length {len(components)} exceeds the supported n ≤ {MAX_COMPONENTS}")
    return WittVector(ring, [ring.normalize(ring.coerce(c)) for c in components])


def witt_zero(ring: Any, n: int) -> WittVector:
    return WittVector(ring, (ring.zero,) * (n + 1))


def witt_one(ring: Any, n: int) -> WittVector:
    return WittVector(ring, (ring.one,) + (ring.zero,) * n)


@dataclass(frozen=True)
class GhostVector:
    """(w_0, …, w_n) over `ring`; slot i lives in the φ^twists[i]-twisted copy of the ring."""

    ring: Any
    components: tuple[Any, ...]
    twists: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GhostVector) or len(other.components) != len(self.components):
            return False
        return self.twists == other.twists and all(
            self.ring.equal(a, b) for a, b in zip(self.components, other.components)
        )

    def __hash__(self) -> int:
        return hash((self.components, self.twists))

    def __add__(self, other: GhostVector) -> GhostVector:
        return self._combine(other, lambda a, b: a + b)

    def __mul__(self, other: GhostVector) -> GhostVector:
        return self._combine(other, lambda a, b: a * b)

    def __neg__(self) -> GhostVector:
        return GhostVector(self.ring, tuple(-a for a in self.components), self.twists)

    def _combine(self, other: GhostVector, op) -> GhostVector:
        if len(other.components) != len(self.components):
            raise LengthMismatch("ghost vectors of different lengths")
        normalize = self.ring.normalize
        return GhostVector(
            self.ring, tuple(normalize(op(a, b)) for a, b in zip(self.components, other.components)), self.twists
        )


def ghost_vector(ring: Any, components: Sequence[Any], twist: int = 0) -> GhostVector:
    components = tuple(ring.normalize(ring.coerce(c)) for c in components)
    return GhostVector(ring, components, tuple(range(twist, twist + len(components))))


# ── ghost map ────────────────────────────────────────────────────────────────


def _ghost_components(ring: Any, components: Sequence[Any]) -> list[Any]:
    q = ring.base.q
    n = len(components) - 1
    pi = ring.pi
    ghosts = [ring.zero] * (n + 1)
    pi_power = ring.one
    for k, a in enumerate(components):
        power = a
        for i in range(k, n + 1):
            ghosts[i] = ghosts[i] + pi_power * power
            if i < n:
                power = ring.normalize(power**q)
        pi_power = ring.normalize(pi_power * pi)
    return [ring.normalize(w) for w in ghosts]


def _invert_ghost_components(ring: Any, ghosts: Sequence[Any], divide) -> list[Any]:
    """a_i = (w_i − Σ_(k<i) π^k a_k^(q^(i−k))) / π^i, with `divide(value, i)` doing the division."""
    q = ring.base.q
    components: list[Any] = []
    # powers[k] holds a_k^(q^(i−k)) for the current i
    powers: list[Any] = []
    for i, w in enumerate(ghosts):
        remainder = w
        pi_power = ring.one
        for k in range(i):
            powers[k] = ring.normalize(powers[k] ** q)
            remainder = remainder - pi_power * powers[k]
            pi_power = ring.normalize(pi_power * ring.pi)
        a = divide(ring.normalize(remainder), i)
        components.append(a)
        powers.append(a)
    return components


def ghost(v: WittVector, twist: int = 0) -> GhostVector:
    """(w_0, …, w_n) of v; `twist` is the Frobenius twist of v's own coefficient ring."""
    return GhostVector(v.ring, tuple(_ghost_components(v.ring, v.components)), tuple(range(twist, twist + len(v))))


def ghost_inverse(g: GhostVector) -> WittVector:
    """The Witt vector with ghost g; only over π-torsion-free rings. NotInImage when a division fails."""
    ring = g.ring
    if not ring.torsion_free:
        raise TorsionCoefficients(f"ghost inversion needs a π-torsion-free ring, not {ring!r}")

    def divide(value: Any, i: int) -> Any:
        try:
            return ring.pi_divide(value, i)
        except NotDivisible as failure:
            raise NotInImage(f"ghost component w_{i} does not come from a Witt vector: {failure}", i) from failure

    return WittVector(ring, _invert_ghost_components(ring, g.components, divide))


def frobenius_ghost(g: GhostVector) -> GhostVector:
    """Ghost-side F: drop slot 0; the remaining slots keep their twists."""
    return GhostVector(g.ring, g.components[1:], g.twists[1:])


def verschiebung_ghost(g: GhostVector) -> GhostVector:
    """Ghost-side V: (0, π w_0, …, π w_n), one slot earlier in twist."""
    ring = g.ring
    components = (ring.zero, *(ring.normalize(ring.pi * w) for w in g.components))
    first = g.twists[0] - 1 if g.twists else 0
    return GhostVector(ring, components, tuple(range(first, first + len(components))))


# ── evaluation routes ────────────────────────────────────────────────────────


def _check_pair(u: WittVector, v: WittVector) -> None:
    if len(u) != len(v):
        raise LengthMismatch(f"Witt vectors of lengths {len(u)} and {len(v)}")
    if u.ring != v.ring:
        raise LengthMismatch(f"Witt vectors over different rings {u.ring!r} and {v.ring!r}")


def _through_ghosts(ring: Any, vectors: Sequence[WittVector], combine, length: int) -> WittVector:
    """Apply `combine` (list of ghost lists → ghost list) on the ghost side and come back."""
    if ring.torsion_free:
        ghosts = combine([_ghost_components(ring, v.components) for v in vectors])
        return ghost_inverse(GhostVector(ring, tuple(ghosts), tuple(range(len(ghosts)))))
    if hasattr(ring, "precision_lift"):
        lifted = ring.precision_lift(length - 1)
        ghosts = combine(
            [_ghost_components(lifted, [ring.lift(c, lifted) for c in v.components]) for v in vectors]
        )
        components = _invert_ghost_components(lifted, ghosts, lifted.representative_pi_divide)
        return WittVector(ring, [ring.reduce(c) for c in components])
    raise TorsionCoefficients(f"{ring!r} has no precision lift")


def _route(ring: Any) -> str:
    if ring.torsion_free or hasattr(ring, "precision_lift"):
        return "ghost"
    return "universal"


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    _check_pair(u, v)
    if _route(u.ring) == "universal":
        return _evaluate_universal(u.ring.base, u.n, "add", u, v)
    return _through_ghosts(u.ring, [u, v], lambda g: [a + b for a, b in zip(*g)], len(u))


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    _check_pair(u, v)
    if _route(u.ring) == "universal":
        return _evaluate_universal(u.ring.base, u.n, "mul", u, v)
    return _through_ghosts(u.ring, [u, v], lambda g: [a * b for a, b in zip(*g)], len(u))


def witt_neg(v: WittVector) -> WittVector:
    if _route(v.ring) == "universal":
        return _evaluate_universal(v.ring.base, v.n, "neg", v)
    return _through_ghosts(v.ring, [v], lambda g: [-a for a in g[0]], len(v))


def witt_sub(u: WittVector, v: WittVector) -> WittVector:
    return witt_add(u, witt_neg(v))


def frobenius(v: WittVector) -> WittVector:
    """F: W_n(B) → W_(n−1)(B), the ghost left shift."""
    if len(v) < 2:
        raise LengthMismatch("Frobenius needs a vector of length at least 2")
    if _route(v.ring) == "universal":
        return _evaluate_universal(v.ring.base, v.n, "frobenius", v)
    return _through_ghosts(v.ring, [v], lambda g: g[0][1:], len(v))


def verschiebung(v: WittVector) -> WittVector:
    """V: W_n(B) → W_(n+1)(B), (a_0, …, a_n) ↦ (0, a_0, …, a_n)."""
    return WittVector(v.ring, (v.ring.zero, *v.components))


def teichmuller(ring: Any, b: Any, n: int) -> WittVector:
    """[b] = (b, 0, …, 0)."""
    return WittVector(ring, (ring.normalize(ring.coerce(b)),) + (ring.zero,) * n)


def _frobenius_map(ring: Any):
    if isinstance(ring, PolynomialRing):
        return ring.frobenius_lift
    if isinstance(ring, BaseContext):
        return ring.frobenius
    raise TorsionCoefficients(f"{ring!r} carries no Frobenius lift, so exp_δ is not defined on it")


def exp_delta(ring: Any, r: Any, n: int) -> WittVector:
    """exp_δ(r) ∈ W_n(R): the Witt vector with ghost (r, φ(r), …, φ^n(r))."""
    phi = _frobenius_map(ring)
    r = ring.normalize(ring.coerce(r))
    ghosts = [r]
    for _ in range(n):
        ghosts.append(ring.normalize(phi(ghosts[-1])))
    return ghost_inverse(GhostVector(ring, tuple(ghosts), tuple(range(n + 1))))


@lru_cache(maxsize=None)
def _exp_delta_on_o(base: BaseContext, coeffs: tuple[int, ...], n: int) -> WittVector:
    return exp_delta(base, base.element(coeffs), n)


def scalar(ring: Any, r: int | OElement, n: int) -> WittVector:
    """The image of r ∈ O in W_n(ring): W_n(ρ)(exp_δ(r)), ρ: O → ring the structure map."""
    base = ring.base
    r = base.element(r)
    over_o = _exp_delta_on_o(base, r.coeffs, n)
    return WittVector(ring, [ring.normalize(ring.coerce(c)) for c in over_o.components])


def witt_scalar_mul(r: int | OElement, v: WittVector) -> WittVector:
    return witt_mul(scalar(v.ring, r, v.n), v)


# ── universal polynomials ────────────────────────────────────────────────────

UNIVERSAL_OPS = ("add", "mul", "neg", "frobenius")


@lru_cache(maxsize=None)
def universal_ring(base: BaseContext, n: int) -> PolynomialRing:
    """Z[π][x_0..x_n, y_0..y_n]/(E), x-block before y-block."""
    if n > MAX_COMPONENTS:
        raise LengthMismatch(f"n={n} exceeds the supported n ≤ {MAX_COMPONENTS}")
    return PolynomialRing(base, [f"x{i}" for i in range(n + 1)] + [f"y{i}" for i in range(n + 1)])


@lru_cache(maxsize=None)
def universal_polynomials(base: BaseContext, n: int, op: str) -> tuple[PolyElement, ...]:
    """S_i (add), P_i (mul), N_i (neg) or F_i (frobenius) for i ≤ n, by ghost inversion; cached."""
    if op not in UNIVERSAL_OPS:
        raise ValueError(f"unknown operation {op!r}; expected one of {UNIVERSAL_OPS}")
    ring = universal_ring(base, n)
    x = WittVector(ring, [ring.gen(f"x{i}") for i in range(n + 1)])
    y = WittVector(ring, [ring.gen(f"y{i}") for i in range(n + 1)])
    if op == "add":
        result = _through_ghosts(ring, [x, y], lambda g: [a + b for a, b in zip(*g)], n + 1)
    elif op == "mul":
        result = _through_ghosts(ring, [x, y], lambda g: [a * b for a, b in zip(*g)], n + 1)
    elif op == "neg":
        result = _through_ghosts(ring, [x], lambda g: [-a for a in g[0]], n + 1)
    else:
        result = _through_ghosts(ring, [x], lambda g: g[0][1:], n + 1)
    return result.components


@lru_cache(maxsize=None)
def _compiled(base: BaseContext, n: int, op: str) -> tuple[tuple, ...]:
    return tuple(tuple(poly.items()) for poly in universal_polynomials(base, n, op))


def evaluate_universal(base: BaseContext, n: int, op: str, ring: Any, xs: Sequence[Any], ys: Sequence[Any] = ()) -> list:
    """Evaluate the cached universal polynomials of `op` at (xs; ys) in `ring`; never divides."""
    values = {i: ring.coerce(x) for i, x in enumerate(xs)}
    values.update({n + 1 + i: ring.coerce(y) for i, y in enumerate(ys)})
    width = 2 * (n + 1)
    return [evaluate_terms(terms, width, values, ring) for terms in _compiled(base, n, op)]


def _evaluate_universal(base: BaseContext, n: int, op: str, u: WittVector, v: WittVector | None = None) -> WittVector:
    ys = v.components if v is not None else ()
    return WittVector(u.ring, evaluate_universal(base, n, op, u.ring, u.components, ys))


def polynomial_terms(base: BaseContext, n: int, poly: PolyElement) -> list[dict[str, Any]]:
    """A universal polynomial as [{"monomial": {name: exponent}, "coeff": [a_0, …, a_(e−1)]}], graded lex."""
    ring = universal_ring(base, n)
    out = []
    for exponents, coefficient in ring.terms(poly):
        monomial = {name: e for name, e in zip(ring.names, exponents) if e}
        out.append({"monomial": monomial, "coeff": list(coefficient.coeffs)})
    return out


# ── Witt rings of finite algebras ────────────────────────────────────────────


class WittRing:
    """W_n(C) for a finite algebra C: an enumerable ring, itself usable as a coefficient ring."""

    def __init__(self, coefficients: Any, n: int):
        if n < 0 or n > MAX_COMPONENTS:
            raise LengthMismatch(f"n={n} outside 0..{MAX_COMPONENTS}")
        self.coefficients = coefficients
        self.base = coefficients.base
        self.n = n
        self.torsion_free = coefficients.torsion_free

    def __repr__(self) -> str:
        name = getattr(self.coefficients, "name", repr(self.coefficients))
        return f"W_{self.n}({name})"

    @property
    def name(self) -> str:
        return repr(self)

    @cached_property
    def zero(self) -> WittVector:
        return witt_zero(self.coefficients, self.n)

    @cached_property
    def one(self) -> WittVector:
        return witt_one(self.coefficients, self.n)

    @cached_property
    def pi(self) -> WittVector:
        return scalar(self.coefficients, self.base.pi, self.n)

    def coerce(self, value: Any) -> WittVector:
        if isinstance(value, WittVector):
            return value
        return scalar(self.coefficients, value, self.n)

    def normalize(self, value: WittVector) -> WittVector:
        return value

    def equal(self, left: WittVector, right: WittVector) -> bool:
        return left == right

    def random_element(self, rng: random.Random) -> WittVector:
        return WittVector(self.coefficients, [self.coefficients.random_element(rng) for _ in range(self.n + 1)])

    def element(self, components: Sequence[Any]) -> WittVector:
        if len(components) != self.n + 1:
            raise LengthMismatch(f"{self!r} needs {self.n + 1} components, got {len(components)}")
        return witt_vector(self.coefficients, components)

    @cached_property
    def size(self) -> int:
        return self.coefficients.size ** (self.n + 1)

    def elements(self) -> Iterator[WittVector]:
        carrier = list(self.coefficients.elements())
        for components in itertools.product(carrier, repeat=self.n + 1):
            yield WittVector(self.coefficients, components)

    def projection(self, value: WittVector) -> Any:
        """w ↦ w_0, the ring homomorphism W_n(C) → C."""
        return value.components[0]

    def is_unit(self, value: WittVector) -> bool:
        return self.coefficients.is_unit(value.components[0])

    @cached_property
    def pi_nilpotency(self) -> int:
        """The least N with π^N = 0 in W_n(C)."""
        power = self.one
        for exponent in range(1, (self.n + 1) * self.coefficients.pi_power + 1):
            power = power * self.pi
            if not power:
                return exponent
        raise TorsionCoefficients(f"π is not nilpotent in {self!r}")


def witt_ring_of(coefficients: Any, n: int) -> WittRing:
    return WittRing(coefficients, n)
