"""
Arithmetic jet algebras over O and their two coordinate systems.

For A = O[x] (one block per variable) the jet algebra J_nA = O[x, x′, …, x^(n)] carries the Frobenius
lift Φ(x^(i)) = (x^(i))^q + π x^(i+1) and the π-derivation δ = (Φ − (·)^q)/π, so δ(x^(i)) = x^(i+1).
Variables are named `x_0, x_1, …` (x_i is x^(i)); the top variable of a truncated algebra has no
Φ-image, so prolonging past the order raises UndeclaredVariable instead of inventing a variable.

Witt coordinates p_0 = x, p_1 = x′, p_n = δp_(n−1) + H̄_n(p_0..p_(n−2); δp_0..δp_(n−2)) satisfy the ghost
identity Φ^n(x) = Σ π^i p_i^(q^(n−i)). H̄_n is π^(−n) times the coordinate-change polynomial H_n, and every one of
its terms is integral; `h_bar_polynomial` checks that term by term.

The kernel algebra N_nA is J_nA with x = 0; it is the polynomial algebra on p_i⁺ = p_i|_(x=0), a
triangular change of variables from x′, …, x^(n). Its generators are named `p1, …, pn`.

The lateral Frobenius F⁺ of witt_shifted, applied to the tautological point Θ⁺(id) = (0; p_1, …, p_n),
gives the pullback f*: N_(n−1)A → N_nA on generators; `lateral_pullback` is the closed form of the
pullback of p_1⁺, and `check_lateral_pullback` compares it with the computed one.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

from sympy.polys.rings import PolyElement

from padic_base import BaseContext, JetspaceError, NotDivisible, PolynomialRing, UndeclaredVariable
from witt_core import WittVector, evaluate_universal, universal_ring, witt_vector
from witt_shifted import ShiftedWittVector, lateral_frobenius, shifted_structure, shifted_vector


class IntegralityFailure(JetspaceError):
    """A term of H̄_n = π^(−n) H_n left O; this would be an implementation bug, not a property of the base."""


def jet_name(block: str, order: int) -> str:
    return f"{block}_{order}"


def jet_symbol(block: str, order: int) -> str:
    """x, x′, x″, then x^(k)."""
    if order <= 2:
        return block + ("", "′", "″")[order]
    return f"{block}^({order})"


# ── jet algebras ─────────────────────────────────────────────────────────────


class JetAlgebra:
    """J_nA for A = O[blocks], plus `parameters` with φ(t) = t^q, as one polynomial ring."""

    def __init__(self, base: BaseContext, n: int, blocks: Sequence[str] = ("x",), parameters: Sequence[str] = ()):
        self.base = base
        self.n = n
        self.blocks = tuple(blocks)
        names = [jet_name(b, i) for b in self.blocks for i in range(n + 1)] + list(parameters)
        self.ring = PolynomialRing(base, names)
        q = base.q
        for b in self.blocks:
            for i in range(n):
                image = self.var(b, i) ** q + self.ring.pi * self.var(b, i + 1)
                self.ring.declare_frobenius(jet_name(b, i), image)
            self.ring.declare_frobenius(jet_name(b, n), None)

    def __repr__(self) -> str:
        return f"JetAlgebra(n={self.n}, blocks={self.blocks}, {self.base.describe()})"

    def var(self, block: str, order: int) -> PolyElement:
        return self.ring.gen(jet_name(block, order))

    def phi(self, f: PolyElement) -> PolyElement:
        """Φ."""
        return self.ring.frobenius_lift(f)

    def prolong(self, f: PolyElement) -> PolyElement:
        """δ(f) = (Φ(f) − f^q)/π."""
        return self.ring.pi_derivation(f)

    def _prolong_variable(self, name: str) -> PolyElement:
        block, _, order = name.rpartition("_")
        if block not in self.blocks:
            return self.ring.zero  # parameters: φ(t) = t^q
        if int(order) >= self.n:
            raise UndeclaredVariable(name)
        return self.var(block, int(order) + 1)

    def prolong_by_axioms(self, f: PolyElement) -> PolyElement:
        """δ(f) assembled from δ(x^(i)) = x^(i+1), δ on O, and the sum and product rules.

        Slower than `prolong`; it is the independent route the tests compare `prolong` against.
        """
        ring = self.ring
        q = self.base.q
        pi = ring.pi

        def delta_constant(c: PolyElement) -> PolyElement:
            return ring.pi_divide(ring.normalize(c - c**q), 1)

        def delta_sum(a: PolyElement, da: PolyElement, b: PolyElement, db: PolyElement) -> PolyElement:
            carry = ring.pi_divide(ring.normalize(a**q + b**q - (a + b) ** q), 1)
            return ring.normalize(da + db + carry)

        def delta_product(a: PolyElement, da: PolyElement, b: PolyElement, db: PolyElement) -> PolyElement:
            return ring.normalize(a**q * db + b**q * da + pi * da * db)

        width = len(ring.names)
        total, d_total = ring.zero, ring.zero
        for monomial, coeff in ring.normalize(f).items():
            constant = ring.ring(coeff)
            if len(monomial) > width and monomial[width]:
                constant *= pi ** monomial[width]
            value, d_value = constant, delta_constant(constant)
            for index in range(width):
                for _ in range(monomial[index]):
                    name = ring.names[index]
                    factor = ring.gen(name)
                    d_factor = self._prolong_variable(name)
                    value, d_value = ring.normalize(value * factor), delta_product(value, d_value, factor, d_factor)
            d_total = delta_sum(total, d_total, value, d_value)
            total = ring.normalize(total + value)
        return d_total


@lru_cache(maxsize=None)
def jet_algebra(base: BaseContext, n: int, blocks: tuple[str, ...] = ("x",)) -> JetAlgebra:
    return JetAlgebra(base, n, blocks)


def carry_polynomial(ring: PolynomialRing, a: PolyElement, b: PolyElement) -> PolyElement:
    """C_π(a, b) = (a^q + b^q − (a + b)^q)/π."""
    q = ring.base.q
    return ring.pi_divide(ring.normalize(a**q + b**q - (a + b) ** q), 1)


# ── H̄_n and Witt coordinates ────────────────────────────────────────────────


@lru_cache(maxsize=None)
def appendix_ring(base: BaseContext, n: int) -> PolynomialRing:
    """O[x_0..x_(n−2), y_0..y_(n−2)], the home of H̄_n."""
    size = max(n - 1, 0)
    return PolynomialRing(base, [f"x{i}" for i in range(size)] + [f"y{i}" for i in range(size)])


@lru_cache(maxsize=None)
def h_bar_polynomial(base: BaseContext, n: int) -> PolyElement:
    """H̄_n = π^(−n) Σ_(i ≤ n−2) Σ_(1 ≤ j ≤ q^(n−1−i)) π^(i+j) C(q^(n−1−i), j) x_i^(q(q^(n−1−i)−j)) y_i^j."""
    if n < 1:
        raise ValueError(f"H̄_n is defined for n ≥ 1, not n={n}")
    ring = appendix_ring(base, n)
    q = base.q
    total = ring.zero
    for i in range(n - 1):
        top = q ** (n - 1 - i)
        x, y = ring.gen(f"x{i}"), ring.gen(f"y{i}")
        for j in range(1, top + 1):
            coefficient = base.element(math.comb(top, j)) * base.pi ** (i + j)
            try:
                coefficient = coefficient.pi_divide(n)
            except NotDivisible as failure:
                raise IntegralityFailure(
                    f"term i={i} j={j} of H_{n} has valuation {failure.valuation} < {n}"
                ) from failure
            total += ring.coerce(coefficient) * x ** (q * (top - j)) * y**j
    return ring.normalize(total)


@dataclass(frozen=True, eq=False)
class WittCoordinateSet:
    """(p_0, …, p_n) per block, as polynomials of `algebra`."""

    algebra: JetAlgebra
    coordinates: Mapping[str, tuple[PolyElement, ...]]

    def __getitem__(self, block: str) -> tuple[PolyElement, ...]:
        return self.coordinates[block]

    @cached_property
    def kernel(self) -> dict[str, tuple[PolyElement, ...]]:
        """p_i⁺ = p_i with the block's x = 0, for i ≥ 1."""
        ring = self.algebra.ring
        out = {}
        for block, coordinates in self.coordinates.items():
            base_variable = self.algebra.var(block, 0)
            out[block] = tuple(ring.normalize(p.compose(base_variable, ring.zero)) for p in coordinates[1:])
        return out


def _apply_h_bar(algebra: JetAlgebra, k: int, ps: Sequence[PolyElement], dps: Sequence[PolyElement]) -> PolyElement:
    if k < 2:
        return algebra.ring.zero
    ring = appendix_ring(algebra.base, k)
    values = {f"x{i}": ps[i] for i in range(k - 1)}
    values.update({f"y{i}": dps[i] for i in range(k - 1)})
    return ring.substitute(h_bar_polynomial(algebra.base, k), values, algebra.ring)


@lru_cache(maxsize=None)
def witt_coordinates(base: BaseContext, n: int, blocks: tuple[str, ...] = ("x",)) -> WittCoordinateSet:
    """p_0 = x and p_k = δp_(k−1) + H̄_k(p_0..p_(k−2); δp_0..δp_(k−2)) for every block; cached per (base, n)."""
    algebra = jet_algebra(base, n, blocks)
    coordinates = {}
    for block in blocks:
        ps = [algebra.var(block, 0)]
        dps: list[PolyElement] = []
        for k in range(1, n + 1):
            dps.append(algebra.prolong(ps[k - 1]))
            ps.append(algebra.ring.normalize(dps[k - 1] + _apply_h_bar(algebra, k, ps, dps)))
        coordinates[block] = tuple(ps)
    return WittCoordinateSet(algebra, coordinates)


def ghost_identity_holds(base: BaseContext, n: int) -> bool:
    """Φ^n(x) = Σ_i π^i p_i^(q^(n−i)) in J_nA."""
    coordinates = witt_coordinates(base, n)
    algebra = coordinates.algebra
    ring = algebra.ring
    q = base.q
    left = algebra.var("x", 0)
    for _ in range(n):
        left = algebra.phi(left)
    right = ring.zero
    for i, p in enumerate(coordinates["x"]):
        right += ring.pi**i * p ** (q ** (n - i))
    return ring.equal(left, right)


@lru_cache(maxsize=None)
def coordinate_ring(base: BaseContext, n: int) -> PolynomialRing:
    """O[p0..pn], a single block in Witt coordinates."""
    return PolynomialRing(base, [f"p{i}" for i in range(n + 1)])


@lru_cache(maxsize=None)
def jet_coordinates_inverse(base: BaseContext, n: int) -> tuple[PolyElement, ...]:
    """x^(k) as polynomials in p_0..p_k (in `coordinate_ring`): the inverse triangular change of variables."""
    coordinates = witt_coordinates(base, n)
    algebra = coordinates.algebra
    target = coordinate_ring(base, n)
    inverse: list[PolyElement] = []
    for k, p in enumerate(coordinates["x"]):
        rest = algebra.ring.normalize(p - algebra.var("x", k))
        values = {jet_name("x", i): inverse[i] for i in range(k)}
        values[jet_name("x", k)] = target.zero
        lower = algebra.ring.substitute(rest, values, target) if rest else target.zero
        inverse.append(target.normalize(target.gen(f"p{k}") - lower))
    return tuple(inverse)


# ── Θ and Θ⁺ ────────────────────────────────────────────────────────────────


def theta(values: Sequence[Any] | Mapping[int, Any], ring: Any) -> WittVector:
    """Θ(g) for the assignment p_i ↦ c_i: the Witt vector (c_0, …, c_n) over `ring`."""
    if isinstance(values, Mapping):
        values = [values[i] for i in range(len(values))]
    return witt_vector(ring, list(values))


def theta_plus(values: Sequence[Any] | Mapping[int, Any], ring: Any, head_ring: Any | None = None) -> ShiftedWittVector:
    """Θ⁺(g) for p_i⁺ ↦ c_i (i = 1..n): the shifted vector (0; c_1, …, c_n) over `ring`, R = O by default."""
    if isinstance(values, Mapping):
        values = [values[i] for i in range(1, len(values) + 1)]
    head_ring = ring.base if head_ring is None else head_ring
    return shifted_vector(shifted_structure(head_ring, ring), head_ring.zero, list(values))


def evaluate_assignment(ring: PolynomialRing, f: PolyElement, values: Mapping[str, Any], target: Any) -> Any:
    """g(f) for the assignment `values` of `ring`'s variables into `target`."""
    return ring.substitute(f, values, target)


# ── kernel algebras and the lateral pullback ─────────────────────────────────


@lru_cache(maxsize=None)
def kernel_ring(base: BaseContext, n: int) -> PolynomialRing:
    """N_nA = O[p1..pn]."""
    return PolynomialRing(base, [f"p{i}" for i in range(1, n + 1)])


@lru_cache(maxsize=None)
def kernel_coordinates_inverse(base: BaseContext, n: int) -> tuple[PolyElement, ...]:
    """x^(k)|_(x=0) for k = 1..n as polynomials in p1..pn."""
    full = jet_coordinates_inverse(base, n)
    source = coordinate_ring(base, n)
    target = kernel_ring(base, n)
    values = {"p0": target.zero, **{f"p{i}": target.gen(f"p{i}") for i in range(1, n + 1)}}
    return tuple(source.substitute(x, values, target) for x in full[1:])


def restrict_to_kernel(base: BaseContext, n: int, f: PolyElement) -> PolyElement:
    """u*: J_nA → N_nA, f ↦ f|_(x=0) written in p1..pn."""
    algebra = jet_algebra(base, n)
    target = kernel_ring(base, n)
    inverse = kernel_coordinates_inverse(base, n)
    values = {jet_name("x", 0): target.zero}
    values.update({jet_name("x", k): inverse[k - 1] for k in range(1, n + 1)})
    return algebra.ring.substitute(algebra.ring.coerce(f), values, target)


@lru_cache(maxsize=None)
def tautological_kernel_point(base: BaseContext, n: int) -> ShiftedWittVector:
    """Θ⁺(id) = (0; p1, …, pn) over N_nA."""
    ring = kernel_ring(base, n)
    return theta_plus([ring.gen(f"p{i}") for i in range(1, n + 1)], ring)


@lru_cache(maxsize=None)
def kernel_frobenius_pullback(base: BaseContext, n: int) -> tuple[PolyElement, ...]:
    """f*(p_k⁺) ∈ N_nA for k = 1..n−1: the tail of F⁺(Θ⁺(id))."""
    return lateral_frobenius(tautological_kernel_point(base, n)).tail


def pullback_along_iterate(base: BaseContext, n: int, k: int) -> PolyElement:
    """(f^k)*(p_1⁺) computed as the first tail entry of (F⁺)^k(Θ⁺(id)); k = 0 gives p_1⁺."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 ≤ k ≤ n − 1, got k={k}, n={n}")
    point = tautological_kernel_point(base, n)
    for _ in range(k):
        point = lateral_frobenius(point)
    return point.tail[0]


def lateral_pullback(base: BaseContext, i: int, n: int) -> dict[str, PolyElement]:
    """The displayed closed form p_1⁺ ↦ (p_1⁺)^(q^(i−1)) + π (p_2⁺)^(q^(i−2)) + … + π^(i−1) p_i⁺."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 ≤ i ≤ n, got i={i}, n={n}")
    ring = kernel_ring(base, n)
    q = base.q
    image = ring.zero
    for k in range(i):
        image += ring.pi**k * ring.gen(f"p{k + 1}") ** (q ** (i - 1 - k))
    return {"p1": ring.normalize(image)}


@dataclass(frozen=True)
class PullbackComparison:
    i: int
    displayed: PolyElement
    matches_iterate: int | None  # the k with (f^k)*(p_1⁺) equal to the display, if any


def check_lateral_pullback(base: BaseContext, n: int) -> list[PullbackComparison]:
    """For i = 1..n, which iterate's computed pullback the displayed closed form equals."""
    ring = kernel_ring(base, n)
    computed = [pullback_along_iterate(base, n, k) for k in range(n)]
    out = []
    for i in range(1, n + 1):
        displayed = lateral_pullback(base, i, n)["p1"]
        match = next((k for k, value in enumerate(computed) if ring.equal(value, displayed)), None)
        out.append(PullbackComparison(i, displayed, match))
    return out


def kernel_delta(base: BaseContext, n: int) -> dict[str, PolyElement]:
    """Δ(p_k⁺) := (f*(p_k⁺) − (p_k⁺)^q)/π for k = 1..n−1; recorded, not asserted to be canonical."""
    ring = kernel_ring(base, n)
    q = base.q
    out = {}
    for k, image in enumerate(kernel_frobenius_pullback(base, n), start=1):
        out[f"p{k}"] = ring.pi_divide(ring.normalize(image - ring.gen(f"p{k}") ** q), 1)
    return out


def apply_kernel_pullback(base: BaseContext, n: int, f: PolyElement) -> PolyElement:
    """f*: N_(n−1)A → N_nA applied to a polynomial in p1..p(n−1)."""
    source = kernel_ring(base, n - 1)
    images = kernel_frobenius_pullback(base, n)
    target = kernel_ring(base, n)
    return source.substitute(source.coerce(f), {f"p{k}": images[k - 1] for k in range(1, n)}, target)


def frobenius_compatibility_holds(base: BaseContext, n: int, g: PolyElement) -> bool:
    """u*(Φ(Φ(g))) = f*(u*(Φ(g))) in N_nA for g ∈ J_(n−2)A: the algebra form of φ∘φ∘u = φ∘u∘f."""
    if n < 2:
        raise ValueError("the compatibility needs n ≥ 2")
    algebra = jet_algebra(base, n)
    g = algebra.ring.coerce(g)
    once = algebra.phi(g)
    twice = algebra.phi(once)
    left = restrict_to_kernel(base, n, twice)
    right = apply_kernel_pullback(base, n, restrict_to_kernel(base, n - 1, jet_algebra(base, n - 1).ring.coerce(once)))
    return kernel_ring(base, n).equal(left, right)


# ── jets of the additive and multiplicative laws ─────────────────────────────


@lru_cache(maxsize=None)
def jet_operation_in_witt_coordinates(base: BaseContext, n: int, op: str) -> tuple[PolyElement, ...]:
    """p_k(x∘y), ∘ ∈ {add, mul}, rewritten in the Witt coordinates of x and y (universal ring names).

    Prolongs s = x + y (or x·y) in the two-block jet algebra, substitutes δ^i(s) into p_k, then replaces
    x^(i), y^(i) by their expressions in p-coordinates. J^nĜ_a = Ŵ_n says the result for `add` is S_k.
    """
    if op not in ("add", "mul"):
        raise ValueError(f"op must be add or mul, not {op!r}")
    two = jet_algebra(base, n, ("x", "y"))
    single = witt_coordinates(base, n)
    x, y = two.var("x", 0), two.var("y", 0)
    s = x + y if op == "add" else x * y
    derivatives = [two.ring.normalize(s)]
    for _ in range(n):
        derivatives.append(two.prolong(derivatives[-1]))
    target = universal_ring(base, n)
    inverse = jet_coordinates_inverse(base, n)
    source = coordinate_ring(base, n)
    rewrite = {}
    for block in ("x", "y"):
        values = {f"p{i}": target.gen(f"{block}{i}") for i in range(n + 1)}
        for i in range(n + 1):
            rewrite[jet_name(block, i)] = source.substitute(inverse[i], values, target)
    out = []
    for p in single["x"]:
        composed = single.algebra.ring.substitute(p, {jet_name("x", i): derivatives[i] for i in range(n + 1)}, two.ring)
        out.append(two.ring.substitute(composed, rewrite, target))
    return tuple(out)


def jet_coaddition_matches_witt(base: BaseContext, n: int, op: str = "add") -> bool:
    """p_k(x∘y) in Witt coordinates equals the universal S_k (add) or P_k (mul)."""
    ring = universal_ring(base, n)
    xs = [ring.gen(f"x{i}") for i in range(n + 1)]
    ys = [ring.gen(f"y{i}") for i in range(n + 1)]
    universal = evaluate_universal(base, n, op, ring, xs, ys)
    computed = jet_operation_in_witt_coordinates(base, n, op)
    return all(ring.equal(a, b) for a, b in zip(universal, computed))


def multiplicative_coproduct_holds(base: BaseContext) -> bool:
    """δ(x·y) = x′y^q + x^q y′ + π x′y′ in J_1 of O[x, y], the jet of Ĝ_m's co-multiplication."""
    two = jet_algebra(base, 1, ("x", "y"))
    ring = two.ring
    q = base.q
    x, dx = two.var("x", 0), two.var("x", 1)
    y, dy = two.var("y", 0), two.var("y", 1)
    expected = dx * y**q + x**q * dy + ring.pi * dx * dy
    return ring.equal(two.prolong(x * y), expected)


def scaled_prolongation_holds(base: BaseContext, nu: int) -> bool:
    """(p^ν x)^q + π δ(p^ν x) = p^ν (x^q + π x′): Φ is O-linear on p^ν x."""
    algebra = jet_algebra(base, 1)
    ring = algebra.ring
    scale = base.p**nu
    x, dx = algebra.var("x", 0), algebra.var("x", 1)
    left = (scale * x) ** base.q + ring.pi * algebra.prolong(scale * x)
    return ring.equal(left, scale * (x**base.q + ring.pi * dx))


# ── the coordinate theorem ───────────────────────────────────────────────────


@dataclass(frozen=True)
class CoordinateTheoremResult:
    n: int
    images_match: tuple[bool, ...]  # h_n(z_i) = x_i
    psi_identity: bool  # Ψ^n(x_0) = Σ π^i x_i^(q^(n−i))
    triangular: bool  # ∂^i x_0 − x_i involves only x_0..x_(i−1)
    failures: tuple[str, ...]

    @property
    def green(self) -> bool:
        return all(self.images_match) and self.psi_identity and self.triangular


def verify_coordinate_theorem(base: BaseContext, n: int) -> CoordinateTheoremResult:
    """Build the abstract prolongation sequence B_n and check that h_n sends z_i to x_i.

    B_n = O[x_0..x_n] with ∂x_(i−1) := x_i − H̄_i(x_0..x_(i−2); ∂x_0..∂x_(i−2)), extended to all of B_n as
    the π-derivation of Ψ(x_(i−1)) = x_(i−1)^q + π ∂x_(i−1). h_n maps x^(i) ↦ ∂^i x_0.
    """
    ring = PolynomialRing(base, [f"x{i}" for i in range(n + 1)])
    q = base.q
    partials: list[PolyElement] = []  # ∂x_0, ∂x_1, …
    for i in range(1, n + 1):
        xs = [ring.gen(f"x{k}") for k in range(i - 1)]
        correction = ring.zero
        if i >= 2:
            h_ring = appendix_ring(base, i)
            values = {f"x{k}": xs[k] for k in range(i - 1)}
            values.update({f"y{k}": partials[k] for k in range(i - 1)})
            correction = h_ring.substitute(h_bar_polynomial(base, i), values, ring)
        partial = ring.normalize(ring.gen(f"x{i}") - correction)
        partials.append(partial)
        ring.declare_frobenius(f"x{i - 1}", ring.gen(f"x{i - 1}") ** q + ring.pi * partial)
    ring.declare_frobenius(f"x{n}", None)

    failures = []
    iterated = [ring.gen("x0")]
    for _ in range(n):
        iterated.append(ring.pi_derivation(iterated[-1]))

    triangular = True
    for i, value in enumerate(iterated):
        rest = ring.normalize(value - ring.gen(f"x{i}"))
        late = [name for name in ring.variables_of(rest) if int(name[1:]) >= i]
        if late:
            triangular = False
            failures.append(f"∂^{i} x_0 − x_{i} involves {late}")

    coordinates = witt_coordinates(base, n)
    jet_ring = coordinates.algebra.ring
    images = []
    for i, z in enumerate(coordinates["x"]):
        image = jet_ring.substitute(z, {jet_name("x", k): iterated[k] for k in range(n + 1)}, ring)
        ok = ring.equal(image, ring.gen(f"x{i}"))
        if not ok:
            failures.append(f"h_{n}(z_{i}) = {ring.format(image)} ≠ x_{i}")
        images.append(ok)

    psi = ring.gen("x0")
    for _ in range(n):
        psi = ring.frobenius_lift(psi)
    expected = ring.zero
    for i in range(n + 1):
        expected += ring.pi**i * ring.gen(f"x{i}") ** (q ** (n - i))
    psi_ok = ring.equal(psi, expected)
    if not psi_ok:
        failures.append(f"Ψ^{n}(x_0) ≠ Σ π^i x_i^(q^({n}−i))")
    return CoordinateTheoremResult(n, tuple(images), psi_ok, triangular, tuple(failures))
