"""
One-dimensional commutative formal group laws over O, truncated at total degree D.

A law is a polynomial F(x, y) in a sympy ring over QQ (coefficients in K, so rescaling and logarithms
never leave the ring) together with its degree bound D; every statement about a law is "modulo total
degree > D". Laws built from a polynomial (Ĝ_a, Ĝ_m and their rescalings) are marked `exact`, so their
points may be taken over any nilpotent algebra. Series laws (elliptic, random conjugates) are only sound
where the relevant ideal dies in degree D + 1; torsion_lab enforces that.

The ring of a law has the variables x, y, z (z only for the associativity check) followed by optional
parameters s, … with φ(s) = s^q, which is how φ-twisting is exercised when φ is not the identity on the
coefficients.

Logarithm and exponential use the normalized invariant differential: with g(T) = ∂F/∂x(0, T),

    L′(T) = 1/g(T),   E′(T) = g(E(T)),

so L is an integral and E the solution of an ODE, both computed coefficient by coefficient without a
series reversion. For Ĝ_m{1} these are Σ (−π)^(j−1) T^j / j and Σ π^(j−1) T^j / j!.
"""

from __future__ import annotations

import json
import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Any

import json5
from sympy.polys.rings import PolyElement

from jet_algebras import JetAlgebra
from padic_base import BaseContext, JetspaceError, KElement, PolynomialRing, digit_sum
from reports import Check

LAW_VARIABLES = ("x", "y", "z")
DEFAULT_DEGREE = 64
VALUATION_DEGREE = 200


class InvalidLaw(JetspaceError):
    """A law that cannot be used as asked: non-integral where O is needed, no unit linear term, bad file."""


@lru_cache(maxsize=None)
def law_ring(base: BaseContext, parameters: tuple[str, ...] = ()) -> PolynomialRing:
    """K[x, y, z, parameters]."""
    return PolynomialRing(base, LAW_VARIABLES + parameters, field=True)


@lru_cache(maxsize=None)
def integral_law_ring(base: BaseContext, parameters: tuple[str, ...] = ()) -> PolynomialRing:
    """O[x, y, z, parameters]."""
    return PolynomialRing(base, LAW_VARIABLES + parameters)


def degree(monomial: tuple[int, ...]) -> int:
    """Total degree in x, y, z; parameters and π do not count."""
    return monomial[0] + monomial[1] + monomial[2]


def truncate(ring: PolynomialRing, f: PolyElement, D: int) -> PolyElement:
    return ring.ring.from_dict({m: c for m, c in ring.normalize(f).items() if degree(m) <= D})


def multiply_truncated(ring: PolynomialRing, a: PolyElement, b: PolyElement, D: int) -> PolyElement:
    """a·b with every product term of degree > D skipped before it is formed."""
    by_degree: dict[int, list] = {}
    for m, c in b.items():
        by_degree.setdefault(degree(m), []).append((m, c))
    product: dict[tuple[int, ...], Any] = {}
    zero = ring.ring.domain.zero
    for ma, ca in a.items():
        room = D - degree(ma)
        for d in range(room + 1):
            for mb, cb in by_degree.get(d, ()):
                m = tuple(i + j for i, j in zip(ma, mb))
                product[m] = product.get(m, zero) + ca * cb
    return ring.normalize(ring.ring.from_dict({m: c for m, c in product.items() if c}))


def _horner(ring: PolynomialRing, coefficients: Sequence[Any], argument: PolyElement, D: int) -> PolyElement:
    """Σ_(j ≥ 1) c_j argument^j truncated at D; `argument` has no constant term."""
    total = ring.zero
    for c in reversed(coefficients[1:]):
        total = multiply_truncated(ring, ring.coerce(c) + total, argument, D)
    return total


# ── laws ─────────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    ring: PolynomialRing
    series: PolyElement
    D: int
    exact: bool = False
    name: str = "F"

    @property
    def base(self) -> BaseContext:
        return self.ring.base

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.ring.names[len(LAW_VARIABLES) :]

    @property
    def x(self) -> PolyElement:
        return self.ring.gen("x")

    @property
    def y(self) -> PolyElement:
        return self.ring.gen("y")

    def __str__(self) -> str:
        return f"{self.name}: {self.ring.format(self.series)} (mod deg > {self.D})"

    @cached_property
    def raw_coefficients(self) -> dict[tuple[int, ...], KElement]:
        return self.ring.coefficients(self.series)

    def coefficients(self) -> dict[tuple[int, int], KElement]:
        """a_(α,β) for a law without parameters."""
        out = {}
        for monomial, coefficient in self.raw_coefficients.items():
            if any(monomial[2:]):
                raise InvalidLaw(f"{self.name} has coefficients depending on {self.parameters}")
            out[monomial[0], monomial[1]] = coefficient
        return out

    def coefficient(self, alpha: int, beta: int) -> KElement:
        return self.coefficients().get((alpha, beta), self.base.field_element(0))

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.raw_coefficients.values())

    @cached_property
    def integral_polynomial(self) -> PolyElement:
        """F in O[x, y, z, parameters]; InvalidLaw when a coefficient is not in O."""
        target = integral_law_ring(self.base, self.parameters)
        total = target.zero
        for monomial, coefficient in self.raw_coefficients.items():
            if not coefficient.is_integral():
                raise InvalidLaw(f"{self.name}: coefficient of {monomial} is {coefficient}, not in O")
            if any(c.denominator != 1 for c in coefficient.coeffs):
                raise InvalidLaw(f"{self.name}: coefficient of {monomial} is {coefficient}, not in Z[π]")
            term = target.coerce(coefficient.to_integral())
            for name, exponent in zip(target.names, monomial):
                if exponent:
                    term *= target.gen(name) ** exponent
            total += term
        return target.normalize(total)

    def compose(self, u: PolyElement, v: PolyElement) -> PolyElement:
        """F(u, v) truncated at D; u and v have no constant term."""
        powers_u = [self.ring.one]
        powers_v = [self.ring.one]
        total = self.ring.zero
        for monomial, coefficient in self.ring.normalize(self.series).items():
            alpha, beta = monomial[0], monomial[1]
            while len(powers_u) <= alpha:
                powers_u.append(multiply_truncated(self.ring, powers_u[-1], u, self.D))
            while len(powers_v) <= beta:
                powers_v.append(multiply_truncated(self.ring, powers_v[-1], v, self.D))
            rest_monomial = (0, 0) + tuple(monomial[2:])
            scalar = self.ring.ring.from_dict({rest_monomial: coefficient})
            total += multiply_truncated(self.ring, scalar * powers_u[alpha], powers_v[beta], self.D)
        return truncate(self.ring, total, self.D)

    def evaluate_at(self, a: Any, b: Any, target: Any) -> Any:
        """F(a, b) in a nilpotent algebra (or any coefficient ring); the law must be integral."""
        ring = integral_law_ring(self.base, self.parameters)
        return ring.substitute(self.integral_polynomial, {"x": a, "y": b}, target)

    def with_series(self, series: PolyElement, name: str, exact: bool | None = None) -> FormalGroupLaw:
        return FormalGroupLaw(self.ring, truncate(self.ring, series, self.D), self.D, self.exact if exact is None else exact, name)


def law_from_polynomial(ring: PolynomialRing, series: PolyElement, D: int, name: str, exact: bool = False) -> FormalGroupLaw:
    return FormalGroupLaw(ring, truncate(ring, series, D), D, exact, name)


def additive_law(base: BaseContext, D: int = DEFAULT_DEGREE) -> FormalGroupLaw:
    """Ĝ_a: x + y."""
    ring = law_ring(base)
    return law_from_polynomial(ring, ring.gen("x") + ring.gen("y"), D, "Ga", exact=True)


def multiplicative_law(base: BaseContext, D: int = DEFAULT_DEGREE) -> FormalGroupLaw:
    """Ĝ_m: x + y + xy = (1 + x)(1 + y) − 1."""
    ring = law_ring(base)
    x, y = ring.gen("x"), ring.gen("y")
    return law_from_polynomial(ring, x + y + x * y, D, "Gm", exact=True)


def scaled_multiplicative_law(base: BaseContext, n: int, D: int = DEFAULT_DEGREE) -> FormalGroupLaw:
    """Ĝ_m{n}: x + y + π^n xy."""
    return scale_law(multiplicative_law(base, D), n)


def elliptic_law(base: BaseContext, a: int, b: int, D: int = DEFAULT_DEGREE) -> FormalGroupLaw:
    """The formal group of y² = x³ + a x + b in the parameter z = −x/y, to degree D.

    w = −1/y satisfies w = z³ + a z w² + b w³. With λ the slope of the chord through two points in the
    (z, w) plane and ν its intercept, the third point has z₃ = −z₁ − z₂ − (2aλν + 3bλ²ν)/(1 + aλ² + bλ³)
    and the sum is −z₃.
    """
    ring = law_ring(base)
    x, y = ring.gen("x"), ring.gen("y")
    # w(T) by fixed-point iteration; each pass fixes at least one more degree
    w_of_t = [Fraction(0)] * (D + 3)
    univariate = PolynomialRing(base, ("t",), field=True)
    t = univariate.gen("t")
    w = univariate.zero
    for _ in range(D + 2):
        step = t**3 + a * t * w**2 + b * w**3
        w = univariate.ring.from_dict({m: c for m, c in step.items() if m[0] <= D + 2})
    for (power, *_), c in w.items():
        w_of_t[power] = Fraction(int(c.numerator), int(c.denominator))
    D_work = D + 2
    slope = ring.zero
    for power in range(3, D_work + 1):
        if not w_of_t[power]:
            continue
        chord = ring.zero
        for i in range(power):
            chord += x**i * y ** (power - 1 - i)
        slope += ring.coerce(base.field_element(w_of_t[power])) * chord
    slope = truncate(ring, slope, D_work)
    w1 = _horner(ring, [base.field_element(c) for c in w_of_t[: D_work + 1]], x, D_work)
    intercept = truncate(ring, w1 - multiply_truncated(ring, slope, x, D_work), D_work)
    slope2 = multiply_truncated(ring, slope, slope, D_work)
    slope3 = multiply_truncated(ring, slope2, slope, D_work)
    numerator = 2 * a * multiply_truncated(ring, slope, intercept, D_work) + 3 * b * multiply_truncated(
        ring, slope2, intercept, D_work
    )
    u = a * slope2 + b * slope3
    inverse = ring.one
    power = ring.one
    for _ in range(D_work):
        power = multiply_truncated(ring, power, -u, D_work)
        if not power:
            break
        inverse += power
    correction = multiply_truncated(ring, numerator, inverse, D_work)
    return law_from_polynomial(ring, x + y + correction, D, f"E(a={a},b={b})")


def random_conjugate_law(
    base: BaseContext, rng: random.Random, D: int = DEFAULT_DEGREE, kind: str = "multiplicative", top: int = 6
) -> FormalGroupLaw:
    """f⁻¹(G(f(x), f(y))) for G = Ĝ_a or Ĝ_m and a random integral f(T) = T + c_2T² + … + c_top T^top."""
    source = additive_law(base, D) if kind == "additive" else multiplicative_law(base, D)
    ring = source.ring
    f = [base.field_element(0), base.field_element(1)] + [
        base.field_element(rng.randint(-3, 3)) for _ in range(2, min(top, D) + 1)
    ]
    f_inverse = reverse_series(f, D)
    fx = _horner(ring, f, ring.gen("x"), D)
    fy = _horner(ring, f, ring.gen("y"), D)
    inner = source.compose(fx, fy)
    series = _horner(ring, f_inverse, inner, D)
    label = "".join(str(c.coeffs[0]) + "," for c in f[2:]).rstrip(",")
    return law_from_polynomial(ring, series, D, f"{source.name}^f[{label}]")


# ── validation and transformations ───────────────────────────────────────────


def validate_law(F: FormalGroupLaw) -> list[Check]:
    """Unit, commutativity and associativity modulo degree > D."""
    ring = F.ring
    x, y, z = (ring.gen(v) for v in LAW_VARIABLES)
    checks = []
    with_zero = truncate(ring, F.series.compose(y, ring.zero), F.D)
    checks.append(Check.of("F(x, 0) = x", ring.equal(with_zero, x), f"F(x, 0) = {ring.format(with_zero)}"))
    zero_first = truncate(ring, F.series.compose(x, ring.zero), F.D)
    checks.append(Check.of("F(0, y) = y", ring.equal(zero_first, y), f"F(0, y) = {ring.format(zero_first)}"))
    swapped = F.series.compose([(x, y), (y, x)])
    difference = truncate(ring, F.series - swapped, F.D)
    checks.append(Check.of("F(x, y) = F(y, x)", not difference, f"F(x, y) − F(y, x) = {ring.format(difference)}"))
    left = F.compose(F.series, z)
    right_inner = F.series.compose([(y, z), (x, y)])
    right = F.compose(x, right_inner)
    difference = truncate(ring, left - right, F.D)
    checks.append(
        Check.of(
            "F(F(x, y), z) = F(x, F(y, z))", not difference, f"lowest differing terms: {_lowest_terms(ring, difference)}"
        )
    )
    return checks


def _lowest_terms(ring: PolynomialRing, f: PolyElement, count: int = 3) -> str:
    terms = sorted(f.items(), key=lambda item: (degree(item[0]), item[0]))[:count]
    return ring.format(ring.ring.from_dict(dict(terms))) if terms else "0"


def scale_law(F: FormalGroupLaw, n: int) -> FormalGroupLaw:
    """F{n} = π^(−n) F(π^n x, π^n y): the coefficient of x^α y^β times π^(n(α+β−1))."""
    if n < 1:
        raise ValueError(f"scaling needs n ≥ 1, got {n}")
    ring = F.ring
    scaled = ring.zero
    for monomial, coefficient in ring.normalize(F.series).items():
        scaled += ring.ring.from_dict({monomial: coefficient}) * ring.pi ** (n * (degree(monomial) - 1))
    return FormalGroupLaw(ring, truncate(ring, scaled, F.D), F.D, F.exact, f"{F.name}{{{n}}}")


def twist_phi(F: FormalGroupLaw) -> FormalGroupLaw:
    """F^φ: φ on every coefficient. φ is the identity on O and s ↦ s^q on parameters."""
    ring = F.ring
    replacements = [(ring.gen(s), ring.frobenius_image(s)) for s in F.parameters]
    series = F.series.compose(replacements) if replacements else F.series
    return FormalGroupLaw(ring, truncate(ring, series, F.D), F.D, F.exact, f"{F.name}^φ")


def kernel_law(F: FormalGroupLaw) -> FormalGroupLaw:
    """δ(F(x, y)) with δx = x′, δy = y′, evaluated at x = y = 0 and read as a law in (x′, y′)."""
    jets = JetAlgebra(F.base, 1, ("x", "y"), F.parameters)
    source = integral_law_ring(F.base, F.parameters)
    values = {"x": jets.var("x", 0), "y": jets.var("y", 0)}
    values.update({s: jets.ring.gen(s) for s in F.parameters})
    lifted = source.substitute(F.integral_polynomial, values, jets.ring)
    prolonged = jets.prolong(lifted)
    at_origin = jets.ring.normalize(prolonged.compose([(jets.var("x", 0), 0), (jets.var("y", 0), 0)]))
    back = {"x_1": F.x, "y_1": F.y}
    back.update({s: F.ring.gen(s) for s in F.parameters})
    series = jets.ring.substitute(at_origin, back, F.ring)
    return FormalGroupLaw(F.ring, truncate(F.ring, series, F.D), F.D, F.exact, f"N1({F.name})")


def kernel_law_matches(F: FormalGroupLaw) -> Check:
    """kernel_law(F) = twist_phi(scale_law(F, 1)) up to degree D."""
    kernel = kernel_law(F)
    expected = twist_phi(scale_law(F, 1))
    difference = truncate(F.ring, kernel.series - expected.series, F.D)
    return Check.of(
        f"N¹ law of {F.name} = {F.name}^φ{{1}}",
        not difference,
        f"difference {_lowest_terms(F.ring, difference)}",
    )


# ── logarithm and exponential ────────────────────────────────────────────────


@dataclass(frozen=True)
class SeriesWithValuations:
    """c_1 T + c_2 T² + … + c_D T^D over K; `coefficients[0]` is the (zero) constant term."""

    base: BaseContext
    coefficients: tuple[KElement, ...]
    name: str = "series"

    @property
    def D(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, j: int) -> KElement:
        return self.coefficients[j]

    @cached_property
    def valuations(self) -> tuple[float, ...]:
        """v_π(c_j) for j = 0..D (index 0 is +∞)."""
        return tuple(c.valuation() for c in self.coefficients)

    def first_non_integral(self) -> int | None:
        return next((j for j in range(1, self.D + 1) if self.valuations[j] < 0), None)

    def is_integral(self) -> bool:
        return self.first_non_integral() is None

    def tail_minimum(self) -> float:
        """min v_π(c_j) over D/2 < j ≤ D."""
        return min(self.valuations[j] for j in range(self.D // 2 + 1, self.D + 1))

    def block_minima(self) -> list[tuple[int, float]]:
        """(r, min v_π(c_j) over p^r ≤ j < p^(r+1)) for every block lying inside 1..D."""
        p = self.base.p
        out = []
        r = 0
        while p ** (r + 1) - 1 <= self.D:
            out.append((r, min(self.valuations[j] for j in range(p**r, p ** (r + 1)))))
            r += 1
        return out

    def format(self, count: int = 6) -> str:
        terms = [f"({self.coefficients[j]})·T^{j}" for j in range(1, min(count, self.D) + 1) if self.coefficients[j]]
        return " + ".join(terms) + (" + …" if self.D > count else "")


def _series_derivative_at_origin(F: FormalGroupLaw, D: int) -> list[KElement]:
    """g_k = coefficient of x y^k, k = 0..D−1: the series ∂F/∂x(0, T)."""
    coefficients = F.coefficients()
    zero = F.base.field_element(0)
    g = [coefficients.get((1, k), zero) for k in range(D)]
    if g[0] != F.base.field_element(1):
        raise InvalidLaw(f"{F.name} does not start with x + y")
    return g


def inverse_series(coefficients: Sequence[KElement], D: int) -> list[KElement]:
    """1/g to degree D for g with constant term 1 (indices are powers of T)."""
    base = coefficients[0].base
    out = [base.field_element(1)]
    for k in range(1, D + 1):
        total = base.field_element(0)
        for i in range(1, min(k, len(coefficients) - 1) + 1):
            if coefficients[i]:
                total = total + coefficients[i] * out[k - i]
        out.append(-total)
    return out


def compose_series(outer: Sequence[KElement], inner: Sequence[KElement], D: int) -> list[KElement]:
    """outer(inner(T)) to degree D; both have zero constant term."""
    base = inner[1].base if len(inner) > 1 else outer[0].base
    zero = base.field_element(0)
    total = [zero] * (D + 1)
    power = [base.field_element(1)] + [zero] * D
    for j in range(1, min(len(outer) - 1, D) + 1):
        power = _multiply_series(power, inner, D)
        if outer[j]:
            total = [a + outer[j] * b for a, b in zip(total, power)]
    return total


def _multiply_series(a: Sequence[KElement], b: Sequence[KElement], D: int) -> list[KElement]:
    zero = a[0].base.field_element(0)
    out = [zero] * (D + 1)
    for i, ai in enumerate(a[: D + 1]):
        if not ai:
            continue
        for j in range(0, min(len(b), D + 1 - i)):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def reverse_series(f: Sequence[KElement], D: int) -> list[KElement]:
    """f⁻¹ with f(T) = T + …, to degree D, solved coefficient by coefficient."""
    base = f[1].base
    inverse = [base.field_element(0), base.field_element(1)] + [base.field_element(0)] * (D - 1)
    for k in range(2, D + 1):
        composed = compose_series(f, inverse, k)
        inverse[k] = inverse[k] - composed[k]
    return inverse


def logarithm(F: FormalGroupLaw, D: int | None = None) -> SeriesWithValuations:
    """L with L′ = 1/∂F/∂x(0, T) and L(0) = 0, so L(F(x, y)) = L(x) + L(y)."""
    D = F.D if D is None else D
    g = _series_derivative_at_origin(F, D)
    derivative = inverse_series(g, D - 1)
    coefficients = [F.base.field_element(0)] + [derivative[j - 1] / j for j in range(1, D + 1)]
    return SeriesWithValuations(F.base, tuple(coefficients), f"log {F.name}")


def exponential(F: FormalGroupLaw, D: int | None = None) -> SeriesWithValuations:
    """E with E′ = ∂F/∂x(0, E(T)) and E(0) = 0, the compositional inverse of the logarithm."""
    D = F.D if D is None else D
    g = _series_derivative_at_origin(F, D)
    base = F.base
    zero = base.field_element(0)
    top = max((k for k, c in enumerate(g) if c), default=0)
    c = [zero] * (D + 1)
    # powers[i][k] = [T^k] E^i, filled as coefficients of E become known
    powers = [[base.field_element(1)] + [zero] * D] + [[zero] * (D + 1) for _ in range(top)]
    for k in range(D):
        for i in range(1, min(top, k) + 1):
            total = zero
            for m in range(1, k - i + 2):
                if c[m] and powers[i - 1][k - m]:
                    total = total + c[m] * powers[i - 1][k - m]
            powers[i][k] = total
        derivative = zero
        for i in range(0, min(top, k) + 1):
            if g[i]:
                derivative = derivative + g[i] * powers[i][k]
        c[k + 1] = derivative / (k + 1)
    return SeriesWithValuations(base, tuple(c), f"exp {F.name}")


def logarithm_is_additive(F: FormalGroupLaw, L: SeriesWithValuations, D: int) -> Check:
    """L(F(x, y)) = L(x) + L(y) modulo degree > D."""
    ring = F.ring
    if D > F.D and not F.exact:
        raise InvalidLaw(f"{F.name} is only known to degree {F.D}, not {D}")
    left = _horner(ring, L.coefficients[: D + 1], truncate(ring, F.series, D), D)
    right = _horner(ring, L.coefficients[: D + 1], F.x, D) + _horner(ring, L.coefficients[: D + 1], F.y, D)
    difference = truncate(ring, left - right, D)
    return Check.of(f"log {F.name} is additive to degree {D}", not difference, _lowest_terms(ring, difference))


def exponential_inverts_logarithm(L: SeriesWithValuations, E: SeriesWithValuations, D: int) -> Check:
    composed = compose_series(E.coefficients[: D + 1], L.coefficients[: D + 1], D)
    base = L.base
    bad = next((j for j in range(1, D + 1) if composed[j] != base.field_element(1 if j == 1 else 0)), None)
    return Check.of(f"E∘L = T to degree {D}", bad is None, None if bad is None else f"coefficient of T^{bad} is {composed[bad]}")


def exponential_valuation_formula(base: BaseContext, j: int) -> Fraction:
    """v_π(π^j / j!) = (j(p−1−e) + e·s_p(j))/(p−1)."""
    p, e = base.p, base.e
    return Fraction(j * (p - 1 - e) + e * digit_sum(j, p), p - 1)


def logarithm_valuation_at_power(base: BaseContext, r: int) -> int:
    """v_π of the coefficient of T^(p^r) in the Ĝ_m{1} logarithm: p^r − 1 − e·r."""
    return base.p**r - 1 - base.e * r


# ── isomorphism to the additive group ────────────────────────────────────────


@dataclass(frozen=True)
class AdditiveIsoCertificate:
    """Either a certificate (L, E integral with growing valuations up to D) or a refusal with the reason."""

    law: str
    certified: bool
    logarithm: SeriesWithValuations
    exponential: SeriesWithValuations
    reason: str | None = None
    first_failure: tuple[str, int, float] | None = None


def certify_additive_iso(F: FormalGroupLaw, D: int | None = None) -> AdditiveIsoCertificate:
    """Certify F ≅ Ĝ_a through L and E, checked coefficientwise up to D and never beyond.

    Needs every coefficient of L and E in O, a strictly positive minimum valuation over (D/2, D], and
    strictly increasing minima over the complete blocks p^r ≤ j < p^(r+1); a bounded valuation sequence
    means the series does not converge on the points, whatever the integrality.
    """
    D = F.D if D is None else D
    L = logarithm(F, D)
    E = exponential(F, D)

    def refuse(reason: str, failure: tuple[str, int, float] | None = None) -> AdditiveIsoCertificate:
        return AdditiveIsoCertificate(F.name, False, L, E, reason, failure)

    for series, label in ((L, "log"), (E, "exp")):
        j = series.first_non_integral()
        if j is not None:
            return refuse(f"{label} coefficient of T^{j} has valuation {series.valuations[j]:g}", (label, j, series.valuations[j]))
    for series, label in ((E, "exp"), (L, "log")):
        if series.tail_minimum() <= 0:
            j = next(j for j in range(D // 2 + 1, D + 1) if series.valuations[j] <= 0)
            return refuse(f"{label} valuations do not grow: v(c_{j}) = {series.valuations[j]:g} with j > D/2", (label, j, series.valuations[j]))
        minima = series.block_minima()
        for (r0, v0), (r1, v1) in zip(minima, minima[1:]):
            if v1 <= v0:
                return refuse(
                    f"{label} block minima stall: min over [p^{r0}, p^{r1}) is {v0:g}, over [p^{r1}, p^{r1 + 1}) is {v1:g}",
                    (label, F.base.p**r1, v1),
                )
    return AdditiveIsoCertificate(F.name, True, L, E)


def scaled_logarithm_integral(base: BaseContext, n: int, D: int = VALUATION_DEGREE) -> tuple[bool, bool]:
    """(n(p−1) ≥ e+1, log of Ĝ_m{n} integral to D): the hypothesis and the conclusion side by side."""
    hypothesis = n * (base.p - 1) >= base.e + 1
    return hypothesis, logarithm(scaled_multiplicative_law(base, n, D), D).is_integral()


# ── law files ────────────────────────────────────────────────────────────────


def law_to_data(F: FormalGroupLaw) -> dict[str, Any]:
    """{"D": D, "monomials": [[α, β, ["a_0", …, "a_(e−1)"]], …]} with rational strings."""
    monomials = [
        [alpha, beta, [str(c) for c in coefficient.coeffs]]
        for (alpha, beta), coefficient in sorted(F.coefficients().items())
        if coefficient
    ]
    return {"D": F.D, "name": F.name, "exact": F.exact, "monomials": monomials}


def law_from_data(base: BaseContext, data: Mapping[str, Any]) -> FormalGroupLaw:
    try:
        D = int(data["D"])
        monomials = data["monomials"]
    except (KeyError, TypeError, ValueError) as missing:
        raise InvalidLaw(f"law data needs integer 'D' and a 'monomials' list: {missing}") from missing
    ring = law_ring(base)
    series = ring.zero
    for entry in monomials:
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise InvalidLaw(f"monomial entry {entry!r} is not [α, β, coefficients]")
        alpha, beta, coefficients = entry
        if isinstance(coefficients, (str, int)):
            coefficients = [coefficients]
        try:
            value = base.field_element([Fraction(str(c)) for c in coefficients])
        except (ValueError, ZeroDivisionError) as bad:
            raise InvalidLaw(f"coefficient {coefficients!r} of x^{alpha} y^{beta}: {bad}") from bad
        series += ring.coerce(value) * ring.gen("x") ** int(alpha) * ring.gen("y") ** int(beta)
    return law_from_polynomial(ring, series, D, str(data.get("name", "F")), bool(data.get("exact", False)))


def load_law(base: BaseContext, path: str | Path) -> FormalGroupLaw:
    try:
        data = json5.loads(Path(path).read_text())
    except (OSError, ValueError) as failure:
        raise InvalidLaw(f"cannot read law file {path}: {failure}") from failure
    return law_from_data(base, data)


def dump_law(F: FormalGroupLaw) -> str:
    return json.dumps(law_to_data(F), indent=2) + "\n"


def named_law(base: BaseContext, name: str, D: int = DEFAULT_DEGREE, rng: random.Random | None = None) -> FormalGroupLaw:
    """`Ga`, `Gm`, `Gm{n}`, `elliptic` (y² = x³ − x + 1) or `random`; anything else is a law file path."""
    if name == "Ga":
        return additive_law(base, D)
    if name == "Gm":
        return multiplicative_law(base, D)
    if name.startswith("Gm{") and name.endswith("}"):
        return scaled_multiplicative_law(base, int(name[3:-1]), D)
    if name == "elliptic":
        return elliptic_law(base, -1, 1, D)
    if name == "random":
        return random_conjugate_law(base, rng or random.Random(0), D)
    return load_law(base, name)
