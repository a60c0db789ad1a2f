"""
Exact arithmetic for a totally ramified p-adic base and the polynomial rings built over it.

The base ring is O = Z[π]/(E(π)) with E an Eisenstein polynomial of degree e at the prime p, and K is
its fraction field. Elements are kept exactly: an `OElement` is its coefficient vector in the power
basis 1, π, …, π^(e−1) (big integers), a `KElement` the same with rationals. No capped-precision model
exists anywhere in the package; every identity the checks assert is a polynomial identity, so exact
arithmetic is both possible and the only honest choice.

The residue field is F_p (q = p), so the Frobenius lift φ is the identity on O. On adjoined variables
φ(x) = x^q by default and a ring may override any variable's image (jet algebras send x^(i) to
(x^(i))^q + π·x^(i+1)). The π-derivation is always computed as δ(f) = (φ(f) − f^q)/π, and the exact
division failing is how a bad φ declaration shows up.

Polynomial rings are sympy sparse rings (`sympy.polys.rings`) over ZZ (for O[…]) or QQ (for K[…]). When
e > 1 the uniformizer is an extra generator named `pi`, and `normalize` reduces modulo E(pi); when e = 1
π is simply the integer −E(0) (p or −p) and no extra generator exists.

Every object that can carry Witt vector components implements the small coefficient-ring protocol
(`CoefficientRing`): the base itself for O, `PolynomialRing` for O[x, …], and the finite algebras of
`finite_algebras` for the torsion case.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Protocol, runtime_checkable

import sympy
from sympy.polys.domains import QQ, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

INFINITY = math.inf

PI_NAME = "pi"


class JetspaceError(Exception):
    """Root of every error the library raises for a violated precondition."""


class InvalidBase(JetspaceError):
    """The (p, e, E) triple does not describe a totally ramified base: p composite or E not Eisenstein."""


class NotDivisible(JetspaceError):
    """An exact division by a power of π was requested on an element of smaller valuation.

    Carries the element's valuation (when known) and the requested power, so a caller turning this into
    a domain error (ghost inversion, π-derivation) can say how far off it was.
    """

    def __init__(self, message: str, valuation: float | None = None, k: int | None = None):
        super().__init__(message)
        self.valuation = valuation
        self.k = k


class UndeclaredVariable(JetspaceError):
    """A Frobenius lift was applied to a polynomial mentioning a variable with no declared φ-image."""

    def __init__(self, name: str):
        super().__init__(f"variable {name!r} has no declared Frobenius image")
        self.name = name


def p_adic_valuation(value: int | Fraction, p: int) -> float:
    """v_p of an integer or rational; +∞ for zero."""
    value = Fraction(value)
    if value == 0:
        return INFINITY
    count = 0
    numerator, denominator = value.numerator, value.denominator
    while numerator % p == 0:
        numerator //= p
        count += 1
    while denominator % p == 0:
        denominator //= p
        count -= 1
    return count


def digit_sum(j: int, p: int) -> int:
    """s_p(j): the sum of the base-p digits of j."""
    total = 0
    while j:
        j, digit = divmod(j, p)
        total += digit
    return total


# ── the base ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class BaseContext:
    """The base (p, e, E). `eisenstein` is E highest degree first, monic: (1, c_(e−1), …, c_0).

    Immutable and hashable, so it keys every cache in the package. It also serves as the coefficient
    ring of `OElement`s.
    """

    p: int
    e: int
    eisenstein: tuple[int, ...]

    torsion_free = True

    @property
    def base(self) -> BaseContext:
        """O as its own base."""
        return self

    @property
    def q(self) -> int:
        return self.p

    @cached_property
    def lower(self) -> tuple[int, ...]:
        """(c_0, …, c_(e−1)) so that π^e = −(c_0 + c_1 π + … + c_(e−1) π^(e−1))."""
        return tuple(reversed(self.eisenstein[1:]))

    @cached_property
    def pi_cofactor(self) -> tuple[int, ...]:
        """u with π·u = −c_0, i.e. u = π^(e−1) + c_(e−1) π^(e−2) + … + c_1, ascending coefficients."""
        return (*self.lower[1:], 1)

    # coefficient-ring protocol for O

    @cached_property
    def zero(self) -> OElement:
        return OElement(self, (0,) * self.e)

    @cached_property
    def one(self) -> OElement:
        return self.element(1)

    @cached_property
    def pi(self) -> OElement:
        if self.e == 1:
            return self.element(-self.lower[0])
        return OElement(self, tuple(1 if i == 1 else 0 for i in range(self.e)))

    def element(self, value: int | Sequence[int] | OElement) -> OElement:
        """An O-element from an integer, a power-basis coefficient vector, or an O-element."""
        if isinstance(value, OElement):
            return value
        if isinstance(value, int):
            return OElement(self, (value,) + (0,) * (self.e - 1))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) > self.e:
            return OElement.reduce(self, coeffs)
        return OElement(self, coeffs + (0,) * (self.e - len(coeffs)))

    def field_element(self, value: int | Fraction | Sequence[int | Fraction] | OElement | KElement) -> KElement:
        if isinstance(value, KElement):
            return value
        if isinstance(value, OElement):
            return KElement(self, tuple(Fraction(c) for c in value.coeffs))
        if isinstance(value, (int, Fraction)):
            return KElement(self, (Fraction(value),) + (Fraction(0),) * (self.e - 1))
        coeffs = tuple(Fraction(c) for c in value)
        if len(coeffs) > self.e:
            return KElement.reduce(self, coeffs)
        return KElement(self, coeffs + (Fraction(0),) * (self.e - len(coeffs)))

    def coerce(self, value: Any) -> OElement:
        return self.element(value)

    def normalize(self, value: OElement) -> OElement:
        return value

    def equal(self, left: OElement, right: OElement) -> bool:
        return left == right

    def pi_divide(self, value: OElement, k: int = 1) -> OElement:
        return pi_divide(value, k)

    def frobenius(self, value: OElement) -> OElement:
        return value

    def random_element(self, rng: random.Random, bound: int = 30) -> OElement:
        return OElement(self, tuple(rng.randint(-bound, bound) for _ in range(self.e)))

    def describe(self) -> str:
        return f"p={self.p} e={self.e} E={list(self.eisenstein)}"


def make_base(p: int, e: int, eisenstein: Sequence[int] | None = None) -> BaseContext:
    """Validate (p, e, E) and build the base. `eisenstein=None` means E(T) = T^e − p.

    E is given highest degree first and must be monic of degree e with every lower coefficient divisible
    by p and the constant term exactly ±p, so that O = Z[π]/(E) divides by π with integer coordinates.
    """
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise InvalidBase(f"p={p} is not prime")
    if not isinstance(e, int) or e < 1:
        raise InvalidBase(f"ramification index e={e} must be a positive integer")
    if eisenstein is None:
        eisenstein = (1,) + (0,) * (e - 1) + (-p,)
    coefficients = tuple(int(c) for c in eisenstein)
    if len(coefficients) != e + 1:
        raise InvalidBase(f"E={list(coefficients)} has degree {len(coefficients) - 1}, expected e={e}")
    if coefficients[0] != 1:
        raise InvalidBase(f"E={list(coefficients)} is not monic")
    if any(c % p for c in coefficients[1:]):
        raise InvalidBase(f"E={list(coefficients)} has a lower coefficient not divisible by p={p}")
    if coefficients[-1] % (p * p) == 0:
        raise InvalidBase(f"E={list(coefficients)} has constant term divisible by p²={p * p}")
    if abs(coefficients[-1]) != p:
        raise InvalidBase(
            f"E={list(coefficients)} has constant term {coefficients[-1]}, not ±{p}: exact π-division in Z[π] needs it"
        )
    return BaseContext(p, e, coefficients)


def standard_base(p: int, e: int = 1) -> BaseContext:
    """The base with E(T) = T^e − p, cached so repeated lookups share one context (and its caches)."""
    return _standard_base(p, e)


@lru_cache(maxsize=None)
def _standard_base(p: int, e: int) -> BaseContext:
    return make_base(p, e)


# ── elements of O and K ──────────────────────────────────────────────────────


def _convolve(left: Sequence, right: Sequence) -> list:
    out = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if not a:
            continue
        for j, b in enumerate(right):
            if b:
                out[i + j] += a * b
    return out


def _fold(base: BaseContext, coeffs: Sequence) -> list:
    """Reduce a coefficient vector of any length modulo E(π) into the power basis."""
    out = list(coeffs[: base.e]) + [0] * max(0, base.e - len(coeffs))
    overflow = list(coeffs[base.e :])
    # highest powers first: each π^k (k ≥ e) is rewritten one degree lower
    while overflow:
        top = overflow.pop()
        degree = base.e + len(overflow)
        if not top:
            continue
        for i, c in enumerate(base.lower):
            target = degree - base.e + i
            if target < base.e:
                out[target] -= top * c
            else:
                overflow[target - base.e] -= top * c
    return out


@dataclass(frozen=True)
class OElement:
    """a_0 + a_1 π + … + a_(e−1) π^(e−1) with integer a_i."""

    base: BaseContext = field(compare=False, repr=False)
    coeffs: tuple[int, ...]

    @classmethod
    def reduce(cls, base: BaseContext, coeffs: Sequence[int]) -> OElement:
        return cls(base, tuple(_fold(base, coeffs)))

    def _other(self, other: Any) -> OElement | None:
        if isinstance(other, OElement):
            return other
        if isinstance(other, int):
            return self.base.element(other)
        return None

    def __add__(self, other: Any) -> OElement:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return OElement(self.base, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> OElement:
        return OElement(self.base, tuple(-a for a in self.coeffs))

    def __sub__(self, other: Any) -> OElement:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return OElement(self.base, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other: Any) -> OElement:
        return (-self) + other

    def __mul__(self, other: Any) -> OElement:
        if isinstance(other, int):
            return OElement(self.base, tuple(a * other for a in self.coeffs))
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.base.e == 1:
            return OElement(self.base, (self.coeffs[0] * other.coeffs[0],))
        return OElement.reduce(self.base, _convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> OElement:
        result = self.base.one
        square = self
        while exponent:
            if exponent & 1:
                result = result * square
            exponent >>= 1
            if exponent:
                square = square * square
        return result

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __int__(self) -> int:
        if any(self.coeffs[1:]):
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def valuation(self) -> float:
        return valuation(self)

    def pi_divide(self, k: int = 1) -> OElement:
        return pi_divide(self, k)

    def __str__(self) -> str:
        return format_coefficients(self.coeffs)


@dataclass(frozen=True)
class KElement:
    """a_0 + a_1 π + … + a_(e−1) π^(e−1) with rational a_i; an element of K."""

    base: BaseContext = field(compare=False, repr=False)
    coeffs: tuple[Fraction, ...]

    @classmethod
    def reduce(cls, base: BaseContext, coeffs: Sequence[Fraction]) -> KElement:
        return cls(base, tuple(Fraction(c) for c in _fold(base, coeffs)))

    def _other(self, other: Any) -> KElement | None:
        if isinstance(other, KElement):
            return other
        if isinstance(other, (int, Fraction, OElement)):
            return self.base.field_element(other)
        return None

    def __add__(self, other: Any) -> KElement:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return KElement(self.base, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> KElement:
        return KElement(self.base, tuple(-a for a in self.coeffs))

    def __sub__(self, other: Any) -> KElement:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return KElement(self.base, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other: Any) -> KElement:
        return (-self) + other

    def __mul__(self, other: Any) -> KElement:
        if isinstance(other, (int, Fraction)):
            return KElement(self.base, tuple(a * other for a in self.coeffs))
        other = self._other(other)
        if other is None:
            return NotImplemented
        return KElement.reduce(self.base, _convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other: int | Fraction) -> KElement:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return KElement(self.base, tuple(a / other for a in self.coeffs))

    def __pow__(self, exponent: int) -> KElement:
        result = self.base.field_element(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_integral(self) -> bool:
        """v_π ≥ 0: every coordinate is p-integral (a denominator prime to p is a unit of O)."""
        return all(c.denominator % self.base.p for c in self.coeffs)

    def to_integral(self, modulus: int | None = None) -> OElement:
        """The O-element with integer coordinates; with `modulus` (a power of p) denominators prime to p
        are inverted modulo it, giving a representative that is exact in any O-algebra killed by `modulus`.
        """
        if not self.is_integral():
            raise NotDivisible(f"{self} is not in O", valuation=self.valuation(), k=0)
        if modulus is not None:
            return OElement(
                self.base, tuple(c.numerator * pow(c.denominator, -1, modulus) % modulus for c in self.coeffs)
            )
        if any(c.denominator != 1 for c in self.coeffs):
            raise NotDivisible(f"{self} has a denominator prime to p, so no integer coordinates", k=0)
        return OElement(self.base, tuple(int(c) for c in self.coeffs))

    def valuation(self) -> float:
        return valuation(self)

    def __str__(self) -> str:
        return format_coefficients(self.coeffs)


def format_coefficients(coeffs: Sequence[int | Fraction]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        power = "" if i == 0 else ("π" if i == 1 else f"π^{i}")
        if not power:
            terms.append(str(c))
        elif c == 1:
            terms.append(power)
        else:
            terms.append(f"{c}·{power}")
    return " + ".join(terms) if terms else "0"


def valuation(x: OElement | KElement) -> float:
    """v_π(Σ a_i π^i) = min_i (e·v_p(a_i) + i); +∞ for zero.

    The summands have pairwise distinct valuations mod e, so the minimum is attained once and the
    formula is exact, not a bound.
    """
    base = x.base
    return min((base.e * p_adic_valuation(c, base.p) + i for i, c in enumerate(x.coeffs)), default=INFINITY)


def pi_divide(x: OElement, k: int) -> OElement:
    """The y with π^k·y = x exactly; NotDivisible when v_π(x) < k."""
    base = x.base
    if k < 0:
        raise ValueError(f"k={k} must be non-negative")
    coeffs = x.coeffs
    for step in range(k):
        if base.e == 1:
            if coeffs[0] % base.lower[0]:
                raise NotDivisible(f"{x} is not divisible by π^{k}", valuation=valuation(x), k=k)
            coeffs = (coeffs[0] // -base.lower[0],)
            continue
        # x/π = x·u/(−c_0)
        scaled = _fold(base, _convolve(coeffs, base.pi_cofactor))
        divisor = -base.lower[0]
        if any(c % divisor for c in scaled):
            raise NotDivisible(f"{x} is not divisible by π^{k}", valuation=valuation(x), k=k)
        coeffs = tuple(c // divisor for c in scaled)
    return OElement(base, tuple(coeffs))


# ── coefficient rings ────────────────────────────────────────────────────────


@runtime_checkable
class CoefficientRing(Protocol):
    """What Witt vector code needs from the ring its components live in."""

    base: BaseContext
    torsion_free: bool

    @property
    def zero(self) -> Any: ...

    @property
    def one(self) -> Any: ...

    @property
    def pi(self) -> Any: ...

    def coerce(self, value: Any) -> Any: ...

    def normalize(self, value: Any) -> Any: ...

    def equal(self, left: Any, right: Any) -> bool: ...

    def random_element(self, rng: random.Random) -> Any: ...


class PolynomialRing:
    """O[names] (or K[names] with `field=True`) as a sympy sparse ring, with a declared Frobenius lift.

    Every variable starts with φ(x) = x^q; `declare_frobenius` overrides an image or, with None, marks a
    variable as having none (the top jet variable of a truncated jet algebra). When e > 1 a generator
    `pi` is appended after the named variables and results are normalized modulo E(pi).
    """

    def __init__(self, base: BaseContext, names: Iterable[str], *, field: bool = False):
        self.base = base
        self.names = tuple(names)
        if PI_NAME in self.names:
            raise ValueError(f"{PI_NAME!r} is reserved for the uniformizer")
        symbols = self.names + ((PI_NAME,) if base.e > 1 else ())
        self.field = field
        self.ring = PolyRing(symbols, QQ if field else ZZ, grlex)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._frobenius: dict[str, PolyElement | None] = {name: self.gen(name) ** base.q for name in self.names}

    torsion_free = True

    def __repr__(self) -> str:
        kind = "K" if self.field else "O"
        return f"PolynomialRing({kind}[{', '.join(self.names)}], {self.base.describe()})"

    # generators and constants

    def gen(self, name: str) -> PolyElement:
        try:
            return self.ring.gens[self._index[name]]
        except KeyError:
            raise UndeclaredVariable(name) from None

    def index(self, name: str) -> int:
        return self._index[name]

    @cached_property
    def pi_generator(self) -> PolyElement | None:
        return self.ring.gens[-1] if self.base.e > 1 else None

    @cached_property
    def zero(self) -> PolyElement:
        return self.ring.zero

    @cached_property
    def one(self) -> PolyElement:
        return self.ring.one

    @cached_property
    def pi(self) -> PolyElement:
        if self.base.e == 1:
            return self.ring(-self.base.lower[0])
        return self.pi_generator

    @cached_property
    def modulus(self) -> PolyElement | None:
        if self.base.e == 1:
            return None
        t = self.pi_generator
        return sum((c * t**i for i, c in enumerate(self.base.lower)), t**self.base.e)

    @cached_property
    def _pi_cofactor(self) -> PolyElement:
        if self.base.e == 1:
            return self.ring.one
        t = self.pi_generator
        return sum((c * t**i for i, c in enumerate(self.base.pi_cofactor)), self.ring.zero)

    def coerce(self, value: Any) -> PolyElement:
        """Bring an integer, rational, O/K element or a polynomial of a compatible ring into this ring."""
        if isinstance(value, PolyElement):
            if value.ring == self.ring:
                return value
            return self.normalize(value.set_ring(self.ring))
        if isinstance(value, (OElement, KElement)):
            if self.base.e == 1:
                return self.ring(value.coeffs[0])
            t = self.pi_generator
            return sum((self.ring(c) * t**i for i, c in enumerate(value.coeffs)), self.ring.zero)
        return self.ring(value)

    def normalize(self, f: PolyElement) -> PolyElement:
        if self.modulus is None:
            return f
        return f.rem(self.modulus)

    def equal(self, left: PolyElement, right: PolyElement) -> bool:
        return not self.normalize(left - right)

    def pi_divide(self, f: PolyElement, k: int = 1) -> PolyElement:
        """f/π^k exactly; NotDivisible when some coefficient does not allow it."""
        f = self.normalize(f)
        for _ in range(k):
            if self.base.e == 1:
                divisor = -self.base.lower[0]
                scaled = f
            else:
                divisor = -self.base.lower[0]
                scaled = self.normalize(f * self._pi_cofactor)
            if self.field:
                f = scaled.quo_ground(QQ(divisor))
                continue
            if any(c % divisor for c in scaled.values()):
                raise NotDivisible(f"{self.format(f)} is not divisible by π^{k}", k=k)
            f = scaled.quo_ground(divisor)
        return f

    # Frobenius lift and π-derivation

    def declare_frobenius(self, name: str, image: PolyElement | None) -> None:
        if name not in self._index:
            raise UndeclaredVariable(name)
        self._frobenius[name] = None if image is None else self.coerce(image)

    def frobenius_image(self, name: str) -> PolyElement | None:
        return self._frobenius[name]

    def variables_of(self, f: PolyElement) -> tuple[str, ...]:
        """The named variables (not pi) that occur in f."""
        present = [False] * len(self.names)
        for monomial in f.keys():
            for i in range(len(self.names)):
                if monomial[i]:
                    present[i] = True
        return tuple(name for name, used in zip(self.names, present) if used)

    def frobenius_lift(self, f: PolyElement) -> PolyElement:
        replacements = []
        for name in self.variables_of(f):
            image = self._frobenius[name]
            if image is None:
                raise UndeclaredVariable(name)
            replacements.append((self.gen(name), image))
        if not replacements:
            return f
        return self.normalize(f.compose(replacements))

    def pi_derivation(self, f: PolyElement) -> PolyElement:
        """δ(f) = (φ(f) − f^q)/π; NotDivisible means the declared φ is not a Frobenius lift."""
        difference = self.normalize(self.frobenius_lift(f) - f**self.base.q)
        try:
            return self.pi_divide(difference, 1)
        except NotDivisible as failure:
            raise NotDivisible(
                f"φ(f) − f^q is not divisible by π for f = {self.format(f)}: the declared φ is not a Frobenius lift",
                valuation=failure.valuation,
                k=1,
            ) from failure

    # inspection

    def coefficients(self, f: PolyElement) -> dict[tuple[int, ...], OElement | KElement]:
        """Monomial exponents over the named variables → coefficient in O (or K for field rings)."""
        f = self.normalize(f)
        width = len(self.names)
        collected: dict[tuple[int, ...], list] = {}
        for monomial, coeff in f.items():
            key = monomial[:width]
            power = monomial[width] if self.base.e > 1 else 0
            slot = collected.setdefault(key, [0] * self.base.e)
            slot[power] += coeff
        if self.field:
            return {
                key: self.base.field_element([Fraction(int(c.numerator), int(c.denominator)) for c in value])
                for key, value in collected.items()
            }
        return {key: self.base.element([int(c) for c in value]) for key, value in collected.items()}

    def terms(self, f: PolyElement) -> list[tuple[tuple[int, ...], OElement | KElement]]:
        """`coefficients` in graded-lex order of the named variables, highest first."""
        coefficients = self.coefficients(f)
        return sorted(coefficients.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def constant(self, f: PolyElement) -> OElement | KElement:
        zero = (0,) * len(self.names)
        coefficients = self.coefficients(f)
        if set(coefficients) - {zero}:
            raise ValueError(f"{self.format(f)} is not a constant")
        if zero in coefficients:
            return coefficients[zero]
        return self.base.field_element(0) if self.field else self.base.zero

    def format(self, f: PolyElement) -> str:
        return str(self.normalize(f).as_expr())

    def random_element(self, rng: random.Random, degree: int = 2, bound: int = 5, terms: int = 4) -> PolyElement:
        """A random polynomial with at most `terms` monomials of total degree ≤ degree."""
        result = self.ring.zero
        for _ in range(terms):
            coefficient = self.coerce(self.base.random_element(rng, bound))
            monomial = self.ring.one
            for _ in range(rng.randint(0, degree)):
                monomial *= self.gen(rng.choice(self.names)) if self.names else self.ring.one
            result += coefficient * monomial
        return self.normalize(result)

    def substitute(self, f: PolyElement, values: Mapping[str, Any], target: Any) -> Any:
        """Evaluate f in another coefficient ring, named variables per `values`, π ↦ target.pi."""
        return evaluate_terms(list(self.normalize(f).items()), len(self.names), values_by_index(self, values), target)


def values_by_index(ring: PolynomialRing, values: Mapping[str, Any]) -> dict[int, Any]:
    return {ring.index(name): value for name, value in values.items()}


def evaluate_terms(terms: Sequence[tuple[tuple[int, ...], Any]], width: int, values: Mapping[int, Any], target: Any) -> Any:
    """Σ coeff · Π values[i]^exp · π^(pi exponent) computed in `target`, with cached powers.

    `terms` are raw sympy (monomial, coefficient) pairs whose first `width` exponents belong to named
    variables and whose optional last exponent is the power of pi. Every named variable that occurs
    must have a value; integer coefficients are applied with `*`.
    """
    powers: dict[tuple[int, int], Any] = {}
    pi_powers: dict[int, Any] = {}

    def power(index: int, exponent: int) -> Any:
        key = (index, exponent)
        if key not in powers:
            if exponent == 1:
                powers[key] = values[index]
            else:
                half = power(index, exponent // 2)
                squared = half * half
                powers[key] = squared * values[index] if exponent % 2 else squared
        return powers[key]

    def pi_power(exponent: int) -> Any:
        if exponent not in pi_powers:
            value = target.one
            for _ in range(exponent):
                value = value * target.pi
            pi_powers[exponent] = value
        return pi_powers[exponent]

    total = target.zero
    for monomial, coeff in terms:
        value = None
        for i in range(width):
            if monomial[i]:
                factor = power(i, monomial[i])
                value = factor if value is None else value * factor
        if len(monomial) > width and monomial[width]:
            factor = pi_power(monomial[width])
            value = factor if value is None else value * factor
        c = int(coeff)
        if value is None:
            total = total + target.coerce(c)
        elif c != 1:
            total = total + value * c
        else:
            total = total + value
    return target.normalize(total)
