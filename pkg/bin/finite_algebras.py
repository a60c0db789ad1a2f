"""
Finite O-algebras with π nilpotent: the test algebras every brute-force check evaluates over.

A test algebra is C = O[t_1, …, t_s]/(t_i^(k_i), monomial relations, π^m). It is a finite local ring with
maximal ideal (π, t) and residue field F_p, and its carrier is enumerable. The Z-basis is
{π^j t^α : 0 ≤ j < e, α a standard monomial}. Writing m = e·s + r, the ideal π^m O is the diagonal
lattice p^s·span{p·π^j (j < r), π^j (j ≥ r)}, so the π^j coordinate of an element is reduced modulo
p^(s+1) when j < r and modulo p^s otherwise, and reduction never mixes coordinates.

Elements are `AlgebraElement`s (coordinate tuples, hashable). Witt vector code treats an algebra as a
coefficient ring with π-torsion; `precision_lift` gives it the same algebra with more π-adic digits,
which is what lets witt_core run ghost arithmetic on representatives and reduce at the end.

The catalog of algebras a run verifies over is JSON5 (`load_catalog`), or `default_catalog(base)`.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Any

import json5

from padic_base import BaseContext, JetspaceError, OElement, pi_divide


class InvalidAlgebra(JetspaceError):
    """A test-algebra description that does not define a finite O-algebra with π nilpotent."""


@dataclass(frozen=True)
class NilpotentGenerator:
    name: str
    order: int  # t^order = 0


class AlgebraElement:
    """An element of a `NilpotentTestAlgebra`, as reduced coordinates in its Z-basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: NilpotentTestAlgebra, coords: tuple[int, ...]):
        self.algebra = algebra
        self.coords = coords

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgebraElement) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra.name}, {self})"

    def __str__(self) -> str:
        return self.algebra.format(self)

    def _other(self, other: Any) -> AlgebraElement | None:
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, OElement)):
            return self.algebra.coerce(other)
        return None

    def __add__(self, other: Any) -> AlgebraElement:
        other = self._other(other)
        if other is None:
            return NotImplemented
        moduli = self.algebra.moduli
        return AlgebraElement(self.algebra, tuple((a + b) % m for a, b, m in zip(self.coords, other.coords, moduli)))

    __radd__ = __add__

    def __neg__(self) -> AlgebraElement:
        moduli = self.algebra.moduli
        return AlgebraElement(self.algebra, tuple(-a % m for a, m in zip(self.coords, moduli)))

    def __sub__(self, other: Any) -> AlgebraElement:
        other = self._other(other)
        if other is None:
            return NotImplemented
        moduli = self.algebra.moduli
        return AlgebraElement(self.algebra, tuple((a - b) % m for a, b, m in zip(self.coords, other.coords, moduli)))

    def __rsub__(self, other: Any) -> AlgebraElement:
        return (-self) + other

    def __mul__(self, other: Any) -> AlgebraElement:
        if isinstance(other, int):
            moduli = self.algebra.moduli
            return AlgebraElement(self.algebra, tuple(a * other % m for a, m in zip(self.coords, moduli)))
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.algebra.multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> AlgebraElement:
        result = self.algebra.one
        square = self
        while exponent:
            if exponent & 1:
                result = result * square
            exponent >>= 1
            if exponent:
                square = square * square
        return result

    def __bool__(self) -> bool:
        return any(self.coords)


@dataclass(frozen=True, eq=False)
class NilpotentTestAlgebra:
    """C = O[t]/(relations, π^pi_power) over `base`; see the module docstring for the basis."""

    base: BaseContext
    name: str
    pi_power: int
    generators: tuple[NilpotentGenerator, ...] = ()
    relations: tuple[tuple[str, ...], ...] = ()

    torsion_free = False

    def __repr__(self) -> str:
        return f"NilpotentTestAlgebra({self.name}, {self.base.describe()})"

    # ── structure ──

    @cached_property
    def relation_exponents(self) -> tuple[tuple[int, ...], ...]:
        names = [g.name for g in self.generators]
        out = []
        for relation in self.relations:
            exponents = [0] * len(names)
            for name in relation:
                exponents[names.index(name)] += 1
            out.append(tuple(exponents))
        return tuple(out)

    def is_standard(self, alpha: Sequence[int]) -> bool:
        """Whether t^α survives the generator orders and the monomial relations."""
        if any(a >= g.order for a, g in zip(alpha, self.generators)):
            return False
        return not any(all(a >= r for a, r in zip(alpha, relation)) for relation in self.relation_exponents)

    @cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        ranges = [range(g.order) for g in self.generators]
        standard = [alpha for alpha in itertools.product(*ranges) if self.is_standard(alpha)]
        return tuple(sorted(standard, key=lambda alpha: (sum(alpha), alpha)))

    @cached_property
    def basis(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """(j, α) for the basis element π^j t^α, t-monomial major."""
        return tuple((j, alpha) for alpha in self.monomials for j in range(self.base.e))

    @cached_property
    def basis_index(self) -> dict[tuple[int, tuple[int, ...]], int]:
        return {entry: i for i, entry in enumerate(self.basis)}

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        s, r = divmod(self.pi_power, self.base.e)
        p = self.base.p
        return tuple(p ** (s + 1) if j < r else p**s for j, _ in self.basis)

    @cached_property
    def size(self) -> int:
        total = 1
        for m in self.moduli:
            total *= m
        return total

    @cached_property
    def _table(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
        """products of basis elements, as ((target index, integer coefficient), …)."""
        e = self.base.e
        reductions = []
        for k in range(2 * e - 1):
            unit = [0] * (2 * e - 1)
            unit[k] = 1
            reductions.append(OElement.reduce(self.base, unit).coeffs)
        table = []
        for j1, alpha1 in self.basis:
            row = []
            for j2, alpha2 in self.basis:
                alpha = tuple(a + b for a, b in zip(alpha1, alpha2))
                if not self.is_standard(alpha):
                    row.append(())
                    continue
                vector = reductions[j1 + j2]
                row.append(tuple((self.basis_index[(j, alpha)], c) for j, c in enumerate(vector) if c))
            table.append(tuple(row))
        return tuple(table)

    def multiply(self, left: AlgebraElement, right: AlgebraElement) -> AlgebraElement:
        out = [0] * len(self.moduli)
        table = self._table
        for i, a in enumerate(left.coords):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(right.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return AlgebraElement(self, tuple(v % m for v, m in zip(out, self.moduli)))

    # ── coefficient-ring protocol ──

    def element(self, coords: Sequence[int]) -> AlgebraElement:
        return AlgebraElement(self, tuple(c % m for c, m in zip(coords, self.moduli)))

    @cached_property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, (0,) * len(self.moduli))

    @cached_property
    def one(self) -> AlgebraElement:
        return self.coerce(1)

    @cached_property
    def pi(self) -> AlgebraElement:
        return self.coerce(self.base.pi)

    @cached_property
    def _unit_monomial(self) -> tuple[int, ...]:
        return (0,) * len(self.generators)

    def coerce(self, value: Any) -> AlgebraElement:
        if isinstance(value, AlgebraElement):
            return value
        if isinstance(value, int):
            value = self.base.element(value)
        if not isinstance(value, OElement):
            raise TypeError(f"cannot coerce {value!r} into {self.name}")
        coords = [0] * len(self.moduli)
        for j, c in enumerate(value.coeffs):
            coords[self.basis_index[(j, self._unit_monomial)]] = c
        return self.element(coords)

    def generator(self, name: str) -> AlgebraElement:
        names = [g.name for g in self.generators]
        alpha = tuple(1 if n == name else 0 for n in names)
        coords = [0] * len(self.moduli)
        if self.is_standard(alpha):
            coords[self.basis_index[(0, alpha)]] = 1
        return self.element(coords)

    def normalize(self, value: AlgebraElement) -> AlgebraElement:
        return value

    def equal(self, left: AlgebraElement, right: AlgebraElement) -> bool:
        return left.coords == right.coords

    def random_element(self, rng: random.Random) -> AlgebraElement:
        return AlgebraElement(self, tuple(rng.randrange(m) for m in self.moduli))

    # ── enumeration and local structure ──

    def elements(self) -> Iterator[AlgebraElement]:
        for coords in itertools.product(*(range(m) for m in self.moduli)):
            yield AlgebraElement(self, coords)

    def is_unit(self, value: AlgebraElement) -> bool:
        """Units are exactly the elements with non-zero residue in F_p (C is local)."""
        index = self.basis_index[(0, self._unit_monomial)]
        return value.coords[index] % self.base.p != 0

    def is_nilpotent(self, value: AlgebraElement) -> bool:
        return not self.is_unit(value)

    def units(self) -> list[AlgebraElement]:
        return [c for c in self.elements() if self.is_unit(c)]

    def nilradical(self) -> list[AlgebraElement]:
        return [c for c in self.elements() if not self.is_unit(c)]

    @cached_property
    def ideal_nilpotency(self) -> int:
        """The least k with m^k = 0 for the maximal ideal m = (π, t)."""
        return self.pi_power + max(sum(alpha) for alpha in self.monomials)

    def check_ring_axioms(self, rng: random.Random, samples: int = 50) -> list[str]:
        """Spot-check associativity, commutativity and distributivity on random triples."""
        problems = []
        for _ in range(samples):
            a, b, c = (self.random_element(rng) for _ in range(3))
            if (a * b) * c != a * (b * c):
                problems.append(f"({a}·{b})·{c} ≠ {a}·({b}·{c})")
            if a * b != b * a:
                problems.append(f"{a}·{b} ≠ {b}·{a}")
            if a * (b + c) != a * b + a * c:
                problems.append(f"{a}·({b}+{c}) ≠ {a}·{b}+{a}·{c}")
        return problems

    # ── precision lift (for ghost arithmetic on representatives) ──

    def precision_lift(self, extra: int) -> NilpotentTestAlgebra:
        return _lifted(self, extra)

    def lift(self, value: AlgebraElement, lifted: NilpotentTestAlgebra) -> AlgebraElement:
        return AlgebraElement(lifted, value.coords)

    def reduce(self, value: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self, tuple(c % m for c, m in zip(value.coords, self.moduli)))

    def representative_pi_divide(self, value: AlgebraElement, k: int) -> AlgebraElement:
        """Divide the integral representative by π^k; correct modulo π^(pi_power − k).

        NotDivisible when the representative is not divisible, which for a value known to be divisible
        in a torsion-free lift means the precision was too small.
        """
        e = self.base.e
        coords = list(value.coords)
        for alpha in self.monomials:
            indices = [self.basis_index[(j, alpha)] for j in range(e)]
            quotient = pi_divide(OElement(self.base, tuple(coords[i] for i in indices)), k)
            for i, c in zip(indices, quotient.coeffs):
                coords[i] = c
        return self.element(coords)

    # ── maps and display ──

    def reduction_map(self, target: NilpotentTestAlgebra) -> Callable[[AlgebraElement], AlgebraElement]:
        """The quotient map C → C′ when C′ is C with a smaller π-power and/or smaller t-orders."""
        if target.base != self.base:
            raise InvalidAlgebra(f"{target.name} and {self.name} live over different bases")
        if [g.name for g in target.generators] != [g.name for g in self.generators]:
            raise InvalidAlgebra(f"{target.name} has different generators than {self.name}")
        if target.pi_power > self.pi_power or any(
            t.order > s.order for t, s in zip(target.generators, self.generators)
        ):
            raise InvalidAlgebra(f"{target.name} is not a quotient of {self.name}")
        if any(target.is_standard(relation) for relation in self.relation_exponents):
            raise InvalidAlgebra(f"a relation of {self.name} survives in {target.name}")
        routes = [target.basis_index.get(entry) for entry in self.basis]

        def reduce(value: AlgebraElement) -> AlgebraElement:
            coords = [0] * len(target.moduli)
            for index, c in zip(routes, value.coords):
                if index is not None:
                    coords[index] += c
            return target.element(coords)

        return reduce

    def format(self, value: AlgebraElement) -> str:
        names = [g.name for g in self.generators]
        terms = []
        for (j, alpha), c in zip(self.basis, value.coords):
            if not c:
                continue
            factors = []
            if j:
                factors.append("π" if j == 1 else f"π^{j}")
            for name, a in zip(names, alpha):
                if a:
                    factors.append(name if a == 1 else f"{name}^{a}")
            if not factors:
                terms.append(str(c))
            elif c == 1:
                terms.append("·".join(factors))
            else:
                terms.append(f"{c}·" + "·".join(factors))
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def _lifted(algebra: NilpotentTestAlgebra, extra: int) -> NilpotentTestAlgebra:
    return NilpotentTestAlgebra(
        algebra.base,
        f"{algebra.name}~{extra}",
        algebra.pi_power + extra,
        algebra.generators,
        algebra.relations,
    )


def algebra_name(base: BaseContext, pi_power: int, generators: Sequence[NilpotentGenerator]) -> str:
    if base.e == 1:
        head = f"F_{base.p}" if pi_power == 1 and generators else f"Z/{base.p**pi_power}"
    else:
        head = f"F_{base.p}" if pi_power == 1 and generators else f"O/π^{pi_power}"
    if not generators:
        return head
    if head.startswith("Z/") or head.startswith("O/"):
        head = f"({head})"
    inner = ", ".join(g.name for g in generators)
    ideal = ", ".join(f"{g.name}^{g.order}" for g in generators)
    return f"{head}[{inner}]/({ideal})"


def make_algebra(
    base: BaseContext,
    pi_power: int,
    nilpotent: Sequence[tuple[str, int]] = (),
    relations: Sequence[Sequence[str]] = (),
    name: str | None = None,
) -> NilpotentTestAlgebra:
    """Validate and build a test algebra; `nilpotent` is (generator name, order) pairs."""
    if not isinstance(pi_power, int) or pi_power < 1:
        raise InvalidAlgebra(f"pi_power={pi_power!r} must be a positive integer (π has to be nilpotent)")
    generators = []
    for entry in nilpotent:
        generator_name, order = entry
        if not isinstance(generator_name, str) or not generator_name.isidentifier():
            raise InvalidAlgebra(f"generator name {generator_name!r} is not an identifier")
        if not isinstance(order, int) or order < 1:
            raise InvalidAlgebra(f"generator {generator_name} has order {order!r}; it must be a positive integer")
        generators.append(NilpotentGenerator(generator_name, order))
    names = [g.name for g in generators]
    if len(set(names)) != len(names):
        raise InvalidAlgebra(f"duplicate generator names in {names}")
    for relation in relations:
        if not relation:
            raise InvalidAlgebra("empty relation would make the algebra zero")
        for generator_name in relation:
            if generator_name not in names:
                raise InvalidAlgebra(f"relation {list(relation)} names unknown generator {generator_name!r}")
    return NilpotentTestAlgebra(
        base,
        name or algebra_name(base, pi_power, generators),
        pi_power,
        tuple(generators),
        tuple(tuple(r) for r in relations),
    )


# ── catalog ──────────────────────────────────────────────────────────────────

_ENTRY_KEYS = {"name", "pi_power", "nilpotent", "relations"}


def default_catalog(base: BaseContext) -> list[NilpotentTestAlgebra]:
    """Z/p^m (m ≤ 3), F_p[t]/(t^k) (k ≤ 4) and (Z/p²)[t]/(t²); for e > 1 the same shapes over O/π^m."""
    catalog = [make_algebra(base, m) for m in (1, 2, 3)]
    catalog += [make_algebra(base, 1, [("t", k)]) for k in (2, 3, 4)]
    catalog.append(make_algebra(base, 2, [("t", 2)]))
    return catalog


def catalog_from_data(base: BaseContext, data: Any) -> list[NilpotentTestAlgebra]:
    if not isinstance(data, Mapping) or set(data) != {"algebras"}:
        raise InvalidAlgebra('a catalog is an object with exactly one key, "algebras"')
    entries = data["algebras"]
    if not isinstance(entries, list) or not entries:
        raise InvalidAlgebra('"algebras" must be a non-empty list')
    catalog = []
    for position, entry in enumerate(entries):
        if not isinstance(entry, Mapping):
            raise InvalidAlgebra(f"catalog entry {position} is not an object")
        unknown = set(entry) - _ENTRY_KEYS
        if unknown:
            raise InvalidAlgebra(f"catalog entry {position} has unknown keys {sorted(unknown)}")
        if "pi_power" not in entry:
            raise InvalidAlgebra(f"catalog entry {position} is missing pi_power")
        nilpotent = []
        for generator in entry.get("nilpotent", []):
            if not isinstance(generator, Mapping) or set(generator) != {"name", "order"}:
                raise InvalidAlgebra(f"catalog entry {position}: generators are {{'name', 'order'}} objects")
            nilpotent.append((generator["name"], generator["order"]))
        relations = entry.get("relations", [])
        if not isinstance(relations, list) or not all(isinstance(r, list) for r in relations):
            raise InvalidAlgebra(f"catalog entry {position}: relations must be a list of name lists")
        catalog.append(make_algebra(base, entry["pi_power"], nilpotent, relations, entry.get("name")))
    return catalog


def load_catalog(base: BaseContext, path: str | Path) -> list[NilpotentTestAlgebra]:
    """Read a JSON5 catalog file; any parse or shape problem is an InvalidAlgebra."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as failure:
        raise InvalidAlgebra(f"cannot read catalog {path}: {failure}") from failure
    try:
        data = json5.loads(text)
    except ValueError as failure:
        raise InvalidAlgebra(f"catalog {path} is not valid JSON5: {failure}") from failure
    return catalog_from_data(base, data)
