"""
The verification suites behind `jetspace verify <suite>`.

A suite turns a RunConfig into tasks: (case key, callable) pairs, each callable returning one Report and
depending on nothing but its arguments, so the tasks can run in any order or on a process pool. Reports
come back ordered by case key whatever the execution order.

  witt        ghost-oracle equivalence over O, FV = π, ghost of V, VF = V(1)·, V(a)V(b) = V(πab),
              universal polynomials against the precision route, S_1, the exp_δ section
  shifted     F⁺ as a ring homomorphism (torsion-free and torsion B), its ghost, the iterate formula
  jets        δ against the sum/product rules, the ghost identity, p_2, J^nĜ_a = Ŵ_n, jets of Ĝ_m,
              the lateral pullback display, φ∘φ∘u = φ∘u∘f
  appendix    the coordinate theorem for B_n
  fgl         law axioms, N¹ laws, valuations of the Ĝ_m{1} logarithm and exponential, the certificate
  main        (alias main-theorem) 0 → N^nĜ_m → J^nĜ_m[p^∞] → Ĝ_m[p^∞] → 0 on every catalog algebra
  njet        (W_(n−1)(C), ⊕π) ≅ N^nĜ_m(C) on every catalog algebra
  ga-torsion  N¹Ĝ_a[p^ν] ≅ Ĝ_a[p^ν] on every catalog algebra
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from functools import partial

from finite_algebras import NilpotentTestAlgebra
from formal_groups import (
    VALUATION_DEGREE,
    additive_law,
    certify_additive_iso,
    elliptic_law,
    exponential,
    exponential_inverts_logarithm,
    exponential_valuation_formula,
    kernel_law_matches,
    logarithm,
    logarithm_is_additive,
    logarithm_valuation_at_power,
    multiplicative_law,
    random_conjugate_law,
    scaled_logarithm_integral,
    scaled_multiplicative_law,
    validate_law,
)
from jet_algebras import (
    IntegralityFailure,
    carry_polynomial,
    check_lateral_pullback,
    frobenius_compatibility_holds,
    ghost_identity_holds,
    h_bar_polynomial,
    jet_algebra,
    jet_coaddition_matches_witt,
    multiplicative_coproduct_holds,
    scaled_prolongation_holds,
    verify_coordinate_theorem,
    witt_coordinates,
)
from padic_base import BaseContext, JetspaceError, PolynomialRing
from progress import info1
from reports import Check, Report, ordered, report
from run_config import RunConfig
from torsion_lab import SizeGuard, verify_ga_torsion, verify_main_theorem, verify_njet_for_gm
from witt_core import (
    WittVector,
    evaluate_universal,
    exp_delta,
    frobenius,
    frobenius_ghost,
    ghost,
    universal_polynomials,
    universal_ring,
    verschiebung,
    verschiebung_ghost,
    witt_add,
    witt_mul,
    witt_one,
)
from witt_shifted import (
    iterate_closed_form,
    iterate_first_entry,
    lateral_frobenius,
    random_shifted,
    shifted_add,
    shifted_ghost,
    shifted_mul,
    shifted_structure,
    shifted_vector,
)

Task = tuple[str, Callable[[], Report]]

GHOST_PAIRS = 200
SHIFTED_PAIRS = 100
UNIVERSAL_ORDER = 2
KERNEL_LAW_DEGREE = 6
RANDOM_LAWS = 5


def _first_failure(items: Iterable, ok: Callable) -> str | None:
    for item in items:
        if not ok(*item):
            return ", ".join(str(part) for part in item)
    return None


def _same_components(ring, left: Sequence, right: Sequence) -> bool:
    return len(left) == len(right) and all(ring.equal(a, b) for a, b in zip(left, right))


def _random_vector(base: BaseContext, n: int, rng: random.Random) -> WittVector:
    return WittVector(base, [base.random_element(rng) for _ in range(n + 1)])


def _smallest(catalog: Sequence[NilpotentTestAlgebra]) -> NilpotentTestAlgebra:
    return min(catalog, key=lambda C: (C.size, C.name))


# ── witt ─────────────────────────────────────────────────────────────────────


def witt_case(config: RunConfig, n: int) -> Report:
    base = config.base
    rng = config.rng(f"witt n={n}")
    info1(f"witt suite, n={n}")
    pairs = [(_random_vector(base, n, rng), _random_vector(base, n, rng)) for _ in range(GHOST_PAIRS)]
    checks = []

    def ghost_adds(u, v):
        return _same_components(base, ghost(witt_add(u, v)).components, (ghost(u) + ghost(v)).components)

    def ghost_muls(u, v):
        return _same_components(base, ghost(witt_mul(u, v)).components, (ghost(u) * ghost(v)).components)

    checks.append(Check.of("w(u + v) = w(u) + w(v)", *_witness(pairs, ghost_adds)))
    checks.append(Check.of("w(u·v) = w(u)·w(v)", *_witness(pairs, ghost_muls)))
    singles = [(u,) for u, _ in pairs]

    def ghost_of_v(u):
        return _same_components(base, ghost(verschiebung(u)).components, verschiebung_ghost(ghost(u)).components)

    def ghost_of_f(u):
        return _same_components(base, ghost(frobenius(u)).components, frobenius_ghost(ghost(u)).components)

    checks.append(Check.of("w(V(u)) = (0, πw_0(u), …, πw_n(u))", *_witness(singles, ghost_of_v)))
    if n >= 1:
        checks.append(Check.of("w(F(u)) = left shift of w(u)", *_witness(singles, ghost_of_f)))
        checks.append(Check.of("FV = π", *_witness(singles, lambda u: frobenius(verschiebung(u)) == u * base.pi)))
        v_one = verschiebung(witt_one(base, n - 1))
        checks.append(Check.of("VF = V(1)·", *_witness(singles, lambda u: verschiebung(frobenius(u)) == witt_mul(v_one, u))))
        ring = universal_ring(base, 1)
        s1 = universal_polynomials(base, 1, "add")[1]
        x0, y0 = ring.gen("x0"), ring.gen("y0")
        expected = ring.gen("x1") + ring.gen("y1") + carry_polynomial(ring, x0, y0)
        checks.append(Check.of("S_1 = x_1 + y_1 + (x_0^q + y_0^q − (x_0 + y_0)^q)/π", ring.equal(s1, expected), ring.format(s1)))
    checks.append(
        Check.of(
            "V(a)·V(b) = V(π·a·b)",
            *_witness(pairs[:50], lambda a, b: witt_mul(verschiebung(a), verschiebung(b)) == verschiebung((a * b) * base.pi)),
        )
    )

    if n <= UNIVERSAL_ORDER:
        C = _smallest(config.catalog)
        samples = [(C.random_element(rng), C.random_element(rng)) for _ in range(n + 1)]
        u = WittVector(C, [a for a, _ in samples])
        v = WittVector(C, [b for _, b in samples])
        for op, direct in (("add", witt_add), ("mul", witt_mul)):
            through = WittVector(C, evaluate_universal(base, n, op, C, u.components, v.components))
            checks.append(Check.of(f"universal {op} = precision route on {C.name}", through == direct(u, v), f"u={u}, v={v}"))

    polynomials = PolynomialRing(base, ["x"])
    elements = [(polynomials.random_element(rng),) for _ in range(10)]

    def section(f):
        expected, value = [f], f
        for _ in range(n):
            value = polynomials.frobenius_lift(value)
            expected.append(value)
        return _same_components(polynomials, ghost(exp_delta(polynomials, f, n)).components, expected)

    checks.append(Check.of("w(exp_δ(f)) = (f, φf, …, φ^n f)", *_witness(elements, section)))
    return report(f"witt {base.describe()} n={n}", checks)


def _witness(items: Sequence[tuple], ok: Callable) -> tuple[bool, str | None]:
    """(ok for every item, the first failing item)."""
    failure = _first_failure(items, ok)
    return failure is None, failure


# ── shifted ──────────────────────────────────────────────────────────────────


def shifted_case(config: RunConfig, n: int) -> Report:
    base = config.base
    rng = config.rng(f"shifted n={n}")
    info1(f"shifted suite, n={n}")
    checks = []
    notes = []
    over_o = shifted_structure(base)
    C = _smallest(config.catalog)
    over_c = shifted_structure(base, C)
    for label, structure in (("O", over_o), (C.name, over_c)):
        pairs = [(random_shifted(structure, n, rng), random_shifted(structure, n, rng)) for _ in range(SHIFTED_PAIRS)]
        checks.append(
            Check.of(
                f"F⁺(u + v) = F⁺u + F⁺v over {label}",
                *_witness(pairs, lambda u, v: lateral_frobenius(shifted_add(u, v)) == shifted_add(lateral_frobenius(u), lateral_frobenius(v))),
            )
        )
        checks.append(
            Check.of(
                f"F⁺(u·v) = F⁺u·F⁺v over {label}",
                *_witness(pairs, lambda u, v: lateral_frobenius(shifted_mul(u, v)) == shifted_mul(lateral_frobenius(u), lateral_frobenius(v))),
            )
        )
    singles = [(random_shifted(over_o, n, rng),) for _ in range(SHIFTED_PAIRS)]

    def ghost_square(v):
        head, tail = shifted_ghost(v)
        image_head, image_tail = shifted_ghost(lateral_frobenius(v))
        return base.equal(head, image_head) and _same_components(base, image_tail, tail[1:])

    checks.append(Check.of("shifted ghost of F⁺v = shifted ghost of v without slot 1", *_witness(singles, ghost_square)))
    fixed = [(shifted_vector(over_o, r, [0] * n),) for r in (0, 1, -1)]
    checks.append(
        Check.of(
            "F⁺(r; 0, …, 0) = (r; 0, …, 0) when δ(r) = 0",
            *_witness(fixed, lambda v: lateral_frobenius(v) == shifted_vector(over_o.twisted(), v.head, [0] * (n - 1))),
        )
    )
    for i in range(1, n):
        ring, entry = iterate_first_entry(base, n, i)
        computed = iterate_closed_form(ring, i, i + 1)
        checks.append(
            Check.of(
                f"(F⁺)^{i} first entry = Σ π^k b_(k+1)^(q^({i}−k)) + π^{i} b_{i + 1}",
                ring.equal(entry, computed),
                ring.format(entry),
            )
        )
        if not ring.equal(entry, iterate_closed_form(ring, i, i)):
            notes.append(f"(F⁺)^{i}: the reading ending in π^{i} b_{i} differs from the computed iterate")
    return report(f"shifted {base.describe()} n={n}", checks, notes)


# ── jets ─────────────────────────────────────────────────────────────────────


def jets_case(config: RunConfig, n: int) -> Report:
    base = config.base
    rng = config.rng(f"jets n={n}")
    info1(f"jets suite, n={n}")
    algebra = jet_algebra(base, n)
    lower = PolynomialRing(base, [f"x_{i}" for i in range(n)])
    samples = [(algebra.ring.coerce(lower.random_element(rng)),) for _ in range(10)] if n else []
    checks = [
        Check.of("δ agrees with the sum and product rules", *_witness(samples, lambda f: algebra.ring.equal(algebra.prolong(f), algebra.prolong_by_axioms(f)))),
        Check.of(f"Φ^{n}(x) = Σ π^i p_i^(q^({n}−i))", ghost_identity_holds(base, n)),
    ]
    if n >= 2 and (base.p, base.e) == (3, 1):
        x = [algebra.var("x", i) for i in range(3)]
        p2 = witt_coordinates(base, n)["x"][2]
        expected = x[2] + x[0] ** 6 * x[1] + 3 * x[0] ** 3 * x[1] ** 2 + 3 * x[1] ** 3
        checks.append(Check.of("p_2 = x″ + x⁶x′ + 3x³(x′)² + 3(x′)³", algebra.ring.equal(p2, expected), algebra.ring.format(p2)))
    if 1 <= n <= UNIVERSAL_ORDER:
        checks.append(Check.of(f"p_k(x + y) = S_k in Witt coordinates, k ≤ {n}", jet_coaddition_matches_witt(base, n, "add")))
        checks.append(Check.of(f"p_k(x·y) = P_k in Witt coordinates, k ≤ {n}", jet_coaddition_matches_witt(base, n, "mul")))
    for comparison in check_lateral_pullback(base, n) if n >= 1 else ():
        checks.append(
            Check.of(
                f"displayed pullback at i={comparison.i} = (f^{comparison.i - 1})*(p_1⁺)",
                comparison.matches_iterate == comparison.i - 1,
                f"matches f^{comparison.matches_iterate}" if comparison.matches_iterate is not None else "matches no iterate",
            )
        )
    if n >= 2:
        for g in (algebra.var("x", 0), algebra.var("x", 0) ** 2 + algebra.var("x", n - 2)):
            checks.append(Check.of(f"u*Φ²({algebra.ring.format(g)}) = f*u*Φ({algebra.ring.format(g)})", frobenius_compatibility_holds(base, n, g)))
    return report(f"jets {base.describe()} n={n}", checks)


def jet_identities_case(config: RunConfig) -> Report:
    base = config.base
    checks = [Check.of("δ(xy) = x′y^q + x^q y′ + π x′y′", multiplicative_coproduct_holds(base))]
    for nu in (1, 2):
        checks.append(Check.of(f"(p^{nu}x)^q + πδ(p^{nu}x) = p^{nu}(x^q + πx′)", scaled_prolongation_holds(base, nu)))
    return report(f"jets {base.describe()} identities", checks)


# ── appendix ─────────────────────────────────────────────────────────────────


def appendix_case(config: RunConfig, n: int) -> Report:
    base = config.base
    info1(f"appendix suite, n={n}")
    checks = []
    for k in range(1, n + 1):
        try:
            h_bar_polynomial(base, k)
            checks.append(Check.of(f"H̄_{k} is integral", True))
        except IntegralityFailure as failure:
            checks.append(Check.of(f"H̄_{k} is integral", False, str(failure)))
    result = verify_coordinate_theorem(base, n)
    for i, ok in enumerate(result.images_match):
        checks.append(Check.of(f"h_{n}(z_{i}) = x_{i}", ok, "; ".join(result.failures)))
    checks.append(Check.of(f"Ψ^{n}(x_0) = Σ π^i x_i^(q^({n}−i))", result.psi_identity))
    checks.append(Check.of("∂^i x_0 ≡ x_i modulo x_0..x_(i−1)", result.triangular, "; ".join(result.failures)))
    return report(f"appendix {base.describe()} n={n}", checks)


# ── fgl ──────────────────────────────────────────────────────────────────────


def _named(checks: Iterable[Check], prefix: str) -> list[Check]:
    return [replace(check, name=f"{prefix}: {check.name}") for check in checks]


def fgl_laws_case(config: RunConfig) -> Report:
    base = config.base
    rng = config.rng("fgl laws")
    D = KERNEL_LAW_DEGREE
    laws = [additive_law(base, D), multiplicative_law(base, D), scaled_multiplicative_law(base, 1, D), elliptic_law(base, -1, 1, D)]
    laws += [random_conjugate_law(base, rng, D, kind) for kind in ("additive", "multiplicative") * RANDOM_LAWS][:RANDOM_LAWS]
    checks = []
    for F in laws:
        checks += _named(validate_law(F), F.name)
        checks.append(kernel_law_matches(F))
    return report(f"fgl {base.describe()} laws", checks)


def fgl_valuations_case(config: RunConfig) -> Report:
    base = config.base
    D = VALUATION_DEGREE
    info1(f"fgl valuations to degree {D}")
    law = scaled_multiplicative_law(base, 1, D)
    L = logarithm(law, D)
    E = exponential(law, D)
    p = base.p
    powers = [r for r in range(D) if p**r <= D]
    checks = [
        Check.of(
            "v(log coefficient at p^r) = p^r − 1 − e·r",
            *_witness([(r,) for r in powers], lambda r: L.valuations[p**r] == logarithm_valuation_at_power(base, r)),
        ),
        Check.of(
            "v(π^j/j!) = v(exp coefficient j) + 1",
            *_witness([(j,) for j in range(1, D + 1)], lambda j: E.valuations[j] + 1 == exponential_valuation_formula(base, j)),
        ),
    ]
    for n in (1, 2):
        hypothesis, integral = scaled_logarithm_integral(base, n, D)
        checks.append(Check.of(f"n(p−1) ≥ e+1 ⇒ log of Ĝ_m{{{n}}} integral to degree {D}", integral or not hypothesis))
    return report(f"fgl {base.describe()} valuations", checks)


def fgl_certificate_case(config: RunConfig) -> Report:
    base = config.base
    D = config.D
    law = scaled_multiplicative_law(base, 1, D)
    certificate = certify_additive_iso(law, D)
    expected = base.p >= base.e + 2
    checks = [
        Check.of(
            f"Ĝ_m{{1}} ≅ Ĝ_a certified to degree {D} iff p ≥ e + 2",
            certificate.certified == expected,
            certificate.reason or "certified",
        ),
        exponential_inverts_logarithm(certificate.logarithm, certificate.exponential, D),
        logarithm_is_additive(law, certificate.logarithm, min(D, 12)),
    ]
    notes = [] if certificate.certified else [f"refused: {certificate.reason}"]
    return report(f"fgl {base.describe()} certificate D={D}", checks, notes)


# ── theorems on the catalog ──────────────────────────────────────────────────


def _guarded(case: str, run: Callable[[], Report]) -> Report:
    try:
        return run()
    except SizeGuard as guard:
        return report(case, [Check.skipped("size guard", guard)], [f"skipped: {guard}"])


def main_case(config: RunConfig, C: NilpotentTestAlgebra, n: int) -> Report:
    case = f"main {config.base.describe()} C={C.name} n={n}"
    return _guarded(case, lambda: verify_main_theorem(C, n, config.rng(case), config.size_limit))


def njet_case(config: RunConfig, C: NilpotentTestAlgebra, n: int) -> Report:
    case = f"njet {config.base.describe()} C={C.name} n={n}"
    return _guarded(case, lambda: verify_njet_for_gm(C, n, config.rng(case), config.size_limit))


def ga_torsion_case(config: RunConfig, C: NilpotentTestAlgebra, nu: int) -> Report:
    case = f"ga-torsion {config.base.describe()} C={C.name} n=1 nu={nu}"
    return _guarded(case, lambda: verify_ga_torsion(C, nu, 1, config.rng(case), config.size_limit))


# ── assembly ─────────────────────────────────────────────────────────────────


def suite_tasks(config: RunConfig, suite: str) -> list[Task]:
    base = config.base.describe()
    positive = [n for n in config.orders if n >= 1]
    if suite == "witt":
        return [(f"witt {base} n={n}", partial(witt_case, config, n)) for n in config.orders]
    if suite == "shifted":
        return [(f"shifted {base} n={n}", partial(shifted_case, config, n)) for n in positive]
    if suite == "jets":
        tasks = [(f"jets {base} n={n}", partial(jets_case, config, n)) for n in config.orders]
        return tasks + [(f"jets {base} identities", partial(jet_identities_case, config))]
    if suite == "appendix":
        return [(f"appendix {base} n={n}", partial(appendix_case, config, n)) for n in positive]
    if suite == "fgl":
        return [
            (f"fgl {base} laws", partial(fgl_laws_case, config)),
            (f"fgl {base} valuations", partial(fgl_valuations_case, config)),
            (f"fgl {base} certificate", partial(fgl_certificate_case, config)),
        ]
    if suite == "main":
        return [(f"main {base} C={C.name} n={n}", partial(main_case, config, C, n)) for C in config.catalog for n in positive]
    if suite == "njet":
        return [(f"njet {base} C={C.name} n={n}", partial(njet_case, config, C, n)) for C in config.catalog for n in positive]
    if suite == "ga-torsion":
        return [(f"ga-torsion {base} C={C.name} nu={nu}", partial(ga_torsion_case, config, C, nu)) for C in config.catalog for nu in (0, 1, 2)]
    raise ValueError(f"unknown suite {suite!r}")


def tasks_for(config: RunConfig) -> list[Task]:
    return [task for suite in config.suites for task in suite_tasks(config, suite)]


def _run_one(case: str, run: Callable[[], Report]) -> Report:
    """A task that raises a JetspaceError becomes a red report naming the exception."""
    try:
        return run()
    except JetspaceError as failure:
        return report(case, [Check.of("completed", False, f"{type(failure).__name__}: {failure}")])


def run_tasks(tasks: Sequence[Task], workers: int = 1) -> list[Report]:
    """Run every task, on `workers` processes when more than one; reports ordered by case key."""
    if workers <= 1 or len(tasks) <= 1:
        return ordered(_run_one(case, run) for case, run in tasks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_one, case, run) for case, run in tasks]
        return ordered(future.result() for future in futures)


def run_suites(config: RunConfig) -> list[Report]:
    return run_tasks(tasks_for(config), config.workers)
