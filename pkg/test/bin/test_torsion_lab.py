"""Tests for bin/torsion_lab.py - enumerated groups of points, abelian invariants, the explicit kernel
isomorphism ψ = μ∘λ, and the pointwise torsion theorems.

Reference values: over Z/9 at n = 1 the torsion T of W_1(Z/9)^× has 27 elements, the kernel is cyclic of
order 9 and the image Ĝ_m(Z/9)[3^∞] = {1, 4, 7}. At p = 2 over Z/4 the kernel is [2, 2] while
(W_0(Z/4), +) is [4], and Ĝ_m{1} has no additive certificate: the expected red control.
"""

import pytest

from finite_algebras import make_algebra
from formal_groups import multiplicative_law, random_conjugate_law
from torsion_lab import (
    AbelianInvariants,
    CertificateMissing,
    NonAbelian,
    SizeGuard,
    TruncationUnsound,
    exponential_map,
    explicit_kernel_iso,
    finite_group,
    guard,
    invariants,
    jet_points,
    kernel_points,
    mu,
    p_power_torsion,
    plus_pi_group,
    points,
    torsion_subgroup,
    torsion_cosets,
    torsion_escape,
    verify_ga_torsion,
    verify_main_theorem,
    verify_njet_for_gm,
    witt_additive_group,
)
from witt_core import WittRing, witt_vector


@pytest.fixture
def z4(base2):
    return make_algebra(base2, 2)


# ── groups and invariants ────────────────────────────────────────────────────


def test_invariants_of_small_groups(z9, dual3):
    assert invariants(points("additive", z9)) == AbelianInvariants(3, (2,))
    assert str(invariants(points("additive", dual3))) == "[3, 3]"
    units = points("multiplicative", z9)
    assert units.order == 6
    assert str(invariants(p_power_torsion(units))) == "[3]"


def test_invariants_of_the_trivial_group(z9):
    trivial = torsion_subgroup(points("additive", z9), 0)
    assert trivial.order == 1
    assert invariants(trivial).order == 1


def test_invariants_reject_non_abelian_operations():
    group = finite_group("left", (0, 1), lambda a, b: a, 0, 2)
    with pytest.raises(NonAbelian) as excinfo:
        invariants(group)
    assert excinfo.value.witness == (0, 1)


def test_invariants_reject_non_p_groups():
    group = finite_group("Z/6", range(6), lambda a, b: (a + b) % 6, 0, 3)
    with pytest.raises(ValueError, match="not a 3-group"):
        invariants(group)


def test_torsion_subgroup(base3):
    Z27 = points("additive", make_algebra(base3, 3))
    assert torsion_subgroup(Z27, 1).order == 3
    assert torsion_subgroup(Z27, 2).order == 9


def test_size_guard(z9):
    with pytest.raises(SizeGuard) as excinfo:
        guard(100, 10, "big")
    assert (excinfo.value.size, excinfo.value.limit) == (100, 10)
    with pytest.raises(SizeGuard):
        jet_points("multiplicative", 2, z9, limit=500)


def test_formal_group_points_on_the_nilradical(z9):
    group = points(multiplicative_law(z9.base, 6), z9)
    assert group.order == 3
    assert str(invariants(group)) == "[3]"


def test_truncated_law_on_a_deep_algebra_is_refused(base3, rng):
    deep = make_algebra(base3, 1, [("t", 4)])
    with pytest.raises(TruncationUnsound):
        points(random_conjugate_law(base3, rng, 2), deep)


# ── kernel points and the explicit isomorphism ───────────────────────────────


def test_kernel_points_lie_over_one(z9):
    kernel = kernel_points("multiplicative", 1, z9)
    assert kernel.order == 9
    assert all(v.components[0] == z9.one for v in kernel.carrier)
    assert str(invariants(kernel)) == "[9]"


def test_mu_is_one_plus_verschiebung(z9):
    assert mu(witt_vector(z9, [3])) == witt_vector(z9, [1, 3])


def test_plus_pi_group(z4):
    group = plus_pi_group(z4, 1)
    assert str(invariants(group)) == "[2, 2]"
    assert str(invariants(witt_additive_group(z4, 1))) == "[4]"


def test_explicit_iso_over_z9(z9):
    result = explicit_kernel_iso(z9, 1)
    assert result.case == "iso Z/9 n=1"
    assert result.green, result.red_checks


@pytest.mark.parametrize(
    "pi_power, nilpotent, n",
    [(1, [], 1), (2, [], 1), (3, [], 1), (1, [("t", 2)], 1), (2, [], 2), (1, [], 2)],
)
def test_explicit_iso_over_catalog_algebras(base3, pi_power, nilpotent, n):
    result = explicit_kernel_iso(make_algebra(base3, pi_power, nilpotent), n)
    assert result.green, [(c.name, c.witness) for c in result.red_checks]


def test_explicit_iso_over_a_ramified_base(base5):
    # c_2 = π/2 needs 2 inverted modulo 5
    result = explicit_kernel_iso(make_algebra(base5, 2), 1)
    assert result.green, [(c.name, c.witness) for c in result.red_checks]


def test_exponential_coefficients_are_reduced(z9):
    # c_2 = 3/2 and c_3 = 9/6 = 3/2 are 6 mod 9; c_j vanishes mod 9 from j = 4 on
    lam = exponential_map(z9, 1)
    assert [int(c) for c in lam.coefficients] == [0, 1, 6, 6]


def test_explicit_iso_needs_the_certificate(z4):
    with pytest.raises(CertificateMissing) as excinfo:
        exponential_map(z4, 1)
    assert "do not grow" in excinfo.value.reason


# ── the theorems, pointwise ──────────────────────────────────────────────────


def test_main_theorem_over_z9(z9):
    result = verify_main_theorem(z9, 1)
    assert result.case == "main p=3 e=1 E=[1, -3] C=Z/9 n=1"
    assert result.green, result.red_checks
    sizes = result.checks[-1].detail
    assert sizes == {"T": 27, "kernel": "[9]", "image": "[3]"}
    assert result.checks[-1].witness is None
    assert "exactness is checked pointwise on this C only" in result.notes


def test_main_theorem_over_dual_numbers(dual3):
    result = verify_main_theorem(dual3, 1)
    assert result.green, result.red_checks
    assert result.checks[-1].detail["kernel"] == "[3, 3]"


def test_main_theorem_samples_large_jet_groups(z9):
    result = verify_main_theorem(z9, 1, enumerate_limit=10)
    assert result.green, result.red_checks
    assert any("(a) is sampled" in note for note in result.notes)
    assert "(b) and (e) hold by construction of T as the disjoint cosets [t]·N^nĜ_m(C)" in result.notes
    (sampled,) = [c for c in result.checks if c.name.startswith("(a)")]
    assert sampled.detail == {"sampled": 27}


def test_units_outside_a_partial_torsion_set_are_found(z9, rng):
    kernel = kernel_points("multiplicative", 1, z9)
    trivial = torsion_subgroup(p_power_torsion(points("multiplicative", z9)), 0)
    partial = torsion_cosets(z9, 1, trivial, kernel)
    assert partial.order == 9
    escaped = torsion_escape(WittRing(z9, 1), partial, rng)
    assert escaped is not None
    assert escaped.components[0] in (z9.coerce(4), z9.coerce(7))
    full = torsion_cosets(z9, 1, p_power_torsion(points("multiplicative", z9)), kernel)
    assert torsion_escape(WittRing(z9, 1), full, rng) is None


def test_large_kernels_are_sampled(z9):
    result = verify_main_theorem(z9, 2, sample_limit=10)
    assert result.case == "main p=3 e=1 E=[1, -3] C=Z/9 n=2"
    assert result.green, [(c.name, c.witness) for c in result.red_checks]
    assert [c.name for c in result.checks] == [
        "(c) N^nĜ_m(C) is p-power torsion (sampled)",
        "(a) T ⊆ J^nĜ_m(C)[p^∞] (sampled)",
        "(b) T → Ĝ_m(C)[p^∞] is onto",
        "W_1(C)_+ is p-power torsion (sampled)",
        "(d) N^nĜ_m(C) ≅ W_(n−1)(C)_+ via ψ (sampled)",
        "orders in W_(n−1)(C)_+ = orders of their ψ-images (sampled)",
    ]
    assert "N^2Ĝ_m(Z/9) has 81 elements; checks run on 32 random elements" in result.notes


def test_sampled_main_theorem_fails_at_p_2(z4):
    result = verify_main_theorem(z4, 1, sample_limit=1)
    assert [c.name for c in result.red_checks] == ["(d) N^nĜ_m(C) ≅ W_(n−1)(C)_+ via ψ (sampled)"]
    assert result.red_checks[0].witness.startswith("CertificateMissing")


def test_main_theorem_fails_at_p_2(z4):
    result = verify_main_theorem(z4, 1)
    assert not result.green
    red = {check.name: check.witness for check in result.red_checks}
    assert set(red) == {
        "(d) N^nĜ_m(C) ≅ W_(n−1)(C)_+ via ψ",
        "invariants of N^nĜ_m(C) = invariants of W_(n−1)(C)_+",
    }
    assert red["(d) N^nĜ_m(C) ≅ W_(n−1)(C)_+ via ψ"].startswith("CertificateMissing")
    assert red["invariants of N^nĜ_m(C) = invariants of W_(n−1)(C)_+"] == "[2, 2] vs [4]"


def test_njet_holds_for_every_p(z4, z9):
    for C in (z4, z9):
        result = verify_njet_for_gm(C, 1)
        assert result.green, result.red_checks
    assert verify_njet_for_gm(z4, 1).checks[-1].detail == {"invariants": "[2, 2]"}


@pytest.mark.parametrize("nu", [0, 1, 2])
def test_ga_torsion(z9, nu):
    result = verify_ga_torsion(z9, nu)
    assert result.case == f"ga-torsion p=3 e=1 E=[1, -3] C=Z/9 n=1 nu={nu}"
    assert result.green, result.red_checks


def test_ga_torsion_at_higher_order(base3):
    assert verify_ga_torsion(make_algebra(base3, 1), 1, n=2).green
