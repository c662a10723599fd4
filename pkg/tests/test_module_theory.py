from fractions import Fraction

import pytest

from foliacoh.fixtures import hopf_module
from foliacoh.module_theory import (
    GradedModulePresentation,
    ModuleRealization,
    PresentationError,
    certify_closed_form,
    depth_dim_cm,
    dim_sym,
    freeness_test,
    hilbert,
    koszul_tor,
    localized_rank,
    monomials_of_degree,
    ses_cm_check,
)

# the five bundled module fixtures of the verification suite
FREE_R2 = GradedModulePresentation.free(2, (0,), window=10)
RESIDUE_R2 = GradedModulePresentation.residue_field(2, window=10)
S_MOD_U = GradedModulePresentation.quotient_by_monomials(1, [(1,)], window=10)
MIXED_R2 = GradedModulePresentation.quotient_by_monomials(2, [(1, 0)], window=10).direct_sum(
    GradedModulePresentation.free(2, (0,), window=10)
)
EXTENSION_SU2 = GradedModulePresentation.quotient_by_monomials(1, [(2,)], window=10)


def test_monomials_deterministic():
    assert monomials_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert dim_sym(2, 3) == 4
    assert dim_sym(0, 0) == 1 and dim_sym(0, 2) == 0


def test_presentation_validates_homogeneity():
    with pytest.raises(PresentationError):
        GradedModulePresentation(
            1, (0,), (({(0,): Fraction(1), (1,): Fraction(1)},),), window=6
        )


def test_hilbert_free_rank_one():
    assert hilbert(GradedModulePresentation.free(1, (0,), window=8)).coefficients == (
        1, 0, 1, 0, 1, 0, 1, 0, 1,
    )


def test_hilbert_s_mod_u():
    h = hilbert(S_MOD_U)
    assert h.coefficients == (1,) + (0,) * 10
    assert h.certified and h.closed_form.den_exp == 0


def test_hilbert_hopf_module():
    h = hilbert(hopf_module())
    assert h.coefficients == (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0)
    assert h.closed_form.numerator.coeffs == (1, 0, 1)


def test_certification_margin():
    # 1/(1-t^2) certified on a long window, not on a short one
    assert certify_closed_form((1, 0, 1, 0, 1, 0, 1, 0, 1), 1) is not None
    assert certify_closed_form((1, 0, 1), 1) is None


def test_koszul_residue_field_r2():
    tor = koszul_tor(RESIDUE_R2)
    assert tor.tor_dims(0) == {0: 1}
    assert tor.tor_dims(1) == {2: 2}
    assert tor.tor_dims(2) == {4: 1}


def test_koszul_s_mod_u():
    tor = koszul_tor(S_MOD_U)
    assert tor.tor_dims(0) == {0: 1}
    assert tor.tor_dims(1) == {2: 1}


def test_koszul_free_no_higher_tor():
    tor = koszul_tor(FREE_R2)
    assert tor.tor_dims(0) == {0: 1}
    assert tor.total(1) == 0 and tor.total(2) == 0


def test_koszul_euler_characteristic_identity():
    # alternating sum of Koszul homology dims per internal degree equals the
    # alternating sum of the complex's own dims (Euler characteristic)
    for pres in (FREE_R2, RESIDUE_R2, S_MOD_U, MIXED_R2, EXTENSION_SU2, hopf_module()):
        from math import comb

        real = ModuleRealization(pres)
        tor = koszul_tor(pres)
        r = pres.dim_a
        for n in range(pres.window + 1):
            complex_sum = sum(
                (-1) ** i * comb(r, i) * real.dim(n - 2 * i)
                for i in range(r + 1)
                if n - 2 * i >= 0
            )
            homology_sum = sum(
                (-1) ** i * tor.dims.get((i, n), 0) for i in range(r + 1)
            )
            assert complex_sum == homology_sum


def test_freeness_fixtures():
    assert freeness_test(FREE_R2).free
    assert freeness_test(FREE_R2).ranks == (0,)
    assert not freeness_test(hopf_module()).free
    assert freeness_test(hopf_module()).ranks == (0, 2)
    assert not freeness_test(EXTENSION_SU2).free
    tor = koszul_tor(EXTENSION_SU2)
    assert tor.tor_dims(1) == {4: 1}


def test_localized_rank_fixtures():
    assert localized_rank(GradedModulePresentation.free(1, (0, 2), window=10)).rank == 2
    assert localized_rank(hopf_module()).rank == 0
    # free rank 1 (+) S/(u): additivity
    m = GradedModulePresentation.free(1, (0,), window=10).direct_sum(S_MOD_U)
    assert localized_rank(m).rank == 1


def test_localized_rank_inconclusive_window():
    m = GradedModulePresentation.free(1, (0,), window=2)
    assert localized_rank(m).conclusive is False


def test_depth_dim_cm_five_fixtures():
    # free: depth = dim = 2
    d = depth_dim_cm(FREE_R2)
    assert (d.depth, d.krull_dim, d.cohen_macaulay) == (2, 2, True)
    # residue field over r=2: depth 0, dim 0, CM
    d = depth_dim_cm(RESIDUE_R2)
    assert (d.depth, d.krull_dim, d.cohen_macaulay) == (0, 0, True)
    # S/(u) over r=1: depth 0, dim 0, CM
    d = depth_dim_cm(S_MOD_U)
    assert (d.depth, d.krull_dim, d.cohen_macaulay) == (0, 0, True)
    # S/(u1) (+) S over r=2: depth 1, dim 2, not CM
    d = depth_dim_cm(MIXED_R2)
    assert (d.depth, d.krull_dim, d.cohen_macaulay) == (1, 2, False)
    # S/(u^2) over r=1: depth 0, dim 0, CM
    d = depth_dim_cm(EXTENSION_SU2)
    assert (d.depth, d.krull_dim, d.cohen_macaulay) == (0, 0, True)


def test_zero_module_conventions():
    zero = GradedModulePresentation(1, (), (), window=6)
    d = depth_dim_cm(zero)
    assert d.depth == "+inf" and d.cohen_macaulay


def test_cm_maximal_dimension_iff_free():
    # CM of Krull dimension dim_a <=> free, both directions on fixtures
    for pres, expect_free in (
        (FREE_R2, True),
        (MIXED_R2, False),
        (GradedModulePresentation.free(2, (0, 2, 2), window=12), True),
    ):
        d = depth_dim_cm(pres)
        fr = freeness_test(pres)
        cm_max = d.cohen_macaulay and d.krull_dim == pres.dim_a
        assert cm_max == expect_free == fr.free
    # CM below maximal dimension does not imply free
    d = depth_dim_cm(S_MOD_U)
    assert d.cohen_macaulay and d.krull_dim < S_MOD_U.dim_a
    assert not freeness_test(S_MOD_U).free


def test_freeness_implies_rank_and_depth():
    for pres in (FREE_R2, GradedModulePresentation.free(2, (0, 2), window=12)):
        fr = freeness_test(pres)
        assert fr.free
        assert localized_rank(pres).rank == len(pres.generators)
        d = depth_dim_cm(pres)
        assert d.depth == d.krull_dim == pres.dim_a


# -- graded SES --------------------------------------------------------------------


def test_ses_cm_split_free():
    # 0 -> S -> S (+) S -> S -> 0 over r = 1
    s = GradedModulePresentation.free(1, (0,), window=10)
    s2 = GradedModulePresentation.free(1, (0, 0), window=10)
    f = (({(0,): Fraction(1)}, {}),)
    g = (({},), ({(0,): Fraction(1)},))
    rep = ses_cm_check(s, s2, s, f, g)
    assert rep.is_ses and rep.hypotheses_met and rep.conclusion_holds


def test_ses_cm_residue_fields():
    # 0 -> k -> k (+) k -> k -> 0 over r = 1: CM of dimension 0 throughout
    k = GradedModulePresentation.quotient_by_monomials(1, [(1,)], window=8)
    k2 = GradedModulePresentation(
        1, (0, 0),
        (({(1,): Fraction(1)}, {}), ({}, {(1,): Fraction(1)})),
        window=8,
    )
    f = (({(0,): Fraction(1)}, {}),)
    g = (({},), ({(0,): Fraction(1)},))
    rep = ses_cm_check(k, k2, k, f, g)
    assert rep.is_ses and rep.hypotheses_met and rep.conclusion_holds


def test_ses_cm_hypotheses_not_met():
    # 0 -> S(-2) --u--> S -> S/(u) -> 0: flanks have different dimensions
    a = GradedModulePresentation.free(1, (2,), window=10)
    b = GradedModulePresentation.free(1, (0,), window=10)
    c = S_MOD_U
    f = (({(1,): Fraction(1)},),)  # generator of A maps to u * generator of B
    g = (({(0,): Fraction(1)},),)
    rep = ses_cm_check(a, b, c, f, g)
    assert rep.is_ses
    assert not rep.hypotheses_met
    assert "hypotheses not met" in rep.detail


def test_ses_cm_rejects_non_ses():
    a = GradedModulePresentation.free(1, (0,), window=8)
    f = (({(0,): Fraction(1)},),)
    g = (({(0,): Fraction(1)},),)
    rep = ses_cm_check(a, a, a, f, g)  # identity o identity is not exact
    assert not rep.is_ses
