from fractions import Fraction

import pytest

from foliacoh.algebra_core import cohomology_dims
from foliacoh.cartan import (
    cartan_complex,
    commuting_reduction_check,
    equivariant_cohomology,
    module_presentation,
)
from foliacoh.fixtures import (
    exterior_line_free,
    hopf_basic_model,
    hopf_connection_candidates,
    sphere3_minimal_model,
    trivial_action_on_h_1_0_1,
    trivial_line,
)
from foliacoh.gstar import (
    GStarStructure,
    basic_subcomplex,
    extend_with_trivial_factor,
    weil_model_cohomology,
)
from foliacoh.module_theory import hilbert
from foliacoh.ratmat import RationalMatrix

ALL_FIXTURES = [
    trivial_line,
    exterior_line_free,
    hopf_basic_model,
    sphere3_minimal_model,
    trivial_action_on_h_1_0_1,
]


# -- slices -------------------------------------------------------------------------


def test_slice_dims_trivial_line():
    cx = cartan_complex(trivial_line(1), 8)
    assert cx.slice_dims() == (1, 0, 1, 0, 1, 0, 1, 0, 1)


def test_slice_dims_exterior_line():
    cx = cartan_complex(exterior_line_free(), 8)
    assert cx.slice_dims() == (1,) * 9


def test_slice_dims_hopf():
    # monomial count over the 4-dimensional algebra
    cx = cartan_complex(hopf_basic_model(), 8)
    assert cx.slice_dims() == (1, 1, 2, 2, 2, 2, 2, 2, 2)


def test_exterior_line_differential_sends_theta_to_u():
    cx = cartan_complex(exterior_line_free(), 6)
    for n in range(1, 6, 2):
        assert not cx.d[n].is_zero()  # u^k theta maps to u^{k+1}
    for n in range(0, 6, 2):
        assert cx.d[n].is_zero()


def test_d_squared_checked_on_all_fixtures():
    for make in ALL_FIXTURES:
        cartan_complex(make(), 8)  # constructor raises on any failure


# -- equivariant cohomology ------------------------------------------------------------


def test_trivial_action_tensor_series():
    e = equivariant_cohomology(trivial_action_on_h_1_0_1(), 8)
    assert e.dims_tuple() == (1, 0, 2, 0, 2, 0, 2, 0, 2)


def test_trivial_action_hilbert_series_with_odd_class():
    # trivial action on classes in degrees 0, 2, 3: equivariant dims follow
    # (1 + t^2 + t^3) / (1 - t^2) coefficientwise
    from foliacoh.algebra_core import GradedVectorSpace
    from foliacoh.gstar import GradedAlgebraPresentation, LieAlgebraSpec
    from foliacoh.fixtures import _unit_products
    from foliacoh.series import PoincarePolynomial, PoincareSeriesRational

    space = GradedVectorSpace({0: 1, 2: 1, 3: 1}, {0: ("1",), 2: ("w",), 3: ("x",)})
    algebra = GradedAlgebraPresentation(space, _unit_products({2: 1, 3: 1}))
    s = GStarStructure(algebra, LieAlgebraSpec.abelian(1), {}, [{}], [{}])
    e = equivariant_cohomology(s, 8)
    want = PoincareSeriesRational(PoincarePolynomial((1, 0, 1, 1)), 1).expand(8)
    assert e.dims_tuple(8) == want == (1, 0, 2, 1, 2, 1, 2, 1, 2)


def test_hopf_pure_torsion():
    e = equivariant_cohomology(hopf_basic_model(), 8)
    assert e.dims_tuple() == (1, 0, 1, 0, 0, 0, 0, 0, 0)
    assert e.total_dim() == 2
    # u-action vanishes on cohomology
    for n, m in e.u_actions[0].items():
        assert m.is_zero() or m.cols == 0


def test_exterior_line_contractible():
    e = equivariant_cohomology(exterior_line_free(), 8)
    assert e.dims_tuple() == (1, 0, 0, 0, 0, 0, 0, 0, 0)


def test_free_fixture_matches_basic_cohomology():
    # type (C) structures compute the basic-subcomplex cohomology
    for make in (exterior_line_free, hopf_basic_model):
        s = make()
        e = equivariant_cohomology(s, 8)
        h = cohomology_dims(basic_subcomplex(s).complex)
        assert e.dims_tuple(3) == h.dims_tuple(3)
        assert all(e.dim(n) == h.dim(n) for n in range(4, 9))


@pytest.mark.parametrize("make", ALL_FIXTURES)
def test_cartan_weil_agreement(make):
    s = make()
    e = equivariant_cohomology(s, 8)
    w = weil_model_cohomology(s, 8)
    assert e.dims_tuple(8) == w.dims_tuple(8)


def test_nonabelian_invariants_casimir():
    # equivariant cohomology of the acyclic structure is the invariant
    # polynomial ring; for so(3) that is generated by the degree-4 Casimir
    from foliacoh.gstar import LieAlgebraSpec, weil_algebra

    so3 = LieAlgebraSpec(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})
    e = equivariant_cohomology(weil_algebra(so3, 8), 6)
    assert e.dims_tuple(6) == (1, 0, 0, 0, 1, 0, 0)


def test_truncated_input_stable_window():
    # the universal structure fed back in: both routes give the polynomial
    # ring within the reduced stable window
    from foliacoh.gstar import LieAlgebraSpec, weil_algebra

    w = weil_algebra(LieAlgebraSpec.abelian(1), 10)
    e = equivariant_cohomology(w, 8)
    assert e.stable_through == 8
    assert e.dims_tuple(8) == (1, 0, 1, 0, 1, 0, 1, 0, 1)
    assert weil_model_cohomology(w, 8).dims_tuple(8) == e.dims_tuple(8)


def test_u_actions_commute():
    s = extend_with_trivial_factor(trivial_action_on_h_1_0_1(), 1)
    e = equivariant_cohomology(s, 8)
    for n in range(0, 4):
        a01 = e.u_actions[1].get(n + 2), e.u_actions[0].get(n)
        a10 = e.u_actions[0].get(n + 2), e.u_actions[1].get(n)
        if None in a01 or None in a10:
            continue
        assert a01[0] @ a01[1] == a10[0] @ a10[1]


# -- module presentation -----------------------------------------------------------------


def test_presentation_free_rank_one():
    e = equivariant_cohomology(trivial_line(1), 8)
    pres = module_presentation(e)
    assert pres.generators == (0,)
    assert pres.relations == ()


def test_presentation_hopf():
    e = equivariant_cohomology(hopf_basic_model(), 8)
    pres = module_presentation(e)
    assert pres.generators == (0, 2)
    assert len(pres.relations) == 2
    degs = sorted(
        pres.generators[i] + 2 * sum(next(iter(poly)))
        for rel in pres.relations
        for i, poly in enumerate(rel)
        if poly
    )
    assert degs == [2, 4]  # u g0 and u g2


def test_presentation_trivial_action_no_relations():
    e = equivariant_cohomology(trivial_action_on_h_1_0_1(), 8)
    pres = module_presentation(e)
    assert pres.generators == (0, 2)
    assert pres.relations == ()


@pytest.mark.parametrize("make", ALL_FIXTURES)
def test_presentation_hilbert_reproduces_dims(make):
    e = equivariant_cohomology(make(), 8)
    pres = module_presentation(e)
    h = hilbert(pres)
    assert h.coefficients == e.dims_tuple(8)


# -- commuting reduction --------------------------------------------------------------------


def test_commuting_reduction_hopf():
    s = extend_with_trivial_factor(hopf_basic_model(), 1)
    rep = commuting_reduction_check(s, hopf_connection_candidates(), 8)
    assert rep.applicable and rep.agrees
    assert rep.lhs_dims == (1, 0, 2, 0, 2, 0, 2, 0, 2)


def test_commuting_reduction_exterior():
    s = extend_with_trivial_factor(exterior_line_free(), 1)
    rep = commuting_reduction_check(s, hopf_connection_candidates(), 6)
    assert rep.applicable and rep.agrees
    assert rep.lhs_dims == (1, 0, 1, 0, 1, 0, 1)


def test_commuting_reduction_tensor_product():
    # A = Lambda(theta) (x) B with the second generator acting trivially:
    # both routes reduce to the equivariant cohomology of B alone
    from foliacoh.gstar import tensor_gstar

    lam = extend_with_trivial_factor(exterior_line_free(), 1)
    b = extend_with_trivial_factor(trivial_action_on_h_1_0_1(), 1)
    a = tensor_gstar(lam, b)
    rep = commuting_reduction_check(a, hopf_connection_candidates(), 8)
    assert rep.applicable and rep.agrees
    assert rep.lhs_dims == equivariant_cohomology(
        trivial_action_on_h_1_0_1(), 8
    ).dims_tuple()


# -- randomized structures -------------------------------------------------------


def conjugated_structure(rng, s):
    """Transport the operator package along a random graded isomorphism.

    The five relations are conjugation-invariant, so the result is again a
    valid operator package (presented operator-only: products do not
    transport along arbitrary linear maps).
    """
    from conftest import random_invertible
    from foliacoh.gstar import GradedAlgebraPresentation

    sp = s.space
    t = {n: random_invertible(rng, sp.dim(n)) for n in sp.degrees()}
    t_inv = {n: t[n].inverse() for n in t}

    def conj(get, delta):
        out = {}
        for n in sp.degrees():
            if sp.dim(n) == 0 or sp.dim(n + delta) == 0:
                continue
            m = t[n + delta] @ get(n) @ t_inv[n]
            if not m.is_zero():
                out[n] = m
        return out

    algebra = GradedAlgebraPresentation(sp, None, truncated_above=s.truncated_above)
    return GStarStructure(
        algebra,
        s.lie,
        conj(s.op_d, 1),
        [conj(lambda n, j=j: s.op_i(j, n), -1) for j in range(s.lie.dimension)],
        [conj(lambda n, j=j: s.op_l(j, n), 0) for j in range(s.lie.dimension)],
    )


def test_random_conjugates_keep_axioms_and_cohomology(rng):
    from foliacoh.gstar import check_gstar_axioms

    for make in ALL_FIXTURES:
        base = make()
        expected = equivariant_cohomology(base, 6).dims_tuple(6)
        for _ in range(5):
            s = conjugated_structure(rng, base)
            assert check_gstar_axioms(s).ok, make.__name__
            # the Cartan complex constructor verifies its differential squares to zero
            e = equivariant_cohomology(s, 6)
            assert e.dims_tuple(6) == expected, make.__name__
            w = weil_model_cohomology(s, 6)
            assert w.dims_tuple(6) == expected, make.__name__


def test_commuting_reduction_refuses_bad_input():
    base = exterior_line_free()
    s = GStarStructure(
        base.algebra,
        __import__("foliacoh.gstar", fromlist=["LieAlgebraSpec"]).LieAlgebraSpec.abelian(2),
        {},
        [base.i_operators(0), {}],
        [{}, {1: RationalMatrix.from_rows([[1]])}],
    )
    rep = commuting_reduction_check(s, hopf_connection_candidates(), 6)
    assert not rep.applicable
    assert "nontrivially" in rep.detail
