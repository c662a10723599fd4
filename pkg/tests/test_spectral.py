import pytest

from foliacoh.algebra_core import cohomology_dims
from foliacoh.cartan import equivariant_cohomology
from foliacoh.fixtures import (
    exterior_line_free,
    hopf_basic_model,
    sphere3_minimal_model,
    trivial_action_on_h_1_0_1,
    trivial_line,
)
from foliacoh.gstar import GStarStructure, LieAlgebraSpec, weil_algebra
from foliacoh.ratmat import RationalMatrix
from foliacoh.spectral import (
    NonInvariantAction,
    e1_page,
    formality_verdict,
    run_pages,
)

FIXTURES = [
    trivial_line,
    exterior_line_free,
    hopf_basic_model,
    sphere3_minimal_model,
    trivial_action_on_h_1_0_1,
]


def test_e1_trivial_action_two_diagonals():
    page = e1_page(trivial_action_on_h_1_0_1(), 6)
    for (p, q), d in page.dims.items():
        assert q - p in (0, 2) and d == 1
    assert page.differentials_vanish()


def test_e1_hopf_product_pattern():
    # d = 0 on the algebra, so E_1 cells are just S^p x A^{q-p}
    page = e1_page(hopf_basic_model(), 6)
    for (p, q), d in page.dims.items():
        assert 0 <= q - p <= 3 and d == 1
    assert not page.differentials_vanish()


def test_e1_weil_concentrated_on_diagonal():
    w = weil_algebra(LieAlgebraSpec.abelian(1), 10)
    page = e1_page(w, 6)
    assert all(q == p for (p, q) in page.dims)


def test_e1_refuses_nonzero_l():
    base = exterior_line_free()
    mutant = GStarStructure(
        base.algebra, base.lie, {},
        [base.i_operators(0)],
        [{1: RationalMatrix.from_rows([[1]])}],
    )
    with pytest.raises(NonInvariantAction):
        e1_page(mutant, 4)


def test_run_pages_trivial_action_collapses_at_e1():
    s = trivial_action_on_h_1_0_1()
    e = equivariant_cohomology(s, 6)
    run = run_pages(s, 6, e)
    assert run.stabilized_at == 1
    assert run.totals_match_equivariant
    assert run.pages[0].total_dims() == run.e_infinity.total_dims()


def test_run_pages_hopf_stabilizes_at_e2():
    s = hopf_basic_model()
    e = equivariant_cohomology(s, 6)
    run = run_pages(s, 6, e)
    assert run.stabilized_at == 2
    assert run.e_infinity.total_dims() == (1, 0, 1, 0, 0, 0, 0)
    assert run.totals_match_equivariant


def test_page_totals_non_increasing():
    for make in FIXTURES:
        s = make()
        run = run_pages(s, 6)
        seq = [p.total_dims() for p in run.pages] + [run.e_infinity.total_dims()]
        for a, b in zip(seq, seq[1:]):
            assert all(x >= y for x, y in zip(a, b))


def test_page_dims_recurrence():
    # dim E_{r+1} = dim ker d_r - rank of incoming d_r
    s = hopf_basic_model()
    run = run_pages(s, 6)
    pages = list(run.pages) + [run.e_infinity]
    for pg, nxt in zip(pages, pages[1:]):
        r = pg.r
        for (p, q), d in pg.dims.items():
            out_rank = pg.d_ranks.get((p, q), 0)
            in_rank = pg.d_ranks.get((p - r, q + r - 1), 0)
            want = d - out_rank - in_rank
            assert nxt.dim(p, q) == want


def test_e_infinity_matches_equivariant_everywhere():
    for make in FIXTURES:
        s = make()
        e = equivariant_cohomology(s, 6)
        run = run_pages(s, 6, e)
        assert run.totals_match_equivariant, make.__name__


# -- formality ---------------------------------------------------------------------


def verdict_for(make, n_max=8):
    s = make()
    e = equivariant_cohomology(s, n_max)
    h = cohomology_dims(s.as_complex())
    return formality_verdict(e, h.dims_tuple(n_max), s.lie.dimension, n_max)


def test_odd_vanishing_fixture_formal():
    v = verdict_for(trivial_action_on_h_1_0_1)
    assert v.formal and v.method == "odd-vanishing"


def test_trivial_line_formal():
    v = verdict_for(trivial_line)
    assert v.formal


def test_sphere3_trivial_action_formal_via_hilbert():
    # odd cohomology present, so the factorization criterion decides
    v = verdict_for(sphere3_minimal_model)
    assert v.formal and v.method == "hilbert-factorization"


def test_hopf_not_formal_with_witness_at_t1():
    v = verdict_for(hopf_basic_model)
    assert not v.formal
    assert v.method == "hilbert-factorization"
    assert "t^1" in v.witness
    assert "free=False" in v.witness


def test_formality_iff_e1_collapse():
    # both directions on the bundled fixtures
    for make in FIXTURES:
        s = make()
        e = equivariant_cohomology(s, 8)
        h = cohomology_dims(s.as_complex())
        v = formality_verdict(e, h.dims_tuple(8), s.lie.dimension, 8)
        run = run_pages(s, 8, e)
        collapses = run.pages[0].total_dims() == run.e_infinity.total_dims()
        assert v.formal == collapses, make.__name__
