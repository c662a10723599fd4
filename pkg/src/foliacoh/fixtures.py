"""Bundled models and the golden verification suite.

The structures here are the small exactly-solvable inputs every other module
is tested against: the one-line trivial algebra, an exterior line with a free
contraction, the free-flow model on a four-dimensional algebra (the abstract
Hopf-flow package), the three-sphere minimal model, and the matching strata,
Morse, polytope, and module records.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra_core import GradedVectorSpace
from .gstar import (
    ConnectionElements,
    GradedAlgebraPresentation,
    GStarStructure,
    LieAlgebraSpec,
)
from .foliation import (
    FoliationStrataModel,
    MorseComponent,
    MorseData,
    PolytopeData,
    Stratum,
)
from .module_theory import GradedModulePresentation
from .ratmat import RationalMatrix
from .series import PoincarePolynomial


def _unit_products(dims: dict[int, int], extra=None):
    """Products of 1 with everything, plus any listed extra products."""
    products = {}
    for n, d in dims.items():
        for i in range(d):
            products[(0, 0, n, i)] = ((i, Fraction(1)),)
            products[(n, i, 0, 0)] = ((i, Fraction(1)),)
    products[(0, 0, 0, 0)] = ((0, Fraction(1)),)
    for key, val in (extra or {}).items():
        products[key] = tuple((k, Fraction(c)) for k, c in val)
    return products


def trivial_line(r: int = 1) -> GStarStructure:
    """One-dimensional algebra in degree 0 with the trivial action."""
    space = GradedVectorSpace({0: 1}, {0: ("1",)})
    algebra = GradedAlgebraPresentation(space, _unit_products({}))
    lie = LieAlgebraSpec.abelian(r)
    zeros = [dict() for _ in range(r)]
    return GStarStructure(algebra, lie, {}, zeros, [dict() for _ in range(r)])


def exterior_line_free() -> GStarStructure:
    """Lambda(theta): basis 1, theta; d = 0, i_X theta = 1, L = 0."""
    space = GradedVectorSpace({0: 1, 1: 1}, {0: ("1",), 1: ("theta",)})
    algebra = GradedAlgebraPresentation(space, _unit_products({1: 1}))
    lie = LieAlgebraSpec.abelian(1)
    i_ops = [{1: RationalMatrix.from_rows([[1]])}]
    return GStarStructure(algebra, lie, {}, i_ops, [{}])


def exterior_two_free() -> GStarStructure:
    """Lambda(theta_0, theta_1) with i_{X_j} theta_i = delta_ij, d = 0, L = 0."""
    space = GradedVectorSpace(
        {0: 1, 1: 2, 2: 1}, {0: ("1",), 1: ("theta0", "theta1"), 2: ("theta0*theta1",)}
    )
    extra = {
        (1, 0, 1, 1): ((0, 1),),
        (1, 1, 1, 0): ((0, -1),),
    }
    algebra = GradedAlgebraPresentation(space, _unit_products({1: 2, 2: 1}, extra))
    lie = LieAlgebraSpec.abelian(2)
    i0 = {1: RationalMatrix.from_rows([[1, 0]]), 2: RationalMatrix.from_rows([[0], [1]])}
    i1 = {1: RationalMatrix.from_rows([[0, 1]]), 2: RationalMatrix.from_rows([[-1], [0]])}
    return GStarStructure(algebra, lie, {}, [i0, i1], [{}, {}])


def hopf_basic_model() -> GStarStructure:
    """The free-flow four-class model: basis 1, theta, omega, theta*omega.

    All differentials vanish; i_X theta = 1, i_X omega = 0,
    i_X(theta*omega) = omega, L_X = 0.  Its i/L-kernel has dims (1,0,1,0).
    """
    space = GradedVectorSpace(
        {0: 1, 1: 1, 2: 1, 3: 1},
        {0: ("1",), 1: ("theta",), 2: ("omega",), 3: ("theta*omega",)},
    )
    extra = {
        (1, 0, 2, 0): ((0, 1),),  # theta * omega
        (2, 0, 1, 0): ((0, 1),),  # omega * theta (even times odd commute)
    }
    algebra = GradedAlgebraPresentation(space, _unit_products({1: 1, 2: 1, 3: 1}, extra))
    lie = LieAlgebraSpec.abelian(1)
    i_ops = [{
        1: RationalMatrix.from_rows([[1]]),
        3: RationalMatrix.from_rows([[1]]),
    }]
    return GStarStructure(algebra, lie, {}, i_ops, [{}])


def sphere3_minimal_model(trivial_action: bool = True) -> GStarStructure:
    """S^3 minimal model: 1, theta, omega, theta*omega with d theta = omega.

    With the trivial action this is the odd-sphere fixture for the
    cross-model agreement tests; cohomology has dims (1, 0, 0, 1).
    """
    space = GradedVectorSpace(
        {0: 1, 1: 1, 2: 1, 3: 1},
        {0: ("1",), 1: ("theta",), 2: ("omega",), 3: ("theta*omega",)},
    )
    extra = {
        (1, 0, 2, 0): ((0, 1),),
        (2, 0, 1, 0): ((0, 1),),
    }
    algebra = GradedAlgebraPresentation(space, _unit_products({1: 1, 2: 1, 3: 1}, extra))
    lie = LieAlgebraSpec.abelian(1)
    d = {1: RationalMatrix.from_rows([[1]])}
    if not trivial_action:
        raise ValueError("only the trivial-action variant is bundled")
    return GStarStructure(algebra, lie, d, [{}], [{}])


def trivial_action_on_h_1_0_1() -> GStarStructure:
    """Trivial action on an algebra with cohomology dims (1, 0, 1).

    Model: 1 in degree 0, omega in degree 2, omega^2 = 0.
    """
    space = GradedVectorSpace({0: 1, 2: 1}, {0: ("1",), 2: ("omega",)})
    algebra = GradedAlgebraPresentation(space, _unit_products({2: 1}))
    lie = LieAlgebraSpec.abelian(1)
    return GStarStructure(algebra, lie, {}, [{}], [{}])


def hopf_connection_candidates() -> ConnectionElements:
    return ConnectionElements((tuple([Fraction(1)]),))


# -- foliation-level fixtures -----------------------------------------------------


def hopf_strata_model() -> FoliationStrataModel:
    """Two closed leaves plus the open dense stratum; q = 2, dim_a = 1."""
    one = PoincarePolynomial.one()
    return FoliationStrataModel(
        q=2,
        dim_a=1,
        strata=(
            Stratum("open", 0, 0, one),
            Stratum("closed0", 2, 1, one),
            Stratum("closed1", 2, 1, one),
        ),
    )


def hopf_morse_data() -> MorseData:
    one = PoincarePolynomial.one()
    return MorseData(
        components=(
            MorseComponent(0, one, 1),
            MorseComponent(2, one, 1),
        )
    )


def segment_polytope() -> PolytopeData:
    return PolytopeData(f_vector=(2, 1), q=2)


def square_polytope() -> PolytopeData:
    return PolytopeData(
        f_vector=(4, 4, 1),
        q=4,
        vertex_edge_incidence=((0, 3), (0, 1), (1, 2), (2, 3)),
    )


def triangle_polytope() -> PolytopeData:
    return PolytopeData(
        f_vector=(3, 3, 1),
        q=4,
        vertex_edge_incidence=((0, 2), (0, 1), (1, 2)),
    )


def hopf_module() -> GradedModulePresentation:
    """Generators in degrees 0 and 2, each killed by u: the pure-torsion module."""
    u = (1,)
    return GradedModulePresentation(
        dim_a=1,
        generators=(0, 2),
        relations=(
            ({u: Fraction(1)}, {}),
            ({}, {u: Fraction(1)}),
        ),
        window=10,
    )


# -- golden suite -------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    run: Callable[[], object]
    expected: object


@dataclass(frozen=True)
class FixtureOutcome:
    name: str
    passed: bool
    expected: object
    actual: object


def _fixture_list() -> list[Fixture]:
    from . import cartan, foliation, gstar, module_theory, spectral
    from .algebra_core import cohomology_dims

    def strata_basic():
        return foliation.basic_series_formal(hopf_strata_model()).polynomial.coeffs

    def strata_equivariant():
        s = foliation.equivariant_series_from_strata(hopf_strata_model())
        return (s.numerator.coeffs, s.den_exp)

    def polytope(p):
        return lambda: foliation.polytope_series(p).polynomial.coeffs

    def weil_acyclic(r):
        def run():
            w = gstar.weil_algebra(LieAlgebraSpec.abelian(r), 10)
            h = cohomology_dims(w.as_complex())
            return tuple(h.dim(n) for n in range(9))
        return run

    def hopf_equivariant():
        e = cartan.equivariant_cohomology(hopf_basic_model(), 8)
        return e.dims_tuple(8)

    def cross_model(make):
        def run():
            s = make()
            e = cartan.equivariant_cohomology(s, 8)
            w = gstar.weil_model_cohomology(s, 8)
            return e.dims_tuple(8) == w.dims_tuple(8)
        return run

    def hopf_formality():
        s = hopf_basic_model()
        e = cartan.equivariant_cohomology(s, 8)
        h = cohomology_dims(s.as_complex())
        v = spectral.formality_verdict(e, h.dims_tuple(8), 1, 8)
        return (v.formal, "t^1" in v.witness)

    def hopf_morse():
        verdict = foliation.perfectness_check(
            hopf_morse_data(), PoincarePolynomial((1, 0, 1)), 1
        )
        return (verdict.perfect, verdict.gap.quotient.coeffs)

    def tor_residue_field():
        tor = module_theory.koszul_tor(module_theory.GradedModulePresentation.residue_field(2, window=8))
        return tuple(tor.total(i) for i in range(3))

    def hopf_localized():
        return module_theory.localized_rank(hopf_module()).rank

    return [
        Fixture("hopf/strata-basic-series", strata_basic, (1, 0, 1)),
        Fixture("hopf/strata-equivariant-series", strata_equivariant, ((1, 0, 1), 1)),
        Fixture("hopf/equivariant-dims", hopf_equivariant, (1, 0, 1, 0, 0, 0, 0, 0, 0)),
        Fixture("hopf/formality-not-formal", hopf_formality, (False, True)),
        Fixture("hopf/morse-perfect", hopf_morse, (True, ())),
        Fixture("hopf/localized-rank-torsion", hopf_localized, 0),
        Fixture("polytope/segment", polytope(segment_polytope()), (1, 0, 1)),
        Fixture("polytope/square", polytope(square_polytope()), (1, 0, 2, 0, 1)),
        Fixture("polytope/triangle", polytope(triangle_polytope()), (1, 0, 1, 0, 1)),
        Fixture("weil/acyclic-r1", weil_acyclic(1), (1, 0, 0, 0, 0, 0, 0, 0, 0)),
        Fixture("weil/acyclic-r2", weil_acyclic(2), (1, 0, 0, 0, 0, 0, 0, 0, 0)),
        Fixture("cross-model/trivial-line", cross_model(trivial_line), True),
        Fixture("cross-model/exterior-line", cross_model(exterior_line_free), True),
        Fixture("cross-model/hopf-basic", cross_model(hopf_basic_model), True),
        Fixture("cross-model/sphere3", cross_model(sphere3_minimal_model), True),
        Fixture("module/tor-residue-field-r2", tor_residue_field, (1, 2, 1)),
    ]


def run_fixtures(name_filter: str | None = None, fixtures=None) -> list[FixtureOutcome]:
    """Execute the golden suite; every comparison is exact."""
    outcomes = []
    for f in fixtures if fixtures is not None else _fixture_list():
        if name_filter and name_filter not in f.name:
            continue
        actual = f.run()
        outcomes.append(
            FixtureOutcome(f.name, actual == f.expected, f.expected, actual)
        )
    return outcomes


def list_fixture_names() -> list[str]:
    return [f.name for f in _fixture_list()]
