"""The Cartan complex of a g*-algebra and its equivariant cohomology.

Degree-n slice: polynomial monomials tensor algebra basis elements with
2|alpha| + |a| = n, cut down to Lie-algebra invariants when the L-operators
are nonzero.  The differential is d + delta with delta contracting against
each generator while multiplying by its dual variable.

The polynomial factor is never truncated on its own: total degree n only
ever sees symmetric degrees p <= n/2, so each slice is exact regardless of
the window.  Truncation flags come only from the underlying algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gstar import GStarStructure, LieAlgebraSpec, basic_subcomplex, detect_type_c, ConnectionElements
from .module_theory import GradedModulePresentation, Poly, monomials_of_degree
from .ratmat import (
    RationalMatrix,
    Vec,
    coordinates_modulo,
    independent_complement,
    unit_vec,
)


@dataclass(frozen=True)
class CartanComplexSlice:
    """One total degree of the Cartan complex.

    ambient_basis lists (alpha, a_idx) pairs grouped by ascending p = |alpha|;
    embedding is None when the invariants are the whole ambient slice,
    otherwise its columns embed the invariant basis into the ambient one.
    """

    n: int
    ambient_basis: tuple[tuple[tuple[int, ...], int], ...]
    embedding: RationalMatrix | None

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_basis)

    @property
    def dim(self) -> int:
        return self.ambient_dim if self.embedding is None else self.embedding.cols

    def bigraded_dims(self) -> dict[int, int]:
        """Ambient dimensions per polynomial degree p."""
        out: dict[int, int] = {}
        for alpha, _idx in self.ambient_basis:
            out[sum(alpha)] = out.get(sum(alpha), 0) + 1
        return out


class CartanComplex:
    """Slices 0..n_max+1 with verified differential, ready for cohomology."""

    def __init__(self, s: GStarStructure, n_max: int):
        self.structure = s
        self.n_max = n_max
        r = s.lie.dimension
        sp = s.space
        trunc = s.truncated_above
        self.stable_through = n_max if trunc is None else min(n_max, trunc - 2)
        self.slices: list[CartanComplexSlice] = []
        invariant_everywhere = s.all_l_zero() and s.lie.is_abelian
        for n in range(n_max + 2):
            basis = []
            for p in range(n // 2 + 1):
                m = n - 2 * p
                if sp.dim(m) == 0:
                    continue
                for alpha in monomials_of_degree(r, p):
                    for a_idx in range(sp.dim(m)):
                        basis.append((alpha, a_idx))
            basis.sort(key=lambda t: (sum(t[0]), t[0], t[1]))
            emb = None
            if not invariant_everywhere:
                emb = self._invariant_embedding(n, basis)
            self.slices.append(CartanComplexSlice(n, tuple(basis), emb))
        self._index = [
            {key: i for i, key in enumerate(sl.ambient_basis)} for sl in self.slices
        ]
        self.d: dict[int, RationalMatrix] = {}
        for n in range(n_max + 1):
            self.d[n] = self._differential(n)
        self._verify_d_squared()

    # -- construction helpers ---------------------------------------------

    def _l_total_matrix(self, j: int, n: int, basis) -> RationalMatrix:
        """L_j on the ambient slice: coadjoint on the polynomial factor plus L on A."""
        s = self.structure
        lie = s.lie
        sp = s.space
        pos = {key: i for i, key in enumerate(basis)}
        cols = []
        for alpha, a_idx in basis:
            m = n - 2 * sum(alpha)
            col = [Fraction(0)] * len(basis)
            la = s.op_l(j, m)
            for k in range(la.rows):
                c = la.entry(k, a_idx)
                if c != 0:
                    col[pos[(alpha, k)]] += c
            # coadjoint derivation on u^alpha: u_b -> -c^b_{jc} u_c
            for b in range(lie.dimension):
                if alpha[b] == 0:
                    continue
                for cgen in range(lie.dimension):
                    coef = lie.structure_constant(j, cgen, b)
                    if coef == 0:
                        continue
                    alpha2 = list(alpha)
                    alpha2[b] -= 1
                    alpha2[cgen] += 1
                    col[pos[(tuple(alpha2), a_idx)]] += -coef * alpha[b]
            cols.append(tuple(col))
        return RationalMatrix.from_cols(cols, len(basis))

    def _invariant_embedding(self, n, basis) -> RationalMatrix | None:
        s = self.structure
        if not basis:
            return None
        stacked = None
        for j in range(s.lie.dimension):
            m = self._l_total_matrix(j, n, basis)
            stacked = m if stacked is None else stacked.vstack(m)
        if stacked is None or stacked.is_zero():
            return None
        kernel = stacked.nullspace()
        return RationalMatrix.from_cols(kernel, len(basis))

    def _ambient_differential(self, n: int) -> RationalMatrix:
        s = self.structure
        r = s.lie.dimension
        src = self.slices[n].ambient_basis
        tgt_index = self._index[n + 1]
        rows = len(self.slices[n + 1].ambient_basis)
        cols = []
        for alpha, a_idx in src:
            m = n - 2 * sum(alpha)
            col = [Fraction(0)] * rows
            dm = s.op_d(m)
            for k in range(dm.rows):
                c = dm.entry(k, a_idx)
                if c != 0:
                    col[tgt_index[(alpha, k)]] += c
            for j in range(r):
                im = s.op_i(j, m)
                alpha2 = tuple(a + (1 if b == j else 0) for b, a in enumerate(alpha))
                for k in range(im.rows):
                    c = im.entry(k, a_idx)
                    if c != 0:
                        col[tgt_index[(alpha2, k)]] += c
            cols.append(tuple(col))
        return RationalMatrix.from_cols(cols, rows)

    def _differential(self, n: int) -> RationalMatrix:
        amb = self._ambient_differential(n)
        src, tgt = self.slices[n], self.slices[n + 1]
        if src.embedding is None and tgt.embedding is None:
            return amb
        src_emb = src.embedding if src.embedding is not None else RationalMatrix.identity(src.ambient_dim)
        img = amb @ src_emb
        if tgt.embedding is None:
            return img
        cols = []
        for j in range(img.cols):
            sol = tgt.embedding.solve(img.col(j))
            if sol is None:
                raise ValueError(
                    f"equivariant differential does not preserve invariants at degree {n}"
                )
            cols.append(sol)
        return RationalMatrix.from_cols(cols, tgt.dim)

    def _verify_d_squared(self):
        for n in range(self.n_max):
            prod = self.d[n + 1] @ self.d[n]
            if not prod.is_zero():
                if self.structure.truncated_above is not None and n + 2 > self.stable_through:
                    continue  # unstable edge of a truncated algebra
                raise ValueError(f"equivariant differential does not square to zero at {n}")

    # -- queries ------------------------------------------------------------

    def dim(self, n: int) -> int:
        return self.slices[n].dim if 0 <= n < len(self.slices) else 0

    def slice_dims(self, n_max: int | None = None) -> tuple[int, ...]:
        n_max = self.n_max if n_max is None else n_max
        return tuple(self.dim(n) for n in range(n_max + 1))

    def u_multiplication(self, j: int, n: int) -> RationalMatrix:
        """Multiplication by the j-th dual variable, slice n to slice n + 2."""
        if not self.structure.lie.is_abelian:
            raise ValueError("polynomial module action requires an abelian Lie algebra")
        src, tgt = self.slices[n], self.slices[n + 2]
        pos = self._index[n + 2]
        cols = []
        rows = len(tgt.ambient_basis)
        src_emb = src.embedding
        src_cols = (
            [unit_vec(src.ambient_dim, i) for i in range(src.ambient_dim)]
            if src_emb is None
            else src_emb.columns()
        )
        for v in src_cols:
            col = [Fraction(0)] * rows
            for i, c in enumerate(v):
                if c == 0:
                    continue
                alpha, a_idx = src.ambient_basis[i]
                alpha2 = tuple(a + (1 if b == j else 0) for b, a in enumerate(alpha))
                col[pos[(alpha2, a_idx)]] += c
            cols.append(tuple(col))
        amb = RationalMatrix.from_cols(cols, rows)
        if tgt.embedding is None:
            return amb
        out_cols = []
        for jcol in range(amb.cols):
            sol = tgt.embedding.solve(amb.col(jcol))
            if sol is None:
                raise ValueError("u-multiplication left the invariant subspace")
            out_cols.append(sol)
        return RationalMatrix.from_cols(out_cols, tgt.dim)


def cartan_complex(s: GStarStructure, n_max: int) -> CartanComplex:
    """Build and verify the Cartan complex through total degree n_max."""
    return CartanComplex(s, n_max)


@dataclass(frozen=True)
class EquivariantCohomologyResult:
    """Equivariant cohomology with its polynomial-module structure."""

    dims: dict[int, int]
    representatives: dict[int, tuple[Vec, ...]]  # in slice coordinates
    u_actions: tuple[dict[int, RationalMatrix], ...]  # per variable, degree n -> n+2
    generator_degrees: tuple[int, ...]
    n_max: int
    stable_through: int
    dim_a: int
    complex: CartanComplex

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def dims_tuple(self, n_max: int | None = None) -> tuple[int, ...]:
        n_max = self.n_max if n_max is None else n_max
        return tuple(self.dim(n) for n in range(n_max + 1))

    def total_dim(self) -> int:
        return sum(self.dims.values())


def equivariant_cohomology(s: GStarStructure, n_max: int) -> EquivariantCohomologyResult:
    """Cohomology of the Cartan complex with deterministic representatives.

    The u-action matrices multiply representatives and reduce modulo
    coboundaries; minimal generator degrees via the cokernel of the
    combined u-action out of two degrees below.
    """
    cx = cartan_complex(s, n_max)
    r = s.lie.dimension
    dims: dict[int, int] = {}
    reps: dict[int, tuple[Vec, ...]] = {}
    kernels: dict[int, list[Vec]] = {}
    images: dict[int, list[Vec]] = {}
    for n in range(n_max + 1):
        kernels[n] = cx.d[n].nullspace()
        images[n] = list(cx.d[n - 1].columns()) if n >= 1 else []
        chosen = independent_complement(kernels[n], images[n], cx.dim(n))
        if chosen:
            dims[n] = len(chosen)
            reps[n] = tuple(kernels[n][i] for i in chosen)

    def reduce_class(n: int, v: Vec) -> Vec:
        coords = coordinates_modulo(
            list(reps.get(n, ())), images[n], v, cx.dim(n)
        )
        if coords is None:
            raise AssertionError(f"vector is not a cocycle class in degree {n}")
        return coords

    u_actions: tuple[dict[int, RationalMatrix], ...] = tuple({} for _ in range(r))
    if s.lie.is_abelian:
        for j in range(r):
            for n in range(n_max - 1):
                mult = cx.u_multiplication(j, n)
                cols = [reduce_class(n + 2, mult.apply(z)) for z in reps.get(n, ())]
                u_actions[j][n] = RationalMatrix.from_cols(cols, dims.get(n + 2, 0)) \
                    if cols else RationalMatrix.zeros(dims.get(n + 2, 0), 0)

    generator_degrees: list[int] = []
    for n in range(n_max + 1):
        h_n = dims.get(n, 0)
        if h_n == 0:
            continue
        image_cols: list[Vec] = []
        for j in range(r):
            m = u_actions[j].get(n - 2)
            if m is not None:
                image_cols.extend(m.columns())
        std = [unit_vec(h_n, i) for i in range(h_n)]
        new = independent_complement(std, image_cols, h_n)
        generator_degrees.extend([n] * len(new))

    return EquivariantCohomologyResult(
        dims=dims,
        representatives=reps,
        u_actions=u_actions,
        generator_degrees=tuple(generator_degrees),
        n_max=n_max,
        stable_through=cx.stable_through,
        dim_a=r,
        complex=cx,
    )


def module_presentation(
    e: EquivariantCohomologyResult, dim_a: int | None = None
) -> GradedModulePresentation:
    """Minimal generators and harvested relations of the cohomology module.

    Generators are standard cohomology basis vectors independent modulo the
    image of the u-action from two degrees down (ties broken by lowest
    degree, then position).  Relations are kernel elements of the evaluation
    from the free cover, taken modulo multiples of earlier relations.
    """
    r = e.dim_a if dim_a is None else dim_a
    if r != e.dim_a:
        raise ValueError("dim_a disagrees with the computed module action")
    n_max = e.n_max

    generators: list[tuple[int, Vec]] = []  # (degree, class vector)
    for n in range(n_max + 1):
        h_n = e.dim(n)
        if h_n == 0:
            continue
        image_cols: list[Vec] = []
        for j in range(r):
            m = e.u_actions[j].get(n - 2)
            if m is not None:
                image_cols.extend(m.columns())
        std = [unit_vec(h_n, i) for i in range(h_n)]
        for i in independent_complement(std, image_cols, h_n):
            generators.append((n, std[i]))
    gen_degrees = tuple(g for g, _v in generators)

    def evaluate(g_idx: int, beta: tuple[int, ...]) -> tuple[int, Vec]:
        deg, v = generators[g_idx]
        for j in range(r):
            for _ in range(beta[j]):
                m = e.u_actions[j].get(deg)
                if m is None:
                    raise ValueError("u-action unavailable at the window edge")
                v = m.apply(v)
                deg += 2
        return deg, v

    relations: list[tuple[Poly, ...]] = []
    for n in range(n_max + 1):
        fb = [
            (g_idx, beta)
            for g_idx, g in enumerate(gen_degrees)
            if n >= g and (n - g) % 2 == 0
            for beta in monomials_of_degree(r, (n - g) // 2)
        ]
        if not fb:
            continue
        h_n = e.dim(n)
        ev_cols = []
        for g_idx, beta in fb:
            _, v = evaluate(g_idx, beta)
            ev_cols.append(v)
        ev = RationalMatrix.from_cols(ev_cols, h_n)
        kernel = ev.nullspace()
        if not kernel:
            continue
        # span of earlier relations shifted into this degree
        old_cols = []
        pos = {key: i for i, key in enumerate(fb)}
        for rel in relations:
            m = _relation_degree(rel, gen_degrees)
            if (n - m) % 2 != 0 or n < m:
                continue
            for gamma in monomials_of_degree(r, (n - m) // 2):
                col = [Fraction(0)] * len(fb)
                for g_idx, poly in enumerate(rel):
                    for beta, c in poly.items():
                        beta2 = tuple(b + g2 for b, g2 in zip(beta, gamma))
                        col[pos[(g_idx, beta2)]] += c
                old_cols.append(tuple(col))
        for i in independent_complement(kernel, old_cols, len(fb)):
            veck = kernel[i]
            rel: list[Poly] = [dict() for _ in gen_degrees]
            for idx, c in enumerate(veck):
                if c != 0:
                    g_idx, beta = fb[idx]
                    rel[g_idx][beta] = c
            relations.append(tuple(rel))

    return GradedModulePresentation(r, gen_degrees, tuple(relations), window=n_max)


def _relation_degree(rel, gen_degrees) -> int:
    for g_idx, poly in enumerate(rel):
        for beta in poly:
            return gen_degrees[g_idx] + 2 * sum(beta)
    return -1


# -- commuting reduction -----------------------------------------------------------


@dataclass(frozen=True)
class CommutingReductionReport:
    applicable: bool
    agrees: bool | None
    lhs_dims: tuple[int, ...] | None
    rhs_dims: tuple[int, ...] | None
    detail: str


def _sub_lie(lie: LieAlgebraSpec, indices: list[int]) -> LieAlgebraSpec:
    pos = {g: i for i, g in enumerate(indices)}
    brackets = {}
    for (i, j), comps in lie.brackets.items():
        if i in pos and j in pos:
            moved = {}
            for k, c in comps.items():
                if k not in pos:
                    raise ValueError("generator subset is not a subalgebra")
                moved[pos[k]] = c
            brackets[(pos[i], pos[j])] = moved
    return LieAlgebraSpec(len(indices), brackets)


def _restrict_structure(
    s: GStarStructure, gen_indices: list[int]
) -> GStarStructure:
    """Same algebra, operator package restricted to a generator subset."""
    from .gstar import GradedAlgebraPresentation

    lie = _sub_lie(s.lie, gen_indices)
    algebra = s.algebra
    d = {n: s.op_d(n) for n in s.space.degrees() if not s.op_d(n).is_zero()}
    i_ops = [
        {n: s.op_i(j, n) for n in s.space.degrees() if not s.op_i(j, n).is_zero()}
        for j in gen_indices
    ]
    l_ops = [
        {n: s.op_l(j, n) for n in s.space.degrees() if not s.op_l(j, n).is_zero()}
        for j in gen_indices
    ]
    return GStarStructure(algebra, lie, d, i_ops, l_ops)


def _structure_on_basic(
    s: GStarStructure, h_indices: list[int], k_indices: list[int]
) -> GStarStructure:
    """Operator package of the k-generators on the h-basic subcomplex."""
    from .gstar import GradedAlgebraPresentation

    s_h = _restrict_structure(s, h_indices)
    basic = basic_subcomplex(s_h)
    emb = basic.embeddings
    sp_b = basic.complex.spaces

    def restrict(op, delta):
        mats = {}
        for n in sp_b.degrees():
            if sp_b.dim(n) == 0:
                continue
            tgt_dim = sp_b.dim(n + delta)
            img = op(n) @ emb[n]
            cols = []
            for j in range(img.cols):
                v = img.col(j)
                if n + delta in emb:
                    sol = emb[n + delta].solve(v)
                else:
                    sol = () if all(x == 0 for x in v) else None
                if sol is None:
                    raise ValueError(
                        "commuting operators do not preserve the basic subcomplex"
                    )
                cols.append(sol)
            m = RationalMatrix.from_cols(cols, tgt_dim)
            if not m.is_zero():
                mats[n] = m
        return mats

    d = dict(basic.complex.d)
    lie_k = _sub_lie(s.lie, k_indices)
    i_ops = [restrict(lambda n, j=j: s.op_i(j, n), -1) for j in k_indices]
    l_ops = [restrict(lambda n, j=j: s.op_l(j, n), 0) for j in k_indices]
    algebra = GradedAlgebraPresentation(
        sp_b, None, truncated_above=s.truncated_above
    )
    return GStarStructure(algebra, lie_k, d, i_ops, l_ops)


def commuting_reduction_check(
    s: GStarStructure,
    h_candidates: ConnectionElements,
    n_max: int,
) -> CommutingReductionReport:
    """Compare full equivariant cohomology with the reduced two-step route.

    The first len(h_candidates) Lie generators are the factor to divide out;
    applicability needs type (C) for that factor (witnessed by the given
    connection elements), vanishing brackets between the two factors, and a
    trivial action of the remaining factor (all its L-matrices zero).
    """
    r_h = len(h_candidates.vectors)
    r = s.lie.dimension
    if not 0 < r_h < r:
        return CommutingReductionReport(False, None, None, None,
                                        "need a proper nonempty first factor")
    h_idx, k_idx = list(range(r_h)), list(range(r_h, r))
    for i in h_idx:
        for j in k_idx:
            if s.lie.bracket(i, j):
                return CommutingReductionReport(
                    False, None, None, None,
                    f"generators X{i} and X{j} do not commute: not a product algebra",
                )
    s_h = _restrict_structure(s, h_idx)
    verdict = detect_type_c(s_h, h_candidates)
    if not verdict.type_c:
        return CommutingReductionReport(
            False, None, None, None,
            f"first factor is not of type (C): {verdict.detail}",
        )
    for j in k_idx:
        for n in s.space.degrees():
            if not s.op_l(j, n).is_zero():
                return CommutingReductionReport(
                    False, None, None, None,
                    f"second factor acts nontrivially (L_X{j} != 0): "
                    "invariants condition fails",
                )
    lhs = equivariant_cohomology(s, n_max)
    rhs_structure = _structure_on_basic(s, h_idx, k_idx)
    rhs = equivariant_cohomology(rhs_structure, n_max)
    lt, rt = lhs.dims_tuple(n_max), rhs.dims_tuple(n_max)
    return CommutingReductionReport(
        True, lt == rt, lt, rt,
        "dims agree on the window" if lt == rt else "dimension mismatch",
    )
