"""Graded algebras with d / i_X / L_X operator packages.

A structure here is a finite-dimensional graded algebra together with
per-degree matrices for a degree +1 differential d, contractions i_X of
degree -1 and Lie derivatives L_X of degree 0, one pair per Lie-algebra
basis element.  The five Cartan relations

    d^2 = 0,  i_X i_Y + i_Y i_X = 0,  [L_X, L_Y] = L_[X,Y],
    [L_X, i_Y] = i_[X,Y],  L_X = d i_X + i_X d

are checkable matrix identities, as are the derivation properties of the
three operators with respect to the product.

Truncation honesty: an algebra may be a degree-truncated stand-in for an
infinite one (the Weil algebra); every check and every cohomology result
then carries an explicit stable-degree bound.

A free structure with an invariant span of connection elements is of type
(C); when a free structure arises from a compact-group action it is
automatically of type (C), but that fact carries no algorithmic content and
is only recorded here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra_core import CochainComplex, CohomologyResult, GradedVectorSpace, cohomology_dims
from .ratmat import RationalMatrix, Vec, frac, is_zero_vec, unit_vec, zero_vec


# -- Lie algebra data ----------------------------------------------------------


class LieAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Finite-dimensional Lie algebra in a fixed basis X_0..X_{r-1}.

    brackets[(i, j)][k] is the coefficient of X_k in [X_i, X_j], stored for
    i < j only; antisymmetry fills in the rest.
    """

    dimension: int
    brackets: dict[tuple[int, int], dict[int, Fraction]]

    def __init__(self, dimension: int, brackets=None):
        if dimension < 0:
            raise LieAlgebraError("negative dimension")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), comps in (brackets or {}).items():
            if not (0 <= i < dimension and 0 <= j < dimension):
                raise LieAlgebraError(f"bracket index out of range: ({i}, {j})")
            if i >= j:
                raise LieAlgebraError("store brackets for i < j only")
            comps = {int(k): frac(c) for k, c in comps.items() if frac(c) != 0}
            if any(not 0 <= k < dimension for k in comps):
                raise LieAlgebraError("bracket component out of range")
            if comps:
                clean[(i, j)] = comps
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "brackets", clean)

    @classmethod
    def abelian(cls, dimension: int) -> "LieAlgebraSpec":
        return cls(dimension, {})

    @property
    def is_abelian(self) -> bool:
        return not self.brackets

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """c^k_{ij} with [X_i, X_j] = sum_k c^k_{ij} X_k."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.brackets.get((i, j), {}).get(k, Fraction(0))
        return -self.brackets.get((j, i), {}).get(k, Fraction(0))

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return {
            k: c
            for k in range(self.dimension)
            if (c := self.structure_constant(i, j, k)) != 0
        }

    def validate(self) -> list[str]:
        """Jacobi identity on all basis triples; antisymmetry is structural."""
        issues = []
        r = self.dimension
        for i, j, k in itertools.combinations(range(r), 3):
            for m in range(r):
                total = Fraction(0)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for l in range(r):
                        total += self.structure_constant(a, b, l) * self.structure_constant(l, c, m)
                if total != 0:
                    issues.append(f"Jacobi fails on (X{i},X{j},X{k}) component {m}")
        return issues


# -- graded algebra presentation ----------------------------------------------


class GradedAlgebraPresentation:
    """Graded algebra given by per-degree bases and structure constants.

    products maps (deg_a, idx_a, deg_b, idx_b) to a sparse result
    ((idx, coeff), ...) in degree deg_a + deg_b; absent keys mean zero.
    products=None marks an operator-only presentation (internal use) on
    which multiplication queries are unavailable.
    """

    def __init__(
        self,
        space: GradedVectorSpace,
        products: dict | None,
        unit_index: int = 0,
        truncated_above: int | None = None,
    ):
        self.space = space
        self.unit_index = unit_index
        self.truncated_above = truncated_above
        if products is None:
            self.products = None
        else:
            self.products = {}
            for (da, ia, db, ib), terms in products.items():
                terms = tuple((int(k), frac(c)) for k, c in terms if frac(c) != 0)
                if terms:
                    self.products[(da, ia, db, ib)] = terms
        if space.dim(0) == 0 and products is not None:
            raise ValueError("a unital algebra needs a degree-0 element")

    @property
    def top_degree(self) -> int:
        return self.space.window[1]

    def has_products(self) -> bool:
        return self.products is not None

    def unit_vector(self) -> Vec:
        return unit_vec(self.space.dim(0), self.unit_index)

    def basis_product(self, da: int, ia: int, db: int, ib: int):
        if self.products is None:
            raise ValueError("operator-only presentation has no products")
        return self.products.get((da, ia, db, ib), ())

    def multiply(self, da: int, va: Vec, db: int, vb: Vec) -> Vec:
        """Product of two homogeneous elements; zero above the window."""
        n = da + db
        dim_n = self.space.dim(n)
        out = [Fraction(0)] * dim_n
        if dim_n == 0:
            return tuple(out)
        for ia, ca in enumerate(va):
            if ca == 0:
                continue
            for ib, cb in enumerate(vb):
                if cb == 0:
                    continue
                for k, c in self.basis_product(da, ia, db, ib):
                    out[k] += ca * cb * c
        return tuple(out)

    def left_mult_matrix(self, da: int, va: Vec, db: int) -> RationalMatrix:
        """Matrix of (x -> va * x) from degree db to degree da + db."""
        cols = [
            self.multiply(da, va, db, unit_vec(self.space.dim(db), ib))
            for ib in range(self.space.dim(db))
        ]
        return RationalMatrix.from_cols(cols, self.space.dim(da + db))

    def stable_product_top(self) -> int:
        """Largest total degree whose products are exactly known."""
        if self.truncated_above is None:
            return self.space.window[1]
        return self.truncated_above

    def check_algebra(self) -> list[str]:
        """Unit, graded commutativity, associativity on all basis tuples."""
        issues = []
        if self.products is None:
            return ["operator-only presentation: product axioms not checkable"]
        sp = self.space
        top = self.stable_product_top()
        one = self.unit_vector()
        for n in sp.degrees():
            for i in range(sp.dim(n)):
                e = unit_vec(sp.dim(n), i)
                if self.multiply(0, one, n, e) != e or self.multiply(n, e, 0, one) != e:
                    issues.append(f"unit fails on {sp.label(n, i)}")
        degs = [n for n in sp.degrees() if sp.dim(n)]
        for da, db in itertools.product(degs, repeat=2):
            if da + db > top:
                continue
            for ia in range(sp.dim(da)):
                for ib in range(sp.dim(db)):
                    ab = dict(self.basis_product(da, ia, db, ib))
                    ba = dict(self.basis_product(db, ib, da, ia))
                    sign = -1 if (da % 2 and db % 2) else 1
                    keys = set(ab) | set(ba)
                    if any(ab.get(k, 0) != sign * ba.get(k, 0) for k in keys):
                        issues.append(
                            f"graded commutativity fails on "
                            f"({sp.label(da, ia)}, {sp.label(db, ib)})"
                        )
        for da, db, dc in itertools.product(degs, repeat=3):
            if da + db + dc > top:
                continue
            for ia in range(sp.dim(da)):
                va = unit_vec(sp.dim(da), ia)
                for ib in range(sp.dim(db)):
                    vb = unit_vec(sp.dim(db), ib)
                    ab = self.multiply(da, va, db, vb)
                    for ic in range(sp.dim(dc)):
                        vc = unit_vec(sp.dim(dc), ic)
                        left = self.multiply(da + db, ab, dc, vc)
                        right = self.multiply(
                            da, va, db + dc, self.multiply(db, vb, dc, vc)
                        )
                        if left != right:
                            issues.append(
                                f"associativity fails on ({sp.label(da, ia)}, "
                                f"{sp.label(db, ib)}, {sp.label(dc, ic)})"
                            )
        return issues


# -- the operator package -------------------------------------------------------


class GStarStructure:
    """Algebra plus d, i_X, L_X operator matrices per degree."""

    def __init__(
        self,
        algebra: GradedAlgebraPresentation,
        lie: LieAlgebraSpec,
        d: dict[int, RationalMatrix],
        i_ops: list[dict[int, RationalMatrix]],
        l_ops: list[dict[int, RationalMatrix]],
    ):
        if len(i_ops) != lie.dimension or len(l_ops) != lie.dimension:
            raise ValueError("need one i_X and one L_X per Lie algebra generator")
        self.algebra = algebra
        self.lie = lie
        self._d = {n: m for n, m in d.items() if not m.is_zero()}
        self._i = [{n: m for n, m in ops.items() if not m.is_zero()} for ops in i_ops]
        self._l = [{n: m for n, m in ops.items() if not m.is_zero()} for ops in l_ops]
        self._check_shapes()

    def _check_shapes(self):
        sp = self.algebra.space
        for n, m in self._d.items():
            if (m.rows, m.cols) != (sp.dim(n + 1), sp.dim(n)):
                raise ValueError(f"d_{n} shape mismatch")
        for j, ops in enumerate(self._i):
            for n, m in ops.items():
                if (m.rows, m.cols) != (sp.dim(n - 1), sp.dim(n)):
                    raise ValueError(f"i[{j}] shape mismatch in degree {n}")
        for j, ops in enumerate(self._l):
            for n, m in ops.items():
                if (m.rows, m.cols) != (sp.dim(n), sp.dim(n)):
                    raise ValueError(f"L[{j}] shape mismatch in degree {n}")

    @property
    def space(self) -> GradedVectorSpace:
        return self.algebra.space

    @property
    def truncated_above(self) -> int | None:
        return self.algebra.truncated_above

    def op_d(self, n: int) -> RationalMatrix:
        sp = self.space
        return self._d.get(n) or RationalMatrix.zeros(sp.dim(n + 1), sp.dim(n))

    def op_i(self, j: int, n: int) -> RationalMatrix:
        sp = self.space
        return self._i[j].get(n) or RationalMatrix.zeros(sp.dim(n - 1), sp.dim(n))

    def op_l(self, j: int, n: int) -> RationalMatrix:
        sp = self.space
        return self._l[j].get(n) or RationalMatrix.zeros(sp.dim(n), sp.dim(n))

    def all_l_zero(self) -> bool:
        return all(not ops for ops in self._l)

    def as_complex(self) -> CochainComplex:
        return CochainComplex(self.space, dict(self._d))

    def d_operators(self) -> dict[int, RationalMatrix]:
        return dict(self._d)

    def i_operators(self, j: int) -> dict[int, RationalMatrix]:
        return dict(self._i[j])

    def l_operators(self, j: int) -> dict[int, RationalMatrix]:
        return dict(self._l[j])

    def stable_operator_top(self) -> int:
        """Degrees <= this bound see exactly the untruncated operators."""
        t = self.truncated_above
        return self.space.window[1] if t is None else t


def extend_with_trivial_factor(s: GStarStructure, extra: int = 1) -> GStarStructure:
    """Same algebra, Lie algebra enlarged by trivially-acting abelian generators."""
    if not s.lie.is_abelian:
        raise ValueError("only abelian extensions are supported")
    lie = LieAlgebraSpec.abelian(s.lie.dimension + extra)
    i_ops = [s.i_operators(j) for j in range(s.lie.dimension)] + [{} for _ in range(extra)]
    l_ops = [s.l_operators(j) for j in range(s.lie.dimension)] + [{} for _ in range(extra)]
    return GStarStructure(s.algebra, lie, s.d_operators(), i_ops, l_ops)


# -- axiom checking -------------------------------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    checked_through: int
    witness: str = ""


@dataclass(frozen=True)
class GStarAxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.ok]


def _first_bad_column(m: RationalMatrix, sp: GradedVectorSpace, n: int) -> str:
    for j in range(m.cols):
        if not is_zero_vec(m.col(j)):
            return sp.label(n, j)
    return ""


def check_gstar_axioms(s: GStarStructure) -> GStarAxiomReport:
    """Verify the five Cartan relations and the three derivation laws.

    On a truncated algebra, identities whose composite leaves the stored
    window are only checked through the stable bound (reported per axiom).
    """
    sp = s.space
    lo, hi = sp.window
    trunc = s.truncated_above
    r = s.lie.dimension
    checks: list[AxiomCheck] = []

    def run(name, top, test):
        for n in range(lo, top + 1):
            bad = test(n)
            if bad is not None:
                checks.append(AxiomCheck(name, False, top, bad))
                return
        checks.append(AxiomCheck(name, True, top))

    top_d2 = hi if trunc is None else trunc - 2
    run(
        "d^2 = 0",
        top_d2,
        lambda n: (
            None
            if (m := s.op_d(n + 1) @ s.op_d(n)).is_zero()
            else f"degree {n}, witness {_first_bad_column(m, sp, n)}"
        ),
    )

    def test_i2(n):
        for j in range(r):
            for k in range(j, r):
                m = s.op_i(j, n - 1) @ s.op_i(k, n) + s.op_i(k, n - 1) @ s.op_i(j, n)
                if not m.is_zero():
                    return f"i_X{j} i_X{k} + i_X{k} i_X{j} != 0 at degree {n}"
        return None

    run("i_X^2 = 0", hi, test_i2)

    def test_ll(n):
        for j in range(r):
            for k in range(r):
                m = s.op_l(j, n) @ s.op_l(k, n) - s.op_l(k, n) @ s.op_l(j, n)
                for b, c in s.lie.bracket(j, k).items():
                    m = m - s.op_l(b, n).scale(c)
                if not m.is_zero():
                    return f"[L_X{j}, L_X{k}] != L_[X{j},X{k}] at degree {n}"
        return None

    run("[L_X, L_Y] = L_[X,Y]", hi, test_ll)

    def test_li(n):
        for j in range(r):
            for k in range(r):
                m = s.op_l(j, n - 1) @ s.op_i(k, n) - s.op_i(k, n) @ s.op_l(j, n)
                for b, c in s.lie.bracket(j, k).items():
                    m = m - s.op_i(b, n).scale(c)
                if not m.is_zero():
                    return f"[L_X{j}, i_X{k}] != i_[X{j},X{k}] at degree {n}"
        return None

    run("[L_X, i_Y] = i_[X,Y]", hi, test_li)

    top_cartan = hi if trunc is None else trunc - 1
    def test_cartan(n):
        for j in range(r):
            m = s.op_d(n - 1) @ s.op_i(j, n) + s.op_i(j, n + 1) @ s.op_d(n) - s.op_l(j, n)
            if not m.is_zero():
                return (
                    f"L_X{j} != d i_X{j} + i_X{j} d at degree {n}, "
                    f"witness {_first_bad_column(m, sp, n)}"
                )
        return None

    run("L_X = d i_X + i_X d", top_cartan, test_cartan)

    if s.algebra.has_products():
        checks.extend(_derivation_checks(s))
    else:
        checks.append(
            AxiomCheck("derivations", True, hi, "skipped: operator-only presentation")
        )
    return GStarAxiomReport(tuple(checks))


def _apply(s: GStarStructure, kind: str, j: int, n: int, v: Vec) -> tuple[int, Vec]:
    if kind == "d":
        return n + 1, s.op_d(n).apply(v)
    if kind == "i":
        return n - 1, s.op_i(j, n).apply(v)
    return n, s.op_l(j, n).apply(v)


def _derivation_checks(s: GStarStructure) -> list[AxiomCheck]:
    sp = s.space
    alg = s.algebra
    trunc = s.truncated_above
    prod_top = alg.stable_product_top()
    r = s.lie.dimension
    out = []
    specs = [("d derivation", "d", 1, range(1)),
             ("i_X derivation", "i", -1, range(r)),
             ("L_X derivation", "l", 0, range(r))]
    degs = [n for n in sp.degrees() if sp.dim(n)]
    for name, kind, op_deg, gens in specs:
        top = prod_top - 1 if (kind == "d" and trunc is not None) else prod_top
        bad = None
        for da, db in itertools.product(degs, repeat=2):
            n = da + db
            if n > top:
                continue
            for ia in range(sp.dim(da)):
                va = unit_vec(sp.dim(da), ia)
                for ib in range(sp.dim(db)):
                    vb = unit_vec(sp.dim(db), ib)
                    ab = alg.multiply(da, va, db, vb)
                    for j in gens:
                        _, lhs = _apply(s, kind, j, n, ab)
                        da2, dva = _apply(s, kind, j, da, va)
                        db2, dvb = _apply(s, kind, j, db, vb)
                        term1 = alg.multiply(da2, dva, db, vb) if da2 >= 0 else zero_vec(sp.dim(n + op_deg))
                        term2 = alg.multiply(da, va, db2, dvb) if db2 >= 0 else zero_vec(sp.dim(n + op_deg))
                        sign = -1 if (op_deg % 2 and da % 2) else 1
                        rhs = tuple(x + sign * y for x, y in zip(term1, term2))
                        if lhs != rhs:
                            bad = (
                                f"{name} fails on ({sp.label(da, ia)}, "
                                f"{sp.label(db, ib)}) generator {j}"
                            )
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        out.append(AxiomCheck(name, bad is None, top, bad or ""))
    return out


# -- basic subcomplex -----------------------------------------------------------


@dataclass(frozen=True)
class BasicSubcomplex:
    complex: CochainComplex
    embeddings: dict[int, RationalMatrix]
    stable_through: int


def basic_subcomplex(s: GStarStructure) -> BasicSubcomplex:
    """Joint kernel of all i_X and L_X, with the restricted differential.

    The restriction of d to the kernel is solved for explicitly and the
    residual is verified to vanish; a failure here means the operator data
    was inconsistent.
    """
    sp = s.space
    lo, hi = sp.window
    r = s.lie.dimension
    embeddings: dict[int, RationalMatrix] = {}
    dims: dict[int, int] = {}
    labels: dict[int, tuple[str, ...]] = {}
    for n in range(lo, hi + 1):
        if sp.dim(n) == 0:
            continue
        stacked = None
        for j in range(r):
            for m in (s.op_i(j, n), s.op_l(j, n)):
                stacked = m if stacked is None else stacked.vstack(m)
        if stacked is None or stacked.rows == 0:
            kernel = [unit_vec(sp.dim(n), i) for i in range(sp.dim(n))]
        else:
            kernel = stacked.nullspace()
        if kernel:
            embeddings[n] = RationalMatrix.from_cols(kernel, sp.dim(n))
            dims[n] = len(kernel)
            labels[n] = tuple(f"b{n}_{i}" for i in range(len(kernel)))
    spaces = GradedVectorSpace(dims, labels, window=sp.window)
    diffs: dict[int, RationalMatrix] = {}
    for n in range(lo, hi):
        if dims.get(n, 0) == 0:
            continue
        img = s.op_d(n) @ embeddings[n]
        if img.is_zero():
            continue
        emb1 = embeddings.get(n + 1)
        cols = []
        for jcol in range(img.cols):
            v = img.col(jcol)
            sol = emb1.solve(v) if emb1 is not None else None
            if sol is None:
                raise ValueError(
                    f"differential does not restrict to the basic subcomplex "
                    f"at degree {n} (operator data inconsistent)"
                )
            cols.append(sol)
        diffs[n] = RationalMatrix.from_cols(cols, dims.get(n + 1, 0))
    stable = hi if s.truncated_above is None else s.truncated_above - 1
    return BasicSubcomplex(CochainComplex(spaces, diffs), embeddings, stable)


# -- Weil algebra ----------------------------------------------------------------

Mono = tuple[tuple[int, ...], tuple[int, ...]]  # (odd indices ascending, even exponents)


def _mono_degree(m: Mono) -> int:
    return len(m[0]) + 2 * sum(m[1])


def _mono_label(m: Mono) -> str:
    odd, alpha = m
    parts = [f"t{i}" for i in odd]
    parts += [f"u{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(alpha) if e]
    return "*".join(parts) if parts else "1"


def _mono_mul(a: Mono, b: Mono) -> tuple[int, Mono] | None:
    """Product of monomials with Koszul sign, or None when an odd repeats."""
    sa, aa = a
    sb, ab = b
    if set(sa) & set(sb):
        return None
    inversions = sum(1 for x in sa for y in sb if y < x)
    merged = tuple(sorted(sa + sb))
    alpha = tuple(x + y for x, y in zip(aa, ab))
    return ((-1) ** inversions, (merged, alpha))


def _derive_monomial(mono: Mono, op_deg: int, on_gen) -> dict[Mono, Fraction]:
    """Extend a generator-level operator to a monomial as a derivation.

    on_gen(('t'|'u', index)) yields (coeff, Mono) terms for the operator's
    value on that generator.
    """
    r = len(mono[1])
    factors: list[tuple[str, int]] = [("t", i) for i in mono[0]]
    for j, e in enumerate(mono[1]):
        factors.extend([("u", j)] * e)
    out: dict[Mono, Fraction] = {}
    deg_prefix = 0
    for pos, f in enumerate(factors):
        sign = -1 if (op_deg % 2 and deg_prefix % 2) else 1
        for coeff, dmono in on_gen(f):
            acc_sign, acc = 1, ((), (0,) * r)
            ok = True
            for g in factors[:pos]:
                res = _mono_mul(acc, _gen_mono(g, r))
                if res is None:
                    ok = False
                    break
                acc_sign *= res[0]
                acc = res[1]
            if ok:
                res = _mono_mul(acc, dmono)
                if res is None:
                    ok = False
                else:
                    acc_sign *= res[0]
                    acc = res[1]
            if ok:
                for g in factors[pos + 1 :]:
                    res = _mono_mul(acc, _gen_mono(g, r))
                    if res is None:
                        ok = False
                        break
                    acc_sign *= res[0]
                    acc = res[1]
            if ok:
                total = frac(coeff) * sign * acc_sign
                if total:
                    out[acc] = out.get(acc, Fraction(0)) + total
        deg_prefix += 1 if f[0] == "t" else 2
    return {m: c for m, c in out.items() if c != 0}


def _gen_mono(g: tuple[str, int], r: int) -> Mono:
    kind, i = g
    if kind == "t":
        return ((i,), (0,) * r)
    alpha = [0] * r
    alpha[i] = 1
    return ((), tuple(alpha))


def weil_algebra(lie: LieAlgebraSpec, max_degree: int) -> GStarStructure:
    """The Koszul-acyclic universal structure on odd/even generator pairs.

    One odd generator t_a (degree 1) and one even generator u_a (degree 2)
    per Lie-algebra basis element; conventions (see docs/FORMAT.md):

        d t^a = u^a - 1/2 c^a_{bc} t^b t^c      d u^a = -c^a_{bc} t^b u^c
        i_a t^b = delta_ab                      i_a u^b = 0
        L_a t^b = -c^b_{ac} t^c                 L_a u^b = -c^b_{ac} u^c

    The result is truncated above max_degree and flags itself accordingly.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    r = lie.dimension
    monos: list[Mono] = []
    for k in range(0, r + 1):
        for odd in itertools.combinations(range(r), k):
            rest = max_degree - k
            for alpha in _exponents_up_to(r, rest // 2):
                monos.append((tuple(odd), alpha))
    monos = [m for m in monos if _mono_degree(m) <= max_degree]
    monos.sort(key=lambda m: (_mono_degree(m), m))
    by_degree: dict[int, list[Mono]] = {}
    index: dict[Mono, tuple[int, int]] = {}
    for m in monos:
        n = _mono_degree(m)
        by_degree.setdefault(n, []).append(m)
    for n, ms in by_degree.items():
        for i, m in enumerate(ms):
            index[m] = (n, i)
    dims = {n: len(ms) for n, ms in by_degree.items()}
    labels = {n: tuple(_mono_label(m) for m in ms) for n, ms in by_degree.items()}
    space = GradedVectorSpace(dims, labels, window=(0, max_degree))

    products = {}
    for m1 in monos:
        d1 = _mono_degree(m1)
        for m2 in monos:
            d2 = _mono_degree(m2)
            if d1 + d2 > max_degree:
                continue
            res = _mono_mul(m1, m2)
            if res is None:
                continue
            sign, m3 = res
            products[(d1, index[m1][1], d2, index[m2][1])] = ((index[m3][1], Fraction(sign)),)
    algebra = GradedAlgebraPresentation(
        space, products, unit_index=0, truncated_above=max_degree
    )

    def d_on_gen(g):
        kind, a = g
        if kind == "t":
            terms = [(Fraction(1), _gen_mono(("u", a), r))]
            for b in range(r):
                for c in range(b + 1, r):
                    coef = lie.structure_constant(b, c, a)
                    if coef != 0:
                        terms.append((-coef, ((b, c), (0,) * r)))
            return terms
        terms = []
        for b in range(r):
            for c in range(r):
                coef = lie.structure_constant(b, c, a)
                if coef != 0:
                    res = _mono_mul(_gen_mono(("t", b), r), _gen_mono(("u", c), r))
                    terms.append((-coef * res[0], res[1]))
        return terms

    def i_on_gen(j):
        def op(g):
            kind, a = g
            if kind == "t" and a == j:
                return [(Fraction(1), ((), (0,) * r))]
            return []
        return op

    def l_on_gen(j):
        def op(g):
            kind, a = g
            terms = []
            for c in range(r):
                coef = lie.structure_constant(j, c, a)
                if coef != 0:
                    terms.append((-coef, _gen_mono((kind, c), r)))
            return terms
        return op

    def build_op(on_gen, op_deg):
        mats = {}
        for n, ms in by_degree.items():
            tgt = n + op_deg
            rows = dims.get(tgt, 0)
            if rows == 0 and not (0 <= tgt <= max_degree):
                continue
            cols = []
            for m in ms:
                res = _derive_monomial(m, op_deg, on_gen)
                col = [Fraction(0)] * rows
                for mono2, c in res.items():
                    if _mono_degree(mono2) > max_degree:
                        continue  # truncated
                    _, i2 = index[mono2]
                    col[i2] += c
                cols.append(tuple(col))
            mats[n] = RationalMatrix.from_cols(cols, rows)
        return mats

    d_mats = build_op(d_on_gen, 1)
    i_mats = [build_op(i_on_gen(j), -1) for j in range(r)]
    l_mats = [build_op(l_on_gen(j), 0) for j in range(r)]
    return GStarStructure(algebra, lie, d_mats, i_mats, l_mats)


def _exponents_up_to(r: int, total_max: int):
    """All exponent tuples of length r with sum <= total_max, lexicographic."""
    if r == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _exponents_up_to(r - 1, total_max - first):
            yield (first,) + rest


# -- type (C) detection -----------------------------------------------------------


@dataclass(frozen=True)
class ConnectionElements:
    """Candidate degree-1 elements theta_0..theta_{r-1}."""

    vectors: tuple[Vec, ...]


@dataclass(frozen=True)
class TypeCVerdict:
    free: bool
    type_c: bool
    detail: str = ""


def detect_type_c(s: GStarStructure, candidates: ConnectionElements) -> TypeCVerdict:
    """free <=> i_{X_j} theta_i = delta_ij; type (C) adds L-invariance of the span."""
    r = s.lie.dimension
    thetas = candidates.vectors
    if len(thetas) != r:
        return TypeCVerdict(False, False, f"need {r} candidates, got {len(thetas)}")
    sp = s.space
    one = s.algebra.unit_vector() if s.algebra.has_products() else unit_vec(sp.dim(0), 0)
    for i, th in enumerate(thetas):
        if len(th) != sp.dim(1):
            return TypeCVerdict(False, False, "candidate is not a degree-1 vector")
        for j in range(r):
            got = s.op_i(j, 1).apply(th)
            want = one if i == j else zero_vec(sp.dim(0))
            if got != want:
                return TypeCVerdict(
                    False, False, f"i_X{j}(theta_{i}) != {'1' if i == j else '0'}"
                )
    span = RationalMatrix.from_cols(list(thetas), sp.dim(1))
    for j in range(r):
        img = s.op_l(j, 1) @ span
        for col in range(img.cols):
            if span.solve(img.col(col)) is None:
                return TypeCVerdict(
                    True, False, f"L_X{j} does not preserve the span of the candidates"
                )
    return TypeCVerdict(True, True)


# -- tensor product ----------------------------------------------------------------


def tensor_gstar(
    a: GStarStructure, b: GStarStructure, max_degree: int | None = None
) -> GStarStructure:
    """Graded tensor product with Koszul signs; operators extend as derivations.

    The result window is capped by both factors' stable ranges and the
    optional max_degree; if anything was cut, the output carries the
    truncation marker.
    """
    if a.lie.dimension != b.lie.dimension or a.lie.brackets != b.lie.brackets:
        raise ValueError("tensor factors must share the Lie algebra spec")
    lie = a.lie
    natural = a.space.window[1] + b.space.window[1]
    cap = natural
    for t in (a.truncated_above, b.truncated_above, max_degree):
        if t is not None:
            cap = min(cap, t)
    truncated = cap < natural or a.truncated_above is not None or b.truncated_above is not None

    pairs: dict[int, list[tuple[int, int, int, int]]] = {}
    for da in a.space.degrees():
        for ia in range(a.space.dim(da)):
            for db in b.space.degrees():
                n = da + db
                if n > cap:
                    continue
                for ib in range(b.space.dim(db)):
                    pairs.setdefault(n, []).append((da, ia, db, ib))
    for n in pairs:
        pairs[n].sort()
    index = {key: (n, i) for n, lst in pairs.items() for i, key in enumerate(lst)}
    dims = {n: len(lst) for n, lst in pairs.items()}
    labels = {
        n: tuple(
            f"{a.space.label(da, ia)}(x){b.space.label(db, ib)}"
            for (da, ia, db, ib) in lst
        )
        for n, lst in pairs.items()
    }
    space = GradedVectorSpace(dims, labels, window=(0, cap))

    products = None
    if a.algebra.has_products() and b.algebra.has_products():
        products = {}
        for n1, lst1 in pairs.items():
            for i1, (da1, ia1, db1, ib1) in enumerate(lst1):
                for n2, lst2 in pairs.items():
                    if n1 + n2 > cap:
                        continue
                    for i2, (da2, ia2, db2, ib2) in enumerate(lst2):
                        sign = -1 if (db1 % 2 and da2 % 2) else 1
                        terms = {}
                        for ka, ca in a.algebra.basis_product(da1, ia1, da2, ia2):
                            for kb, cb in b.algebra.basis_product(db1, ib1, db2, ib2):
                                key = index.get((da1 + da2, ka, db1 + db2, kb))
                                if key is None:
                                    continue
                                terms[key[1]] = terms.get(key[1], Fraction(0)) + sign * ca * cb
                        terms = tuple((k, c) for k, c in sorted(terms.items()) if c != 0)
                        if terms:
                            products[(n1, i1, n2, i2)] = terms
    unit_idx = index.get((0, a.algebra.unit_index if a.algebra.has_products() else 0,
                          0, b.algebra.unit_index if b.algebra.has_products() else 0),
                         (0, 0))[1]
    algebra = GradedAlgebraPresentation(
        space, products, unit_index=unit_idx,
        truncated_above=cap if truncated else None,
    )

    def build(op_deg, op_a, op_b):
        mats = {}
        for n, lst in pairs.items():
            tgt = n + op_deg
            rows = dims.get(tgt, 0)
            cols = []
            tgt_list = pairs.get(tgt, [])
            tgt_index = {key: i for i, key in enumerate(tgt_list)}
            for (da, ia, db, ib) in lst:
                col = [Fraction(0)] * rows
                ma = op_a(da)
                for k in range(ma.rows):
                    c = ma.entry(k, ia)
                    if c != 0:
                        pos = tgt_index.get((da + op_deg, k, db, ib))
                        if pos is not None:
                            col[pos] += c
                sign = -1 if (op_deg % 2 and da % 2) else 1
                mb = op_b(db)
                for k in range(mb.rows):
                    c = mb.entry(k, ib)
                    if c != 0:
                        pos = tgt_index.get((da, ia, db + op_deg, k))
                        if pos is not None:
                            col[pos] += sign * c
                cols.append(tuple(col))
            mats[n] = RationalMatrix.from_cols(cols, rows)
        return mats

    d_mats = build(1, a.op_d, b.op_d)
    i_mats = [
        build(-1, lambda n, j=j: a.op_i(j, n), lambda n, j=j: b.op_i(j, n))
        for j in range(lie.dimension)
    ]
    l_mats = [
        build(0, lambda n, j=j: a.op_l(j, n), lambda n, j=j: b.op_l(j, n))
        for j in range(lie.dimension)
    ]
    return GStarStructure(algebra, lie, d_mats, i_mats, l_mats)


# -- the Weil model ---------------------------------------------------------------


@dataclass(frozen=True)
class WeilModelResult:
    dims: dict[int, int]
    stable_through: int
    cohomology: CohomologyResult

    def dims_tuple(self, n_max: int) -> tuple[int, ...]:
        return tuple(self.dims.get(n, 0) for n in range(n_max + 1))


def weil_model_cohomology(s: GStarStructure, n_max: int) -> WeilModelResult:
    """Equivariant cohomology through the universal-structure route.

    Tensors the acyclic structure onto the algebra, extracts the joint
    i/L kernel, and takes cohomology.  Independent of the Cartan-complex
    route, which makes it the cross-check oracle for it.
    """
    w = weil_algebra(s.lie, n_max + 2)
    t = tensor_gstar(w, s, max_degree=n_max + 2)
    basic = basic_subcomplex(t)
    h = cohomology_dims(basic.complex)
    dims = {n: h.dim(n) for n in range(0, n_max + 1) if h.dim(n)}
    return WeilModelResult(dims=dims, stable_through=n_max, cohomology=h)
