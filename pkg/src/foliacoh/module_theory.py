"""Finitely generated graded modules over a polynomial ring on degree-2 variables.

Presentations are generators (with degrees) and homogeneous relation vectors
with polynomial coefficients.  Everything is computed degreewise and exactly
on a declared window: Hilbert functions, the Koszul complex and its homology
(Tor against the residue field), freeness, localized rank, depth and Krull
dimension, and the Cohen-Macaulay property.

Window honesty: a closed form for a Hilbert function is only reported when
the window certifies it through an exact linear-recurrence margin; all
dimension-theoretic verdicts carry their scope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .ratmat import (
    RationalMatrix,
    Vec,
    coordinates_modulo,
    frac,
    independent_complement,
    unit_vec,
)
from .series import PoincarePolynomial, PoincareSeriesRational

# A polynomial in u_1..u_r: exponent tuple -> coefficient.
Poly = dict[tuple[int, ...], Fraction]


def monomials_of_degree(r: int, p: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree p, ascending lexicographic."""
    if r == 0:
        return [()] if p == 0 else []
    out = []
    for first in range(p + 1):
        for rest in monomials_of_degree(r - 1, p - first):
            out.append((first,) + rest)
    return out


def poly_degree_2(poly: Poly) -> int | None:
    """Internal degree (2 * exponent sum) of a homogeneous poly, None if mixed."""
    degs = {2 * sum(b) for b in poly}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("polynomial is not homogeneous")
    return degs.pop()


def poly_shift(poly: Poly, gamma: tuple[int, ...]) -> Poly:
    return {tuple(b + g for b, g in zip(beta, gamma)): c for beta, c in poly.items()}


def dim_sym(r: int, p: int) -> int:
    """Dimension of the degree-p part of a polynomial ring on r variables."""
    if p < 0:
        return 0
    return comb(p + r - 1, r - 1) if r > 0 else (1 if p == 0 else 0)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GradedModulePresentation:
    """coker( relations ) inside the free module on the given generators."""

    dim_a: int
    generators: tuple[int, ...]
    relations: tuple[tuple[Poly, ...], ...]
    window: int

    def __init__(self, dim_a, generators, relations=(), window=12):
        if dim_a < 0:
            raise PresentationError("dim_a must be >= 0")
        generators = tuple(int(g) for g in generators)
        if any(g < 0 for g in generators):
            raise PresentationError("generator degrees must be >= 0")
        clean = []
        for rel in relations:
            rel = tuple(
                {tuple(int(e) for e in beta): frac(c) for beta, c in poly.items() if frac(c) != 0}
                for poly in rel
            )
            if len(rel) != len(generators):
                raise PresentationError("relation length != number of generators")
            degs = set()
            for g, poly in zip(generators, rel):
                try:
                    d = poly_degree_2(poly)
                except ValueError as exc:
                    raise PresentationError(str(exc)) from None
                if d is not None:
                    degs.add(d + g)
                if any(len(b) != dim_a for b in poly):
                    raise PresentationError("exponent tuple length != dim_a")
            if len(degs) > 1:
                raise PresentationError(f"relation is not homogeneous: degrees {degs}")
            if degs:
                clean.append(rel)
        object.__setattr__(self, "dim_a", dim_a)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relations", tuple(clean))
        object.__setattr__(self, "window", int(window))

    def relation_degree(self, rel: tuple[Poly, ...]) -> int:
        for g, poly in zip(self.generators, rel):
            d = poly_degree_2(poly)
            if d is not None:
                return d + g
        return -1

    @classmethod
    def free(cls, dim_a: int, generator_degrees, window: int = 12):
        return cls(dim_a, tuple(generator_degrees), (), window)

    @classmethod
    def quotient_by_monomials(cls, dim_a: int, monomials, window: int = 12):
        """S / (given monomials), a single degree-0 generator."""
        rels = tuple(({tuple(m): Fraction(1)},) for m in monomials)
        return cls(dim_a, (0,), rels, window)

    @classmethod
    def residue_field(cls, dim_a: int, window: int = 12):
        gens = []
        for j in range(dim_a):
            e = [0] * dim_a
            e[j] = 1
            gens.append(tuple(e))
        return cls.quotient_by_monomials(dim_a, gens, window)

    def direct_sum(self, other: "GradedModulePresentation") -> "GradedModulePresentation":
        if self.dim_a != other.dim_a:
            raise PresentationError("direct sum over different rings")
        gens = self.generators + other.generators
        zero_self = tuple({} for _ in self.generators)
        zero_other = tuple({} for _ in other.generators)
        rels = tuple(rel + zero_other for rel in self.relations) + tuple(
            zero_self + rel for rel in other.relations
        )
        return GradedModulePresentation(
            self.dim_a, gens, rels, min(self.window, other.window)
        )


class ModuleRealization:
    """Degreewise bases and the u-action of a presented module on its window.

    The degree-n basis is the greedy subset of free-module monomials
    (generator, exponent) that stays independent modulo the relation span,
    which makes every derived quantity deterministic.
    """

    def __init__(self, pres: GradedModulePresentation):
        self.pres = pres
        r = pres.dim_a
        n_max = pres.window
        self.free_basis: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        for n in range(n_max + 1):
            fb = []
            for g_idx, g in enumerate(pres.generators):
                if n >= g and (n - g) % 2 == 0:
                    for beta in monomials_of_degree(r, (n - g) // 2):
                        fb.append((g_idx, beta))
            self.free_basis[n] = fb
        self.rel_cols: dict[int, list[Vec]] = {}
        for n in range(n_max + 1):
            cols = []
            fb = self.free_basis[n]
            pos = {key: i for i, key in enumerate(fb)}
            for rel in pres.relations:
                m = pres.relation_degree(rel)
                if m < 0 or m > n or (n - m) % 2 != 0:
                    continue
                for gamma in monomials_of_degree(r, (n - m) // 2):
                    col = [Fraction(0)] * len(fb)
                    for g_idx, poly in enumerate(rel):
                        for beta, c in poly_shift(poly, gamma).items():
                            col[pos[(g_idx, beta)]] += c
                    cols.append(tuple(col))
            self.rel_cols[n] = cols
        self.basis_indices: dict[int, list[int]] = {}
        for n in range(n_max + 1):
            fb = self.free_basis[n]
            std = [unit_vec(len(fb), i) for i in range(len(fb))]
            self.basis_indices[n] = independent_complement(
                std, self.rel_cols[n], len(fb)
            )

    def dim(self, n: int) -> int:
        if not 0 <= n <= self.pres.window:
            return 0
        return len(self.basis_indices[n])

    def dims_tuple(self) -> tuple[int, ...]:
        return tuple(self.dim(n) for n in range(self.pres.window + 1))

    def reduce(self, n: int, free_vec: Vec) -> Vec:
        """Coordinates of a free-module element in the module basis."""
        fb = self.free_basis[n]
        basis = [unit_vec(len(fb), i) for i in self.basis_indices[n]]
        coords = coordinates_modulo(basis, self.rel_cols[n], free_vec, len(fb))
        if coords is None:
            raise AssertionError("free element failed to reduce (not spanning?)")
        return coords

    def u_matrix(self, j: int, n: int) -> RationalMatrix:
        """Multiplication by u_j as a matrix from degree n to degree n + 2."""
        if n + 2 > self.pres.window:
            raise ValueError("u-action leaves the window")
        fb_src = self.free_basis[n]
        fb_tgt = self.free_basis[n + 2]
        pos = {key: i for i, key in enumerate(fb_tgt)}
        cols = []
        for i in self.basis_indices[n]:
            g_idx, beta = fb_src[i]
            beta2 = tuple(b + (1 if k == j else 0) for k, b in enumerate(beta))
            v = [Fraction(0)] * len(fb_tgt)
            v[pos[(g_idx, beta2)]] = Fraction(1)
            cols.append(self.reduce(n + 2, tuple(v)))
        return RationalMatrix.from_cols(cols, self.dim(n + 2))


@dataclass(frozen=True)
class HilbertSeriesWindow:
    coefficients: tuple[int, ...]
    closed_form: PoincareSeriesRational | None
    certified: bool

    def coeff(self, n: int) -> int:
        return self.coefficients[n] if 0 <= n < len(self.coefficients) else 0


def hilbert(pres: GradedModulePresentation) -> HilbertSeriesWindow:
    """Exact graded dimensions of the presented module on its window."""
    real = ModuleRealization(pres)
    coeffs = real.dims_tuple()
    closed = certify_closed_form(coeffs, pres.dim_a)
    return HilbertSeriesWindow(coeffs, closed, closed is not None)


def certify_closed_form(
    coeffs: tuple[int, ...], max_den_exp: int
) -> PoincareSeriesRational | None:
    """Match window coefficients against p(t)/(1-t^2)^k, k minimal.

    Certification needs a trailing margin of at least k + deg(p) + 2 window
    positions consistent with the recurrence; otherwise None (inconclusive).
    """
    n_max = len(coeffs) - 1
    for k in range(max_den_exp + 1):
        q = list(coeffs)
        for _ in range(k):
            q = [q[i] - (q[i - 2] if i >= 2 else 0) for i in range(len(q))]
        last = max((i for i, c in enumerate(q) if c != 0), default=-1)
        if last < 0:
            return PoincareSeriesRational(PoincarePolynomial(()), 0)
        if n_max - last >= k + last + 2:
            num = PoincarePolynomial(q[: last + 1], signed=True)
            return PoincareSeriesRational(num, k)
    return None


# -- Koszul complex / Tor ---------------------------------------------------------


@dataclass(frozen=True)
class TorResult:
    """Graded dims of Tor_i against the residue field, i = 0..dim_a."""

    dims: dict[tuple[int, int], int]  # (homological i, internal degree n)
    window: int
    dim_a: int

    def tor_dims(self, i: int) -> dict[int, int]:
        return {n: d for (j, n), d in self.dims.items() if j == i and d}

    def top_nonzero(self) -> int | None:
        live = [i for (i, _n), d in self.dims.items() if d]
        return max(live) if live else None

    def total(self, i: int) -> int:
        return sum(self.tor_dims(i).values())


def koszul_tor(pres: GradedModulePresentation) -> TorResult:
    """Homology of the exterior-algebra complex on the ring variables.

    K_i = M tensor Lambda^i in internal degree n uses M in degree n - 2i;
    the boundary contracts one exterior factor against its variable.
    """
    real = ModuleRealization(pres)
    r = pres.dim_a
    n_max = pres.window
    subsets = {i: list(itertools.combinations(range(r), i)) for i in range(r + 1)}

    def k_basis(i, n):
        return [
            (m_idx, S)
            for S in subsets[i]
            for m_idx in range(real.dim(n - 2 * i))
        ] if 0 <= n - 2 * i else []

    def boundary(i, n) -> RationalMatrix:
        """partial: K_i^n -> K_{i-1}^n."""
        src = k_basis(i, n)
        tgt = k_basis(i - 1, n)
        pos = {key: idx for idx, key in enumerate(tgt)}
        cols = []
        deg_m = n - 2 * i
        u_mats = {j: real.u_matrix(j, deg_m) for j in range(r)} if 0 <= deg_m <= n_max - 2 else {}
        for (m_idx, S) in src:
            col = [Fraction(0)] * len(tgt)
            x = unit_vec(real.dim(deg_m), m_idx)
            for t, j in enumerate(S):
                sign = (-1) ** t
                ux = u_mats[j].apply(x)
                S2 = tuple(s for s in S if s != j)
                for k2, c in enumerate(ux):
                    if c != 0:
                        col[pos[(k2, S2)]] += sign * c
            cols.append(tuple(col))
        return RationalMatrix.from_cols(cols, len(tgt))

    dims: dict[tuple[int, int], int] = {}
    for n in range(n_max + 1):
        for i in range(r + 1):
            if n - 2 * i < 0:
                continue
            src_dim = len(k_basis(i, n))
            if src_dim == 0:
                continue
            b_i = boundary(i, n) if i >= 1 else RationalMatrix.zeros(0, src_dim)
            kernel_dim = src_dim - b_i.rank()
            if i + 1 <= r and n - 2 * (i + 1) >= 0 and len(k_basis(i + 1, n)) > 0:
                img_rank = boundary(i + 1, n).rank()
            else:
                img_rank = 0
            h = kernel_dim - img_rank
            if h:
                dims[(i, n)] = h
    return TorResult(dims=dims, window=n_max, dim_a=r)


@dataclass(frozen=True)
class FreenessResult:
    free: bool
    ranks: tuple[int, ...]  # degree multiset of a minimal generating set
    scoped: bool
    detail: str = ""


def freeness_test(pres: GradedModulePresentation) -> FreenessResult:
    """free <=> Tor_1 vanishes on the window; ranks read off Tor_0."""
    tor = koszul_tor(pres)
    t0 = tor.tor_dims(0)
    ranks = tuple(
        sorted(itertools.chain.from_iterable([n] * d for n, d in t0.items()))
    )
    free = tor.total(1) == 0
    needed = 2 * pres.dim_a + (max(pres.generators) if pres.generators else 0)
    scoped = pres.window < needed
    detail = (
        f"window {pres.window} below recommended {needed}; verdict is scoped"
        if scoped
        else ""
    )
    return FreenessResult(free=free, ranks=ranks, scoped=scoped, detail=detail)


@dataclass(frozen=True)
class LocalizedRankResult:
    rank: int | None
    conclusive: bool
    detail: str = ""

    @property
    def torsion(self) -> bool:
        return self.rank == 0


def localized_rank(pres: GradedModulePresentation) -> LocalizedRankResult:
    """Rank over the fraction field via the certified Hilbert closed form.

    rank = value at t = 1 of hilbert * (1-t^2)^{dim_a}; zero exactly for
    torsion modules.
    """
    h = hilbert(pres)
    if not h.certified:
        return LocalizedRankResult(None, False, "window does not certify a closed form")
    cf = h.closed_form
    if cf.den_exp < pres.dim_a:
        return LocalizedRankResult(0, True, "pole order below dim_a: torsion")
    rank = cf.numerator.evaluate(1)
    return LocalizedRankResult(rank, True, f"numerator value at t=1 is {rank}")


@dataclass(frozen=True)
class DepthDimCM:
    depth: int | str
    krull_dim: int | str
    cohen_macaulay: bool
    conclusive: bool
    detail: str = ""


def depth_dim_cm(pres: GradedModulePresentation) -> DepthDimCM:
    """depth from the Koszul homology top, Krull dim from the pole at t = 1."""
    h = hilbert(pres)
    tor = koszul_tor(pres)
    if sum(h.coefficients) == 0:
        return DepthDimCM("+inf", "-inf", True, True, "zero module (by convention)")
    top = tor.top_nonzero()
    depth = pres.dim_a - (top if top is not None else 0)
    if not h.certified:
        return DepthDimCM(
            depth, "?", False, False,
            "no certified closed form on this window; Krull dimension unknown",
        )
    cf = h.closed_form
    num = cf.numerator
    ord_at_one = 0
    while num.evaluate(1) == 0 and not num.is_zero():
        num = _divide_by_one_minus_t(num)
        ord_at_one += 1
    krull = cf.den_exp - ord_at_one
    return DepthDimCM(depth, krull, depth == krull, True)


def _divide_by_one_minus_t(p: PoincarePolynomial) -> PoincarePolynomial:
    # ascending synthetic division: p = (1 - t) q means p_i = q_i - q_{i-1};
    # caller guarantees p(1) = 0 so the division terminates exactly
    d = p.degree()
    q = [0] * max(d, 0)
    prev = 0
    for i in range(d):
        q[i] = p.coeff(i) + prev
        prev = q[i]
    return PoincarePolynomial(q, signed=True)


# -- graded SES of modules ---------------------------------------------------------

ModuleMap = tuple[tuple[Poly, ...], ...]  # per source generator: coefficents over target generators


@dataclass(frozen=True)
class SESCMReport:
    is_ses: bool
    hypotheses_met: bool
    conclusion_holds: bool | None
    detail: str


def _induced_matrix(
    src: ModuleRealization, dst: ModuleRealization, gen_images: ModuleMap, n: int
) -> RationalMatrix:
    """Degree-n matrix of the map sending each source generator to its image."""
    pres_s, pres_d = src.pres, dst.pres
    fb_d = dst.free_basis[n]
    pos = {key: i for i, key in enumerate(fb_d)}
    cols = []
    for i in src.basis_indices[n]:
        g_idx, beta = src.free_basis[n][i]
        free_img = [Fraction(0)] * len(fb_d)
        for h_idx, poly in enumerate(gen_images[g_idx]):
            for alpha, c in poly_shift(poly, beta).items():
                key = (h_idx, alpha)
                if key not in pos:
                    raise PresentationError("map image is not homogeneous of the right degree")
                free_img[pos[key]] += c
        cols.append(dst.reduce(n, tuple(free_img)))
    return RationalMatrix.from_cols(cols, dst.dim(n))


def ses_cm_check(
    a: GradedModulePresentation,
    b: GradedModulePresentation,
    c: GradedModulePresentation,
    f: ModuleMap,
    g: ModuleMap,
) -> SESCMReport:
    """Check the two-out-of-three Cohen-Macaulay statement on a graded SES.

    When the flanking modules are Cohen-Macaulay of the same Krull dimension,
    the middle one must be too; the verdict verifies that on this instance.
    """
    if not (a.dim_a == b.dim_a == c.dim_a):
        return SESCMReport(False, False, None, "modules over different rings")
    window = min(a.window, b.window, c.window)
    ra, rb, rc = ModuleRealization(a), ModuleRealization(b), ModuleRealization(c)
    for n in range(window + 1):
        fm = _induced_matrix(ra, rb, f, n)
        gm = _induced_matrix(rb, rc, g, n)
        if fm.rank() != ra.dim(n):
            return SESCMReport(False, False, None, f"first map not injective in degree {n}")
        if gm.rank() != rc.dim(n):
            return SESCMReport(False, False, None, f"second map not surjective in degree {n}")
        if not (gm @ fm).is_zero():
            return SESCMReport(False, False, None, f"composition nonzero in degree {n}")
        if rb.dim(n) - gm.rank() != fm.rank():
            return SESCMReport(False, False, None, f"im != ker in degree {n}")
    da, db, dc = depth_dim_cm(a), depth_dim_cm(b), depth_dim_cm(c)
    if not (da.conclusive and dc.conclusive):
        return SESCMReport(True, False, None, "flanking verdicts inconclusive on this window")
    if not (da.cohen_macaulay and dc.cohen_macaulay and da.krull_dim == dc.krull_dim):
        return SESCMReport(
            True, False, None,
            f"hypotheses not met: sub is CM={da.cohen_macaulay} dim={da.krull_dim}, "
            f"quotient is CM={dc.cohen_macaulay} dim={dc.krull_dim}",
        )
    holds = db.cohen_macaulay and db.krull_dim == da.krull_dim
    detail = (
        f"middle module: CM={db.cohen_macaulay}, dim={db.krull_dim}, "
        f"expected CM of dim {da.krull_dim}"
    )
    return SESCMReport(True, True, holds, detail)
