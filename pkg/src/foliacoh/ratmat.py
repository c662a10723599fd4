"""Dense matrices over the rationals.

Every entry is a ``fractions.Fraction``; no floating point enters any
computation in this package.  Matrices act on column vectors, so an operator
from an n-dimensional space to an m-dimensional one is an (m x n) matrix.

Rank is computed by fraction-free Bareiss elimination with pivoting on
numerator magnitude, which keeps intermediate integer growth bounded at the
scales this package targets.  Canonical bases (kernels, representatives) come
from the reduced row echelon form, which is unique and hence deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce ints, strings like '2/3', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(entries: Iterable) -> Vec:
    return tuple(frac(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Vec) -> Vec:
    c = frac(c)
    return tuple(c * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


class RationalMatrix:
    """Immutable-by-convention dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_m", "_rref_cache")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self._m = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            entries = [list(r) for r in entries]
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError(
                    f"entry grid is not {rows}x{cols}: got {len(entries)} rows"
                )
            self._m = [[frac(x) for x in r] for r in entries]
        self._rref_cache = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls(n, n)
        for i in range(n):
            m._m[i][i] = Fraction(1)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence], dim: int | None = None) -> "RationalMatrix":
        """Matrix whose columns are the given vectors (all of length dim)."""
        cols = [vec(c) for c in cols]
        if dim is None:
            if not cols:
                raise ValueError("from_cols with no columns needs explicit dim")
            dim = len(cols[0])
        if any(len(c) != dim for c in cols):
            raise ValueError("column length mismatch")
        m = cls(dim, len(cols))
        for j, c in enumerate(cols):
            for i in range(dim):
                m._m[i][j] = c[i]
        return m

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return self._m[i][j]

    def row(self, i: int) -> Vec:
        return tuple(self._m[i])

    def col(self, j: int) -> Vec:
        return tuple(self._m[i][j] for i in range(self.rows))

    def columns(self) -> list[Vec]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._m]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._m for x in r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._m == other._m
        )

    def __hash__(self):  # pragma: no cover - only identity-ish use
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self._m)))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._m, other._m)],
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(
            self.rows,
            self.cols,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._m, other._m)],
        )

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = frac(c)
        return RationalMatrix(
            self.rows, self.cols, [[c * x for x in r] for r in self._m]
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch for product: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        out = RationalMatrix(self.rows, other.cols)
        for i in range(self.rows):
            mi = self._m[i]
            for k in range(self.cols):
                a = mi[k]
                if a == 0:
                    continue
                ok = other._m[k]
                oi = out._m[i]
                for j in range(other.cols):
                    if ok[j] != 0:
                        oi[j] += a * ok[j]
        return out

    def apply(self, v: Sequence) -> Vec:
        """Matrix-vector product."""
        v = vec(v)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((self._m[i][j] * v[j] for j in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows, [[self._m[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack row mismatch")
        return RationalMatrix(
            self.rows,
            self.cols + other.cols,
            [r1 + r2 for r1, r2 in zip(self._m, other._m)],
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ValueError("vstack column mismatch")
        return RationalMatrix(self.rows + other.rows, self.cols, self._m + other._m)

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- elimination ---------------------------------------------------------

    def rank(self) -> int:
        """Rank via fraction-free Bareiss elimination on integerized rows."""
        if self.rows == 0 or self.cols == 0:
            return 0
        m = []
        for r in self._m:
            lcm = 1
            for x in r:
                if x != 0:
                    d = x.denominator
                    lcm = lcm * d // _gcd(lcm, d)
            m.append([int(x * lcm) for x in r])
        nrows, ncols = self.rows, self.cols
        prev = 1
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            # partial pivoting on numerator magnitude
            piv, best = -1, 0
            for i in range(r, nrows):
                a = abs(m[i][c])
                if a > best:
                    best, piv = a, i
            if piv < 0:
                continue
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
            # Bareiss update must touch every remaining row to keep the
            # exact-division invariant, including rows with a zero in column c.
            for i in range(r + 1, nrows):
                for j in range(c + 1, ncols):
                    m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
                m[i][c] = 0
            prev = m[r][c]
            r += 1
        return r

    def rref(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Unique reduced row echelon form and its pivot columns."""
        if self._rref_cache is not None:
            return self._rref_cache
        m = [list(r) for r in self._m]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            piv, best = -1, 0
            for i in range(r, nrows):
                if m[i][c] != 0:
                    a = abs(m[i][c].numerator)
                    if piv < 0 or a > best:
                        best, piv = a, i
            if piv < 0:
                continue
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        out = RationalMatrix(nrows, ncols, m), tuple(pivots)
        self._rref_cache = out
        return out

    def nullspace(self) -> list[Vec]:
        """Canonical kernel basis: one vector per free column, ascending."""
        R, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for f in range(self.cols):
            if f in pivot_set:
                continue
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for row_idx, p in enumerate(pivots):
                v[p] = -R._m[row_idx][f]
            basis.append(tuple(v))
        return basis

    def pivot_columns(self) -> tuple[int, ...]:
        return self.rref()[1]

    def column_space_basis(self) -> list[Vec]:
        """The pivot columns of the original matrix (deterministic)."""
        return [self.col(j) for j in self.pivot_columns()]

    def solve(self, b: Sequence) -> Vec | None:
        """One solution x of self @ x = b (free variables zero), or None."""
        b = vec(b)
        if len(b) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = self.hstack(RationalMatrix.from_cols([b], self.rows))
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for row_idx, p in enumerate(pivots):
            x[p] = R._m[row_idx][self.cols]
        return tuple(x)

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = self.hstack(RationalMatrix.identity(self.rows))
        R, pivots = aug.rref()
        if tuple(pivots[: self.rows]) != tuple(range(self.rows)):
            raise ValueError("matrix is singular")
        return RationalMatrix(
            self.rows, self.cols, [row[self.cols :] for row in R._m]
        )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# -- subspace helpers --------------------------------------------------------


def rank_of_columns(cols: Sequence[Sequence], dim: int) -> int:
    if not cols:
        return 0
    return RationalMatrix.from_cols(cols, dim).rank()


def in_span(cols: Sequence[Vec], v: Vec, dim: int) -> bool:
    if is_zero_vec(v):
        return True
    if not cols:
        return False
    m = RationalMatrix.from_cols(cols, dim)
    return m.solve(v) is not None


def independent_complement(
    candidates: Sequence[Vec], modulo: Sequence[Vec], dim: int
) -> list[int]:
    """Indices of candidates forming a basis modulo span(modulo), greedily.

    Deterministic: candidates are taken in the given order whenever they
    increase the accumulated rank.
    """
    picked: list[int] = []
    acc = list(modulo)
    r = rank_of_columns(acc, dim)
    for idx, v in enumerate(candidates):
        trial = acc + [v]
        r2 = rank_of_columns(trial, dim)
        if r2 > r:
            picked.append(idx)
            acc = trial
            r = r2
    return picked


def coordinates_modulo(
    basis: Sequence[Vec], modulo: Sequence[Vec], v: Vec, dim: int
) -> Vec | None:
    """Coordinates of v w.r.t. basis, working modulo span(modulo).

    Requires the basis vectors to be independent modulo the given spanning
    set; under that assumption the coordinate block is unique.  Returns None
    when v is not in span(basis) + span(modulo).
    """
    cols = list(basis) + list(modulo)
    if not cols:
        return None if not is_zero_vec(v) else ()
    m = RationalMatrix.from_cols(cols, dim)
    sol = m.solve(v)
    if sol is None:
        return None
    return sol[: len(basis)]
