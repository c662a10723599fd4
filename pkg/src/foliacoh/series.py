"""Poincare polynomials and rational series with denominator (1-t^2)^k.

The signed variant of a polynomial is a distinct flagged state so that
dimension series keep their non-negativity invariant; Morse differences are
signed mid-computation and carry the flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer-coefficient polynomial in t; ``signed`` permits negatives.

    The flag marks provenance, not value: equality compares coefficients only.
    """

    coeffs: tuple[int, ...]
    signed: bool = field(default=False, compare=False)

    def __init__(self, coeffs: Iterable[int], signed: bool = False):
        coeffs = _trim([int(c) for c in coeffs])
        if not signed and any(c < 0 for c in coeffs):
            raise ValueError(
                "negative coefficient in an unsigned dimension polynomial"
            )
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "signed", signed)

    # -- basics --------------------------------------------------------------

    @classmethod
    def zero(cls) -> "PoincarePolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "PoincarePolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "PoincarePolynomial":
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (coeff,), signed=coeff < 0)

    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> int:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def as_signed(self) -> "PoincarePolynomial":
        return PoincarePolynomial(self.coeffs, signed=True)

    def as_unsigned(self) -> "PoincarePolynomial":
        return PoincarePolynomial(self.coeffs, signed=False)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coeff(i) + other.coeff(i) for i in range(n)]
        return PoincarePolynomial(out, signed=self.signed or other.signed)

    def __sub__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coeff(i) - other.coeff(i) for i in range(n)]
        return PoincarePolynomial(out, signed=True)

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        if self.is_zero() or other.is_zero():
            return PoincarePolynomial((), signed=self.signed or other.signed)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return PoincarePolynomial(out, signed=self.signed or other.signed)

    def scale(self, c: int) -> "PoincarePolynomial":
        return PoincarePolynomial(
            [c * x for x in self.coeffs], signed=self.signed or c < 0
        )

    def shift(self, k: int) -> "PoincarePolynomial":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return PoincarePolynomial((0,) * k + self.coeffs, signed=self.signed)

    def evaluate(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t" if c != 1 else "t")
            else:
                terms.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return " + ".join(terms).replace("+ -", "- ")


ONE_MINUS_T2 = PoincarePolynomial((1, 0, -1), signed=True)


def divide_by_one_minus_t2(p: PoincarePolynomial) -> PoincarePolynomial | None:
    """Exact quotient p / (1 - t^2), or None if not divisible."""
    if p.is_zero():
        return PoincarePolynomial((), signed=p.signed)
    d = p.degree()
    if d < 2:
        return None
    q = [0] * (d - 1)
    for i in range(d - 1):
        q[i] = p.coeff(i) + (q[i - 2] if i >= 2 else 0)
    cand = PoincarePolynomial(q, signed=True)
    if cand * ONE_MINUS_T2 == p.as_signed():
        return PoincarePolynomial(q, signed=p.signed or any(c < 0 for c in q))
    return None


@dataclass(frozen=True)
class PoincareSeriesRational:
    """numerator(t) / (1 - t^2)^den_exp, canonicalized on construction.

    Canonical form: the numerator is not divisible by (1 - t^2) unless
    den_exp is already 0.
    """

    numerator: PoincarePolynomial
    den_exp: int

    def __init__(self, numerator: PoincarePolynomial, den_exp: int = 0):
        if den_exp < 0:
            raise ValueError("negative denominator exponent")
        while den_exp > 0:
            q = divide_by_one_minus_t2(numerator)
            if q is None:
                break
            numerator, den_exp = q, den_exp - 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "den_exp", den_exp)

    @classmethod
    def from_polynomial(cls, p: PoincarePolynomial) -> "PoincareSeriesRational":
        return cls(p, 0)

    @classmethod
    def zero(cls) -> "PoincareSeriesRational":
        return cls(PoincarePolynomial.zero(), 0)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "PoincareSeriesRational") -> "PoincareSeriesRational":
        k = max(self.den_exp, other.den_exp)
        a = self.numerator
        for _ in range(k - self.den_exp):
            a = a * ONE_MINUS_T2
        b = other.numerator
        for _ in range(k - other.den_exp):
            b = b * ONE_MINUS_T2
        return PoincareSeriesRational(a + b, k)

    def __sub__(self, other: "PoincareSeriesRational") -> "PoincareSeriesRational":
        return self + other.scale(-1)

    def __mul__(self, other: "PoincareSeriesRational") -> "PoincareSeriesRational":
        return PoincareSeriesRational(
            self.numerator * other.numerator, self.den_exp + other.den_exp
        )

    def scale(self, c: int) -> "PoincareSeriesRational":
        return PoincareSeriesRational(self.numerator.scale(c), self.den_exp)

    def expand(self, n_max: int) -> tuple[int, ...]:
        """Coefficients of the power-series expansion through degree n_max."""
        base = [0] * (n_max + 1)
        for i, c in enumerate(self.numerator.coeffs):
            if i > n_max:
                break
            base[i] = c
        if self.den_exp == 0:
            return tuple(base)
        k = self.den_exp
        out = [0] * (n_max + 1)
        for n in range(n_max + 1):
            acc = 0
            for j in range(0, n // 2 + 1):
                c = base[n - 2 * j]
                if c:
                    acc += c * math.comb(j + k - 1, k - 1)
            out[n] = acc
        return tuple(out)

    def as_polynomial(self) -> PoincarePolynomial | None:
        """The underlying polynomial if den_exp is 0, else None."""
        return self.numerator if self.den_exp == 0 else None

    def __str__(self) -> str:
        if self.den_exp == 0:
            return str(self.numerator)
        return f"({self.numerator}) / (1-t^2)^{self.den_exp}"


def geometric_series(den_exp: int) -> PoincareSeriesRational:
    """1 / (1 - t^2)^den_exp, the Poincare series of a polynomial ring."""
    return PoincareSeriesRational(PoincarePolynomial.one(), den_exp)


@dataclass(frozen=True)
class MorseGapResult:
    """Outcome of dividing a Morse difference by (1+t) on a window."""

    ok: bool
    quotient: PoincarePolynomial | None
    violation_degree: int | None
    detail: str


def morse_gap(
    morse: PoincareSeriesRational,
    poincare: PoincareSeriesRational,
    n_max: int,
) -> MorseGapResult:
    """Check M_t - P_t = (1+t) * Q with Q >= 0 on the window [0, n_max].

    The difference must have non-negative expansion (else the inequalities
    are already violated); the quotient is produced by ascending division and
    the first negative quotient coefficient pinpoints the violation.
    """
    m = morse.expand(n_max)
    p = poincare.expand(n_max)
    diff = [a - b for a, b in zip(m, p)]
    for n, c in enumerate(diff):
        if c < 0:
            return MorseGapResult(
                False, None, n, f"M_t - P_t has negative coefficient at degree {n}"
            )
    q = [0] * (n_max + 1)
    for n in range(n_max + 1):
        q[n] = diff[n] - (q[n - 1] if n >= 1 else 0)
        if q[n] < 0:
            return MorseGapResult(
                False,
                None,
                n,
                f"(1+t)-quotient has negative coefficient at degree {n}",
            )
    return MorseGapResult(True, PoincarePolynomial(q), None, "gap divides")


def euler_at_minus_one(p: PoincarePolynomial) -> int:
    """Euler characteristic: evaluation at t = -1."""
    return p.evaluate(-1)
