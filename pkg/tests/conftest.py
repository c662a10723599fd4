import random

import pytest

from foliacoh.algebra_core import CochainComplex, GradedVectorSpace, ShortExactSequence
from foliacoh.ratmat import RationalMatrix


def random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    """Unit lower-triangular times unit upper-triangular with small entries."""
    lo = RationalMatrix.identity(n)
    up = RationalMatrix.identity(n)
    for i in range(n):
        for j in range(i):
            lo._m[i][j] = rng.randint(-2, 2)
            up._m[j][i] = rng.randint(-2, 2)
    return lo @ up


def random_complex(rng: random.Random, top: int = 4, max_dim: int = 6) -> CochainComplex:
    """Random bounded complex: interval summands conjugated by a random basis.

    Every complex over a field splits into intervals, so this generator is
    fully general up to isomorphism.
    """
    pair_counts = {n: rng.randint(0, max_dim // 2) for n in range(top)}
    single_counts = {n: rng.randint(0, max_dim // 2) for n in range(top + 1)}
    dims = {}
    for n in range(top + 1):
        dims[n] = single_counts[n] + pair_counts.get(n, 0) + pair_counts.get(n - 1, 0)
    dims = {n: d for n, d in dims.items() if d}
    space = GradedVectorSpace(dims, window=(0, top))
    diffs = {}
    for n in range(top):
        rows, cols = space.dim(n + 1), space.dim(n)
        m = RationalMatrix.zeros(rows, cols)
        # intervals starting at n occupy the leading columns after singles,
        # and the leading rows of degree n+1 after its own singles
        col0 = single_counts.get(n, 0) + pair_counts.get(n - 1, 0)
        row0 = single_counts.get(n + 1, 0)
        for k in range(pair_counts.get(n, 0)):
            m._m[row0 + k][col0 + k] = 1
        if not m.is_zero():
            diffs[n] = m
    c = CochainComplex(space, diffs)
    # conjugate by random invertible transforms per degree
    t = {n: random_invertible(rng, space.dim(n)) for n in range(top + 1)}
    t_inv = {n: t[n].inverse() for n in t}
    new_diffs = {}
    for n in range(top):
        m = t[n + 1] @ c.diff(n) @ t_inv[n]
        if not m.is_zero():
            new_diffs[n] = m
    return CochainComplex(space, new_diffs)


def random_split_ses(rng: random.Random, top: int = 3, max_dim: int = 6):
    """SES with total = sub (+) quotient twisted by a random change of basis."""
    sub = random_complex(rng, top, max_dim)
    quot = random_complex(rng, top, max_dim)
    dims = {
        n: sub.spaces.dim(n) + quot.spaces.dim(n) for n in range(top + 1)
    }
    dims = {n: d for n, d in dims.items() if d}
    space = GradedVectorSpace(dims, window=(0, top))
    t = {n: random_invertible(rng, space.dim(n)) for n in range(top + 1)}
    t_inv = {n: t[n].inverse() for n in t}
    diffs = {}
    incl = {}
    proj = {}
    for n in range(top + 1):
        ds, dq = sub.spaces.dim(n), quot.spaces.dim(n)
        if n < top:
            block = RationalMatrix.zeros(space.dim(n + 1), space.dim(n))
            a = sub.diff(n)
            for i in range(a.rows):
                for j in range(a.cols):
                    block._m[i][j] = a.entry(i, j)
            b = quot.diff(n)
            rs, cs = sub.spaces.dim(n + 1), ds
            for i in range(b.rows):
                for j in range(b.cols):
                    block._m[rs + i][cs + j] = b.entry(i, j)
            m = t[n + 1] @ block @ t_inv[n]
            if not m.is_zero():
                diffs[n] = m
        f = RationalMatrix.zeros(space.dim(n), ds)
        for i in range(ds):
            f._m[i][i] = 1
        g = RationalMatrix.zeros(dq, space.dim(n))
        for i in range(dq):
            g._m[i][ds + i] = 1
        incl[n] = t[n] @ f
        proj[n] = g @ t_inv[n]
    total = CochainComplex(space, diffs)
    return ShortExactSequence(sub, total, quot, incl, proj)


@pytest.fixture
def rng():
    return random.Random(20240817)
