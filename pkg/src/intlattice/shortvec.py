"""Exact enumeration of lattice vectors of bounded norm (Fincke-Pohst).

The search runs on an LLL-reduced Gram matrix with rational arithmetic only;
results are reported in the caller's basis, sorted lexicographically by
coefficient vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import ratmat as rm
from .intlinalg import lll_gram
from .lattice import Lattice
from .ratmat import Vector

MAX_RANK = 16


@dataclass(frozen=True)
class ShortVectorSet:
    bound: Fraction
    coords: tuple[tuple[int, ...], ...]
    vectors: tuple[Vector, ...]
    norms: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.coords)

    def with_norm(self, value) -> list[Vector]:
        value = rm.as_rational(value)
        return [v for v, n in zip(self.vectors, self.norms) if n == value]


def _floor_sqrt(r: Fraction) -> int:
    return isqrt(r.numerator * r.denominator) // r.denominator


def enumerate_gram(gram, bound: Fraction) -> list[tuple[int, ...]]:
    """All nonzero integer x with ``x G x^T <= bound`` (any order)."""
    n = len(gram)
    lo, d = rm.ldl(gram)
    # column-major view of the off-diagonal LDL factors: mu[i][j] = L[j][i], j > i
    mu = [[lo[j][i] for j in range(n)] for i in range(n)]
    out: list[tuple[int, ...]] = []
    y = [0] * n

    def rec(i: int, remaining: Fraction) -> None:
        row = mu[i]
        c = Fraction(0)
        for j in range(i + 1, n):
            if y[j] and row[j]:
                c -= row[j] * y[j]
        r = remaining / d[i]
        t = _floor_sqrt(r) + 1
        fl = c.numerator // c.denominator
        for x in range(fl - t, fl + t + 2):
            diff = x - c
            q = diff * diff
            if q > r:
                continue
            y[i] = x
            rest = remaining - d[i] * q
            if i == 0:
                if any(y):
                    out.append(tuple(y))
            else:
                rec(i - 1, rest)
        y[i] = 0

    if n:
        rec(n - 1, rm.as_rational(bound))
    return out


def vectors_up_to(lat: Lattice, bound) -> ShortVectorSet:
    """Every nonzero vector of ``lat`` with norm at most ``bound``."""
    bound = rm.as_rational(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    if lat.rank > MAX_RANK:
        raise ValueError(f"enumeration is limited to rank <= {MAX_RANK}")
    u = lll_gram(lat.gram)
    g = rm.congruent(lat.gram, rm.as_matrix(u))
    found = enumerate_gram(g, bound)
    coords = sorted(
        tuple(sum(y[k] * u[k][j] for k in range(len(y))) for j in range(lat.rank)) for y in found
    )
    vectors = tuple(lat.vector(c) for c in coords)
    gram = lat.gram
    norms = tuple(_qform(gram, c) for c in coords)
    return ShortVectorSet(bound, tuple(coords), vectors, norms)


def _qform(gram, x) -> Fraction:
    s = Fraction(0)
    n = len(x)
    for i in range(n):
        if x[i]:
            t = Fraction(0)
            row = gram[i]
            for j in range(n):
                if x[j]:
                    t += row[j] * x[j]
            s += x[i] * t
    return s


def minimum(lat: Lattice) -> Fraction:
    """Least norm of a nonzero vector."""
    u = lll_gram(lat.gram)
    g = rm.congruent(lat.gram, rm.as_matrix(u))
    bound = min(g[i][i] for i in range(len(g)))
    return min(_qform(g, y) for y in enumerate_gram(g, bound))


def kissing_number(lat: Lattice) -> int:
    m = minimum(lat)
    u = lll_gram(lat.gram)
    g = rm.congruent(lat.gram, rm.as_matrix(u))
    return len(enumerate_gram(g, m))
