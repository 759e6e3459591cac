"""Exact rational scalars and small dense matrices.

Matrices are tuples of row tuples of :class:`fractions.Fraction`.  Nothing in
this module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_vector(v: Iterable) -> Vector:
    return tuple(as_rational(x) for x in v)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(as_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def sym_matrix(rows: Iterable[Iterable]) -> Matrix:
    """Build a square symmetric matrix, rejecting anything else."""
    m = as_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    return m


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diagonal(entries: Sequence) -> Matrix:
    d = as_vector(entries)
    zero = Fraction(0)
    return tuple(tuple(d[i] if i == j else zero for j in range(len(d))) for i in range(len(d)))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def vecmat(v: Sequence[Fraction], a: Matrix) -> Vector:
    """Row vector times matrix."""
    if not a:
        return ()
    out = [Fraction(0)] * len(a[0])
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return tuple(out)


def vec_add(u, v) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v) -> Vector:
    c = as_rational(c)
    return tuple(c * x for x in v)


def congruent(g: Matrix, p: Matrix) -> Matrix:
    """Return ``P G P^T`` (rows of P are the new basis)."""
    return matmul(matmul(p, g), transpose(p))


def common_denominator(rows: Iterable[Iterable[Fraction]]) -> int:
    d = 1
    for r in rows:
        for x in r:
            d = lcm(d, x.denominator)
    return d


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    The matrix is first scaled to integers so that the elimination runs on
    Python ints; the scaling is undone at the end.
    """
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    d = common_denominator(m)
    a = [[int(x * d) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], d ** n)


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q.  Raises ``ZeroDivisionError`` if singular."""
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_left(a: Matrix, b: Sequence[Fraction]) -> Vector | None:
    """Find x with ``x A = b`` (A has independent rows); None when b is not in the row span."""
    if not a:
        return () if all(x == 0 for x in b) else None
    at = transpose(a)
    # normal equations (A A^T) x = A b
    g = matmul(a, at)
    rhs = tuple(dot(row, b) for row in a)
    x = vecmat(rhs, inverse(g))
    if vecmat(x, a) != tuple(b):
        return None
    return x


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][col] != 0:
                f = a[i][col] / a[r][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def ldl(m: Matrix) -> tuple[Matrix, Vector]:
    """Return (L, D) with ``M = L diag(D) L^T``, L unit lower triangular.

    Only valid when every leading principal minor is nonzero.
    """
    n = len(m)
    lo = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for j in range(n):
        s = m[j][j] - sum((lo[j][k] ** 2 * d[k] for k in range(j)), Fraction(0))
        if s == 0:
            raise ZeroDivisionError("zero pivot in LDL")
        d[j] = s
        lo[j][j] = Fraction(1)
        for i in range(j + 1, n):
            t = m[i][j] - sum((lo[i][k] * lo[j][k] * d[k] for k in range(j)), Fraction(0))
            lo[i][j] = t / s
    return tuple(tuple(r) for r in lo), tuple(d)


def leading_minors(m: Matrix) -> list[Fraction]:
    return [determinant(tuple(row[:k] for row in m[:k])) for k in range(1, len(m) + 1)]


def is_positive_definite(m: Matrix) -> bool:
    """Sylvester's criterion: all leading principal minors positive."""
    return all(x > 0 for x in leading_minors(m))


def is_positive_semidefinite(m: Matrix) -> bool:
    """Exact PSD test by recursive Schur complement.

    A negative diagonal entry refutes; a zero diagonal entry forces its row and
    column to vanish; otherwise pivot on a positive diagonal entry.
    """
    a = [list(r) for r in m]
    while a:
        n = len(a)
        if any(a[i][i] < 0 for i in range(n)):
            return False
        k = next((i for i in range(n) if a[i][i] > 0), None)
        if k is None:
            return all(x == 0 for row in a for x in row)
        # zero diagonals need zero rows
        for i in range(n):
            if a[i][i] == 0 and any(a[i][j] != 0 for j in range(n)):
                return False
        piv = a[k][k]
        rest = [i for i in range(n) if i != k]
        a = [[a[i][j] - a[i][k] * a[k][j] / piv for j in rest] for i in rest]
    return True


def is_integral(m: Matrix) -> bool:
    return all(x.denominator == 1 for row in m for x in row)
