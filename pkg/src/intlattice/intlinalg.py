"""Integer row reduction: Hermite normal form, left kernels, and a Gram-matrix LLL.

All matrices here are lists of lists of Python ints (row convention), except the
LLL routine which accepts a rational Gram matrix.
"""

from __future__ import annotations

from fractions import Fraction


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def echelon_with_transform(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-reduce an integer matrix by unimodular row operations.

    Returns ``(H, U, pivots)`` with ``H = U a``, U unimodular and H in Hermite
    normal form: the first ``len(pivots)`` rows are nonzero with positive pivots
    in strictly increasing columns, entries above a pivot reduced into
    ``[0, pivot)``, and the remaining rows zero.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(r) for r in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        # fold every entry below row r in this column into row r via gcd steps
        for i in range(r + 1, m):
            if h[i][col] == 0:
                continue
            if h[r][col] == 0:
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
                continue
            a_, b_ = h[r][col], h[i][col]
            g, x, y = _xgcd(a_, b_)
            p, q = a_ // g, b_ // g
            hr, hi = h[r], h[i]
            h[r] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [-q * s + p * t for s, t in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [-q * s + p * t for s, t in zip(ur, ui)]
        if h[r][col] == 0:
            continue
        if h[r][col] < 0:
            h[r] = [-s for s in h[r]]
            u[r] = [-s for s in u[r]]
        piv = h[r][col]
        for i in range(r):
            f = h[i][col] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        pivots.append(col)
        r += 1
    return h, u, pivots


def hnf(a: list[list[int]]) -> list[list[int]]:
    """Nonzero rows of the Hermite normal form of ``a``."""
    h, _, piv = echelon_with_transform(a)
    return h[: len(piv)]


def left_kernel(a: list[list[int]]) -> list[list[int]]:
    """A Z-basis of ``{x in Z^m : x a = 0}``, as rows in Hermite normal form."""
    m = len(a)
    if m == 0:
        return []
    if not a[0]:
        return [[int(i == j) for j in range(m)] for i in range(m)]
    _, u, piv = echelon_with_transform(a)
    ker = u[len(piv):]
    return hnf(ker) if ker else []


def lll_gram(gram, delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce the lattice with (rational, positive definite) Gram matrix ``gram``.

    Returns an integer unimodular matrix U whose rows are the coordinates of the
    reduced basis in the original basis, so the reduced Gram is ``U G U^T``.
    Used only to make enumeration trees small; results never depend on it.
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = g[i][j]
                for k in range(j):
                    s -= mu[j][k] * mu[i][k] * bstar[k]
                mu[i][j] = s / bstar[j]
            s = g[i][i]
            for k in range(i):
                s -= mu[i][k] ** 2 * bstar[k]
            bstar[i] = s
        return mu, bstar

    def sub_row(k: int, j: int, q: int) -> None:
        # basis_k -= q * basis_j, keeping g equal to the Gram of the basis
        u[k] = [a - q * b for a, b in zip(u[k], u[j])]
        gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j]
        for t in range(n):
            g[k][t] -= q * g[j][t]
        for t in range(n):
            g[t][k] = g[k][t]
        g[k][k] = gkk

    def swap(k: int) -> None:
        u[k], u[k - 1] = u[k - 1], u[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]

    mu, bstar = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                sub_row(k, j, q)
                for t in range(j + 1):
                    mu[k][t] -= q * (mu[j][t] if t < j else 1)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k)
            mu, bstar = gso()
            k = max(k - 1, 1)
    return u
