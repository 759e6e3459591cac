"""Local invariants of rational quadratic spaces.

Places are primes (ints) or :data:`INFINITY`.  Square classes are canonical:
for odd p the unit part is 1 or the smallest positive quadratic nonresidue
mod p, for p = 2 it is the unit residue mod 8, and at infinity it is the sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint, isprime

from . import ratmat as rm

INFINITY = "infinity"
Place = Union[int, str]


def _check_place(place: Place) -> None:
    if place == INFINITY:
        return
    if not isinstance(place, int) or not isprime(place):
        raise ValueError(f"{place!r} is not a place (prime or 'infinity')")


def valuation(a, p: int) -> int:
    """Exponent of the prime p in the nonzero rational a."""
    a = rm.as_rational(a)
    if a == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = a.numerator, a.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit_int(a: Fraction, p: int) -> tuple[int, int]:
    """``(v, u)`` with ``a = p^v * (unit)`` and u an integer in the unit's square class."""
    v = valuation(a, p)
    n, d = a.numerator, a.denominator
    if v > 0:
        n //= p ** v
    elif v < 0:
        d //= p ** (-v)
    return v, n * d


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def nonresidue(p: int) -> int:
    """Smallest positive quadratic nonresidue mod the odd prime p."""
    return next(k for k in range(2, p) if legendre(k, p) == -1)


@dataclass(frozen=True)
class SquareClass:
    place: Place
    val_parity: int | None
    unit: int

    def __str__(self) -> str:
        if self.place == INFINITY:
            return "+" if self.unit > 0 else "-"
        return f"p^{self.val_parity}*{self.unit}"


def square_class(a, place: Place) -> SquareClass:
    a = rm.as_rational(a)
    if a == 0:
        raise ValueError("square class of zero")
    _check_place(place)
    if place == INFINITY:
        return SquareClass(INFINITY, None, 1 if a > 0 else -1)
    v, u = _unit_int(a, place)
    if place == 2:
        return SquareClass(2, v % 2, u % 8)
    unit = 1 if legendre(u, place) == 1 else nonresidue(place)
    return SquareClass(place, v % 2, unit)


def hilbert_symbol(a, b, place: Place) -> int:
    """(a, b) at the given place, by the standard closed formulas."""
    a, b = rm.as_rational(a), rm.as_rational(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    _check_place(place)
    if place == INFINITY:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    alpha, u = _unit_int(a, p)
    beta, v = _unit_int(b, p)
    if p == 2:
        u, v = u % 8, v % 8
        eps_u, eps_v = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        om_u, om_v = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def diagonalize(g) -> list[Fraction]:
    """Diagonal entries of a rational congruence diagonalization of a nonsingular form.

    Without zero pivots this is the sequence of ratios of consecutive leading
    principal minors.
    """
    a = [list(r) for r in rm.sym_matrix(g)]
    out: list[Fraction] = []
    while a:
        n = len(a)
        if a[0][0] == 0:
            k = next((i for i in range(1, n) if a[i][i] != 0), None)
            if k is not None:
                a[0], a[k] = a[k], a[0]
                for row in a:
                    row[0], row[k] = row[k], row[0]
            else:
                k = next((j for j in range(1, n) if a[0][j] != 0), None)
                if k is None:
                    raise ValueError("form is degenerate")
                # basis change e0 -> e0 + ek makes the (0, 0) entry 2*a[0][k]
                a[0] = [x + y for x, y in zip(a[0], a[k])]
                for row in a:
                    row[0] += row[k]
        piv = a[0][0]
        out.append(piv)
        a = [[a[i][j] - a[i][0] * a[0][j] / piv for j in range(1, n)] for i in range(1, n)]
    return out


def hasse_symbol(g, place: Place, *, definite: bool = True) -> int:
    """Product of Hilbert symbols (d_i, d_j), i < j, over a diagonalization.

    Positive definite input is required unless ``definite=False``, which admits
    any nondegenerate form (the 2-adic representative tables contain negative
    diagonal entries).
    """
    _check_place(place)
    if definite and not rm.is_positive_definite(rm.sym_matrix(g)):
        raise ValueError("form is not positive definite")
    d = diagonalize(g)
    s = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            s *= hilbert_symbol(d[i], d[j], place)
    return s


@dataclass(frozen=True)
class LocalInvariant:
    place: Place
    dim: int
    det_class: SquareClass
    hasse: int


def local_invariant(g, place: Place, *, definite: bool = True) -> LocalInvariant:
    g = rm.sym_matrix(g)
    d = rm.determinant(g)
    if d == 0:
        raise ValueError("form is degenerate")
    h = hasse_symbol(g, place, definite=definite)
    return LocalInvariant(place, len(g), square_class(d, place), h)


def qp_space_exists(inv: LocalInvariant) -> bool:
    """Whether a quadratic space with these local invariants exists."""
    if inv.place == INFINITY:
        # k negative squares: det sign (-1)^k, Hasse (-1)^(k(k-1)/2)
        return any(
            (-1) ** k == inv.det_class.unit and (-1) ** (k * (k - 1) // 2) == inv.hasse
            for k in range(inv.dim + 1)
        )
    if inv.dim == 0:
        return inv.hasse == 1 and inv.det_class == square_class(1, inv.place)
    if inv.dim == 1 and inv.hasse == -1:
        return False
    if inv.dim == 2 and inv.hasse == -1 and inv.det_class == square_class(-1, inv.place):
        return False
    return True


def relevant_primes(*values) -> list[int]:
    """Primes dividing 2 times the numerators and denominators of the given rationals."""
    ps = {2}
    for x in values:
        x = rm.as_rational(x)
        for n in (x.numerator, x.denominator):
            if n not in (0, 1, -1):
                ps.update(factorint(abs(n)))
    return sorted(ps)


def spaces_locally_equal(g1, g2, place: Place) -> bool:
    if place == INFINITY:
        # real forms are classified by dimension and signature
        n1 = sum(1 for x in diagonalize(g1) if x < 0)
        n2 = sum(1 for x in diagonalize(g2) if x < 0)
        return len(g1) == len(g2) and n1 == n2
    return local_invariant(g1, place) == local_invariant(g2, place)


def spaces_globally_equal(g1, g2) -> bool:
    """Rational isometry of two forms, via local invariants at the finitely many relevant places."""
    g1, g2 = rm.sym_matrix(g1), rm.sym_matrix(g2)
    if len(g1) != len(g2):
        return False
    places: list[Place] = [INFINITY]
    places += relevant_primes(rm.determinant(g1), rm.determinant(g2))
    return all(spaces_locally_equal(g1, g2, p) for p in places)
