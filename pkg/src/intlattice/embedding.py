"""Can a positive definite integral lattice sit inside a unimodular lattice of rank m?

Verdicts are decided from local invariants at the places dividing ``2 * det``;
at every other prime the lattice is unimodular and imposes no condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from sympy import factorint

from . import ratmat as rm
from .local import (
    INFINITY,
    LocalInvariant,
    Place,
    SquareClass,
    hilbert_symbol,
    legendre,
    local_invariant,
    nonresidue,
    qp_space_exists,
    relevant_primes,
    square_class,
)


@dataclass(frozen=True)
class EmbeddingVerdict:
    feasible: bool
    rule: str
    failing_place: Place | None = None

    def as_dict(self) -> dict:
        return {"feasible": self.feasible, "rule": self.rule, "failing_place": self.failing_place}


def _definite_gram(g):
    g = rm.sym_matrix(g)
    if not rm.is_integral(g) or not rm.is_positive_definite(g):
        raise ValueError("expected an integral positive definite Gram matrix")
    return g


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def embed_unimodular_feasible(g, m: int) -> EmbeddingVerdict:
    """Decide whether the lattice with Gram ``g`` embeds in a unimodular lattice of rank m."""
    g = _definite_gram(g)
    n = len(g)
    if m < n:
        raise ValueError("target rank is smaller than the lattice rank")
    if m >= n + 3:
        return EmbeddingVerdict(True, "case4: m >= n+3")
    det = rm.determinant(g)
    minus_one = {}
    if m == n:
        if not _is_square(int(det)):
            return EmbeddingVerdict(False, "case1: m = n, det is not a square", INFINITY)
        rule = "case1: m = n"
    elif m == n + 1:
        rule = "case2: m = n+1"
    else:
        rule = "case3: m = n+2"
    for p in relevant_primes(det):
        inv = local_invariant(g, p)
        if m == n:
            ok = inv.hasse == 1
        elif m == n + 1:
            ok = inv.hasse * hilbert_symbol(det, det, p) == 1
        else:
            minus_one.setdefault(p, square_class(-1, p))
            if inv.det_class != minus_one[p]:
                ok = True
            else:
                ok = inv.hasse == (1 if p > 2 else -1)
        if not ok:
            return EmbeddingVerdict(False, rule, p)
    return EmbeddingVerdict(True, rule)


def is_odd_gram(g) -> bool:
    return any(g[i][i] % 2 for i in range(len(g)))


def embed_odd_unimodular_feasible(g, m: int) -> EmbeddingVerdict:
    """One-sided test for embedding into an odd unimodular lattice of rank m.

    ``feasible=True`` is a proof of embeddability; ``False`` only means that no
    clause of the sufficient condition applies.
    """
    g = _definite_gram(g)
    n = len(g)
    base = embed_unimodular_feasible(g, m)
    if not base.feasible:
        return EmbeddingVerdict(False, "not implied: " + base.rule, base.failing_place)
    if is_odd_gram(g):
        return EmbeddingVerdict(True, "odd lattice; " + base.rule)
    if m >= n + 3:
        return EmbeddingVerdict(True, "m >= n+3")
    if m == n + 2:
        inv = local_invariant(g, 2)
        if (inv.det_class, inv.hasse) != (square_class(3, 2), 1):
            return EmbeddingVerdict(True, "m = n+2 and (det, S_2) != (3, +1) at 2")
        return EmbeddingVerdict(False, "not implied: even, m = n+2, (det, S_2) = (3, +1) at 2", 2)
    return EmbeddingVerdict(False, "not implied: even lattice with m <= n+1")


def det_split(det: int) -> tuple[dict[int, int], int]:
    """Write det = prod p_i^{a_i} * d with p_i odd, a_i even and positive, gcd(d, p_i) = 1."""
    if det <= 0:
        raise ValueError("determinant must be positive")
    fac = factorint(det)
    evens = {p: a for p, a in fac.items() if p % 2 == 1 and a % 2 == 0}
    d = det
    for p, a in evens.items():
        d //= p ** a
    return evens, d


def det_sufficient_condition(n: int, det: int) -> bool:
    """Determinant-only sufficient condition for embedding into a unimodular lattice of rank n+2."""
    evens, d = det_split(det)
    for p, a in factorint(d).items():
        if p != 2 and a % 2 == 0:
            return False
    for p in evens:
        if legendre(-d, p) != -1:
            return False
    v2 = 0
    dd = d
    while dd % 2 == 0:
        dd //= 2
        v2 += 1
    if v2 % 2 == 0 and dd % 8 == 7:
        return False
    return True


def rank12_exception_determinants(max_det: int = 27) -> set[int]:
    """Determinants up to ``max_det`` for which a rank-12 lattice is not forced into rank 14."""
    return {d for d in range(1, max_det + 1) if not det_sufficient_condition(12, d)}


def _odd_table(p: int, delta: int) -> dict[tuple[int, int], list[int]]:
    # (det unit class key, hasse) -> non-identity diagonal entries
    t = {
        ("1", 1): [],
        ("d", 1): [delta],
        ("p", 1): [p],
        ("pd", 1): [p * delta],
        ("pd", -1): [delta, p],
        ("p", -1): [delta, p * delta],
    }
    if p % 4 == 1:
        t[("-d", -1)] = [p, p * delta]
        t[("-1", -1)] = [delta, p, p * delta]
    else:
        t[("-d", -1)] = [p, p]
        t[("-1", -1)] = [delta, p, p]
    return t


_TWO_TABLE: dict[tuple[int, int], list[int]] = {
    (1, 1): [],
    (-1, 1): [-1],
    (3, 1): [3],
    (-3, 1): [-3],
    (1, -1): [-1, -1],
    (-1, -1): [-1, -1, -1],
    (3, -1): [3, 3, 3],
    (-3, -1): [-1, 3],
    (2, 1): [2],
    (-2, 1): [-2],
    (6, 1): [6],
    (-6, 1): [-6],
    (2, -1): [-3, -6],
    (-2, -1): [-3, 6],
    (6, -1): [-3, -2],
    (-6, -1): [-3, 2],
}


def maximal_rep_gram(p: int, n: int, det_class: SquareClass, hasse: int, delta: int | None = None):
    """Diagonal Gram of the maximal Z_p-lattice representative with the given invariants.

    For odd p the representatives are built from 1, delta, p and p*delta
    (``delta`` defaults to the smallest nonresidue); for p = 2 from the table of
    lattices with norm ideal Z_2.
    """
    if hasse not in (1, -1):
        raise ValueError("Hasse symbol must be +1 or -1")
    if det_class.place != p:
        raise ValueError("square class belongs to another place")
    inv = LocalInvariant(p, n, det_class, hasse)
    if n < 1 or not qp_space_exists(inv):
        raise ValueError("no quadratic space has these invariants")
    if p == 2:
        entries = None
        for d, extra in ((k, v) for (k, h), v in _TWO_TABLE.items() if h == hasse):
            if square_class(d, 2) == det_class:
                entries = extra
                break
        if entries is None:
            raise ValueError("determinant class is not in the 2-adic table")
    else:
        delta = nonresidue(p) if delta is None else delta
        if legendre(delta, p) != -1:
            raise ValueError("delta must be a quadratic nonresidue")
        table = _odd_table(p, delta)
        by_class = {}
        for (key, h), extra in table.items():
            val = {"1": 1, "d": delta, "p": p, "pd": p * delta, "-d": -delta, "-1": -1}[key]
            by_class[(square_class(val, p), h)] = extra
        entries = by_class.get((det_class, hasse))
        if entries is None:
            raise ValueError("invariants are not in the odd-p table")
    if len(entries) > n:
        raise ValueError(f"rank {n} is below the table minimum {len(entries)}")
    return rm.diagonal([1] * (n - len(entries)) + entries)
