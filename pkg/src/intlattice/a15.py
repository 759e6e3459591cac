"""The root lattices A_n, the odd unimodular overlattice A15+ and its rank-12 complements.

Coordinates of the ambient space R^16 are 1-based in every public argument
(support sets, partitions, index sets), matching the usual e_1, ..., e_16.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from . import ratmat as rm
from .eutactic import projector
from .lattice import Lattice, dual, orthogonal_complement
from .ratmat import Vector
from .shortvec import minimum, vectors_up_to

DIM = 16
POINTS = tuple(range(1, DIM + 1))


def _unit(i: int, n: int = DIM) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i - 1] = Fraction(1)
    return v


def root(i: int, j: int, n: int = DIM) -> Vector:
    """e_i - e_j (1-based)."""
    v = _unit(i, n)
    v[j - 1] -= 1
    return tuple(v)


def build_An(n: int) -> Lattice:
    """Vectors of Z^(n+1) with coordinate sum zero, basis e_i - e_(i+1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return Lattice(tuple(root(i, i + 1, n + 1) for i in range(1, n + 1)))


def t_vector(support: Iterable[int]) -> Vector:
    """t_I = e/4 - sum_{i in I} e_i for a 4-subset I of {1..16}."""
    idx = set(support)
    if len(idx) != 4 or not idx <= set(POINTS):
        raise ValueError("t_I needs a 4-subset of {1, ..., 16}")
    return tuple(Fraction(1, 4) - (1 if i in idx else 0) for i in POINTS)


GLUE = t_vector((13, 14, 15, 16))


def build_A15_plus() -> Lattice:
    """A15 together with the glue vector t_{13,14,15,16}; unimodular and odd."""
    a15 = build_An(15)
    return Lattice.from_generators(list(a15.basis) + [GLUE])


@dataclass(frozen=True)
class NormThreeVector:
    sign: int
    support4: frozenset[int]

    def vector(self) -> Vector:
        return rm.vec_scale(self.sign, t_vector(self.support4))


def t_inner(i_set: Iterable[int], j_set: Iterable[int]) -> int:
    """(t_I, t_J) = |I cap J| - 1."""
    return len(set(i_set) & set(j_set)) - 1


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class TripleOrbit:
    """One Aut(A15+)-class of rank-3 sublattices spanned by three norm-3 vectors.

    ``representative`` lists (sign, 4-subset) for the three generators;
    ``invariant_tag`` is (|I cap J cap K|, (|I cap J|, |I cap K|, |J cap K|));
    ``family`` is the canonical form of the set of 4-subsets I with t_I in the
    sublattice.
    """

    representative: tuple[tuple[int, tuple[int, ...]], ...]
    invariant_tag: tuple[int, tuple[int, int, int]]
    family: tuple

    def generators(self) -> list[Vector]:
        return [NormThreeVector(s, frozenset(i)).vector() for s, i in self.representative]

    def lattice(self) -> Lattice:
        return Lattice(tuple(self.generators()))


ALL_FOUR_SETS = tuple(frozenset(c) for c in combinations(POINTS, 4))


def _norm3_members(gens, inner) -> list[frozenset[int]]:
    # t_I is in the lattice iff its projection onto the span has norm 3
    # and integer coordinates in the given basis
    ginv = rm.inverse(rm.as_matrix([[inner(g, h) for h in gens] for g in gens]))
    out = []
    for cand in ALL_FOUR_SETS:
        c = [inner(cand, g) for g in gens]
        x = rm.vecmat(c, ginv)
        if all(v.denominator == 1 for v in x) and rm.dot(x, c) == 3:
            out.append(cand)
    return out


def norm3_family(m_lat: Lattice) -> list[frozenset[int]]:
    """All 4-subsets I with t_I in the lattice (which must live in the standard R^16)."""
    if m_lat.ambient_dim != DIM or m_lat.form is not None:
        raise ValueError("expected a lattice in the standard R^16")
    basis = m_lat.basis

    def inner(a, b):
        va = t_vector(a) if isinstance(a, frozenset) else a
        return rm.dot(va, b)

    return _norm3_members(list(basis), inner)


def _family_from_generators(rep) -> list[frozenset[int]]:
    """:func:`norm3_family` of the lattice spanned by signed t-vectors, from intersection sizes alone."""
    gens = [(sgn, frozenset(i)) for sgn, i in rep]

    def inner(a, b):
        sa, ia = a if isinstance(a, tuple) else (1, a)
        sb, ib = b
        return sa * sb * t_inner(ia, ib)

    return _norm3_members(gens, inner)


def canonical_family(sets: Sequence[frozenset[int]]) -> tuple:
    """Canonical form of a family of subsets of {1..16} under relabeling of points.

    For each ordering of the sets, every point gets the 0/1 incidence column
    across the sets; the sorted multiset of columns describes the family up to
    point relabeling for that ordering.  The minimum over orderings is a
    complete invariant.
    """
    sets = list(sets)
    best = None
    for order in permutations(range(len(sets))):
        cols = sorted(tuple(int(p in sets[k]) for k in order) for p in POINTS)
        key = tuple(cols)
        if best is None or key < best:
            best = key
    return best


def _signed_options(g: int) -> list[tuple[int, int]]:
    """(sign, |I cap J|) with sign * (|I cap J| - 1) = g."""
    return [(e, k) for e in (1, -1) for k in range(5) if e * (k - 1) == g]


def classify_norm3_triples(target) -> list[TripleOrbit]:
    """Sublattices of A15+ with Gram ``target`` on three norm-3 generators, up to Aut(A15+).

    Aut(A15+) is generated by coordinate permutations and -1, so the first
    generator can be taken to be +t_{1,2,3,4} and the second a fixed
    representative of its orbit under the stabilizer of {1,2,3,4}.
    """
    g = rm.sym_matrix(target)
    if len(g) != 3 or any(g[i][i] != 3 for i in range(3)):
        raise ValueError("target must be a 3x3 Gram matrix with diagonal 3")
    if not rm.is_positive_definite(g) or not rm.is_integral(g):
        raise ValueError("target must be integral and positive definite")
    g12, g13, g23 = int(g[0][1]), int(g[0][2]), int(g[1][2])
    if not (_signed_options(g12) and _signed_options(g13) and _signed_options(g23)):
        raise ValueError("target entries are not inner products of norm-3 vectors")
    first = frozenset((1, 2, 3, 4))
    seen: dict[tuple, TripleOrbit] = {}
    for ey, kj in _signed_options(g12):
        second = frozenset(list(range(1, kj + 1)) + list(range(5, 5 + 4 - kj)))
        # thirds with equal counts in the four Venn regions of (first, second) are
        # related by a permutation fixing both sets, so one per pattern suffices
        regions = (first & second, first - second, second - first, frozenset(POINTS) - first - second)
        patterns = {}
        for third in ALL_FOUR_SETS:
            patterns.setdefault(tuple(len(third & r) for r in regions), third)
        for third in patterns.values():
            ki, kjk = len(first & third), len(second & third)
            for ez in (1, -1):
                if ez * (ki - 1) != g13 or ey * ez * (kjk - 1) != g23:
                    continue
                rep = ((1, tuple(sorted(first))), (ey, tuple(sorted(second))), (ez, tuple(sorted(third))))
                fam = canonical_family(_family_from_generators(rep))
                if fam in seen:
                    continue
                tag = (len(first & second & third), (kj, ki, kjk))
                seen[fam] = TripleOrbit(rep, tag, fam)
    return sorted(seen.values(), key=lambda o: (o.invariant_tag, o.representative))


# ---------------------------------------------------------------- named lattices

VEC_A = t_vector((1, 2, 3, 4))
VEC_B = t_vector((1, 2, 3, 5))
VEC_C = t_vector((1, 6, 7, 8))
VEC_C1 = t_vector((4, 5, 6, 7))
VEC_C2 = t_vector((1, 2, 4, 5))
VEC_C3 = t_vector((1, 2, 3, 6))

GENERATORS = {
    "N": (VEC_A, VEC_B, VEC_C),
    "N'": (VEC_A, VEC_B, VEC_C1),
    "N''": (VEC_A, VEC_B, VEC_C2),
    "N'''": (VEC_A, VEC_B, VEC_C3),
}

# support sets for the pair obstruction, one per named lattice
SUPPORT_SETS = {
    "N": tuple(range(9, 17)),
    "N'": tuple(range(8, 17)),
    "N''": tuple(range(6, 17)),
    "N'''": tuple(range(7, 17)),
}


def generated(name: str) -> Lattice:
    """The rank-3 sublattice of A15+ whose complement is the named lattice."""
    return Lattice(GENERATORS[name])


def named_lattices() -> dict[str, Lattice]:
    big = build_A15_plus()
    return {name: orthogonal_complement(big, generated(name)) for name in GENERATORS}


def project_to_complement(big: Lattice, n_lat: Lattice, v: Sequence) -> Vector:
    """Orthogonal projection of a vector of ``big`` onto the span of ``n_lat``."""
    v = rm.as_vector(v)
    if v not in big:
        raise ValueError("vector is not in the ambient lattice")
    return projector(n_lat)(v)


def pair_types(partition: Sequence[Iterable[int]], u: Sequence, v: Sequence):
    """(type(u), type(v), type(u, v)) as frozensets of 1-based block indices."""
    blocks = [frozenset(b) for b in partition]
    covered = frozenset().union(*blocks)
    if covered != frozenset(POINTS) or sum(len(b) for b in blocks) != DIM:
        raise ValueError("blocks must partition {1, ..., 16}")
    su = frozenset(i + 1 for i, x in enumerate(u) if x)
    sv = frozenset(i + 1 for i, x in enumerate(v) if x)

    def typ(s):
        return frozenset(k + 1 for k, b in enumerate(blocks) if s & b)

    return typ(su), typ(sv), typ(su & sv)


# ---------------------------------------------------------------- minimality


@dataclass(frozen=True)
class MinimalityReport:
    holds: bool
    dual_minimum: Fraction
    witness: tuple[Vector, ...] = ()
    witness_rank: int = 0


def _components(vectors: list[Vector], inner) -> list[list[int]]:
    n = len(vectors)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if inner(vectors[i], vectors[j]) != 0:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def minimality_report(n_lat: Lattice) -> MinimalityReport:
    """Dual minimum above 1 plus a connected sublattice of rank >= rank - 5 spanned by norm <= 3 vectors.

    Norm-2 vectors are tried first; vectors of norm 3 are added only when
    the roots alone give no large enough component.  Each component of the
    non-orthogonality graph spans an irreducible sublattice.
    """
    dmin = minimum(dual(n_lat))
    if dmin <= 1:
        return MinimalityReport(False, dmin)
    need = n_lat.rank - 5
    for bound in (2, 3):
        sv = vectors_up_to(n_lat, bound)
        reps = [v for c, v in zip(sv.coords, sv.vectors) if next(x for x in c if x) > 0]
        best: tuple[int, list[Vector]] = (0, [])
        for comp in _components(reps, n_lat.inner):
            vecs = [reps[i] for i in comp]
            r = rm.rank(vecs)
            if r > best[0]:
                best = (r, vecs)
        if best[0] >= need:
            return MinimalityReport(True, dmin, tuple(best[1]), best[0])
    return MinimalityReport(False, dmin, tuple(best[1]), best[0])


def check_minimality(n_lat: Lattice) -> bool:
    return minimality_report(n_lat).holds
