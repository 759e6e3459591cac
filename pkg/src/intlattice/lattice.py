"""Lattices with explicit rational bases, and the algebra built on them.

A :class:`Lattice` is the Z-span of the rows of ``basis`` inside an ambient
rational space.  The ambient inner product is the standard one unless ``form``
is given; a lattice known only through its Gram matrix is represented with the
identity basis and ``form = gram``, so every operation below works uniformly.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Iterable, Sequence

from . import ratmat as rm
from .intlinalg import hnf, left_kernel, lll_gram
from .ratmat import Matrix, Vector


@dataclass(frozen=True)
class Lattice:
    basis: Matrix
    form: Matrix | None = None

    def __post_init__(self):
        if self.form is not None and len(self.form) != self.ambient_dim:
            raise ValueError("ambient form has the wrong size")
        if self.rank and not rm.is_positive_definite(self.gram):
            raise ValueError("basis rows are not linearly independent")

    @property
    def ambient_dim(self) -> int:
        if self.basis:
            return len(self.basis[0])
        return len(self.form) if self.form is not None else 0

    @property
    def rank(self) -> int:
        return len(self.basis)

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        if self.form is None:
            return rm.dot(u, v)
        return rm.dot(rm.vecmat(u, self.form), v)

    def norm(self, v: Sequence[Fraction]) -> Fraction:
        return self.inner(v, v)

    @cached_property
    def gram(self) -> Matrix:
        b = self.basis
        if self.form is None:
            return rm.matmul(b, rm.transpose(b))
        return rm.congruent(self.form, b)

    @cached_property
    def det(self) -> Fraction:
        return rm.determinant(self.gram)

    @cached_property
    def _gram_inv(self) -> Matrix:
        return rm.inverse(self.gram)

    def vector(self, coords: Sequence) -> Vector:
        """Ambient vector with the given coordinates in this basis."""
        return rm.vecmat(rm.as_vector(coords), self.basis)

    def coords(self, v: Sequence) -> Vector | None:
        """Rational coordinates of ``v`` in this basis, or None if v is outside the span."""
        v = rm.as_vector(v)
        rhs = tuple(self.inner(b, v) for b in self.basis)
        x = rm.vecmat(rhs, self._gram_inv)
        if self.vector(x) != v:
            return None
        return x

    def __contains__(self, v) -> bool:
        x = self.coords(v)
        return x is not None and all(c.denominator == 1 for c in x)

    def is_integral(self) -> bool:
        return rm.is_integral(self.gram)

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], form: Matrix | None = None) -> "Lattice":
        """Lattice spanned by an arbitrary (possibly dependent) generating set."""
        rows = rm.as_matrix(gens)
        if not rows:
            raise ValueError("no generators given")
        d = rm.common_denominator(rows)
        h = hnf([[int(x * d) for x in r] for r in rows])
        basis = tuple(tuple(Fraction(x, d) for x in r) for r in h)
        return cls(basis, form)

    def with_basis_coords(self, coords: Sequence[Sequence[int]]) -> "Lattice":
        """Sublattice spanned by integer coordinate rows in this basis."""
        return Lattice(tuple(self.vector(c) for c in coords), self.form)

    def reduced(self) -> "Lattice":
        """Same lattice, LLL-reduced basis."""
        if self.rank == 0:
            return self
        u = lll_gram(self.gram)
        return self.with_basis_coords(u)

    @cached_property
    def canonical_basis(self) -> Matrix:
        """Hermite normal form of the basis after clearing denominators."""
        d = rm.common_denominator(self.basis)
        h = hnf([[int(x * d) for x in r] for r in self.basis])
        return tuple(tuple(Fraction(x, d) for x in r) for r in h)

    def same_as(self, other: "Lattice") -> bool:
        return self.form == other.form and self.canonical_basis == other.canonical_basis


def from_gram(gram) -> Lattice:
    """Lattice with the given integral positive definite Gram matrix.

    When every LDL pivot is a rational square the lattice is realized with
    rational vectors in the standard space; otherwise it is kept abstract
    (identity basis, ambient form equal to the Gram).
    """
    g = rm.sym_matrix(gram)
    if not rm.is_integral(g):
        raise ValueError("Gram matrix is not integral")
    if not rm.is_positive_definite(g):
        raise ValueError("Gram matrix is not positive definite")
    lo, d = rm.ldl(g)
    roots = [_rational_sqrt(x) for x in d]
    if all(r is not None for r in roots):
        basis = tuple(tuple(lo[i][j] * roots[j] for j in range(len(g))) for i in range(len(g)))
        return Lattice(basis)
    return Lattice(rm.identity(len(g)), g)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def standard_lattice(n: int) -> Lattice:
    """Z^n."""
    return Lattice(rm.identity(n))


def dual(lat: Lattice) -> Lattice:
    """Dual lattice: basis ``gram^{-1} * basis`` (the dual basis)."""
    return Lattice(rm.matmul(lat._gram_inv, lat.basis), lat.form)


def is_sublattice(big: Lattice, small: Lattice) -> bool:
    return small.form == big.form and all(v in big for v in small.basis)


def _require_sublattice(big: Lattice, small: Lattice) -> None:
    if not is_sublattice(big, small):
        raise ValueError("lattice is not contained in the ambient lattice")


def _coords_in(big: Lattice, small: Lattice) -> list[list[int]]:
    rows = []
    for v in small.basis:
        x = big.coords(v)
        rows.append([int(c) for c in x])
    return rows


def orthogonal_complement(big: Lattice, sub: Lattice) -> Lattice:
    """``{u in big : (u, v) = 0 for all v in sub}``, with an LLL-reduced basis."""
    _require_sublattice(big, sub)
    # pairing matrix C[i][k] = (b_i, m_k); the complement is the integer left kernel
    c = [[big.inner(b, m) for m in sub.basis] for b in big.basis]
    d = rm.common_denominator(c)
    ker = left_kernel([[int(x * d) for x in row] for row in c])
    if not ker:
        raise ValueError("orthogonal complement is zero")
    return big.with_basis_coords(ker).reduced()


def primitive_closure(big: Lattice, sub: Lattice) -> Lattice:
    """``(sub (x) Q) cap big``: the smallest primitive sublattice containing ``sub``."""
    _require_sublattice(big, sub)
    c = _coords_in(big, sub)
    r = big.rank
    # y with C y = 0, then x with x . y = 0 for all such y
    ct = [list(col) for col in zip(*c)]
    ys = left_kernel(ct)
    if not ys:
        return big
    yt = [list(col) for col in zip(*ys)]
    xs = left_kernel(yt)
    assert len(xs) == len(c) and all(len(x) == r for x in xs)
    return big.with_basis_coords(xs)


def is_primitive(big: Lattice, sub: Lattice) -> bool:
    p = primitive_closure(big, sub)
    return p.det == sub.det


def index(outer: Lattice, inner: Lattice) -> int:
    """``[outer : inner]`` for nested lattices of equal rank."""
    if outer.rank != inner.rank:
        raise ValueError("index needs lattices of equal rank")
    _require_sublattice(outer, inner)
    ratio = inner.det / outer.det
    if ratio.denominator != 1 or isqrt(ratio.numerator) ** 2 != ratio.numerator:
        raise ArithmeticError("determinant ratio is not a square integer")
    return isqrt(ratio.numerator)


def parity(lat: Lattice) -> str:
    if not lat.is_integral():
        raise ValueError("parity is only defined for integral lattices")
    return "even" if all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank)) else "odd"


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    """Orthogonal sum in the concatenated ambient space."""
    ma, mb = a.ambient_dim, b.ambient_dim
    zero = Fraction(0)
    basis = tuple(tuple(v) + (zero,) * mb for v in a.basis) + tuple((zero,) * ma + tuple(v) for v in b.basis)
    if a.form is None and b.form is None:
        form = None
    else:
        fa = a.form if a.form is not None else rm.identity(ma)
        fb = b.form if b.form is not None else rm.identity(mb)
        form = tuple(tuple(r) + (zero,) * mb for r in fa) + tuple((zero,) * ma + tuple(r) for r in fb)
    return Lattice(basis, form)


def sum_of(lats: Sequence[Lattice]) -> Lattice:
    """The lattice generated by several lattices in a common ambient space."""
    form = lats[0].form
    gens = [v for lat in lats for v in lat.basis]
    return Lattice.from_generators(gens, form)


@dataclass(frozen=True)
class CosetEntry:
    representative: Vector
    minimal_norm: Fraction
    multiplicity: int


@dataclass(frozen=True)
class CosetProfile:
    coset_count: int
    entries: tuple[CosetEntry, ...] = field(default_factory=tuple)

    def norms(self) -> dict[Fraction, int]:
        return {e.minimal_norm: e.multiplicity for e in self.entries}


MAX_COSET_RANK = 4


def coset_profile(lat: Lattice, max_rank: int = MAX_COSET_RANK) -> CosetProfile:
    """Minimal norms of the nonzero cosets of ``lat`` in its dual.

    Cosets are keyed by the fractional parts of a dual vector's coordinates in
    an LLL-reduced basis of ``lat``.  Each coset has a member with coordinates
    in [-1/2, 1/2], whose norm is at most ``sum |G_ij| / 4`` for the reduced
    Gram G, so enumerating the dual up to that bound reaches every coset.
    """
    from .shortvec import enumerate_gram

    if lat.rank > max_rank:
        raise ValueError(f"coset_profile is limited to rank <= {max_rank}")
    if not lat.is_integral():
        raise ValueError("coset_profile needs an integral lattice")
    lat = lat.reduced()
    count = int(lat.det)
    bound = Fraction(sum(abs(x) for row in lat.gram for x in row), 4)
    # dual vectors y * G^-1 * B for integer y; adj = det * G^-1 keeps this in integers
    adj = [[int(x * count) for x in row] for row in lat._gram_inv]
    n = lat.rank
    best: dict[tuple, tuple[Fraction, tuple]] = {}
    for y in enumerate_gram(adj, bound * count):
        ya = [sum(y[k] * adj[k][j] for k in range(n)) for j in range(n)]
        key = tuple(c % count for c in ya)
        if not any(key):
            continue
        nrm = Fraction(sum(a * b for a, b in zip(ya, y)), count)
        if key not in best or nrm < best[key][0]:
            best[key] = (nrm, tuple(ya))
    best = {k: (nrm, lat.vector([Fraction(c, count) for c in ya])) for k, (nrm, ya) in best.items()}
    if len(best) != count - 1:
        raise ArithmeticError("coset enumeration is incomplete")
    groups: dict[Fraction, list[Vector]] = defaultdict(list)
    for nrm, v in best.values():
        groups[nrm].append(v)
    entries = tuple(
        CosetEntry(min(groups[nrm]), nrm, len(groups[nrm])) for nrm in sorted(groups)
    )
    return CosetProfile(count, entries)
