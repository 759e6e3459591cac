"""Eutactic stars and the s-integrability decision.

A lattice L is s-integrable exactly when its dual contains a eutactic star of
scale s.  Star vectors have norm at most s, so the question becomes a finite
system of linear equations in nonnegative integer multiplicities attached to
the dual vectors of norm at most s.  :func:`decide_s_integrable` solves that
system by depth-first branch and bound; :func:`refute_2_integrability` is the
pair-based obstruction for sublattices of a unimodular lattice whose norm-2
vectors are the ``e_i - e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import ratmat as rm
from .lattice import Lattice, dual, orthogonal_complement
from .ratmat import Vector
from .shortvec import minimum, vectors_up_to

INTEGRABLE = "integrable"
NOT_INTEGRABLE = "not-integrable"
BUDGET_EXHAUSTED = "budget-exhausted"

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class EutacticCertificate:
    scale: int
    entries: tuple[tuple[Vector, int], ...]

    def expanded(self) -> list[Vector]:
        """The star as a list, each vector repeated by its multiplicity."""
        return [v for v, m in self.entries for _ in range(m)]


@dataclass(frozen=True)
class IntegrabilityResult:
    status: str
    certificate: EutacticCertificate | None = None
    nodes: int = 0
    variables: int = 0
    equations: int = 0


def is_eutactic_star(vectors: Sequence, subspace_basis: Sequence, s, form=None) -> bool:
    """Whether ``vectors`` satisfy sum_i (w, v_i)^2 = s (w, w) on the span of ``subspace_basis``.

    The quadratic identity is checked in its polarized form on all pairs of
    basis vectors, which is equivalent.  ``form`` is the ambient inner product
    (standard when omitted), as for a Gram-only :class:`Lattice`.
    """
    basis = rm.as_matrix(subspace_basis)
    vecs = [rm.as_vector(v) for v in vectors]
    s = rm.as_rational(s)
    span = Lattice(basis, rm.as_matrix(form) if form is not None else None)
    for v in vecs:
        if span.coords(v) is None:
            raise ValueError("star vector lies outside the subspace")
    pair = [[span.inner(w, v) for v in vecs] for w in basis]
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            lhs = sum((x * y for x, y in zip(pair[a], pair[b])), Fraction(0))
            if lhs != s * span.inner(basis[a], basis[b]):
                return False
    return True


def pair_psd_filter(su: Sequence, sv: Sequence, delta) -> bool:
    """``(2 - |su|^2)(2 - |sv|^2) >= (delta/2)^2``: necessary for a scale-2 pair."""
    su, sv = rm.as_vector(su), rm.as_vector(sv)
    delta = rm.as_rational(delta)
    return (2 - rm.dot(su, su)) * (2 - rm.dot(sv, sv)) >= (delta / 2) ** 2


def _scaled_gram_compatible(s: int, a: Fraction, b: Fraction, c: Fraction) -> bool:
    """Whether s*I - [[a, b], [b, c]] is positive semidefinite."""
    return rm.is_positive_semidefinite([[s - a, -b], [-b, s - c]])


class _BudgetExhausted(Exception):
    pass


class _Search:
    """Nonnegative integer solutions of ``A x = rhs`` with bounds and pairwise exclusions.

    All coefficients are nonnegative, so an equation's residual can only
    shrink; a node fails as soon as some residual turns negative, exceeds what
    the still-free variables can supply, or is not divisible by their gcd.
    """

    def __init__(self, rows, rhs, ub, conflicts, budget):
        self.n = len(ub)
        self.rows = rows
        self.cols: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, row in enumerate(rows):
            for k, c in enumerate(row):
                if c:
                    self.cols[k].append((e, c))
        self.res = list(rhs)
        self.ub = list(ub)
        self.conflicts = conflicts
        self.budget = budget
        self.nodes = 0
        self.x: list[int | None] = [None] * self.n
        self.cap = [sum(c * self.ub[k] for k, c in enumerate(row)) for row in rows]
        self.free = [sum(1 for k, c in enumerate(row) if c and self.ub[k]) for row in rows]
        # variables that appear in no equation are irrelevant; fix them to 0
        for k in range(self.n):
            if not self.cols[k]:
                self.x[k] = 0

    def _eq_ok(self, e: int) -> bool:
        r = self.res[e]
        if r < 0 or r > self.cap[e]:
            return False
        if r and self.free[e] == 0:
            return False
        return True

    def _gcd_ok(self, e: int) -> bool:
        r = self.res[e]
        if r == 0:
            return True
        g = 0
        for k, c in enumerate(self.rows[e]):
            if c and self.x[k] is None and self.ub[k]:
                g = gcd(g, c)
                if g == 1:
                    return True
        return g != 0 and r % g == 0

    def _set_ub(self, k: int, new: int, log: list) -> None:
        old = self.ub[k]
        if new >= old:
            return
        log.append(("ub", k, old))
        self.ub[k] = new
        for e, c in self.cols[k]:
            self.cap[e] -= c * (old - new)
            if new == 0:
                self.free[e] -= 1

    def _assign(self, k: int, v: int, log: list) -> set[int]:
        touched = set()
        log.append(("x", k, self.ub[k]))
        self.x[k] = v
        old = self.ub[k]
        for e, c in self.cols[k]:
            self.res[e] -= c * v
            self.cap[e] -= c * old
            if old:
                self.free[e] -= 1
            touched.add(e)
        if v:
            for l in self.conflicts[k]:
                if self.x[l] is None and self.ub[l]:
                    self._set_ub(l, 0, log)
                    touched.update(e for e, _ in self.cols[l])
        return touched

    def _undo(self, log: list, mark: int) -> None:
        while len(log) > mark:
            kind, k, old = log.pop()
            if kind == "x":
                v = self.x[k]
                self.x[k] = None
                for e, c in self.cols[k]:
                    self.res[e] += c * v
                    self.cap[e] += c * old
                    if old:
                        self.free[e] += 1
            else:
                cur = self.ub[k]
                self.ub[k] = old
                for e, c in self.cols[k]:
                    self.cap[e] += c * (old - cur)
                    if cur == 0:
                        self.free[e] += 1

    def _pick(self) -> tuple[int, int] | None:
        """Most constrained open equation, then its free variable with the largest coefficient."""
        best_e, best_free = -1, None
        for e in range(len(self.rows)):
            if self.res[e] > 0 and (best_free is None or self.free[e] < best_free):
                best_e, best_free = e, self.free[e]
        if best_e < 0:
            return None
        row = self.rows[best_e]
        k = max(
            (k for k, c in enumerate(row) if c and self.x[k] is None and self.ub[k]),
            key=lambda k: (row[k], -k),
        )
        return best_e, k

    def run(self) -> list[int] | None:
        if not all(self._eq_ok(e) and self._gcd_ok(e) for e in range(len(self.rows))):
            return None
        log: list = []
        return self._dfs(log)

    def _dfs(self, log: list) -> list[int] | None:
        choice = self._pick()
        if choice is None:
            return [v if v is not None else 0 for v in self.x]
        e, k = choice
        c = self.rows[e][k]
        top = min(self.ub[k], self.res[e] // c)
        for v in range(top, -1, -1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExhausted
            mark = len(log)
            touched = self._assign(k, v, log)
            if all(self._eq_ok(t) for t in touched) and all(self._gcd_ok(t) for t in touched):
                found = self._dfs(log)
                if found is not None:
                    return found
            self._undo(log, mark)
        return None


def _antipodal_representatives(coords, vectors, norms):
    """Keep one vector from each pair {u, -u}: the one whose first nonzero coordinate is positive."""
    out = []
    for c, v, n in zip(coords, vectors, norms):
        first = next(x for x in c if x)
        if first > 0:
            out.append((v, n))
    return out


def _test_vectors(lat: Lattice, extra: bool) -> list[Vector]:
    """``w_i + w_j`` for i <= j, optionally followed by the minimal vectors of the lattice.

    The minimal vectors add no new solutions (their equations are linear
    consequences of the first family) but they prune much earlier.
    """
    b = lat.basis
    tests = [rm.vec_add(b[i], b[j]) for i in range(lat.rank) for j in range(i, lat.rank)]
    if extra:
        m = minimum(lat)
        sv = vectors_up_to(lat, m)
        tests += [v for v, _ in _antipodal_representatives(sv.coords, sv.vectors, sv.norms)]
    return tests


def decide_s_integrable(
    lat: Lattice, s: int, budget: int = DEFAULT_BUDGET, *, prune_with_minimal_vectors: bool = True
) -> IntegrabilityResult:
    """Decide whether sqrt(s) * lat embeds isometrically in some Z^n.

    Returns ``integrable`` with a certificate, ``not-integrable`` after a
    complete search, or ``budget-exhausted`` when the node limit is reached
    first (in which case nothing has been decided).
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("scale must be a positive integer")
    gram = lat.gram
    if not all((s * x).denominator == 1 for row in gram for x in row):
        # sqrt(s) L must be integral to sit inside Z^n
        return IntegrabilityResult(NOT_INTEGRABLE)
    sv = vectors_up_to(dual(lat), s)
    cand = _antipodal_representatives(sv.coords, sv.vectors, sv.norms)
    us = [v for v, _ in cand]
    norms = [n for _, n in cand]
    tests = _test_vectors(lat, prune_with_minimal_vectors)
    rows, rhs = [], []
    for w in tests:
        row = [lat.inner(w, u) ** 2 for u in us]
        target = s * lat.norm(w)
        d = rm.common_denominator([row + [target]])
        rows.append([int(c * d) for c in row])
        rhs.append(int(target * d))
    # a star vector u with multiplicity x satisfies x |u|^4 <= s |u|^2
    ub = [int(s // n) for n in norms]
    conflicts: list[list[int]] = [[] for _ in us]
    for i in range(len(us)):
        for j in range(i + 1, len(us)):
            b = lat.inner(us[i], us[j])
            if not _scaled_gram_compatible(s, norms[i], b, norms[j]):
                conflicts[i].append(j)
                conflicts[j].append(i)
    search = _Search(rows, rhs, ub, conflicts, budget)
    try:
        x = search.run()
    except _BudgetExhausted:
        return IntegrabilityResult(BUDGET_EXHAUSTED, None, search.nodes, len(us), len(rows))
    if x is None:
        return IntegrabilityResult(NOT_INTEGRABLE, None, search.nodes, len(us), len(rows))
    cert = EutacticCertificate(s, tuple((us[k], x[k]) for k in range(len(us)) if x[k]))
    return IntegrabilityResult(INTEGRABLE, cert, search.nodes, len(us), len(rows))


PRECONDITION_FAILED = "precondition-failed"
ALL_PAIRS_VIOLATE = "all-pairs-violate"
PAIR_NOT_EXCLUDED = "pair-not-excluded"


@dataclass(frozen=True)
class RefutationCertificate:
    """Outcome of the pair obstruction.

    Only ``mode == "all-pairs-violate"`` proves non-2-integrability; the other
    modes record why no proof was obtained (``witness`` names the failing
    precondition or pair).
    """

    support_set: tuple[int, ...]
    mode: str
    witness: object = None
    pairs_checked: int = 0
    details: dict = field(default_factory=dict)

    @property
    def proves_non_integrable(self) -> bool:
        return self.mode == ALL_PAIRS_VIOLATE


def projector(n_lat: Lattice):
    """Orthogonal projection of ambient vectors onto the span of ``n_lat``."""
    b = n_lat.basis
    ginv = rm.inverse(n_lat.gram)

    def rho(v: Sequence) -> Vector:
        v = rm.as_vector(v)
        coeff = rm.vecmat(tuple(n_lat.inner(v, x) for x in b), ginv)
        return rm.vecmat(coeff, b)

    return rho


def _support(v: Sequence) -> frozenset[int]:
    return frozenset(i + 1 for i, x in enumerate(v) if x)


def refute_2_integrability(big: Lattice, m_lat: Lattice, support: Iterable[int]) -> RefutationCertificate:
    """Try to prove that the orthogonal complement of ``m_lat`` in ``big`` is not 2-integrable.

    ``big`` must be a unimodular lattice in the standard ambient space whose
    norm-2 vectors are all of the form e_i - e_j; ``support`` is a set of
    1-based ambient coordinates of size at least 3.
    """
    x_set = frozenset(support)
    key = tuple(sorted(x_set))
    if len(x_set) < 3:
        raise ValueError("support set needs at least three coordinates")
    if big.form is not None or big.det != 1:
        raise ValueError("ambient lattice must be unimodular in the standard space")
    n_lat = orthogonal_complement(big, m_lat)
    rho = projector(n_lat)
    roots = vectors_up_to(big, 2).with_norm(2)
    details = {"roots": len(roots), "complement_rank": n_lat.rank, "complement_det": n_lat.det}

    dual_min = minimum(dual(n_lat))
    details["dual_minimum"] = dual_min
    if dual_min <= 1:
        return RefutationCertificate(key, PRECONDITION_FAILED, ("dual-minimum", dual_min), 0, details)

    proj = [rho(r) for r in roots]
    images = set(proj)
    short_dual = vectors_up_to(dual(n_lat), 2).vectors
    missing = [w for w in short_dual if w not in images]
    if missing:
        return RefutationCertificate(key, PRECONDITION_FAILED, ("unlifted-dual-vector", missing[0]), 0, details)

    for r in roots:
        if _support(r) <= x_set and r not in n_lat:
            return RefutationCertificate(key, PRECONDITION_FAILED, ("root-outside-complement", r), 0, details)

    pnorm = [rm.dot(p, p) for p in proj]
    supports = [_support(r) for r in roots]
    position = {r: i for i, r in enumerate(roots)}
    negation = [position.get(rm.vec_scale(-1, r)) for r in roots]
    checked = 0
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            u, v = roots[i], roots[j]
            if negation[i] == j:
                continue
            if not (supports[i] & supports[j] & x_set):
                continue
            if (2 - pnorm[i]) * (2 - pnorm[j]) < Fraction(1, 4):
                continue
            checked += 1
            b = rm.dot(proj[i], proj[j])
            if _scaled_gram_compatible(2, pnorm[i], b, pnorm[j]):
                return RefutationCertificate(key, PAIR_NOT_EXCLUDED, (u, v), checked, details)
    return RefutationCertificate(key, ALL_PAIRS_VIOLATE, None, checked, details)
