import random
from fractions import Fraction
from itertools import product
from math import isqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intlattice import ratmat as rm
from intlattice.a15 import GENERATORS, SUPPORT_SETS, VEC_A, VEC_B, generated, root
from intlattice.eutactic import (
    ALL_PAIRS_VIOLATE,
    BUDGET_EXHAUSTED,
    INTEGRABLE,
    NOT_INTEGRABLE,
    PRECONDITION_FAILED,
    decide_s_integrable,
    is_eutactic_star,
    pair_psd_filter,
    projector,
    refute_2_integrability,
)
from intlattice.lattice import Lattice, from_gram, standard_lattice
from strategies import definite_integer_gram

F = Fraction


def test_star_examples():
    e1, e2 = (1, 0), (0, 1)
    assert is_eutactic_star([e1, e2, (-1, 0), (0, -1)], [e1, e2], 2)
    assert is_eutactic_star([e1, e2], [e1, e2], 1)
    assert not is_eutactic_star([e1, e2], [e1, e2], 2)
    assert not is_eutactic_star([e1, e1], [e1, e2], 1)
    with pytest.raises(ValueError):
        is_eutactic_star([(1, 0, 1)], [(1, 0, 0)], 1)


@pytest.mark.parametrize("seed", range(5))
def test_projected_frame_is_a_star(seed):
    rng = random.Random(seed)
    n, k = 5, rng.randint(1, 4)
    basis = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
    if rm.rank(rm.as_matrix(basis)) < k:
        basis = [[int(i == j) for j in range(n)] for i in range(k)]
    rho = projector(Lattice.from_generators(basis))
    for c in (1, 2, 3):
        frame = [rho([c * int(i == j) for j in range(n)]) for i in range(n)]
        assert is_eutactic_star(frame, basis, c * c)
        assert not is_eutactic_star(frame, basis, c * c + 1)


def test_pair_filter_examples():
    assert not pair_psd_filter((1, 1), (1, -1), 1)
    assert pair_psd_filter((1, 0), (0, 1), 2)


def _vector_with_norm(nrm: Fraction, dim: int = 4):
    """A rational vector of the given norm (sum of four squares of the numerator * denominator)."""
    num = nrm.numerator * nrm.denominator
    r = isqrt(num)
    for xs in product(range(r + 1), repeat=dim):
        if sum(x * x for x in xs) == num:
            return [F(x, nrm.denominator) for x in xs]
    raise AssertionError("four squares always suffice")


def test_pair_filter_on_projected_root_norms():
    su = _vector_with_norm(F(19, 15))
    sv = _vector_with_norm(F(8, 5))
    assert rm.dot(su, su) == F(19, 15) and rm.dot(sv, sv) == F(8, 5)
    assert pair_psd_filter(su, sv, 1)
    assert not pair_psd_filter(su, _vector_with_norm(F(5, 3)), 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_standard_lattice_is_2_integrable(n):
    lat = standard_lattice(n)
    res = decide_s_integrable(lat, 2)
    assert res.status == INTEGRABLE
    assert is_eutactic_star(res.certificate.expanded(), lat.basis, 2, lat.form)


def test_gram_two_is_2_integrable():
    lat = from_gram([[2]])
    res = decide_s_integrable(lat, 2)
    assert res.status == INTEGRABLE
    assert is_eutactic_star(res.certificate.expanded(), lat.basis, 2, lat.form)
    # the vector v itself (norm 2, multiplicity 1) is a certificate too
    assert is_eutactic_star([lat.basis[0]], lat.basis, 2, lat.form)


def test_non_integral_scaling_is_refused():
    lat = Lattice.from_generators([["1/2", 0], [0, 1]])
    assert decide_s_integrable(lat, 1).status == NOT_INTEGRABLE
    with pytest.raises(ValueError):
        decide_s_integrable(standard_lattice(1), 0)


def test_budget_exhaustion_is_reported(named):
    res = decide_s_integrable(named["N"], 2, budget=1)
    assert res.status == BUDGET_EXHAUSTED and res.certificate is None


def test_a2_is_integrable_at_scale_one():
    a2 = from_gram([[2, -1], [-1, 2]])
    res = decide_s_integrable(a2, 1)
    assert res.status == INTEGRABLE
    assert is_eutactic_star(res.certificate.expanded(), a2.basis, 1, a2.form)


# ---- brute-force oracle: an isometric copy of sqrt(s) L in Z^8 ----

_DIM = 8
_MAX_NORM = 12


def _short_integer_vectors():
    r = isqrt(_MAX_NORM)
    axis = np.arange(-r, r + 1)
    grid = np.stack(np.meshgrid(*([axis] * _DIM), indexing="ij"), axis=-1).reshape(-1, _DIM)
    norms = (grid * grid).sum(axis=1)
    keep = (norms > 0) & (norms <= _MAX_NORM)
    return grid[keep], norms[keep]


_VECS, _NORMS = None, None


def _embeds(gram, s) -> bool:
    global _VECS, _NORMS
    if _VECS is None:
        _VECS, _NORMS = _short_integer_vectors()
    g = [[s * x for x in row] for row in gram]
    first = _VECS[_NORMS == g[0][0]]
    if len(g) == 1:
        return len(first) > 0
    # Z^8 is symmetric under signed permutations: fix v1 with nonincreasing nonnegative entries
    canon = first[np.all(first >= 0, axis=1) & np.all(np.diff(first, axis=1) <= 0, axis=1)]
    second = _VECS[_NORMS == g[1][1]]
    for v1 in canon:
        if np.any(second @ v1 == g[0][1]):
            return True
    return False


def _small_grams():
    for a in range(1, 5):
        yield [[a]]
    for a in range(1, 5):
        for c in range(a, 5):
            for b in range(-4, 5):
                if a * c - b * b > 0:
                    yield [[a, b], [b, c]]


@pytest.mark.parametrize("s", [1, 2, 3])
def test_matches_embedding_oracle_in_small_rank(s):
    checked = 0
    for g in _small_grams():
        if any(abs(x) > 4 for row in g for x in row):
            continue
        res = decide_s_integrable(from_gram(g), s)
        assert res.status != BUDGET_EXHAUSTED
        assert (res.status == INTEGRABLE) == _embeds(g, s), (g, s)
        checked += 1
    assert checked == 46  # 4 of rank 1, 42 of rank 2 with a <= c


def _certificate_checks(lat, cert):
    star = cert.expanded()
    assert is_eutactic_star(star, lat.basis, cert.scale, lat.form)
    s = cert.scale
    # counting bound: integer inner products strictly below sqrt(s (w, w)) when no star vector is parallel to w
    for c in product(range(-1, 2), repeat=lat.rank):
        if not any(c):
            continue
        w = lat.vector(c)
        if any(rm.rank([w, u]) < 2 for u in star):
            continue
        t = s * lat.norm(w)
        assert t.denominator == 1
        hits = sum(1 for u in star if lat.inner(w, u) != 0)
        assert t <= hits * isqrt(int(t) - 1) ** 2
    if all(lat.norm(u) > 1 for u in star):
        classes = [u for u, _ in cert.entries]
        assert all(m == 1 for _, m in cert.entries)
        assert len({min(u, rm.vec_scale(-1, u)) for u in classes}) == len(classes)


@settings(max_examples=40)
@given(definite_integer_gram(n_max=3, entry=1), st.sampled_from([1, 2, 3]))
def test_certificates_are_sound(g, s):
    lat = from_gram(g)
    res = decide_s_integrable(lat, s, budget=10**6)
    if res.status == INTEGRABLE:
        _certificate_checks(lat, res.certificate)


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_refutation_and_search_agree(a15p, named, name):
    cert = refute_2_integrability(a15p, generated(name), SUPPORT_SETS[name])
    assert cert.mode == ALL_PAIRS_VIOLATE and cert.proves_non_integrable
    assert decide_s_integrable(named[name], 2).status == NOT_INTEGRABLE


def test_refutation_precondition_failure(a15p):
    cert = refute_2_integrability(a15p, Lattice.from_generators([root(1, 2)]), (1, 2, 3))
    assert cert.mode == PRECONDITION_FAILED and not cert.proves_non_integrable
    assert cert.witness[0] == "root-outside-complement"


def test_refutation_on_larger_complements(a15p):
    # <a>-perp and <a, b>-perp contain N, so they cannot be 2-integrable either
    for gens, x in (([VEC_A], (1, 2, 3, 4)), ([VEC_A, VEC_B], (9, 10, 11))):
        assert refute_2_integrability(a15p, Lattice.from_generators(gens), x).proves_non_integrable


def test_refutation_rejects_bad_input(a15p):
    with pytest.raises(ValueError):
        refute_2_integrability(a15p, generated("N"), (1, 2))
    with pytest.raises(ValueError):
        refute_2_integrability(standard_lattice(16).with_basis_coords([[2 * int(i == j) for j in range(16)] for i in range(16)]), generated("N"), (1, 2, 3))
