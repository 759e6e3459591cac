from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from intlattice import ratmat as rm
from strategies import definite_integer_gram, symmetric_rational, unimodular

F = Fraction


def test_determinant_examples():
    assert rm.determinant(rm.identity(3)) == 1
    assert rm.determinant(rm.as_matrix([[3, 2, 2], [2, 3, 2], [2, 2, 3]])) == 7
    assert rm.determinant(rm.as_matrix([[3, 2, 0], [2, 3, 0], [0, 0, 3]])) == 15


def test_determinant_needs_row_swap_and_rationals():
    assert rm.determinant(rm.as_matrix([[0, 1], [1, 0]])) == -1
    assert rm.determinant(rm.as_matrix([["1/2", "1/3"], ["1/3", "1/4"]])) == F(1, 72)
    assert rm.determinant(rm.as_matrix([[1, 2], [2, 4]])) == 0


def test_psd_examples():
    assert rm.is_positive_semidefinite(rm.as_matrix([[0, 0], [0, 0]]))
    assert not rm.is_positive_semidefinite(rm.as_matrix([["3/5", "-7/5"], ["-7/5", "3/5"]]))
    assert rm.is_positive_semidefinite(rm.as_matrix([[1, 1], [1, 1]]))
    # zero pivot with a nonzero row forces indefiniteness
    assert not rm.is_positive_semidefinite(rm.as_matrix([[0, 1], [1, 5]]))


def test_pd_examples():
    assert rm.is_positive_definite(rm.identity(2))
    assert rm.is_positive_definite(rm.as_matrix([[3, 2, 2], [2, 3, 2], [2, 2, 3]]))
    assert not rm.is_positive_definite(rm.as_matrix([[1, 2], [2, 1]]))


def test_rational_text_round_trip():
    assert rm.as_rational("-6/4") == F(-3, 2)
    assert rm.format_rational(F(-3, 2)) == "-3/2"
    assert rm.format_rational(F(4, 2)) == "2"
    with pytest.raises(TypeError):
        rm.as_rational(0.5)


def test_sym_matrix_rejects_asymmetric():
    with pytest.raises(ValueError):
        rm.sym_matrix([[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        rm.sym_matrix([[1, 2, 3], [2, 1, 3]])


def test_inverse_and_ldl():
    g = rm.as_matrix([[3, 2, 0], [2, 3, 0], [0, 0, 3]])
    assert rm.matmul(g, rm.inverse(g)) == rm.identity(3)
    lo, d = rm.ldl(g)
    rebuilt = rm.matmul(rm.matmul(lo, rm.diagonal(d)), rm.transpose(lo))
    assert rebuilt == g
    with pytest.raises(ZeroDivisionError):
        rm.inverse(rm.as_matrix([[1, 1], [1, 1]]))


@given(definite_integer_gram(n_max=4), st.data())
def test_determinant_congruence(g, data):
    p = data.draw(unimodular(len(g)))
    pm = rm.as_matrix(p)
    gm = rm.as_matrix(g)
    assert rm.determinant(rm.congruent(gm, pm)) == rm.determinant(pm) ** 2 * rm.determinant(gm)
    assert rm.determinant(pm) in (1, -1)


@given(symmetric_rational(n_max=3))
def test_pd_implies_psd(m):
    m = rm.as_matrix(m)
    if rm.is_positive_definite(m):
        assert rm.is_positive_semidefinite(m)


def _descartes_psd(m) -> bool:
    """PSD via sign changes of the characteristic polynomial (all roots are real)."""
    lam = sympy.Symbol("lam")
    poly = sympy.Matrix(m).charpoly(lam).as_expr()
    # negative eigenvalues of M are positive roots of p(-lam)
    q = sympy.Poly(sympy.expand(poly.subs(lam, -lam)), lam)
    coeffs = [c for c in q.all_coeffs() if c != 0]
    changes = sum(1 for a, b in zip(coeffs, coeffs[1:]) if (a > 0) != (b > 0))
    return changes == 0


@given(symmetric_rational(n_max=3))
def test_psd_agrees_with_descartes_oracle(m):
    mm = rm.as_matrix(m)
    assert rm.is_positive_semidefinite(mm) == _descartes_psd([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m])


@given(symmetric_rational(n_min=2, n_max=3))
def test_psd_implies_nonnegative_on_integer_box(m):
    mm = rm.as_matrix(m)
    if rm.is_positive_semidefinite(mm):
        n = len(m)
        for x in product(range(-3, 4), repeat=n):
            assert rm.dot(rm.vecmat(rm.as_vector(x), mm), rm.as_vector(x)) >= 0


def test_rank_and_solve_left():
    a = rm.as_matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rm.rank(a) == 2
    b = rm.as_matrix([[1, 0, 1], [0, 1, 1]])
    assert rm.solve_left(b, rm.as_vector([2, 3, 5])) == (2, 3)
    assert rm.solve_left(b, rm.as_vector([1, 1, 1])) is None
