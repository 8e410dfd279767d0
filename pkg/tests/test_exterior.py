from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import forms, invertible_matrices, small_fractions
from g2homog import linalg
from g2homog.exterior import (Form, Metric, blade, change_coframe, conformal_hodge, contract, hodge, matrix_action,
                              parse_text, to_json_obj, to_text, wedge)


def test_basic_wedge_signs():
    e = lambda i: Form.basis(4, i)
    assert wedge(e(1), e(2)) == Form.basis(4, 1, 2)
    assert wedge(e(2), e(1)) == -Form.basis(4, 1, 2)
    assert wedge(e(1), e(1)).is_zero()
    assert wedge(Form.basis(4, 1, 3), Form.basis(4, 2)) == -Form.basis(4, 1, 2, 3)


@given(forms(degree=2), forms(degree=3))
def test_graded_anticommutativity(a, b):
    assert wedge(a, b) == wedge(b, a) * (-1) ** (2 * 3)


@given(forms(degree=1), forms(degree=3))
def test_odd_forms_anticommute(a, b):
    assert wedge(a, b) == -wedge(b, a)


@given(forms(), forms(), forms())
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(st.lists(small_fractions, min_size=5, max_size=5), forms())
def test_contraction_squares_to_zero(v, a):
    assert contract(v, contract(v, a)).is_zero()


@given(st.lists(small_fractions, min_size=5, max_size=5), forms(degree=2), forms(degree=1))
def test_contraction_is_antiderivation(v, a, b):
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b))
    assert lhs == rhs


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_hodge_star_squared_sign(n):
    g = Metric.euclidean(n)
    for k in range(n + 1):
        a = Form(n, {blade(*range(1, k + 1)): 1})
        assert hodge(hodge(a, g), g) == a * (-1) ** (k * (n - k))


@given(forms(dim=5, degree=2))
def test_hodge_star_squared_random(a):
    assert hodge(hodge(a)) == a * (-1) ** (2 * 3)


def test_hodge_inner_product_identity():
    # a ^ *a = |a|^2 vol
    a = Form(4, {blade(1, 2): 2, blade(3, 4): Fraction(1, 3)})
    assert wedge(a, hodge(a)) == Form.volume(4) * (4 + Fraction(1, 9))


def test_hodge_with_nondiagonal_metric():
    g = Metric.from_matrix([[2, 1], [1, 1]])
    e1 = Form.basis(2, 1)
    # |e^1|^2 = g^{11} = 1, vol = sqrt(det g) e^{12} = e^{12}
    assert wedge(e1, hodge(e1, g)) == Form.volume(2)


def test_orientation_reversal_flips_star():
    a = Form.basis(3, 1)
    assert hodge(a, orientation=-1) == -hodge(a)


def test_conformal_hodge_drops_volume_factor():
    # b = 4 id has sqrt(det b) = 2^7
    a = Form.basis(7, 1, 2, 3) + Form.basis(7, 2, 5)
    b = linalg.scale(4, linalg.identity(7))
    assert hodge(a, Metric.from_matrix(b)) == conformal_hodge(a, b) * 2 ** 7


@given(forms(dim=4), invertible_matrices(4))
def test_change_coframe_roundtrip(a, m):
    assert change_coframe(change_coframe(a, m), linalg.inverse(m)) == a


@given(forms(dim=3), forms(dim=3), invertible_matrices(3))
def test_change_coframe_is_algebra_map(a, b, m):
    assert change_coframe(wedge(a, b), m) == wedge(change_coframe(a, m), change_coframe(b, m))


def test_change_coframe_rejects_singular():
    with pytest.raises(linalg.SingularMatrixError):
        change_coframe(Form.basis(2, 1), [[1, 1], [1, 1]])


@given(forms(dim=4, degree=2), forms(dim=4, degree=1))
def test_matrix_action_is_derivation(a, b):
    mat = [[Fraction(i - j) for j in range(4)] for i in range(4)]
    lhs = matrix_action(wedge(a, b), mat)
    assert lhs == wedge(matrix_action(a, mat), b) + wedge(a, matrix_action(b, mat))


@given(forms(dim=7, max_terms=5))
def test_text_roundtrip(a):
    assert parse_text(to_text(a), 7) == a


def test_text_format():
    a = Form(7, {blade(1, 2, 4, 5): -2, blade(4, 5, 6, 7): 4, blade(1, 2, 6, 7): Fraction(1, 2)})
    assert to_text(a) == "-2*e1245 + 1/2*e1267 + 4*e4567"
    assert to_text(Form(7)) == "0"


def test_json_rendering_uses_rationals():
    a = Form(3, {blade(1, 3): Fraction(-3, 4)})
    obj = to_json_obj(a)
    assert obj[0]["coeff"] == "-3/4"


def test_dimension_mismatch():
    with pytest.raises(Exception):
        wedge(Form.basis(3, 1), Form.basis(4, 1))
