from fractions import Fraction
import itertools

import pytest
from hypothesis import given

from conftest import invertible_matrices
from g2homog import linalg
from g2homog.exterior import Form, Metric, change_coframe, wedge
from g2homog.octonion import (NotAG2Form, associated_metric, associator, build_omega, build_star_omega,
                              check_against_star, check_normed_division, corrupt, g2_bilinear, g2_bilinear_slow,
                              g2_structure, is_g2_form, multiplication_from_omega, volume_scale)


@pytest.fixture(scope="module")
def table():
    return multiplication_from_omega(build_omega())


def unit(i):
    return tuple(Fraction(int(k == i)) for k in range(8))


def test_named_products(table):
    assert table.product(1, 2) == unit(3)
    assert table.product(2, 4) == unit(6)
    assert table.product(2, 1) == tuple(-x for x in unit(3))


def test_imaginary_units_square_to_minus_one(table):
    for i in range(1, 8):
        assert table.product(i, i) == tuple(-x for x in unit(0))


def test_normed_division(table):
    report = check_normed_division(table)
    assert report.passed
    assert report.details == {"basis_pairs": 64, "vector_pairs": 100}


def test_alternative(table):
    # associator vanishes when two arguments coincide
    for i, j in itertools.product(range(8), repeat=2):
        assert not any(associator(table, i, i, j))
        assert not any(associator(table, i, j, j))


def test_not_associative(table):
    assert any(associator(table, 1, 2, 4))


@pytest.mark.parametrize("i,j", [(1, 2), (3, 5), (7, 6)])
def test_corrupted_table_fails_with_witness(table, i, j):
    report = check_normed_division(corrupt(table, i, j))
    assert report.status == "fail"
    assert report.witness is not None


def test_metric_of_standard_form():
    g, vol = associated_metric(build_omega())
    assert g == Metric.euclidean(7)
    assert vol == Form.volume(7)


def test_star_and_volume_identity():
    st = g2_structure(build_omega())
    assert st.star_omega == build_star_omega()
    assert wedge(st.omega, st.star_omega) == Form.volume(7) * 7
    assert check_against_star().passed


def test_fast_bilinear_matches_slow_oracle():
    omega = change_coframe(build_omega(), [[1, 1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 2, 0, 0], [0, 0, 1, 0, 0, 0, 0],
                                           [0, 0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 1, 0],
                                           [0, 0, 0, 0, 0, 0, 3]])
    assert g2_bilinear(omega) == g2_bilinear_slow(omega)


@given(invertible_matrices(7))
def test_bilinear_transforms_covariantly(p):
    b = g2_bilinear(change_coframe(build_omega(), p))
    expected = linalg.scale(linalg.det(p), linalg.matmul(linalg.transpose(p), p))
    assert b == expected


def test_scaling():
    g, vol = associated_metric(build_omega() * 8)
    assert g == Metric.from_matrix(linalg.scale(4, linalg.identity(7)))
    assert vol == Form.volume(7) * 128


def test_irrational_scale_is_reported():
    _, s = volume_scale(build_omega() * 2)
    assert s is None


def test_reversed_orientation():
    omega = change_coframe(build_omega(), linalg.scale(-1, linalg.identity(7)))
    st = g2_structure(omega)
    assert st.orientation == -1
    assert st.metric == Metric.euclidean(7)


@pytest.mark.parametrize("omega", [Form.basis(7, 1, 2, 3), Form.basis(7, 1, 2, 3) + Form.basis(7, 4, 5, 6)])
def test_degenerate_forms_rejected(omega):
    assert not is_g2_form(omega)
    with pytest.raises(NotAG2Form):
        associated_metric(omega)


def test_wrong_degree_rejected():
    with pytest.raises(NotAG2Form):
        g2_bilinear(Form.basis(7, 1, 2))
