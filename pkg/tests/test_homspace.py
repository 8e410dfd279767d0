from fractions import Fraction

import pytest
from hypothesis import given

from conftest import forms
from g2homog import linalg
from g2homog.catalog import get_case
from g2homog.exterior import Form, change_coframe, contract, parse_text
from g2homog.homspace import (HomogeneousSpace, NotBasic, NotReductive, is_basic, isotropy_representation,
                              maurer_cartan, nearly_kaehler_product_check, quotient_d, structure_from_coframe,
                              verify_case_g2_structure)
from g2homog.liealg import direct_sum_all, su2, u1
from g2homog.models import SumModel
from g2homog.octonion import build_omega

MC_GOLDEN = ["0", "0", "e45 - e67", "-2*e35 + 2*e58", "2*e34 - 2*e48", "2*e37 + 2*e78", "-2*e36 - 2*e68",
             "e45 + e67"]
STAR_GOLDEN = "-2*e1245 + 2*e1267 - 2*e1346 - 2*e1357 - 2*e2347 + 2*e2356 + 4*e4567"


@pytest.fixture(scope="module")
def rec():
    return get_case("su2su2-u1-t2")


@pytest.fixture(scope="module")
def hs(rec):
    return rec.space()


def test_maurer_cartan_golden(hs):
    de = hs.mc().de
    assert len(de) == 8
    for i, text in enumerate(MC_GOLDEN):
        assert de[i] == parse_text(text, 8), f"de^{i + 1}"


def test_d_squared_vanishes(hs):
    assert hs.mc().d_squared_violations() == []


@given(forms(dim=8, degree=2, max_terms=5))
def test_d_squared_on_random_forms(a):
    g = SumModel(("su2", "su2", "u1", "u1")).algebra()
    mc = maurer_cartan(g)
    assert mc.d(mc.d(a)).is_zero()


def test_d_is_antiderivation(hs):
    mc = hs.mc()
    a, b = Form.basis(8, 4), Form.basis(8, 3, 5)
    lhs = mc.d(a ^ b)
    assert lhs == (mc.d(a) ^ b) - (a ^ mc.d(b))


def _lie_derivative_e8(a, mc):
    # Cartan: L_X = i_X d + d i_X, evaluated on the full coframe
    x = [0] * 7 + [1]
    return contract(x, mc.d(a)) + mc.d(contract(x, a))


@pytest.mark.parametrize("text,expected", [
    ("e45 + e67", True),
    ("e45", True),  # e8 rotates the (4, 5)-plane, which preserves its area form
    ("e18", False),
    ("e34", False),
    ("e1 + e2", True),
])
def test_basic_forms(hs, text, expected):
    a = parse_text(text, 8)
    assert is_basic(a, hs) is expected
    horizontal = not any(m & (1 << 7) for m in a.terms)
    assert (horizontal and _lie_derivative_e8(a, hs.mc()).is_zero()) is expected


def test_quotient_d_rejects_non_basic(hs):
    with pytest.raises(NotBasic):
        quotient_d(parse_text("e18", 8), hs)


def test_isotropy_weights(hs):
    rep = isotropy_representation(hs)
    assert rep.dim == 7
    (a,) = rep.matrices
    assert linalg.add(a, linalg.transpose(a)) == linalg.zeros(7)


def test_headline_star_omega(hs, rec):
    cand = structure_from_coframe(rec.witness_coframe())
    assert cand.star == parse_text(STAR_GOLDEN, 7)
    assert cand.orientation == 1
    assert quotient_d(hs.embed(cand.star), hs).is_zero()


def test_omega_itself_is_not_closed(hs, rec):
    cand = structure_from_coframe(rec.witness_coframe())
    assert not quotient_d(hs.embed(cand.omega), hs).is_zero()


def test_case_report(hs, rec):
    rep = verify_case_g2_structure(hs, rec.witness_coframe(), "u(1)")
    assert rep.passed
    assert rep.cosymplectic is True
    assert rep.matched_label == "u(1)"


def test_search_without_witness(hs):
    rep = verify_case_g2_structure(hs, None, "u(1)")
    assert rep.passed


def test_structure_from_identity_coframe():
    cand = structure_from_coframe(linalg.identity(7))
    assert cand.omega == build_omega()


def test_negative_coframe_orientation():
    p = linalg.identity(7)
    p[0][0] = Fraction(-1)
    cand = structure_from_coframe(p)
    assert cand.orientation == -1
    assert cand.omega == change_coframe(build_omega(), p)


def test_non_reductive_complement_rejected():
    model = SumModel(("su2", "su2", "u1", "u1"))
    h = [model.vector({"0.s1": 1, "1.s1": 1})]
    m = [model.vector(v) for v in ({"2.u": 1}, {"3.u": 1}, {"0.s1": 1, "1.s1": -1}, {"0.s2": 1},
                                   {"0.s3": 1, "0.s1": 1, "1.s1": 1}, {"1.s2": 1}, {"1.s3": 1})]
    with pytest.raises(NotReductive):
        HomogeneousSpace(model.algebra(), h, model.metric(), m_basis=m)


def test_default_complement_is_orthogonal():
    model = SumModel(("su2", "su2", "u1", "u1"))
    h = [model.vector({"0.s1": 1, "1.s1": 1})]
    hs = HomogeneousSpace(model.algebra(), h, model.metric())
    assert hs.dim_m == 7
    assert hs.mc().d_squared_violations() == []


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(-1), Fraction(3, 2), Fraction(-2, 7)])
def test_nearly_kaehler_product(lam):
    out = nearly_kaehler_product_check(lam)
    assert out["d_star_omega"] == "0"
    assert out["alpha_wedge_theta_re"] == "0"
    assert out["status"] == "pass"


def test_nearly_kaehler_needs_nonzero_lambda():
    with pytest.raises(ValueError):
        nearly_kaehler_product_check(Fraction(0))
