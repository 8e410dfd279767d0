"""Acceptance criteria 1-10, exact arithmetic throughout.

python3 tests/test_acceptance.py      one PASS/FAIL line per criterion
python3 -m pytest tests/test_acceptance.py -v
"""

from fractions import Fraction
import sys

import pytest

from g2homog.catalog import all_cases, center_bound_filter, enumerate_candidates, get_case, qklm_check
from g2homog.cli import run_all
from g2homog.exterior import Form, Metric, hodge, parse_text
from g2homog.homspace import nearly_kaehler_product_check, quotient_d, structure_from_coframe
from g2homog.liealg import (Representation, WeightModule, cartan_g2_action, g2_algebra, invariant_forms,
                            spin_rep, stabilizer_algebra, weight_decomposition)
from g2homog.octonion import (associated_metric, build_omega, build_star_omega, check_normed_division,
                              is_g2_form, multiplication_from_omega)


def unit(i):
    return tuple(Fraction(int(k == i)) for k in range(8))


def criterion_1():
    t = multiplication_from_omega(build_omega())
    rep = check_normed_division(t)
    ok = (rep.passed and rep.details == {"basis_pairs": 64, "vector_pairs": 100}
          and t.product(1, 2) == unit(3) and t.product(2, 4) == unit(6))
    return ok, "octonion norm identity on 64 basis + 100 vector pairs, x1x2 = x3, x2x4 = x6"


def criterion_2():
    star = hodge(build_omega(), Metric.euclidean(7), 1)
    return star == build_star_omega() and len(star) == 7, "hodge(omega) matches the 7-term dual"


def criterion_3():
    g, vol = associated_metric(build_omega())
    return g == Metric.euclidean(7) and vol == Form.volume(7), "associated metric = identity, vol = dx1234567"


MC_GOLDEN = ["0", "0", "e45 - e67", "-2*e35 + 2*e58", "2*e34 - 2*e48", "2*e37 + 2*e78", "-2*e36 - 2*e68",
             "e45 + e67"]


def criterion_4():
    de = get_case("su2su2-u1-t2").space().mc().de
    ok = len(de) == 8 and all(d == parse_text(t, 8) for d, t in zip(de, MC_GOLDEN))
    return ok, "all 8 Maurer-Cartan equations of 2su(2)+2u(1)"


STAR_GOLDEN = "-2*e1245 + 2*e1267 - 2*e1346 - 2*e1357 - 2*e2347 + 2*e2356 + 4*e4567"


def criterion_5():
    rec = get_case("su2su2-u1-t2")
    hs = rec.space()
    cand = structure_from_coframe(rec.witness_coframe())
    ok = cand.star == parse_text(STAR_GOLDEN, 7) and quotient_d(hs.embed(cand.star), hs).is_zero()
    return ok, "SU(2)^2/U(1)xT^2: *omega golden and d*omega = 0"


def criterion_6():
    lams = [Fraction(1), Fraction(-1), Fraction(3, 2)]
    ok = all(nearly_kaehler_product_check(lam)["d_star_omega"] == "0" for lam in lams)
    return ok, "nearly-Kaehler product d*omega = 0 for lambda in {1, -1, 3/2}"


def criterion_7():
    mods = weight_decomposition([cartan_g2_action(1, 0), cartan_g2_action(0, 1)])
    expected = {WeightModule((1, 0), "C"), WeightModule((0, 1), "C"), WeightModule((1, 1), "C"),
                WeightModule((0, 0), "R")}
    alg, mats = g2_algebra()
    forms = invariant_forms(Representation(alg, mats), 3)
    ok = len(mods) == 4 and set(mods) == expected and len(forms) == 1 and len(stabilizer_algebra(build_omega())) == 14
    return ok, "torus weights V10+V01+V11+V00, one invariant 3-form, dim stabilizer = 14"


def criterion_8():
    forms = invariant_forms(spin_rep(6), 3)
    # is_g2_form tests definiteness of the associated bilinear form
    ok = any(is_g2_form(f) for f in forms)
    return ok, f"spin-3 module: invariant 3-forms span dim {len(forms)}, one has a definite metric"


def criterion_9():
    surv = {r.g_name for r in enumerate_candidates(0) if r.failed is None}
    ok_enum = surv == {"7u(1)", "su(2)+4u(1)", "2su(2)+u(1)"}
    ok_center = not center_bound_filter(1, 5)
    triples = [(k, l, m) for k in range(1, 6) for l in range(k + 1) for m in range(l + 1)]
    ok_q = all(qklm_check(k, l, m) == (k == l == m) for k, l, m in triples)
    return ok_enum and ok_center and ok_q, f"h=0 survivors, center bound, qklm over {len(triples)} triples"


def criterion_10():
    reports = run_all()
    ok_cases = all(r["status"] == "pass" for r in reports)
    d2 = all(not rec.space().mc().d_squared_violations() for rec in all_cases() if not rec.metadata_only)
    return ok_cases and d2, f"{sum(r['status'] == 'pass' for r in reports)}/{len(reports)} catalog cases, d^2 = 0"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


def _line(n, ok, detail):
    return f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(n, ok, detail))
    sys.exit(1 if failed else 0)
