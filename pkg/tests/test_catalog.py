from fractions import Fraction
import itertools
import json
from importlib import resources

import pytest

from g2homog import linalg
from g2homog.catalog import (AlgebraMeta, aloff_wallach_check, case_names, center_bound_filter,
                             enumerate_candidates, get_case, qklm_check, rank_parity_filter, verify_record)
from g2homog.liealg import parse_splitting


def survivors(d, prune=True):
    return {r.g_name for r in enumerate_candidates(d, prune_effectivity=prune) if r.failed is None}


@pytest.mark.parametrize("d,expected", [
    (0, {"7u(1)", "su(2)+4u(1)", "2su(2)+u(1)"}),
    (1, {"2su(2)+2u(1)", "su(3)"}),
    (2, {"3su(2)", "su(3)+u(1)"}),
    (3, {"3su(2)+u(1)", "so(5)", "su(3)+2u(1)"}),
    (6, {"4su(2)+u(1)", "so(5)+su(2)"}),
    (8, {"g2+u(1)", "su(4)"}),
    (14, {"so(7)"}),
])
def test_enumeration_survivors(d, expected):
    assert survivors(d) == expected


def test_effectivity_pruning_is_reported_both_ways():
    assert survivors(8) < survivors(8, prune=False)


def test_center_bound():
    assert not center_bound_filter(1, 5)
    assert center_bound_filter(1, 3)
    assert not center_bound_filter(2, 2)
    with pytest.raises(ValueError):
        center_bound_filter(3, 0)


def test_rank_parity():
    assert rank_parity_filter(AlgebraMeta.of(["su3"]), AlgebraMeta.of([], 1))
    assert not rank_parity_filter(AlgebraMeta.of(["su3"]), AlgebraMeta.of([], 2))


def test_algebra_names():
    assert AlgebraMeta.of(["su2", "su2"], 1).name == "2su(2)+u(1)"
    assert AlgebraMeta.of(["su2", "so5"]).dim == 13


def _plane_characters(k, l, m):
    """Characters 2 t_i of the torus {k t1 + l t2 + m t3 = 0}, as rows in a basis of that torus."""
    basis = linalg.nullspace([[Fraction(k), Fraction(l), Fraction(m)]], 3)
    return [[2 * v[i] for v in basis] for i in range(3)]


def _signed_permutations():
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            yield perm, signs


def qklm_oracle(k, l, m):
    """Some signed permutation of the plane characters has the shape (a, b, a + b) with a, b independent."""
    c = _plane_characters(k, l, m)
    for perm, signs in _signed_permutations():
        a, b, s = ([sg * x for x in c[p]] for p, sg in zip(perm, signs))
        if [x + y for x, y in zip(a, b)] == s and linalg.rank([a, b]) == 2:
            return True
    return False


def test_oracle_covers_48_signed_permutations():
    assert len(list(_signed_permutations())) == 48


TRIPLES = [(k, l, m) for k in range(6) for l in range(k + 1) for m in range(l + 1) if k]


@pytest.mark.parametrize("k,l,m", TRIPLES)
def test_qklm_matches_oracle(k, l, m):
    assert qklm_check(k, l, m) == qklm_oracle(k, l, m)
    assert qklm_check(k, l, m) == (k == l == m)


def test_q211_excluded():
    assert not qklm_oracle(2, 1, 1)
    assert not qklm_check(2, 1, 1)


def test_qklm_rejects_bad_order():
    with pytest.raises(ValueError):
        qklm_check(1, 2, 3)


@pytest.mark.parametrize("k,l,rates", [(1, 1, [0, 3, 3]), (1, -1, [1, 1, 2]), (1, 0, [1, 1, 2]), (2, 3, [1, 7, 8])])
def test_aloff_wallach_rates(k, l, rates):
    out = aloff_wallach_check(k, l)
    assert out["plane_rates"] == rates
    assert out["status"] == "pass"


def test_catalog_schema():
    raw = json.loads(resources.files("g2homog").joinpath("data/catalog.json").read_text())
    assert raw["schema_version"] == 1
    names = [r["name"] for r in raw["records"]]
    assert len(names) == len(set(names))
    assert names and sorted(names) == case_names()


def test_unknown_case():
    with pytest.raises(KeyError):
        get_case("no-such-space")


def test_metadata_records_have_valid_splittings():
    for name in case_names():
        rec = get_case(name)
        if rec.metadata_only:
            assert rec.expected_splitting


@pytest.mark.parametrize("name", case_names())
def test_record_verifies(name):
    rec = get_case(name)
    rep = verify_record(rec)
    assert rep.status == "pass", rep.notes
    assert rep.matched_label == rec.expected_label
