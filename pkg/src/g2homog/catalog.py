"""Case records for the classified spaces, the mechanical classification filters, and checks."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from . import linalg
from .exterior import parse_text, to_text
from .homspace import (CaseReport, HomogeneousSpace, isotropy_representation, match_space, maurer_cartan,
                       verify_case_g2_structure)
from .liealg import (WeightModule, _canonical, match_isotropy, parse_splitting, splitting_text,
                     torus_pieces, character)
from .models import RANKS, SumModel

# -- algebra metadata ------------------------------------------------------

SIMPLE_DIMS = {"su2": 3, "su3": 8, "so5": 10, "g2": 14, "su4": 15, "so7": 21, "sp3": 21}
SIMPLE_RANKS = {"su2": 1, "su3": 2, "so5": 2, "g2": 2, "su4": 3, "so7": 3, "sp3": 3}
DISPLAY = {"su2": "su(2)", "su3": "su(3)", "so5": "so(5)", "g2": "g2", "su4": "su(4)", "so7": "so(7)",
           "sp3": "sp(3)", "so5_berger": "so(5)"}
# simple h-factor -> simple g-factors admitting a nontrivial embedding
EMBEDS = {
    "su2": set(SIMPLE_DIMS),
    "su3": {"su3", "g2", "su4", "so7", "sp3"},
    "g2": {"g2", "so7"},
}
FILTERS = ("dimension", "rank_parity", "center_bound", "embedding", "effectivity")


@dataclass(frozen=True)
class AlgebraMeta:
    """A compact Lie algebra as simple factors (sorted) plus an abelian summand."""

    simple: tuple[str, ...]
    center: int = 0

    @property
    def dim(self) -> int:
        return sum(SIMPLE_DIMS[s] for s in self.simple) + self.center

    @property
    def rank(self) -> int:
        return sum(SIMPLE_RANKS[s] for s in self.simple) + self.center

    @property
    def name(self) -> str:
        parts = []
        for s, grp in itertools.groupby(self.simple):
            n = len(list(grp))
            parts.append(("" if n == 1 else str(n)) + DISPLAY[s])
        if self.center:
            parts.append(("" if self.center == 1 else str(self.center)) + "u(1)")
        return "+".join(parts) if parts else "0"

    @classmethod
    def of(cls, simple: Sequence[str], center: int = 0) -> "AlgebraMeta":
        order = list(SIMPLE_DIMS)
        return cls(tuple(sorted(simple, key=lambda s: (-SIMPLE_DIMS[s], order.index(s)))), center)


# isotropy algebras of dimension d (the g2 subalgebras up to isomorphism)
ISOTROPY_BY_DIM = {
    0: AlgebraMeta.of([], 0),
    1: AlgebraMeta.of([], 1),
    2: AlgebraMeta.of([], 2),
    3: AlgebraMeta.of(["su2"], 0),
    4: AlgebraMeta.of(["su2"], 1),
    6: AlgebraMeta.of(["su2", "su2"], 0),
    8: AlgebraMeta.of(["su3"], 0),
    14: AlgebraMeta.of(["g2"], 0),
}


def rank_parity_filter(g: AlgebraMeta, h: AlgebraMeta) -> bool:
    """Roots pair up, so a 7-dimensional quotient needs rank g and rank h of opposite parity."""
    return (g.rank - h.rank) % 2 == 1


def center_bound_filter(h_rank: int, z_dim: int) -> bool:
    """The center of g acts trivially, so it fits in the trivial part of a torus character."""
    if h_rank < 0 or h_rank > 2:
        raise ValueError("isotropy inside g2 has rank 0, 1 or 2")
    if h_rank == 1:
        return z_dim <= 3
    if h_rank == 2:
        return z_dim <= 1
    return True


def embedding_filter(g: AlgebraMeta, h: AlgebraMeta) -> bool:
    if h.rank > g.rank:
        return False
    return all(any(t in EMBEDS[s] for t in g.simple) for s in h.simple)


def effectivity_filter(g: AlgebraMeta, h: AlgebraMeta) -> bool:
    """No simple ideal of g is forced into h; a nonzero h inside an abelian g acts trivially."""
    if h.dim and not g.simple:
        return False
    for s in h.simple:
        targets = [t for t in g.simple if t in EMBEDS[s]]
        if len(targets) == 1 and targets[0] == s:
            return False
    return True


@dataclass(frozen=True)
class CandidateFilterResult:
    g_name: str
    h_name: str
    passed: tuple[str, ...]
    failed: str | None
    status: str

    def to_json_obj(self) -> dict:
        return {"g": self.g_name, "h": self.h_name, "passed": list(self.passed), "failed": self.failed,
                "status": self.status}


def _compact_algebras(dim: int) -> list[AlgebraMeta]:
    out = []
    names = list(SIMPLE_DIMS)

    def rec(start: int, chosen: list[str], used: int):
        out.append(AlgebraMeta.of(chosen, dim - used))
        for i in range(start, len(names)):
            d = SIMPLE_DIMS[names[i]]
            if used + d <= dim:
                rec(i, chosen + [names[i]], used + d)

    rec(0, [], 0)
    return sorted(set(out), key=lambda a: (a.center, [-SIMPLE_DIMS[s] for s in a.simple], a.simple))


def _expected_groups() -> dict[int, set[str]]:
    out: dict[int, set[str]] = {}
    for rec in all_cases():
        out.setdefault(rec.h_dim, set()).add(rec.g_meta.name)
    return out


def enumerate_candidates(dim_h: int, prune_effectivity: bool = True) -> list[CandidateFilterResult]:
    """All compact g with dim g = dim_h + 7, filtered in fixed order; survivors first."""
    if dim_h not in ISOTROPY_BY_DIM:
        raise ValueError(f"no g2 subalgebra of dimension {dim_h}")
    h = ISOTROPY_BY_DIM[dim_h]
    known = _expected_groups().get(dim_h, set())
    results = []
    for g in _compact_algebras(dim_h + 7):
        checks = [
            ("dimension", g.dim == h.dim + 7),
            ("rank_parity", rank_parity_filter(g, h)),
            ("center_bound", center_bound_filter(h.rank, g.center)),
            ("embedding", embedding_filter(g, h)),
        ]
        if prune_effectivity:
            checks.append(("effectivity", effectivity_filter(g, h)))
        passed, failed = [], None
        for name, ok in checks:
            if not ok:
                failed = name
                break
            passed.append(name)
        if failed:
            status = "excluded"
        elif g.name in known:
            status = "listed"
        else:
            status = "requires embedding analysis (manual)"
        results.append(CandidateFilterResult(g.name, h.name, tuple(passed), failed, status))
    return sorted(results, key=lambda r: (r.failed is not None, r.g_name))


def survivors(dim_h: int, prune_effectivity: bool = True) -> list[str]:
    return [r.g_name for r in enumerate_candidates(dim_h, prune_effectivity) if r.failed is None]


# -- case records ------------------------------------------------------------


@dataclass(frozen=True)
class CaseRecord:
    name: str
    table: str
    group: str
    subgroup: str
    quotient: str
    factors: tuple[str, ...]
    h: tuple = ()
    m: tuple | None = None
    h_type: str | None = None
    cartan: tuple | None = None
    family: str | None = None
    params: tuple = ()
    expected_label: str = ""
    expected_splitting_text: str = ""
    witness: dict | None = None
    metadata_only: bool = False

    @property
    def expected_splitting(self) -> list[WeightModule]:
        return parse_splitting(self.expected_splitting_text)

    @property
    def g_meta(self) -> AlgebraMeta:
        kinds = ["so5" if f == "so5_berger" else f for f in self.factors]
        return AlgebraMeta.of([k for k in kinds if k != "u1"], kinds.count("u1"))

    @property
    def h_dim(self) -> int:
        sizes = {"{e}": 0, "U(1)": 1, "U(1)^2": 2, "SU(2)": 3, "SO(3)": 3, "Sp(1)": 3, "SU(2)xU(1)": 4,
                 "Sp(1)xU(1)": 4, "Sp(1)xSp(1)": 6, "SU(3)": 8, "G2": 14}
        return sizes[self.subgroup]

    def model(self) -> SumModel:
        return SumModel(tuple(self.factors))

    def h_vectors(self) -> list[list[Fraction]]:
        model = self.model()
        if self.family:
            return FAMILY_BUILDERS[self.family](model, dict(self.params))
        return [model.vector(dict(v)) for v in self.h]

    def space(self) -> HomogeneousSpace:
        if self.metadata_only:
            raise ValueError(f"{self.name} carries only metadata")
        model = self.model()
        hvec = self.h_vectors()
        m_basis = [model.vector(dict(v)) for v in self.m] if self.m else None
        cartan = None
        if self.cartan:
            cartan = [linalg.span_coordinates(hvec, model.vector(dict(c))) for c in self.cartan]
        return HomogeneousSpace(model.algebra(), hvec, model.metric(), m_basis, name=self.name,
                                h_type=self.h_type, h_cartan=cartan)

    def witness_coframe(self):
        if not self.witness or "coframe" not in self.witness:
            return None
        return linalg.to_matrix(self.witness["coframe"])

    def to_json_obj(self) -> dict:
        out = {"name": self.name, "table": self.table, "group": self.group, "subgroup": self.subgroup,
               "quotient": self.quotient, "g": self.g_meta.name, "expected_label": self.expected_label,
               "expected_splitting": self.expected_splitting_text, "metadata_only": self.metadata_only}
        if self.params:
            out["params"] = dict(self.params)
        return out


def _freeze(obj):
    if isinstance(obj, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in obj.items()))
    if isinstance(obj, list):
        return tuple(_freeze(v) for v in obj)
    return obj


def _thaw_dict(pairs) -> dict:
    return {k: v for k, v in pairs}


def _record(raw: dict) -> CaseRecord:
    return CaseRecord(
        name=raw["name"], table=raw["table"], group=raw["group"], subgroup=raw["subgroup"],
        quotient=raw["quotient"], factors=tuple(raw["factors"]),
        h=tuple(_freeze(v) for v in raw.get("h", [])),
        m=tuple(_freeze(v) for v in raw["m"]) if raw.get("m") else None,
        h_type=raw.get("h_type"),
        cartan=tuple(_freeze(v) for v in raw["cartan"]) if raw.get("cartan") else None,
        family=raw.get("family"),
        params=_freeze(raw.get("params", {})),
        expected_label=raw["expected_label"],
        expected_splitting_text=raw["expected_splitting"],
        witness=raw.get("witness"),
        metadata_only=raw.get("metadata_only", False),
    )


@lru_cache(maxsize=1)
def _load() -> tuple[CaseRecord, ...]:
    text = resources.files("g2homog").joinpath("data/catalog.json").read_text()
    data = json.loads(text)
    if data.get("schema_version") != 1:
        raise ValueError("unsupported catalog schema")
    return tuple(_record(r) for r in data["records"])


def all_cases() -> list[CaseRecord]:
    return list(_load())


def case_names() -> list[str]:
    return sorted(r.name for r in _load())


def get_case(name: str) -> CaseRecord:
    for r in _load():
        if r.name == name:
            return r
    raise KeyError(name)


# -- parametric families ------------------------------------------------------


def _aloff_wallach_h(model: SumModel, p: dict) -> list[list[Fraction]]:
    k, l = p["k"], p["l"]
    return [model.vector({"0.H1": k, "0.H2": k + l})]


def _aloff_wallach_u1_h(model: SumModel, p: dict) -> list[list[Fraction]]:
    """U(1)_{k,l} and (Y, 1) with Y the Cartan element orthogonal to H_{k,l}."""
    k, l = p["k"], p["l"]
    hvec = model.vector({"0.H1": k, "0.H2": k + l})
    q = model.metric()
    c1, c2 = model.vector({"0.H1": 1}), model.vector({"0.H2": 1})
    row = [sum(hvec[i] * q[i][j] * c[j] for i in range(len(q)) for j in range(len(q))) for c in (c1, c2)]
    a, b = linalg.nullspace([row], 2)[0]
    den = linalg_lcm_den([a, b])
    a, b = a * den, b * den
    return [hvec, model.vector({"0.H1": a, "0.H2": b, "1.u": 1})]


def linalg_lcm_den(vals: Sequence[Fraction]) -> int:
    from math import lcm

    out = 1
    for v in vals:
        out = lcm(out, Fraction(v).denominator)
    return out


def qklm_isotropy_basis(k: int, l: int, m: int) -> list[list[Fraction]]:
    """Integer basis of {(x, y, z) : kx + ly + mz = 0}."""
    if (k, l, m) == (0, 0, 0):
        raise ValueError("(k, l, m) must be nonzero")
    basis = linalg.nullspace([[Fraction(k), Fraction(l), Fraction(m)]], 3)
    return [[x * linalg_lcm_den(v) for x in v] for v in basis]


def _qklm_h(model: SumModel, p: dict) -> list[list[Fraction]]:
    out = []
    for x, y, z in qklm_isotropy_basis(p["k"], p["l"], p["m"]):
        out.append(model.vector({"0.s1": x, "1.s1": y, "2.s1": z}))
    return out


FAMILY_BUILDERS = {"aloff_wallach": _aloff_wallach_h, "aloff_wallach_u1": _aloff_wallach_u1_h, "qklm": _qklm_h}


def aloff_wallach_space(k: int, l: int) -> HomogeneousSpace:
    if (k, l) == (0, 0):
        raise ValueError("(k, l) must be nonzero")
    model = SumModel(("su3",))
    return HomogeneousSpace(model.algebra(), _aloff_wallach_h(model, {"k": k, "l": l}), model.metric(),
                            name=f"aloff-wallach({k},{l})")


def qklm_space(k: int, l: int, m: int) -> HomogeneousSpace:
    model = SumModel(("su2", "su2", "su2"))
    return HomogeneousSpace(model.algebra(), _qklm_h(model, {"k": k, "l": l, "m": m}), model.metric(),
                            name=f"q({k},{l},{m})")


def aloff_wallach_check(k: int, l: int) -> dict:
    """Isotropy weights of U(1)_{k,l} on the complement and the matched table row."""
    hs = aloff_wallach_space(k, l)
    rep = isotropy_representation(hs)
    pieces = torus_pieces(rep.matrices)
    rates = sorted([p.weight[0] for p in pieces if p.weight[0] for _ in range(p.dim // 2)])
    zeros = sum(p.dim for p in pieces if not p.weight[0])
    rates += [0] * ((zeros - 1) // 2)
    match, mods, *_ = match_space(hs, rep)
    expected = sorted(abs(w) for w in (k - l, 2 * k + l, k + 2 * l))
    return {
        "k": k, "l": l,
        "plane_rates": sorted(rates),
        "expected_rates": expected,
        "splitting": splitting_text(mods),
        "matched_label": match.label if match else None,
        "params": list(match.params) if match else [],
        "status": "pass" if match is not None and match.label == "u(1)" and sorted(rates) == expected else "fail",
    }


def qklm_check(k: int, l: int, m: int) -> bool:
    """Whether the isotropy torus of Q^{k,l,m} acts on the tangent space like a torus of g2."""
    if min(k, l, m) < 0 or not (k >= l >= m):
        raise ValueError("expected k >= l >= m >= 0")
    hs = qklm_space(k, l, m)
    match, *_ = match_space(hs)
    return match is not None and match.label == "2u(1)"


# -- record verification ---------------------------------------------------


def verify_record(rec: CaseRecord) -> CaseReport:
    if rec.metadata_only:
        hint = {"su(2)_1+u(1)": "su2+u1", "su(2)_{1,2}+u(1)": "su2+u1"}.get(rec.expected_label)
        match = match_isotropy(rec.expected_splitting, hint)
        ok = match is not None and match.label == rec.expected_label
        return CaseReport(rec.name, "pass" if ok else "fail", match.label if match else None,
                          weights=splitting_text(rec.expected_splitting), method="metadata",
                          notes=["splitting matched against the subgroup table; no matrix model built"])
    hs = rec.space()
    mc = maurer_cartan(hs.adapted)
    bad = mc.d_squared_violations()
    report = verify_case_g2_structure(hs, rec.witness_coframe(), rec.expected_label)
    report.extra["d_squared_zero"] = not bad
    if bad:
        report.status = "fail"
        report.notes.append(f"d^2 != 0 on e^{bad}")
    if report.matched_label and rec.expected_splitting_text:
        computed = parse_splitting(report.weights) if report.weights != "7V(0)^R" else rec.expected_splitting
        if _canonical(computed) != _canonical(rec.expected_splitting):
            report.status = "fail"
            report.notes.append(f"expected splitting {rec.expected_splitting_text}")
    golden = (rec.witness or {}).get("star_omega")
    if golden:
        star = parse_text(report.star_form, 7)
        report.extra["golden_star_match"] = star == parse_text(golden, 7)
        if not report.extra["golden_star_match"]:
            report.status = "fail"
            report.notes.append("constructed star form differs from the recorded one")
    return report
