"""Octonions recovered from the G2 three-form, and the metric/volume it induces."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .exterior import (Form, Metric, blade, blade_indices, contract, evaluate, hodge,
                       merge_sign, unit_vector)

OMEGA_TERMS = {"123": 1, "145": 1, "167": -1, "246": 1, "257": 1, "347": 1, "356": -1}
STAR_OMEGA_TERMS = {"1247": -1, "1256": 1, "1346": 1, "1357": 1, "2345": -1, "2367": 1, "4567": 1}
BASIS_NAMES = ("1", "i", "j", "k", "eps", "i*eps", "j*eps", "k*eps")


class NotAG2Form(ValueError):
    pass


def build_omega() -> Form:
    return Form.from_dict(7, OMEGA_TERMS)


def build_star_omega() -> Form:
    return Form.from_dict(7, STAR_OMEGA_TERMS)


@dataclass(frozen=True)
class Report:
    check: str
    status: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self) -> dict:
        out = {"check": self.check, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass(frozen=True)
class OctonionTable:
    """table[i][j] is x_i * x_j as an 8-vector in the basis (1, i, j, k, e, ie, je, ke)."""

    table: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def product(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.table[i][j]

    def multiply(self, x: Sequence, y: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * 8
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(self.table[i][j]):
                    if v:
                        out[k] += c * v
        return out

    def with_product(self, i: int, j: int, value: Sequence) -> "OctonionTable":
        rows = [list(r) for r in self.table]
        rows[i][j] = tuple(Fraction(v) for v in value)
        return OctonionTable(tuple(tuple(r) for r in rows))


def basis_octonion(i: int) -> list[Fraction]:
    return [Fraction(int(k == i)) for k in range(8)]


def multiplication_from_omega(omega: Form) -> OctonionTable:
    """x_i x_j = -delta_ij + sum_k omega(x_i, x_j, x_k) x_k on imaginary units; x_0 is the unit."""
    if omega.dim != 7:
        raise ValueError("omega must live on a 7-dimensional space")
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            if i == 0:
                v = basis_octonion(j)
            elif j == 0:
                v = basis_octonion(i)
            else:
                v = [Fraction(-1 if i == j else 0)]
                ci = contract(unit_vector(7, i), omega)
                cij = contract(unit_vector(7, j), ci)
                v += [cij.terms.get(1 << (k - 1), Fraction(0)) for k in range(1, 8)]
            row.append(tuple(v))
        rows.append(tuple(row))
    return OctonionTable(tuple(rows))


def norm2(x: Sequence) -> Fraction:
    return sum((Fraction(v) * v for v in x), Fraction(0))


def _test_vectors(n_pairs: int, seed: int = 20240607) -> list[tuple[list[Fraction], list[Fraction]]]:
    rng = random.Random(seed)

    def vec():
        return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)]

    return [(vec(), vec()) for _ in range(n_pairs)]


def check_normed_division(t: OctonionTable, n_pairs: int = 100) -> Report:
    """Norm identity on all basis pairs and n_pairs rational pairs, unit law, bilinearity."""
    details = {"basis_pairs": 64, "vector_pairs": n_pairs}
    for i in range(8):
        x = basis_octonion(i)
        if t.multiply(basis_octonion(0), x) != x or t.multiply(x, basis_octonion(0)) != x:
            return Report("normed_division", "fail", {"kind": "unit", "index": i}, details)
    for i, j in itertools.product(range(8), repeat=2):
        p = t.product(i, j)
        if norm2(p) != 1:
            return Report("normed_division", "fail",
                          {"kind": "basis_pair", "i": i, "j": j, "lhs": str(norm2(p)), "rhs": "1"}, details)
    pairs = _test_vectors(n_pairs)
    for n, (x, y) in enumerate(pairs):
        lhs, rhs = norm2(t.multiply(x, y)), norm2(x) * norm2(y)
        if lhs != rhs:
            return Report("normed_division", "fail",
                          {"kind": "vector_pair", "pair": n, "x": [str(v) for v in x],
                           "y": [str(v) for v in y], "lhs": str(lhs), "rhs": str(rhs)}, details)
    # bilinearity on consecutive pairs
    for (x, y), (z, _) in zip(pairs, pairs[1:]):
        a, b = Fraction(3, 2), Fraction(-2, 7)
        xz = [a * u + b * v for u, v in zip(x, z)]
        lhs = t.multiply(xz, y)
        rhs = [a * u + b * v for u, v in zip(t.multiply(x, y), t.multiply(z, y))]
        if lhs != rhs:
            return Report("normed_division", "fail", {"kind": "bilinearity"}, details)
    return Report("normed_division", "pass", None, details)


def corrupt(t: OctonionTable, i: int, j: int) -> OctonionTable:
    """Flip the sign of the single product x_i x_j (test hook)."""
    return t.with_product(i, j, [-v for v in t.product(i, j)])


def associator(t: OctonionTable, i: int, j: int, k: int) -> list[Fraction]:
    x, y, z = basis_octonion(i), basis_octonion(j), basis_octonion(k)
    left = t.multiply(t.multiply(x, y), z)
    right = t.multiply(x, t.multiply(y, z))
    return [a - b for a, b in zip(left, right)]


# -- associated metric -----------------------------------------------------

_TRIPLES = list(itertools.combinations(range(1, 8), 3))
_TRIPLE_INDEX = {blade(*t): n for n, t in enumerate(_TRIPLES)}


@lru_cache(maxsize=1)
def _bilinear_plan() -> dict[tuple[int, int], list[tuple[int, int, int, int]]]:
    """For each (i, j): (I, J, K, sign) with top coeff of (e_i⌟e^I)^(e_j⌟e^J)^e^K = sign."""
    full = (1 << 7) - 1
    plan: dict[tuple[int, int], list] = {}
    for i in range(1, 8):
        for j in range(i, 8):
            entries = []
            for mi, ni in _TRIPLE_INDEX.items():
                if not mi & (1 << (i - 1)):
                    continue
                ri = mi & ~(1 << (i - 1))
                si = -1 if blade_indices(mi).index(i) & 1 else 1
                for mj, nj in _TRIPLE_INDEX.items():
                    if not mj & (1 << (j - 1)):
                        continue
                    rj = mj & ~(1 << (j - 1))
                    s2 = merge_sign(ri, rj)
                    if not s2:
                        continue
                    mk = full & ~(ri | rj)
                    if mk not in _TRIPLE_INDEX:
                        continue
                    sj = -1 if blade_indices(mj).index(j) & 1 else 1
                    s3 = merge_sign(ri | rj, mk)
                    entries.append((ni, nj, _TRIPLE_INDEX[mk], si * sj * s2 * s3))
            plan[(i, j)] = entries
    return plan


def three_form_vector(omega: Form) -> list[Fraction]:
    if omega.dim != 7 or omega.grades() - {3}:
        raise NotAG2Form("expected a 3-form on a 7-dimensional space")
    v = [Fraction(0)] * 35
    for m, c in omega.items():
        v[_TRIPLE_INDEX[m]] = c
    return v


def g2_bilinear(omega: Form) -> linalg.Matrix:
    """b with -1/6 (X⌟w)^(Y⌟w)^w = b(X, Y) e^{1..7}."""
    w = three_form_vector(omega)
    b = linalg.zeros(7)
    for (i, j), entries in _bilinear_plan().items():
        s = sum((sg * w[a] * w[bb] * w[c] for a, bb, c, sg in entries if w[a] and w[bb] and w[c]),
                Fraction(0))
        b[i - 1][j - 1] = b[j - 1][i - 1] = -s / 6
    return b


def g2_bilinear_slow(omega: Form) -> linalg.Matrix:
    """Direct wedge-product evaluation of the same quantity (test oracle)."""
    b = linalg.zeros(7)
    for i in range(1, 8):
        for j in range(1, 8):
            top = contract(unit_vector(7, i), omega) ^ contract(unit_vector(7, j), omega) ^ omega
            b[i - 1][j - 1] = -top.terms.get((1 << 7) - 1, Fraction(0)) / 6
    return b


def is_g2_form(omega: Form) -> bool:
    return linalg.is_definite(g2_bilinear(omega)) != 0


def volume_scale(omega: Form) -> tuple[linalg.Matrix, Fraction | None]:
    """(b, s) where vol = s e^{1..7} and g = b / s; s = det(b)^(1/9), None if irrational."""
    b = g2_bilinear(omega)
    d = linalg.det(b)
    if d == 0 or linalg.is_definite(b) == 0:
        raise NotAG2Form("not a G2-form: the associated bilinear form is not definite")
    return b, linalg.rational_root(d, 9)


def associated_metric(omega: Form) -> tuple[Metric, Form]:
    """The metric g and volume vol with g(X,Y) vol = -1/6 (X⌟w)^(Y⌟w)^w."""
    b, s = volume_scale(omega)
    if s is None:
        raise NotAG2Form("det of the associated form is not a rational 9th power")
    g = Metric.from_matrix(linalg.scale(1 / s, b))
    return g, Form(7, {(1 << 7) - 1: s})


@dataclass(frozen=True)
class G2Structure:
    omega: Form
    metric: Metric
    volume: Form
    star_omega: Form
    orientation: int


def g2_structure(omega: Form) -> G2Structure:
    g, vol = associated_metric(omega)
    s = vol.terms[(1 << 7) - 1]
    orientation = 1 if s > 0 else -1
    return G2Structure(omega, g, vol, hodge(omega, g, orientation), orientation)


def check_against_star(omega: Form | None = None) -> Report:
    omega = build_omega() if omega is None else omega
    st = g2_structure(omega)
    expected = build_star_omega()
    if st.star_omega == expected and st.metric == Metric.euclidean(7):
        return Report("hodge", "pass", None, {"star_omega": str(st.star_omega)})
    return Report("hodge", "fail", {"computed": str(st.star_omega), "expected": str(expected)})


def evaluate_omega(omega: Form, x, y, z) -> Fraction:
    return evaluate(omega, x, y, z)
