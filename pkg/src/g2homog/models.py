"""Matrix models over Q of the compact Lie algebras used by the catalog.

Complex matrices Z = A + iB are realized as real blocks [[A, -B], [B, A]].
Every factor carries named elements; su(2) triples are normalized to the
sigma relations [s1, s2] = -2 s3 (cyclic).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .linalg import Matrix
from .liealg import (LieAlgebra, cartan_g2_action, direct_sum_all, g2_matrices, harmonic_rep, matrix_algebra,
                     matrix_coordinates, so_basis)


def realify(re: Sequence[Sequence], im: Sequence[Sequence]) -> Matrix:
    a, b = linalg.to_matrix(re), linalg.to_matrix(im)
    n = len(a)
    out = linalg.zeros(2 * n)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
            out[i][j + n] = -b[i][j]
            out[i + n][j] = b[i][j]
            out[i + n][j + n] = a[i][j]
    return out


def _unit(n: int, pairs: dict) -> Matrix:
    m = linalg.zeros(n)
    for (i, j), v in pairs.items():
        m[i][j] = Fraction(v)
    return m


def sigma_triple(mats: Sequence[Matrix]) -> list[Matrix]:
    """Rescale X1, X2, X3 with [X1, X2] = k X3 (cyclic) onto the sigma relations."""
    br = linalg.commutator(mats[0], mats[1])
    n = len(br)
    k = next(br[i][j] / mats[2][i][j] for i in range(n) for j in range(n) if mats[2][i][j])
    out = [linalg.scale(Fraction(-2) / k, m) for m in mats]
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        if linalg.commutator(out[a], out[b]) != linalg.scale(-2, out[c]):
            raise ValueError("triple does not satisfy the su(2) relations")
    return out


@dataclass(frozen=True)
class FactorModel:
    kind: str
    basis: tuple
    named: tuple  # (name, matrix) pairs

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrices(self) -> list[Matrix]:
        return [[list(r) for r in m] for m in self.basis]

    def element(self, name: str) -> Matrix:
        for n, m in self.named:
            if n == name:
                return [list(r) for r in m]
        raise KeyError(f"{self.kind} has no element {name!r}")

    def coordinates(self, name: str) -> list[Fraction]:
        return matrix_coordinates(self.matrices(), self.element(name))

    def names(self) -> list[str]:
        return [n for n, _ in self.named]


def _freeze(m: Matrix) -> tuple:
    return tuple(tuple(r) for r in m)


def _model(kind: str, basis: Sequence[Matrix], named: dict[str, Matrix]) -> FactorModel:
    return FactorModel(kind, tuple(_freeze(m) for m in basis), tuple((k, _freeze(v)) for k, v in named.items()))


def _u1() -> FactorModel:
    j = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
    return _model("u1", [j], {"u": j})


def _su2() -> FactorModel:
    z = [[0, 0], [0, 0]]
    s1 = realify(z, [[1, 0], [0, -1]])
    s2 = realify([[0, -1], [1, 0]], z)
    s3 = realify(z, [[0, 1], [1, 0]])
    return _model("su2", [s1, s2, s3], {"s1": s1, "s2": s2, "s3": s3})


def _su3_complex():
    """H1, H2, then E_ab - E_ba and i(E_ab + E_ba) for a < b, as (re, im) pairs."""
    zero = [[0] * 3 for _ in range(3)]

    def diag(*d):
        return [[d[i] if i == j else 0 for j in range(3)] for i in range(3)]

    out = {"H1": (zero, diag(1, -1, 0)), "H2": (zero, diag(0, 1, -1))}
    for a, b in itertools.combinations(range(3), 2):
        anti = [[(1 if (i, j) == (a, b) else -1 if (i, j) == (b, a) else 0) for j in range(3)] for i in range(3)]
        sym = [[(1 if (i, j) in ((a, b), (b, a)) else 0) for j in range(3)] for i in range(3)]
        out[f"A{a + 1}{b + 1}"] = (anti, zero)
        out[f"S{a + 1}{b + 1}"] = (zero, sym)
    return out


def _su3() -> FactorModel:
    cx = _su3_complex()
    basis = [realify(*v) for v in cx.values()]
    named = {k: realify(*v) for k, v in cx.items()}
    # upper-left su(2): sigma_1 -> H1, sigma_2 -> E21 - E12, sigma_3 -> i(E12 + E21)
    named["ul1"], named["ul2"], named["ul3"] = named["H1"], linalg.scale(-1, named["A12"]), named["S12"]
    named["Z"] = linalg.add(named["H1"], linalg.scale(2, named["H2"]))  # diag(i, i, -2i)
    so3 = sigma_triple([named["A23"], linalg.scale(-1, named["A13"]), named["A12"]])
    named.update({"so3_1": so3[0], "so3_2": so3[1], "so3_3": so3[2]})
    return _model("su3", basis, named)


def _quaternion_mult(side: str) -> list[Matrix]:
    """Left or right multiplication by i, j, k on H = R^4 with basis (1, i, j, k)."""
    table = {  # product of basis units: (a, b) -> (sign, c)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    out = []
    for q in (1, 2, 3):
        m = linalg.zeros(4)
        for x in range(4):
            sign, c = table[(q, x)] if side == "L" else table[(x, q)]
            m[c][x] = Fraction(sign)
        out.append(m)
    return out


def _embed5(m: Matrix) -> Matrix:
    out = linalg.zeros(5)
    for i in range(4):
        for j in range(4):
            out[i][j] = m[i][j]
    return out


def _so5() -> FactorModel:
    basis = so_basis(5)
    left = [_embed5(m) for m in _quaternion_mult("L")]
    right = [_embed5(m) for m in _quaternion_mult("R")]
    named = {}
    for n, m in enumerate(sigma_triple([linalg.scale(-1, x) for x in left]), 1):
        named[f"L{n}"] = m
    for n, m in enumerate(sigma_triple(right), 1):
        named[f"R{n}"] = m
    # standard so(3) on the first three coordinates of R^5
    e = _unit
    so3 = sigma_triple([e(5, {(2, 1): 1, (1, 2): -1}), e(5, {(0, 2): 1, (2, 0): -1}), e(5, {(1, 0): 1, (0, 1): -1})])
    for n, m in enumerate(so3, 1):
        named[f"so3_{n}"] = m
    return _model("so5", basis, named)


def _so5_berger() -> FactorModel:
    """so(Q) for the invariant Gram matrix Q of harmonic quadratics, with the spin-2 su(2)."""
    spin2, gram = harmonic_rep(2)
    qinv = linalg.inverse(gram)
    basis = [linalg.matmul(qinv, k) for k in so_basis(5)]
    named = {f"B{n}": m for n, m in enumerate(spin2, 1)}
    return _model("so5_berger", basis, named)


def _g2() -> FactorModel:
    basis = g2_matrices()
    named = {"t1": cartan_g2_action(1, 0), "t2": cartan_g2_action(0, 1)}
    # su(3) = stabilizer of x1 inside g2
    rows = [[b[i][0] for b in basis] for i in range(7)]
    for n, coeffs in enumerate(linalg.nullspace(rows, len(basis)), 1):
        named[f"su3_{n}"] = linalg.lincomb(coeffs, basis)
    return _model("g2", basis, named)


_BUILDERS = {"u1": _u1, "su2": _su2, "su3": _su3, "so5": _so5, "so5_berger": _so5_berger, "g2": _g2}
RANKS = {"u1": 1, "su2": 1, "su3": 2, "so5": 2, "so5_berger": 2, "g2": 2}


@lru_cache(maxsize=None)
def factor(kind: str) -> FactorModel:
    if kind not in _BUILDERS:
        raise KeyError(f"no matrix model for {kind!r}")
    return _BUILDERS[kind]()


@lru_cache(maxsize=None)
def factor_algebra(kind: str) -> LieAlgebra:
    f = factor(kind)
    return matrix_algebra(f.matrices(), [f"{kind}.{i + 1}" for i in range(f.dim)])


@dataclass
class SumModel:
    """Direct sum of factor models with coordinates concatenated in factor order."""

    kinds: tuple[str, ...]

    @property
    def offsets(self) -> list[int]:
        out, off = [], 0
        for k in self.kinds:
            out.append(off)
            off += factor(k).dim
        return out

    @property
    def dim(self) -> int:
        return sum(factor(k).dim for k in self.kinds)

    def algebra(self) -> LieAlgebra:
        return direct_sum_all([factor_algebra(k) for k in self.kinds])

    def metric(self) -> Matrix:
        """-tr(XY) on each factor, factors mutually orthogonal."""
        from .homspace import trace_form

        return linalg.block_diag(*[trace_form(factor(k).matrices()) for k in self.kinds])

    def vector(self, terms: dict) -> list[Fraction]:
        """terms maps 'i.name' (factor index, element name) to a coefficient."""
        v = [Fraction(0)] * self.dim
        offs = self.offsets
        for key, coeff in terms.items():
            idx, name = key.split(".", 1)
            i = int(idx)
            coords = factor(self.kinds[i]).coordinates(name)
            for j, c in enumerate(coords):
                v[offs[i] + j] += Fraction(coeff) * c
        return v

    def rank(self) -> int:
        return sum(RANKS[k] for k in self.kinds)
