"""Lie algebras by structure constants, representations, weights and invariant forms."""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .exterior import Form, matrix_action
from .linalg import Matrix, frac
from .octonion import build_omega


class JacobiError(ValueError):
    pass


class RepresentationError(ValueError):
    pass


class WeightError(ValueError):
    pass


# -- Lie algebras ---------------------------------------------------------


class LieAlgebra:
    """Finite-dimensional Lie algebra [x_i, x_j] = sum_k c^k_ij x_k (0-based indices)."""

    def __init__(self, labels: Sequence[str], constants: dict | None = None, check: bool = True):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        c: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), row in (constants or {}).items():
            if i == j:
                if any(v for v in row.values()):
                    raise JacobiError("[x, x] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            tgt = c.setdefault((i, j), {})
            for k, v in row.items():
                v = sign * frac(v)
                if v:
                    tgt[k] = tgt.get(k, Fraction(0)) + v
        self._c = {key: {k: v for k, v in row.items() if v} for key, row in c.items()}
        self._c = {key: row for key, row in self._c.items() if row}
        if check:
            bad = self.jacobi_violation()
            if bad is not None:
                raise JacobiError(f"Jacobi identity fails on basis triple {bad}")

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Structure constant c^k_ij."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self._c.get((i, j), {}).get(k, Fraction(0))
        return -self._c.get((j, i), {}).get(k, Fraction(0))

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        if i == j:
            return out
        sign = 1 if i < j else -1
        for k, v in self._c.get((min(i, j), max(i, j)), {}).items():
            out[k] = sign * v
        return out

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj or i == j:
                    continue
                for k, v in enumerate(self.bracket_basis(i, j)):
                    if v:
                        out[k] += frac(xi) * frac(yj) * v
        return out

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ad_x: column j is [x, x_j]."""
        cols = [self.bracket(x, unit(self.dim, j)) for j in range(self.dim)]
        return linalg.transpose(cols)

    def ad_basis(self, i: int) -> Matrix:
        return self.ad(unit(self.dim, i))

    def jacobi_violation(self):
        for i, j, k in itertools.combinations(range(self.dim), 3):
            ei, ej, ek = unit(self.dim, i), unit(self.dim, j), unit(self.dim, k)
            s = [a + b + c for a, b, c in zip(
                self.bracket(ei, self.bracket(ej, ek)),
                self.bracket(ej, self.bracket(ek, ei)),
                self.bracket(ek, self.bracket(ei, ej)))]
            if any(s):
                return (i, j, k)
        return None

    def is_abelian(self) -> bool:
        return not self._c

    def center(self) -> list[list[Fraction]]:
        rows = []
        for j in range(self.dim):
            rows.extend(self.ad_basis(j))
        # x central iff ad_{x_j} x = 0 for all j
        return linalg.nullspace(rows, self.dim) if rows else []

    def change_basis(self, basis: Sequence[Sequence], labels: Sequence[str] | None = None) -> "LieAlgebra":
        """Same algebra in the basis given by coordinate vectors (columns of B)."""
        basis = [[frac(x) for x in v] for v in basis]
        if linalg.rank(basis) != self.dim or len(basis) != self.dim:
            raise ValueError("new basis must have dim vectors spanning the algebra")
        labels = labels or [f"b{i + 1}" for i in range(self.dim)]
        consts = {}
        for i, j in itertools.combinations(range(self.dim), 2):
            br = self.bracket(basis[i], basis[j])
            coords = linalg.span_coordinates(basis, br)
            consts[(i, j)] = {k: v for k, v in enumerate(coords) if v}
        return LieAlgebra(labels, consts, check=False)

    def constants_table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {k: dict(v) for k, v in self._c.items()}

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, labels={self.labels})"


def unit(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(i == j)) for j in range(n)]


def su2(prefix: str = "s") -> LieAlgebra:
    """[s1,s2] = -2 s3, [s2,s3] = -2 s1, [s3,s1] = -2 s2."""
    return LieAlgebra([f"{prefix}1", f"{prefix}2", f"{prefix}3"],
                      {(0, 1): {2: -2}, (1, 2): {0: -2}, (2, 0): {1: -2}})


def u1(k: int = 1, prefix: str = "u") -> LieAlgebra:
    return LieAlgebra([f"{prefix}{i + 1}" for i in range(k)], {})


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    consts = {key: dict(row) for key, row in a.constants_table().items()}
    off = a.dim
    for (i, j), row in b.constants_table().items():
        consts[(i + off, j + off)] = {k + off: v for k, v in row.items()}
    return LieAlgebra(list(a.labels) + list(b.labels), consts, check=False)


def direct_sum_all(algebras: Sequence[LieAlgebra]) -> LieAlgebra:
    out = algebras[0]
    for alg in algebras[1:]:
        out = direct_sum(out, alg)
    return out


def matrix_coordinates(basis: Sequence[Matrix], mat: Matrix) -> list[Fraction]:
    return linalg.span_coordinates([linalg.flatten(b) for b in basis], linalg.flatten(mat))


def matrix_algebra(basis: Sequence[Matrix], labels: Sequence[str]) -> LieAlgebra:
    """Structure constants of a matrix Lie algebra spanned by `basis` (closure checked)."""
    flat = [linalg.flatten(b) for b in basis]
    if linalg.rank(flat) != len(basis):
        raise ValueError("matrices are linearly dependent")
    consts = {}
    for i, j in itertools.combinations(range(len(basis)), 2):
        br = linalg.commutator(basis[i], basis[j])
        coords = linalg.span_coordinates(flat, linalg.flatten(br))
        consts[(i, j)] = {k: v for k, v in enumerate(coords) if v}
    return LieAlgebra(labels, consts)


# -- representations ------------------------------------------------------


class Representation:
    """rho: algebra -> gl(n), one matrix per basis element, bracket-compatibility checked."""

    def __init__(self, algebra: LieAlgebra, matrices: Sequence[Matrix], check: bool = True):
        if len(matrices) != algebra.dim:
            raise RepresentationError("need one matrix per basis element")
        self.algebra = algebra
        self.matrices = [linalg.to_matrix(m) for m in matrices]
        self.dim = len(self.matrices[0]) if self.matrices else 0
        if check:
            for i, j in itertools.combinations(range(algebra.dim), 2):
                lhs = linalg.commutator(self.matrices[i], self.matrices[j])
                rhs = self.of(algebra.bracket_basis(i, j))
                if lhs != rhs:
                    raise RepresentationError(f"rho([x{i},x{j}]) != [rho(x{i}), rho(x{j})]")

    def of(self, x: Sequence) -> Matrix:
        if not self.matrices:
            return []
        return linalg.lincomb([frac(v) for v in x], self.matrices)


def adjoint(g: LieAlgebra) -> Representation:
    return Representation(g, [g.ad_basis(i) for i in range(g.dim)], check=False)


def trivial_rep(g: LieAlgebra, n: int) -> Representation:
    return Representation(g, [linalg.zeros(n) for _ in range(g.dim)], check=False)


# -- G2 data --------------------------------------------------------------


def cartan_g2_action(l1, l2) -> Matrix:
    """Element of the fixed Cartan subalgebra t of g2 acting on Im(O)."""
    l1, l2 = frac(l1), frac(l2)
    m = linalg.zeros(7)
    for (a, b), rate in (((1, 2), l1), ((3, 4), l2), ((5, 6), l1 + l2)):
        m[a][b] = rate
        m[b][a] = -rate
    return m


def so_basis(n: int) -> list[Matrix]:
    """E_ab - E_ba for a < b, lexicographic."""
    out = []
    for a, b in itertools.combinations(range(n), 2):
        m = linalg.zeros(n)
        m[a][b], m[b][a] = Fraction(1), Fraction(-1)
        out.append(m)
    return out


def stabilizer_algebra(form: Form, basis: Sequence[Matrix] | None = None) -> list[Matrix]:
    """Matrices A in span(basis) (default so(n)) with A . form = 0."""
    n = form.dim
    basis = list(basis) if basis is not None else so_basis(n)
    images = [matrix_action(form, a) for a in basis]
    masks = sorted({m for img in images for m in img.terms})
    rows = [[img.terms.get(m, Fraction(0)) for img in images] for m in masks]
    sols = linalg.nullspace(rows, len(basis))
    return [linalg.lincomb(s, basis) for s in sols]


@lru_cache(maxsize=1)
def _g2_matrices() -> tuple:
    mats = stabilizer_algebra(build_omega())
    return tuple(tuple(tuple(r) for r in m) for m in mats)


def g2_matrices() -> list[Matrix]:
    """A basis of g2 = stabilizer of omega in so(7)."""
    return [[list(r) for r in m] for m in _g2_matrices()]


def g2_algebra() -> tuple[LieAlgebra, list[Matrix]]:
    mats = g2_matrices()
    return matrix_algebra(mats, [f"g{i + 1}" for i in range(len(mats))]), mats


# -- harmonic polynomial models of su(2) irreps -----------------------------


def _monomials(d: int) -> list[tuple[int, int, int]]:
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def _rotation_ops(d: int) -> list[Matrix]:
    """y dz - z dy, z dx - x dz, x dy - y dx on degree-d monomials."""
    mons = _monomials(d)
    index = {m: i for i, m in enumerate(mons)}
    ops = []
    for (p, q) in ((1, 2), (2, 0), (0, 1)):
        mat = linalg.zeros(len(mons))
        for col, m in enumerate(mons):
            # x_p * d/dx_q - x_q * d/dx_p
            for src, dst, sign in ((q, p, 1), (p, q, -1)):
                if m[src]:
                    new = list(m)
                    new[src] -= 1
                    new[dst] += 1
                    mat[index[tuple(new)]][col] += sign * m[src]
        ops.append(mat)
    return ops


def _laplacian(d: int) -> Matrix:
    src, dst = _monomials(d), _monomials(d - 2)
    index = {m: i for i, m in enumerate(dst)}
    mat = linalg.zeros(len(dst), len(src))
    for col, m in enumerate(src):
        for v in range(3):
            if m[v] >= 2:
                new = list(m)
                new[v] -= 2
                mat[index[tuple(new)]][col] += m[v] * (m[v] - 1)
    return mat


def harmonic_rep(d: int) -> tuple[list[Matrix], Matrix]:
    """su(2) acting on harmonic polynomials of degree d (real dim 2d+1, weight 2d).

    Returns (rho(s1), rho(s2), rho(s3)) in the sigma normalization and the Gram
    matrix of the invariant Fischer inner product in the chosen basis.
    """
    mons = _monomials(d)
    basis = linalg.nullspace(_laplacian(d)) if d >= 2 else [unit(len(mons), i) for i in range(len(mons))]
    ops = _rotation_ops(d)
    mats = []
    for op in ops:
        cols = [linalg.span_coordinates(basis, linalg.matvec(op, v)) for v in basis]
        mats.append(linalg.transpose(cols))
    # [D1, D2] = kappa D3 fixes the rescaling onto the sigma relations
    br = linalg.commutator(mats[0], mats[1])
    kappa = next(br[i][j] / mats[2][i][j] for i in range(len(br)) for j in range(len(br)) if mats[2][i][j])
    sig = [linalg.scale(Fraction(-2) / kappa, m) for m in mats]
    weight = [Fraction(_fact(m[0]) * _fact(m[1]) * _fact(m[2])) for m in mons]
    gram = [[sum((u[k] * v[k] * weight[k] for k in range(len(mons))), Fraction(0)) for v in basis] for u in basis]
    Representation(su2(), sig)  # bracket check
    return sig, gram


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def spin_rep(weight: int) -> Representation:
    """The real irreducible su(2)-module of odd dimension weight+1 (weight even)."""
    if weight % 2:
        raise ValueError("real odd-dimensional modules have even weight")
    mats, _ = harmonic_rep(weight // 2)
    return Representation(su2(), mats)


# -- weights --------------------------------------------------------------


@dataclass(frozen=True, order=True)
class WeightModule:
    """Irreducible summand: torus weight (or su(2)-type highest weight), kind R/C, multiplicity.

    dim is the real dimension of one copy; defaults to 2 for C and 1 for R.
    """

    weight: tuple[int, ...]
    kind: str
    multiplicity: int = 1
    dim: int | None = None

    def __post_init__(self):
        w = tuple(int(x) for x in self.weight)
        if self.kind not in ("R", "C"):
            raise ValueError("kind must be 'R' or 'C'")
        nz = next((x for x in w if x), 0)
        if nz < 0:
            w = tuple(-x for x in w)
        object.__setattr__(self, "weight", w)
        if self.dim is None:
            object.__setattr__(self, "dim", 2 if self.kind == "C" else 1)
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def real_dim(self) -> int:
        return self.dim * self.multiplicity

    def torus_shaped(self) -> bool:
        return (self.kind == "C" and self.dim == 2) or (self.kind == "R" and self.dim == 1 and not any(self.weight))

    def to_text(self) -> str:
        mult = "" if self.multiplicity == 1 else str(self.multiplicity)
        default = 2 if self.kind == "C" else 1
        size = "" if self.dim == default else f"[{self.dim}]"
        return f"{mult}V({','.join(str(x) for x in self.weight)})^{self.kind}{size}"


def torus_module(weight: Sequence[int], multiplicity: int = 1) -> WeightModule:
    weight = tuple(weight)
    return WeightModule(weight, "C" if any(weight) else "R", multiplicity)


def su2_module(n: int, multiplicity: int = 1) -> WeightModule:
    """V_n: real dim n+1 for even n, quaternionic (real dim 2(n+1)) for odd n."""
    if n % 2 == 0:
        return WeightModule((n,), "R", multiplicity, n + 1)
    return WeightModule((n,), "C", multiplicity, 2 * (n + 1))


def aggregate(modules: Iterable[WeightModule]) -> list[WeightModule]:
    counts: Counter = Counter()
    for m in modules:
        counts[(m.weight, m.kind, m.dim)] += m.multiplicity
    out = [WeightModule(w, k, n, d) for (w, k, d), n in counts.items()]
    # complex/nonzero first by descending weight, trivial modules last
    return sorted(out, key=lambda m: (not any(m.weight), m.kind == "R", m.weight, m.dim))


def splitting_text(modules: Sequence[WeightModule]) -> str:
    return " + ".join(m.to_text() for m in aggregate(modules)) if modules else "0"


def splitting_dim(modules: Sequence[WeightModule]) -> int:
    return sum(m.real_dim for m in modules)


def parse_splitting(text: str, family: str = "torus") -> list[WeightModule]:
    """Parse 'V(1,0)^C + 3V(0,0)^R[1]'; an optional [d] gives the real dimension of one copy.

    family 'su2' fills in su(2)-type dimensions when [d] is absent.
    """
    out = []
    for part in text.split("+"):
        m = re.fullmatch(r"\s*(\d*)V\(([-\d,\s]*)\)\^([RC])(?:\[(\d+)\])?\s*", part)
        if not m:
            raise ValueError(f"cannot parse module {part!r}")
        mult = int(m.group(1) or 1)
        weight = tuple(int(x) for x in m.group(2).split(",") if x.strip())
        if m.group(4):
            out.append(WeightModule(weight, m.group(3), mult, int(m.group(4))))
        elif family == "su2":
            mod = su2_module(weight[0], mult)
            if mod.kind != m.group(3):
                raise ValueError(f"{part!r}: parity of weight fixes the kind")
            out.append(mod)
        else:
            out.append(WeightModule(weight, m.group(3), mult))
    return out


@dataclass
class WeightPiece:
    """Joint isotypic piece of a torus action: weight, basis vectors, and complex structure."""

    weight: tuple[int, ...]
    basis: list[list[Fraction]]
    J: Matrix | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)


def _restrict_kernel(mat: Matrix, basis: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of {v in span(basis) : mat v = 0}."""
    if not basis:
        return []
    images = linalg.transpose([linalg.matvec(mat, v) for v in basis])
    sols = linalg.nullspace(images, len(basis))
    return [linalg.matvec(linalg.transpose(basis), s) for s in sols]


def _rates(mat: Matrix) -> list[int]:
    """Positive integers r with A^2 + r^2 singular (candidate rotation rates)."""
    n = len(mat)
    if n == 0:
        return []
    bound = int(max(sum(abs(x) for x in row) for row in mat)) + 1
    sq = linalg.matmul(mat, mat)
    out = []
    for r in range(1, bound + 1):
        shifted = [[sq[i][j] + (r * r if i == j else 0) for j in range(n)] for i in range(n)]
        if linalg.rank(shifted) < n:
            out.append(r)
    return out


def torus_pieces(mats: Sequence[Matrix]) -> list[WeightPiece]:
    """Simultaneous decomposition of commuting semisimple matrices with spectrum in iZ."""
    mats = [linalg.to_matrix(m) for m in mats]
    if not mats:
        raise WeightError("need at least one matrix")
    n = len(mats[0])
    for a, b in itertools.combinations(mats, 2):
        if not linalg.is_zero(linalg.commutator(a, b)):
            raise WeightError("torus generators do not commute")
    pieces = [WeightPiece((), [unit(n, i) for i in range(n)], None)]
    for a in mats:
        rates = _rates(a)
        new = []
        for p in pieces:
            zero = _restrict_kernel(a, p.basis)
            if zero:
                new.append(WeightPiece(p.weight + (0,), zero, p.J))
            for r in rates:
                if p.J is None:
                    sq = linalg.matmul(a, a)
                    shifted = [[sq[i][j] + (r * r if i == j else 0) for j in range(n)] for i in range(n)]
                    sub = _restrict_kernel(shifted, p.basis)
                    if sub:
                        new.append(WeightPiece(p.weight + (r,), sub, linalg.scale(Fraction(1, r), a)))
                else:
                    for sign in (1, -1):
                        sub = _restrict_kernel(linalg.sub(a, linalg.scale(sign * r, p.J)), p.basis)
                        if sub:
                            new.append(WeightPiece(p.weight + (sign * r,), sub, p.J))
        if sum(p.dim for p in new) != n:
            raise WeightError("generators are not semisimple with integer rotation rates")
        pieces = new
    for p in pieces:
        if any(p.weight) and p.dim % 2:
            raise WeightError("odd-dimensional piece with nonzero weight")
    return pieces


def weight_decomposition(torus_mats: Sequence[Matrix]) -> list[WeightModule]:
    """Weight modules of a commuting family of skew (w.r.t. some inner product) matrices."""
    mods = []
    for p in torus_pieces(torus_mats):
        if any(p.weight):
            mods.append(WeightModule(p.weight, "C", p.dim // 2))
        else:
            mods.append(WeightModule(p.weight, "R", p.dim))
    return aggregate(mods)


def character(pieces: Sequence[WeightPiece]) -> list[tuple[int, ...]]:
    """Real character: each weight listed once per real dimension, planes contributing w and -w."""
    out = []
    for p in pieces:
        if any(p.weight):
            for _ in range(p.dim // 2):
                out.append(p.weight)
                out.append(tuple(-x for x in p.weight))
        else:
            out.extend([p.weight] * p.dim)
    return sorted(out)


def planes(piece: WeightPiece) -> list[tuple[list[Fraction], list[Fraction]]]:
    """Split a piece into planes (u, v) with v = -J u, so each generator acts by rate w_i."""
    if piece.J is None:
        raise ValueError("trivial piece has no planes")
    chosen: list[list[Fraction]] = []
    out = []
    for u in piece.basis:
        if linalg.rank(chosen + [u]) == len(chosen):
            continue
        v = [-x for x in linalg.matvec(piece.J, u)]
        chosen += [u, v]
        out.append((u, v))
    return out


def su2_splitting(h_mat: Matrix) -> list[WeightModule]:
    """Decompose an su(2)-module from the rates of the image of s1 (highest-weight peeling)."""
    pieces = torus_pieces([h_mat])
    counts: Counter = Counter()
    for w in character(pieces):
        counts[w[0]] += 1
    mods = []
    while +counts:
        n = max(k for k, v in counts.items() if v > 0)
        copies = 1 if n % 2 == 0 else 2
        for _ in range(copies):
            for m in range(-n, n + 1, 2):
                counts[m] -= 1
                if counts[m] < 0:
                    raise WeightError("character is not that of an su(2)-module")
        mods.append(su2_module(n))
    return aggregate(mods)


def su2_pair_splitting(h1: Matrix, h2: Matrix) -> list[WeightModule]:
    """Decompose a 2su(2)-module from the rates of the two s1 images."""
    pieces = torus_pieces([h1, h2])
    counts: Counter = Counter(character(pieces))
    mods = []
    while +counts:
        a = max(w[0] for w, v in counts.items() if v > 0)
        b = max(w[1] for w, v in counts.items() if v > 0 and w[0] == a)
        both_even, both_odd = a % 2 == 0 and b % 2 == 0, a % 2 == 1 and b % 2 == 1
        copies = 1 if (both_even or both_odd) else 2
        for _ in range(copies):
            for i in range(-a, a + 1, 2):
                for j in range(-b, b + 1, 2):
                    counts[(i, j)] -= 1
                    if counts[(i, j)] < 0:
                        raise WeightError("character is not that of a 2su(2)-module")
        dim = (a + 1) * (b + 1) * copies
        mods.append(WeightModule((a, b), "R" if both_even else "C", 1, dim))
    return aggregate(mods)


# -- invariant forms ------------------------------------------------------


def form_space_basis(n: int, k: int) -> list[int]:
    return [sum(1 << i for i in c) for c in itertools.combinations(range(n), k)]


def invariant_forms(rho: Representation, degree: int) -> list[Form]:
    """Basis of the k-forms annihilated by every generator (kernel of the induced action)."""
    n = rho.dim
    masks = form_space_basis(n, degree)
    index = {m: i for i, m in enumerate(masks)}
    rows: list[list[Fraction]] = []
    for mat in rho.matrices:
        if linalg.is_zero(mat):
            continue
        block = [[Fraction(0)] * len(masks) for _ in masks]
        for col, m in enumerate(masks):
            img = matrix_action(Form(n, {m: 1}), mat)
            for mm, c in img.items():
                block[index[mm]][col] = c
        rows.extend(block)
    sols = linalg.nullspace(rows, len(masks)) if rows else [unit(len(masks), i) for i in range(len(masks))]
    forms = []
    for s in sols:
        f = Form(n, {m: c for m, c in zip(masks, s)})
        for mat in rho.matrices:
            if matrix_action(f, mat):
                raise AssertionError("invariant form failed post-hoc check")
        forms.append(f)
    return forms


# -- the subgroup table ----------------------------------------------------

W = tuple[int, ...]


def _plane_char(planes_: Sequence[W], zeros: int, rank: int) -> tuple[W, ...]:
    out = []
    for w in planes_:
        out += [tuple(w), tuple(-x for x in w)]
    out += [tuple([0] * rank)] * zeros
    return tuple(sorted(out))


@dataclass(frozen=True)
class G2SubgroupEntry:
    label: str
    group: str
    splitting: tuple[WeightModule, ...]
    rank: int
    dim: int
    h_type: str
    character: tuple[W, ...] | None = None
    roots: tuple[W, ...] = ()
    n_center: int = 0
    note: str = ""

    def splitting_text(self) -> str:
        return splitting_text(self.splitting) if self.splitting else "7V(0)^R"

    def to_json_obj(self) -> dict:
        out = {"label": self.label, "group": self.group, "splitting": self.splitting_text(),
               "rank": self.rank, "dim": self.dim}
        if self.note:
            out["note"] = self.note
        return out


def _roots_su2() -> tuple[W, ...]:
    return ((-2,), (2,))


def g2_subgroup_table() -> list[G2SubgroupEntry]:
    """Connected subgroups of G2 and the splitting of Im(O), with torus characters.

    Characters are in Cartan coordinates: t-element (l1, l2) for tori, the
    s1-images for su(2) ideals, (H, Z) for su(2)+u(1) with Z central,
    (diag(i,-i,0), diag(0,i,-i)) for su(3).
    """
    tor = torus_module
    su = su2_module
    inferred = ("u(1) weights derived from the Cartan elements commuting with the su(2) ideal; "
                "the table itself lists only the su(2) splitting")
    return [
        G2SubgroupEntry("{e}", "{e}", (), 0, 0, "0", tuple(() for _ in range(7))),
        G2SubgroupEntry("u(1)", "U(1)", (tor((1,)), tor((1,)), tor((2,)), tor((0,))), 1, 1, "u1",
                        None, (), 1, "family V_a + V_b + V_{-a-b} + V_0; splitting shown for a=b=1"),
        G2SubgroupEntry("2u(1)", "U(1)^2", (tor((1, 0)), tor((0, 1)), tor((1, 1)), tor((0, 0))), 2, 2, "2u1",
                        _plane_char([(1, 0), (0, 1), (1, 1)], 1, 2), (), 2),
        G2SubgroupEntry("su(2)_1", "SU(2)", (su(1), su(0, 3)), 1, 3, "su2",
                        _plane_char([(1,), (1,)], 3, 1), _roots_su2()),
        G2SubgroupEntry("su(2)_{1,2}", "SU(2)", (su(2), su(1)), 1, 3, "su2",
                        _plane_char([(2,), (1,), (1,)], 1, 1), _roots_su2()),
        G2SubgroupEntry("su(2)_{2,2}", "SO(3)", (su(2, 2), su(0)), 1, 3, "su2",
                        _plane_char([(2,), (2,)], 3, 1), _roots_su2()),
        G2SubgroupEntry("su(2)_6", "SO(3)", (su(6),), 1, 3, "su2",
                        _plane_char([(6,), (4,), (2,)], 1, 1), _roots_su2()),
        G2SubgroupEntry("su(2)_1+u(1)", "U(2)", (su(1), su(0, 3)), 2, 4, "su2+u1",
                        _plane_char([(0, 2), (1, -1), (1, 1)], 1, 2), ((-2, 0), (2, 0)), 1, inferred),
        G2SubgroupEntry("su(2)_{1,2}+u(1)", "U(2)", (su(2), su(1)), 2, 4, "su2+u1",
                        _plane_char([(2, 0), (1, -1), (1, 1)], 1, 2), ((-2, 0), (2, 0)), 1, inferred),
        G2SubgroupEntry("2su(2)", "SO(4)", (WeightModule((2, 0), "R", 1, 3), WeightModule((1, 1), "C", 1, 4)),
                        2, 6, "2su2", _plane_char([(2, 0), (1, 1), (1, -1)], 1, 2),
                        ((-2, 0), (0, -2), (0, 2), (2, 0))),
        G2SubgroupEntry("su(3)", "SU(3)", (WeightModule((1, 0), "C", 1, 6), WeightModule((0, 0), "R", 1, 1)),
                        2, 8, "su3", _plane_char([(1, 0), (1, -1), (0, 1)], 1, 2),
                        tuple(sorted(_plane_char([(2, -1), (-1, 2), (1, 1)], 0, 2)))),
        G2SubgroupEntry("g2", "G2", (WeightModule((1, 0), "R", 1, 7),), 2, 14, "g2",
                        _plane_char([(1, 0), (0, 1), (1, 1)], 1, 2),
                        tuple(sorted(_plane_char([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (1, -1)], 0, 2)))),
    ]


def table_entry(label: str) -> G2SubgroupEntry:
    for e in g2_subgroup_table():
        if e.label == label:
            return e
    raise KeyError(label)


# -- matching -------------------------------------------------------------


@dataclass(frozen=True)
class Match:
    label: str
    params: tuple = ()
    transform: tuple | None = None  # rows of M with row-weight = M input-weight

    def to_json_obj(self) -> dict:
        out = {"label": self.label}
        if self.params:
            out["params"] = list(self.params)
        if self.transform is not None:
            out["transform"] = [[str(x) for x in row] for row in self.transform]
        return out


def _apply(m: Matrix, w: Sequence) -> tuple:
    return tuple(sum((m[i][j] * w[j] for j in range(len(w))), Fraction(0)) for i in range(len(m)))


def find_weight_map(source: Sequence[W], target: Sequence[W], source_roots: Sequence[W] = (),
                    target_roots: Sequence[W] = (), n_center: int = 0) -> Matrix | None:
    """Rational invertible M with M(source) = target as multisets (and roots to roots).

    M is block diagonal: semisimple coordinates first, the last n_center
    coordinates (center) transform among themselves.
    """
    if len(source) != len(target):
        return None
    r = len(source[0]) if source else 0
    if r == 0:
        return [] if Counter(source) == Counter(target) else None
    src = [tuple(frac(x) for x in w) for w in source]
    tgt_count = Counter(tuple(frac(x) for x in w) for w in target)
    troots = Counter(tuple(frac(x) for x in w) for w in target_roots)
    # first r linearly independent source weights
    chosen: list[tuple] = []
    for w in src:
        if linalg.rank([list(x) for x in chosen + [w]]) > len(chosen):
            chosen.append(w)
        if len(chosen) == r:
            break
    if len(chosen) < r:
        return None
    distinct_t = sorted(tgt_count)
    ss = r - n_center
    for images in itertools.product(distinct_t, repeat=r):
        if linalg.rank([list(x) for x in images]) < r:
            continue
        # M C = T with C columns = chosen, T columns = images
        cmat = linalg.transpose([list(x) for x in chosen])
        tmat = linalg.transpose([list(x) for x in images])
        m = linalg.matmul(tmat, linalg.inverse(cmat))
        if any(m[i][j] for i in range(ss) for j in range(ss, r)) or \
                any(m[i][j] for i in range(ss, r) for j in range(ss)):
            continue
        if Counter(_apply(m, w) for w in src) != tgt_count:
            continue
        if source_roots or target_roots:
            if Counter(_apply(m, w) for w in source_roots) != troots:
                continue
        return m
    return None


def _u1_params(char: Sequence[W]) -> tuple[int, int] | None:
    vals = [w[0] for w in char]
    if len(vals) != 7:
        return None
    pos = sorted(v for v in vals if v > 0)
    neg = sorted(-v for v in vals if v < 0)
    zeros = vals.count(0)
    if pos != neg or zeros % 2 == 0:
        return None
    rates = pos + [0] * ((zeros - 1) // 2)
    if len(rates) != 3:
        return None
    p, q, r = sorted(rates)
    if p + q != r:
        return None
    return (q, p)


def match_character(char: Sequence[W], h_type: str, roots: Sequence[W] = (), n_center: int | None = None):
    """Match a torus character of the isotropy Cartan against the table rows of type h_type."""
    for e in g2_subgroup_table():
        if e.h_type != h_type and not (h_type == "torus" and e.h_type in ("0", "u1", "2u1")):
            continue
        rank = len(char[0]) if char else 0
        if e.rank != rank:
            continue
        if e.h_type == "0":
            if all(w == () for w in char) and len(char) == 7:
                return Match("{e}")
            continue
        if e.h_type == "u1":
            params = _u1_params(char)
            if params is not None:
                return Match("u(1)", params)
            continue
        nc = e.n_center if n_center is None else n_center
        m = find_weight_map(char, e.character, roots, e.roots if roots else (), nc)
        if m is not None:
            return Match(e.label, (), tuple(tuple(r) for r in m))
    return None


def _splitting_character(modules: Sequence[WeightModule]) -> list[W] | None:
    out: list[W] = []
    for mod in modules:
        for _ in range(mod.multiplicity):
            if mod.torus_shaped():
                if any(mod.weight):
                    out += [mod.weight, tuple(-x for x in mod.weight)]
                else:
                    out.append(mod.weight)
            elif len(mod.weight) == 1:
                n = mod.weight[0]
                copies = mod.dim // (n + 1)
                for _ in range(copies):
                    out += [(m,) for m in range(-n, n + 1, 2)]
            else:
                return None
    return sorted(out)


def _canonical(modules: Sequence[WeightModule]) -> tuple:
    return tuple((m.weight, m.kind, m.dim, m.multiplicity) for m in sorted(aggregate(modules)))


def match_isotropy(splitting: Sequence[WeightModule], algebra: str | None = None) -> Match | None:
    """Table row whose splitting agrees with the input up to reordering, torus reparametrization and signs.

    algebra: 'torus' (abelian isotropy, rank = weight length), 'su2' (weights are
    su(2) highest weights), 'su2+u1' (su(2) part of a U(2) row), or None to
    infer from the module shapes.
    """
    if splitting_dim(splitting) != 7:
        return None
    if all(not any(m.weight) for m in splitting):
        return Match("{e}")  # a trivially acting isotropy is not effective
    if algebra is None:
        if all(m.torus_shaped() for m in splitting):
            algebra = "torus"
        elif all(len(m.weight) == 1 for m in splitting):
            algebra = "su2"
    if algebra == "su2+u1":
        base = match_isotropy(splitting, "su2")
        labels = {e.label for e in g2_subgroup_table()}
        if base is None or base.label + "+u(1)" not in labels:
            return None
        return Match(base.label + "+u(1)")
    if algebra in ("torus", "su2"):
        char = _splitting_character(splitting)
        if char is None:
            return None
        if algebra == "torus":
            return match_character(char, "torus")
        return match_character(char, "su2", _roots_su2(), 0)
    canon = _canonical(splitting)
    for e in g2_subgroup_table():
        if e.splitting and _canonical(e.splitting) == canon and e.h_type not in ("su2+u1",):
            return Match(e.label)
    return None
