"""Exterior algebra of a rational vector space with sparse bitmask blades.

A blade ``e^{i1...ik}`` (1-based, strictly increasing indices) is stored as the
bitmask with bits ``i1-1, ..., ik-1`` set.  A :class:`Form` is an immutable
sparse map from blade masks to nonzero :class:`~fractions.Fraction`
coefficients.  All operations are exact.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .linalg import Matrix, frac

MAX_DIM = 16


class DimensionMismatch(ValueError):
    pass


# -- blades ---------------------------------------------------------------


def blade(*indices: int) -> int:
    """Bitmask of the blade with the given 1-based indices (any order, no repeats)."""
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated index {i}")
        mask |= bit
    return mask


def blade_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def grade_of(mask: int) -> int:
    return bin(mask).count("1")


def merge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^{A|B}; 0 when A and B overlap."""
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        # bits of A above this bit of B must move past it
        swaps += grade_of(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def complement_sign(mask: int, n: int) -> tuple[int, int]:
    """(sign, complement) with e^I ^ e^{I^c} = sign * e^{1..n}."""
    full = (1 << n) - 1
    comp = full & ~mask
    return merge_sign(mask, comp), comp


def _permutation_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# -- forms ----------------------------------------------------------------


class Form:
    """Immutable sparse differential form with constant rational coefficients."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        if not 0 <= dim <= MAX_DIM:
            raise ValueError(f"dimension {dim} outside 0..{MAX_DIM}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        full = (1 << dim) - 1
        clean: dict[int, Fraction] = {}
        for mask, c in items:
            if mask & ~full:
                raise ValueError(f"blade {blade_indices(mask)} outside dimension {dim}")
            c = frac(c)
            if c:
                clean[mask] = clean.get(mask, Fraction(0)) + c
        self.dim = dim
        self._terms = {m: clean[m] for m in sorted(clean) if clean[m] != 0}
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, dim: int) -> "Form":
        return cls(dim)

    @classmethod
    def scalar(cls, dim: int, c=1) -> "Form":
        return cls(dim, {0: c})

    @classmethod
    def basis(cls, dim: int, *indices: int, coeff=1) -> "Form":
        """coeff * e^{indices}, indices in any order (sign applied)."""
        return cls(dim, {blade(*indices): _permutation_sign(indices) * frac(coeff)})

    @classmethod
    def one_form(cls, vec: Sequence) -> "Form":
        return cls(len(vec), {1 << i: c for i, c in enumerate(vec)})

    @classmethod
    def volume(cls, dim: int) -> "Form":
        return cls(dim, {(1 << dim) - 1: 1})

    @classmethod
    def from_dict(cls, dim: int, terms_by_name: Mapping[str, object]) -> "Form":
        """Build from {'123': 1, '145': 1, ...} style digit strings (dim <= 9)."""
        out = cls(dim)
        for key, c in terms_by_name.items():
            out = out + cls.basis(dim, *(int(ch) for ch in key), coeff=c)
        return out

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, *indices: int) -> Fraction:
        mask = blade(*indices)
        return _permutation_sign(indices) * self._terms.get(mask, Fraction(0))

    def grades(self) -> set[int]:
        return {grade_of(m) for m in self._terms}

    @property
    def grade(self) -> int:
        g = self.grades()
        if len(g) > 1:
            raise ValueError("form is not homogeneous")
        return g.pop() if g else 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            return self.dim == other.dim and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._terms.items())))
        return self._hash

    def _check(self, other: "Form"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "Form") -> "Form":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return Form(self.dim, t)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form(self.dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c) -> "Form":
        if isinstance(c, Form):
            return wedge(self, c)
        c = frac(c)
        return Form(self.dim, {m: c * x for m, x in self._terms.items()})

    def __rmul__(self, c) -> "Form":
        return self * c

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __repr__(self) -> str:
        return f"Form({self.dim}, {to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    def homogeneous_part(self, k: int) -> "Form":
        return Form(self.dim, {m: c for m, c in self._terms.items() if grade_of(m) == k})

    def restrict_indices(self, allowed: Iterable[int]) -> "Form":
        """Keep only terms whose blade uses indices from `allowed` (1-based)."""
        mask = blade(*allowed)
        return Form(self.dim, {m: c for m, c in self._terms.items() if not m & ~mask})

    def embed(self, dim: int, index_map: Sequence[int] | None = None) -> "Form":
        """Re-index into dimension `dim`; index_map[i-1] is the new index of old index i."""
        if index_map is None:
            index_map = list(range(1, self.dim + 1))
        out = {}
        for m, c in self._terms.items():
            idx = [index_map[i - 1] for i in blade_indices(m)]
            out[blade(*idx)] = out.get(blade(*idx), 0) + _permutation_sign(idx) * c
        return Form(dim, out)


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out: dict[int, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s = merge_sign(ma, mb)
            if s:
                m = ma | mb
                out[m] = out.get(m, Fraction(0)) + s * ca * cb
    return Form(a.dim, out)


def wedge_all(forms: Sequence[Form], dim: int | None = None) -> Form:
    if not forms:
        return Form.scalar(dim or 0)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(v: Sequence, a: Form) -> Form:
    """Interior product v ⌟ a of the vector v with the form a."""
    if len(v) != a.dim:
        raise DimensionMismatch(f"vector of length {len(v)} against form of dimension {a.dim}")
    v = [frac(x) for x in v]
    out: dict[int, Fraction] = {}
    for m, c in a._terms.items():
        for pos, i in enumerate(blade_indices(m)):
            if v[i - 1]:
                r = m & ~(1 << (i - 1))
                term = (-1 if pos & 1 else 1) * v[i - 1] * c
                out[r] = out.get(r, Fraction(0)) + term
    return Form(a.dim, out)


def unit_vector(n: int, i: int) -> list[Fraction]:
    """The 1-based standard basis vector e_i of Q^n."""
    return [Fraction(int(j == i - 1)) for j in range(n)]


def evaluate(a: Form, *vectors: Sequence) -> Fraction:
    """a(v1, ..., vk) with the convention e^{12}(e1, e2) = 1."""
    out = a
    for v in vectors:
        out = contract(v, out)
    return out.terms.get(0, Fraction(0))


def apply_derivation(a: Form, images: Sequence[Form], degree: int) -> Form:
    """Extend e^i -> images[i-1] to a graded derivation of the given degree.

    degree 0 gives the Lie derivative action of a matrix on forms, degree 1 the
    exterior derivative from coframe differentials.
    """
    out = Form(a.dim)
    for m, c in a._terms.items():
        idx = blade_indices(m)
        for pos, i in enumerate(idx):
            img = images[i - 1]
            if not img:
                continue
            left = Form(a.dim, {blade(*idx[:pos]): 1})
            right = Form(a.dim, {blade(*idx[pos + 1:]): 1})
            sign = -1 if (pos * degree) & 1 else 1
            out = out + (sign * c) * wedge(wedge(left, img), right)
    return out


def matrix_action(a: Form, mat: Matrix) -> Form:
    """Infinitesimal action of a linear map A on forms: e^i -> -e^i o A."""
    n = a.dim
    images = [Form(n, {1 << j: -mat[i][j] for j in range(n)}) for i in range(n)]
    return apply_derivation(a, images, 0)


def change_coframe(a: Form, basis_change: Matrix) -> Form:
    """Substitute e^i -> sum_j M[i][j] e^j and re-expand.

    Note the substitution is a pullback: composing M then N equals using N M.
    """
    n = a.dim
    m = linalg.to_matrix(basis_change)
    if linalg.shape(m) != (n, n):
        raise DimensionMismatch("basis change must be n x n")
    if linalg.det(m) == 0:
        raise linalg.SingularMatrixError("basis change is singular")
    images = [Form(n, {1 << j: m[i][j] for j in range(n)}) for i in range(n)]
    cache: dict[int, Form] = {0: Form.scalar(n)}

    def image(mask: int) -> Form:
        if mask not in cache:
            low = mask & -mask
            i = low.bit_length()
            cache[mask] = wedge(images[i - 1], image(mask ^ low))
        return cache[mask]

    out = Form(n)
    for mask, c in a._terms.items():
        out = out + c * image(mask)
    return out


# -- metrics and Hodge star ------------------------------------------------


@dataclass(frozen=True)
class Metric:
    """A symmetric positive definite rational bilinear form."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(frac(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if any(len(row) != len(mat) for row in mat):
            raise ValueError("metric matrix must be square")
        if not linalg.is_symmetric([list(r) for r in mat]):
            raise ValueError("metric matrix must be symmetric")

    @classmethod
    def euclidean(cls, n: int) -> "Metric":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_matrix(cls, mat) -> "Metric":
        return cls(tuple(tuple(row) for row in mat))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def as_list(self) -> Matrix:
        return [list(row) for row in self.matrix]

    def is_positive_definite(self) -> bool:
        return linalg.is_positive_definite(self.as_list())

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((frac(x[i]) * self.matrix[i][j] * frac(y[j])
                    for i in range(self.dim) for j in range(self.dim)), Fraction(0))


def _minor(mat: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    return linalg.det([[mat[r][c] for c in cols] for r in rows])


def hodge(a: Form, g: Metric | None = None, orientation: int = 1) -> Form:
    """Hodge star with respect to g and the given orientation sign.

    For a general metric: *e^I = o sqrt(det g) sum_K det(g^-1[I, K]) s(K) e^{K^c}
    where s(K) is the sign of e^K ^ e^{K^c} = s(K) e^{1..n}.
    """
    n = a.dim
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    if g is None:
        g = Metric.euclidean(n)
    if g.dim != n:
        raise DimensionMismatch("metric and form dimensions differ")
    gm = g.as_list()
    if not linalg.is_positive_definite(gm):
        raise ValueError("metric is not positive definite")
    root = linalg.rational_root(linalg.det(gm), 2)
    if root is None:
        raise ValueError("det g is not a rational square; Hodge star would leave Q")
    ginv = linalg.inverse(gm)
    euclid = all(gm[i][j] == (i == j) for i in range(n) for j in range(n))
    out: dict[int, Fraction] = {}
    for mask, c in a._terms.items():
        idx = [i - 1 for i in blade_indices(mask)]
        if euclid:
            targets = [(mask, Fraction(1))]
        else:
            targets = []
            for cols in itertools.combinations(range(n), len(idx)):
                mnr = _minor(ginv, idx, cols) if idx else Fraction(1)
                if mnr:
                    targets.append((sum(1 << j for j in cols), mnr))
        for kmask, mnr in targets:
            s, comp = complement_sign(kmask, n)
            out[comp] = out.get(comp, Fraction(0)) + orientation * root * s * mnr * c
    return Form(n, out)


def conformal_hodge(a: Form, b: Matrix) -> Form:
    """sum_I a_I sum_K det(b^-1[I, K]) s(K) e^{K^c}: the star of b without the sqrt(det) factor.

    Used when b is only known up to an irrational positive scale.
    """
    n = a.dim
    binv = linalg.inverse(b)
    out: dict[int, Fraction] = {}
    for mask, c in a._terms.items():
        idx = [i - 1 for i in blade_indices(mask)]
        for cols in itertools.combinations(range(n), len(idx)):
            mnr = _minor(binv, idx, cols) if idx else Fraction(1)
            if mnr:
                s, comp = complement_sign(sum(1 << j for j in cols), n)
                out[comp] = out.get(comp, Fraction(0)) + s * mnr * c
    return Form(n, out)


# -- serialization --------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _blade_name(mask: int, dim: int, symbol: str) -> str:
    idx = blade_indices(mask)
    if not idx:
        return ""
    if dim <= 9:
        return symbol + "".join(str(i) for i in idx)
    return symbol + "[" + ",".join(str(i) for i in idx) + "]"


def to_text(a: Form, symbol: str = "e") -> str:
    """Canonical text, terms sorted by blade bitmask, e.g. '-2*e1245 + 4*e4567'."""
    if not a._terms:
        return "0"
    parts = []
    for mask, c in a._terms.items():
        name = _blade_name(mask, a.dim, symbol)
        mag = abs(c)
        if not name:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{_fmt_coeff(mag)}*{name}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"^(?:(?P<coeff>\d+(?:/\d+)?)\*?)?(?P<blade>[a-zA-Z]+(?:\d+|\[[\d,]+\]))?$")


def parse_text(text: str, dim: int) -> Form:
    """Inverse of :func:`to_text` (any blade symbol accepted)."""
    text = text.strip()
    if text == "0":
        return Form(dim)
    tokens = re.split(r"\s*([+-])\s*", text)
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    out = Form(dim)
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        m = _TERM.match(body.replace(" ", ""))
        if not m or not (m.group("coeff") or m.group("blade")):
            raise ValueError(f"cannot parse term {body!r}")
        c = Fraction(m.group("coeff") or 1) * (-1 if sign == "-" else 1)
        b = m.group("blade")
        if b is None:
            out = out + Form.scalar(dim, c)
            continue
        digits = re.sub(r"^[a-zA-Z]+", "", b)
        idx = [int(x) for x in digits.strip("[]").split(",")] if digits.startswith("[") else [int(ch) for ch in digits]
        out = out + Form.basis(dim, *idx, coeff=c)
    return out


def to_json_obj(a: Form) -> list[dict]:
    return [{"indices": list(blade_indices(m)), "coeff": _fmt_coeff(c)} for m, c in a._terms.items()]


def from_json_obj(obj: Sequence[Mapping], dim: int) -> Form:
    out = Form(dim)
    for term in obj:
        out = out + Form.basis(dim, *term["indices"], coeff=Fraction(term["coeff"]))
    return out


def to_json(a: Form) -> str:
    return json.dumps(to_json_obj(a))
