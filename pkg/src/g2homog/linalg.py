"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here
is deterministic Gaussian elimination with the first nonzero pivot, so the
same input always yields the same basis vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


class SingularMatrixError(ValueError):
    pass


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[frac(x) for x in row] for row in rows]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(a: Sequence[Sequence]) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    c = frac(c)
    return [[c * x for x in row] for row in a]


def lincomb(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    n, m = shape(mats[0])
    out = zeros(n, m)
    for c, mat in zip(coeffs, mats):
        if c == 0:
            continue
        for i in range(n):
            ri, oi = mat[i], out[i]
            for j in range(m):
                if ri[j]:
                    oi[j] += c * ri[j]
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = frac(x)
        off += len(b)
    return out


def flatten(a: Matrix) -> Vector:
    return [x for row in a for x in row]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    nrows, ncols = shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a else 0


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : a x = 0}; one vector per free column, free entry = 1."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    r, pivots = rref(a)
    n = len(a[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence) -> Vector:
    """A particular solution of a x = b; raises if inconsistent."""
    n = len(a[0])
    aug = [list(row) + [frac(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if n in pivots:
        raise SingularMatrixError("inconsistent linear system")
    x = [Fraction(0)] * n
    for row, pc in zip(r, pivots):
        x[pc] = row[n]
    return x


def det(a: Matrix) -> Fraction:
    m = [list(row) for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in r]


def leading_minors(a: Matrix) -> list[Fraction]:
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def is_positive_definite(a: Matrix) -> bool:
    return all(x > 0 for x in leading_minors(a))


def is_definite(a: Matrix) -> int:
    """+1 positive definite, -1 negative definite, 0 otherwise (Sylvester)."""
    minors = leading_minors(a)
    if all(x > 0 for x in minors):
        return 1
    if all((x < 0) if k % 2 == 0 else (x > 0) for k, x in enumerate(minors)):
        return -1
    return 0


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """Real k-th root of a rational if it is rational (odd k allows q < 0)."""
    q = frac(q)
    sign = 1
    if q < 0:
        if k % 2 == 0:
            return None
        sign, q = -1, -q
    num, den = integer_root(q.numerator, k), integer_root(q.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def span_coordinates(basis: Sequence[Vector], v: Sequence) -> Vector:
    """Coordinates of v in the (linearly independent) basis; raises if v is outside the span."""
    a = transpose([list(b) for b in basis])
    return solve(a, v)


def complement_basis(vectors: Sequence[Vector], n: int) -> list[Vector]:
    """Standard unit vectors completing `vectors` to a basis of Q^n (first fit)."""
    current = [list(v) for v in vectors]
    out = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if rank(current + [e]) > len(current):
            current.append(e)
            out.append(e)
    return out
