"""Reductive homogeneous spaces G/H: complement, isotropy action, coframe calculus, G2 verdicts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .exterior import (Form, Metric, apply_derivation, blade, change_coframe, conformal_hodge,
                       hodge, matrix_action, to_text, wedge, wedge_all)
from .liealg import (LieAlgebra, Match, Representation, WeightModule, aggregate, cartan_g2_action,
                     character, find_weight_map, g2_subgroup_table, invariant_forms, match_character,
                     planes, splitting_text, su2_pair_splitting, su2_splitting, torus_pieces,
                     weight_decomposition)
from .linalg import Matrix, frac
from .octonion import NotAG2Form, build_omega, build_star_omega, g2_bilinear, volume_scale

M_DIM = 7


class NotReductive(ValueError):
    pass


class NotBasic(ValueError):
    pass


class NoInvariantStructure(ValueError):
    """The isotropy representation is not conjugate into G2."""


# -- coframe differential -------------------------------------------------


@dataclass(frozen=True)
class CoframeDifferential:
    """de^i for the left-invariant coframe of a Lie algebra."""

    de: tuple[Form, ...]

    @property
    def dim(self) -> int:
        return len(self.de)

    def d(self, a: Form) -> Form:
        return apply_derivation(a, self.de, 1)

    def d_squared_violations(self) -> list[int]:
        return [i + 1 for i, f in enumerate(self.de) if self.d(f)]

    def equations(self) -> list[str]:
        return [f"de^{i + 1} = {to_text(f)}" for i, f in enumerate(self.de)]


def maurer_cartan(g: LieAlgebra) -> CoframeDifferential:
    """de^i = -sum_{j<k} c^i_jk e^j ^ e^k, with e^j ^ e^k (e_j, e_k) = 1."""
    n = g.dim
    de = []
    for i in range(n):
        terms = {}
        for j, k in itertools.combinations(range(n), 2):
            c = g.c(j, k, i)
            if c:
                terms[blade(j + 1, k + 1)] = -c
        de.append(Form(n, terms))
    return CoframeDifferential(tuple(de))


# -- homogeneous spaces ---------------------------------------------------


def trace_form(mats: Sequence[Matrix]) -> Matrix:
    """q(X, Y) = -tr(XY) on a matrix model."""
    n = len(mats)
    q = linalg.zeros(n)
    for i in range(n):
        for j in range(i, n):
            q[i][j] = q[j][i] = -linalg.trace(linalg.matmul(mats[i], mats[j]))
    return q


def _gram(q: Matrix, u: Sequence, v: Sequence) -> Fraction:
    return sum((frac(u[i]) * q[i][j] * frac(v[j]) for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]),
               Fraction(0))


class HomogeneousSpace:
    """g = m + h with m the q-orthogonal complement (or a supplied reductive complement).

    Works in the adapted basis (m_1..m_7, h_1..h_r): coframe indices 1..7 are
    tangent to G/H, the remaining ones are vertical.
    """

    def __init__(self, g: LieAlgebra, h_basis: Sequence[Sequence], q: Matrix | None = None,
                 m_basis: Sequence[Sequence] | None = None, g_matrices: Sequence[Matrix] | None = None,
                 name: str = "", h_type: str | None = None, h_cartan: Sequence[Sequence] | None = None):
        self.g = g
        self.name = name
        self.h_basis = [[frac(x) for x in v] for v in h_basis]
        if self.h_basis and linalg.rank(self.h_basis) != len(self.h_basis):
            raise ValueError("h basis is linearly dependent")
        if q is None:
            if g_matrices is not None:
                q = trace_form(g_matrices)
            else:
                q = linalg.identity(g.dim) if g.is_abelian() else None
        if q is None:
            raise ValueError("need an ad-invariant metric or a matrix model")
        self.q = linalg.to_matrix(q)
        self._check_invariant_metric()
        if m_basis is None:
            if self.h_basis:
                rows = [linalg.matvec(linalg.transpose(self.q), h) for h in self.h_basis]
                m_basis = linalg.nullspace(rows, g.dim)
            else:
                m_basis = [[Fraction(int(i == j)) for j in range(g.dim)] for i in range(g.dim)]
        self.m_basis = [[frac(x) for x in v] for v in m_basis]
        if len(self.m_basis) + len(self.h_basis) != g.dim:
            raise ValueError("m and h do not span g")
        self.h_type = h_type
        self.h_cartan = [[frac(x) for x in v] for v in h_cartan] if h_cartan else None
        labels = [f"e{i + 1}" for i in range(g.dim)]
        self.adapted = g.change_basis(self.m_basis + self.h_basis, labels)
        self._check_reductive()

    @property
    def dim_m(self) -> int:
        return len(self.m_basis)

    @property
    def dim_h(self) -> int:
        return len(self.h_basis)

    def _check_invariant_metric(self):
        for i in range(self.g.dim):
            ad = self.g.ad_basis(i)
            lhs = linalg.add(linalg.matmul(linalg.transpose(ad), self.q), linalg.matmul(self.q, ad))
            if not linalg.is_zero(lhs):
                raise ValueError(f"q is not ad-invariant (generator {i + 1})")
        if not linalg.is_symmetric(self.q):
            raise ValueError("q is not symmetric")

    def _check_reductive(self):
        n, k = self.g.dim, self.dim_m
        for p in range(k, n):
            for j in range(n):
                col = self.adapted.bracket_basis(p, j)
                if j < k and any(col[k:]):
                    raise NotReductive(f"[h_{p - k + 1}, m_{j + 1}] leaves m")
                if j >= k and any(col[:k]):
                    raise NotReductive("h is not a subalgebra")

    def h_algebra(self) -> LieAlgebra:
        k, n = self.dim_m, self.g.dim
        consts = {}
        for a, b in itertools.combinations(range(k, n), 2):
            consts[(a - k, b - k)] = {c - k: self.adapted.c(a, b, c) for c in range(k, n) if self.adapted.c(a, b, c)}
        return LieAlgebra([f"h{i + 1}" for i in range(n - k)], consts, check=False)

    def h_ad_full(self) -> list[Matrix]:
        """ad of each h generator on all of g, adapted basis."""
        return [self.adapted.ad_basis(p) for p in range(self.dim_m, self.g.dim)]

    def mc(self) -> CoframeDifferential:
        return maurer_cartan(self.adapted)

    def q_m(self) -> Matrix:
        return [[_gram(self.q, u, v) for v in self.m_basis] for u in self.m_basis]

    def embed(self, a: Form) -> Form:
        """A form on m (dimension 7) as a form on the full adapted coframe."""
        return a.embed(self.g.dim)


def isotropy_representation(hs: HomogeneousSpace) -> Representation:
    k = hs.dim_m
    mats = [[row[:k] for row in ad[:k]] for ad in hs.h_ad_full()]
    rep = Representation(hs.h_algebra(), mats, check=False)
    qm = hs.q_m()
    for a in mats:
        if not linalg.is_zero(linalg.add(linalg.matmul(linalg.transpose(a), qm), linalg.matmul(qm, a))):
            raise NotReductive("isotropy action is not skew for q on m")
    return rep


def is_basic(a: Form, hs: HomogeneousSpace) -> bool:
    vertical = sum(1 << i for i in range(hs.dim_m, hs.g.dim))
    if any(m & vertical for m in a.terms):
        return False
    return all(not matrix_action(a, ad) for ad in hs.h_ad_full())


def quotient_d(a: Form, hs: HomogeneousSpace, mc: CoframeDifferential | None = None) -> Form:
    if not is_basic(a, hs):
        raise NotBasic("form is not basic")
    da = (mc or hs.mc()).d(a)
    if not is_basic(da, hs):
        raise NotBasic("differential of a basic form is not basic: inconsistent input")
    return da


# -- identification with Im(O) ----------------------------------------------


def _classify_h(hs: HomogeneousSpace, rep: Representation) -> tuple[str, list[Matrix], list[list]]:
    """(h_type, Cartan matrices on m, Cartan vectors in h coordinates)."""
    h = rep.algebra
    if h.dim == 0:
        return "0", [], []
    if h.is_abelian():
        basis = [[Fraction(int(i == j)) for j in range(h.dim)] for i in range(h.dim)]
        return "torus", rep.matrices, basis
    h_type = hs.h_type
    cartan = hs.h_cartan
    if h_type is None and h.dim == 3:
        h_type = "su2"
    if h_type is None:
        raise ValueError("nonabelian isotropy needs an explicit type and Cartan subalgebra")
    if cartan is None:
        if h_type != "su2":
            raise ValueError(f"{h_type} isotropy needs an explicit Cartan subalgebra")
        x = next([Fraction(int(i == j)) for j in range(3)] for i in range(3) if not linalg.is_zero(h.ad_basis(i)))
        rate = next(p.weight[0] for p in torus_pieces([h.ad(x)]) if p.weight[0])
        cartan = [[Fraction(2, rate) * v for v in x]]
    return h_type, [rep.of(c) for c in cartan], cartan


def _h_roots(h: LieAlgebra, cartan: Sequence[Sequence]) -> list[tuple]:
    pieces = torus_pieces([h.ad(c) for c in cartan])
    return [w for w in character(pieces) if any(w)]


def match_space(hs: HomogeneousSpace, rep: Representation | None = None):
    """(Match or None, splitting, torus pieces, h_type, Cartan matrices)."""
    rep = rep or isotropy_representation(hs)
    h_type, tmats, cartan = _classify_h(hs, rep)
    if h_type == "0":
        mods = [WeightModule((), "R", 7)]
        return Match("{e}"), mods, [], h_type, tmats
    pieces = torus_pieces(tmats)
    char = character(pieces)
    if h_type == "torus":
        return match_character(char, "torus"), weight_decomposition(tmats), pieces, h_type, tmats
    roots = _h_roots(rep.algebra, cartan)
    if h_type == "su2":
        mods = su2_splitting(tmats[0])
        n_center = 0
    elif h_type == "2su2":
        mods = su2_pair_splitting(tmats[0], tmats[1])
        n_center = 0
    elif h_type == "su2+u1":
        mods = su2_splitting(tmats[0])
        n_center = 1
    else:
        mods = weight_decomposition(tmats)
        n_center = 0
    match = match_character(char, h_type, roots, n_center)
    if match is not None and h_type not in ("su2", "2su2"):
        # report the table splitting for rows whose modules are not torus-shaped
        entry = next(e for e in g2_subgroup_table() if e.label == match.label)
        mods = list(entry.splitting) if h_type in ("su3", "g2") else mods
    return match, mods, pieces, h_type, tmats


def torus_normal_form(pieces: Sequence, match: Match, rank: int) -> Matrix:
    """Columns b_1..b_7 (m coordinates) in which the torus acts by cartan_g2_action."""
    if match.label == "u(1)":
        a, b = match.params
        slot_weights = [(a,), (b,), (a + b,)]
    elif match.label == "2u(1)":
        minv = linalg.inverse([list(r) for r in match.transform])
        slot_weights = []
        for t in ((1, 0), (0, 1), (1, 1)):
            slot_weights.append(tuple(sum(minv[i][j] * t[j] for j in range(rank)) for i in range(rank)))
    else:
        raise ValueError(f"no torus normal form for {match.label}")
    zero = [v for p in pieces if not any(p.weight) for v in p.basis]
    pool = [(p.weight, uv) for p in pieces if any(p.weight) for uv in planes(p)]
    cols: list[list[Fraction]] = [zero.pop(0)]
    for w in slot_weights:
        if not any(w):
            cols += [zero.pop(0), zero.pop(0)]
            continue
        neg = tuple(-x for x in w)
        idx = next((i for i, (pw, _) in enumerate(pool) if pw == w), None)
        flip = idx is None
        if flip:
            idx = next(i for i, (pw, _) in enumerate(pool) if pw == neg)
        u, v = pool.pop(idx)[1]
        cols += [v, u] if flip else [u, v]
    return linalg.transpose(cols)


def _in_cartan(mat: Matrix) -> tuple[Fraction, Fraction] | None:
    l1, l2 = mat[1][2], mat[3][4]
    return (l1, l2) if mat == cartan_g2_action(l1, l2) else None


@dataclass
class CaseReport:
    case: str
    status: str
    matched_label: str | None
    params: list = field(default_factory=list)
    weights: str = ""
    g2_form: str = ""
    star_form: str = ""
    d_star_form: str = ""
    cosymplectic: bool | None = None
    orientation: int = 1
    method: str = ""
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self) -> dict:
        out = {
            "case": self.case,
            "status": self.status,
            "matched_label": self.matched_label,
            "params": [str(p) for p in self.params],
            "weights": self.weights,
            "g2_form": self.g2_form,
            "star_form": self.star_form,
            "d_star_form": self.d_star_form,
            "cosymplectic": self.cosymplectic,
            "orientation": self.orientation,
            "method": self.method,
            "notes": list(self.notes),
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class G2Candidate:
    omega: Form  # on m, dimension 7
    star: Form  # Hodge dual, or a positive multiple when the volume scale is irrational
    orientation: int
    scale_note: str = ""


def structure_from_coframe(coframe: Matrix) -> G2Candidate:
    """omega = pullback of the standard form along x^i = sum_j P_ij e^j; metric P^T P."""
    p = linalg.to_matrix(coframe)
    omega = change_coframe(build_omega(), p)
    metric = Metric.from_matrix(linalg.matmul(linalg.transpose(p), p))
    orientation = 1 if linalg.det(p) > 0 else -1
    return G2Candidate(omega, hodge(omega, metric, orientation), orientation)


def structure_from_form(omega: Form) -> G2Candidate:
    b, s = volume_scale(omega)
    if s is not None:
        g = Metric.from_matrix(linalg.scale(1 / s, b))
        orientation = 1 if s > 0 else -1
        return G2Candidate(omega, hodge(omega, g, orientation), orientation)
    phi = conformal_hodge(omega, b)
    sign = 1 if linalg.det(b) > 0 else -1
    return G2Candidate(omega, phi, sign, "star form equals s^4 times the reported form, s^9 = det b irrational")


def _coefficient_vectors(k: int, bound: int):
    """Integer vectors in [-bound, bound]^k ordered by l1 norm then lexicographically."""
    vals = list(range(-bound, bound + 1))
    vecs = [v for v in itertools.product(vals, repeat=k) if any(v)]
    vecs.sort(key=lambda v: (sum(abs(x) for x in v), [-x for x in v]))
    return vecs


def search_invariant_structure(forms: Sequence[Form], hs: HomogeneousSpace | None = None,
                               bound: int = 1, max_g2: int = 24) -> tuple[G2Candidate | None, int]:
    """First definite combination of invariant 3-forms; prefers a cosymplectic one if hs is given.

    Returns (candidate, number of definite candidates examined).
    """
    if not forms:
        return None, 0
    first = None
    seen = 0
    mc = hs.mc() if hs is not None else None
    for coeffs in _coefficient_vectors(len(forms), bound):
        omega = Form(7)
        for c, f in zip(coeffs, forms):
            if c:
                omega = omega + c * f
        if not omega or linalg.is_definite(g2_bilinear(omega)) == 0:
            continue
        cand = structure_from_form(omega)
        seen += 1
        if first is None:
            first = cand
        if hs is None:
            return cand, seen
        if not quotient_d(hs.embed(cand.star), hs, mc):
            return cand, seen
        if seen >= max_g2:
            break
    return first, seen


def verify_case_g2_structure(hs: HomogeneousSpace, witness: Matrix | None = None,
                             expected_label: str | None = None) -> CaseReport:
    """Match the isotropy action against the subgroup table and test the induced G2-structure.

    witness: optional coframe matrix P (x^i = sum_j P_ij e^j on m) used instead of the
    computed identification.
    """
    if hs.dim_m != M_DIM:
        raise ValueError("tangent space is not 7-dimensional")
    rep = isotropy_representation(hs)
    match, mods, pieces, h_type, tmats = match_space(hs, rep)
    name = hs.name
    weights = splitting_text(mods) if h_type != "0" else "7V(0)^R"
    if match is None:
        return CaseReport(name, "fail", None, weights=weights, method="none",
                          notes=["no invariant G2-structure: isotropy not conjugate into G2"])
    notes = []
    if h_type == "su2+u1":
        notes.append("u(1) weights of the U(2) rows are inferred from commuting Cartan elements")
    if witness is not None:
        method = "witness coframe"
        cand = structure_from_coframe(witness)
    elif h_type == "0":
        method = "identity coframe"
        cand = structure_from_coframe(linalg.identity(7))
    elif h_type == "torus":
        method = "torus normal form"
        basis = torus_normal_form(pieces, match, len(tmats))
        for a in tmats:
            if _in_cartan(linalg.matmul(linalg.inverse(basis), linalg.matmul(a, basis))) is None:
                raise AssertionError("normal form does not put the torus into the Cartan subalgebra")
        cand = structure_from_coframe(linalg.inverse(basis))
    else:
        method = "invariant 3-form search"
        forms = invariant_forms(rep, 3)
        cand, seen = search_invariant_structure(forms, hs)
        if cand is None:
            return CaseReport(name, "fail", match.label, list(match.params), weights, method=method,
                              notes=notes + ["no definite invariant 3-form found in search range"])
        notes.append(f"{len(forms)} invariant 3-forms; {seen} definite combinations examined")
    if cand.scale_note:
        notes.append(cand.scale_note)
    omega, star = hs.embed(cand.omega), hs.embed(cand.star)
    if not is_basic(omega, hs) or not is_basic(star, hs):
        return CaseReport(name, "fail", match.label, list(match.params), weights, to_text(cand.omega),
                          to_text(cand.star), method=method, notes=notes + ["constructed form is not basic"])
    dstar = quotient_d(star, hs)
    status = "pass"
    if expected_label is not None and match.label != expected_label:
        status = "fail"
        notes.append(f"expected label {expected_label}")
    return CaseReport(name, status, match.label, list(match.params), weights, to_text(cand.omega),
                      to_text(cand.star), to_text(dstar), not dstar, cand.orientation, method, notes)


# -- nearly Kaehler product ------------------------------------------------


def _nk_model() -> dict[str, Form]:
    def dx(*idx):
        return Form.basis(7, *idx)

    alpha = dx(1, 2) + dx(3, 4) + dx(5, 6)
    z = [dx(1), dx(3), dx(5)]
    y = [dx(2), dx(4), dx(6)]
    # theta = (x1 + i y1)(x2 + i y2)(x3 + i y3): expand real and imaginary parts
    re, im = Form(7), Form(7)
    for pick in itertools.product((0, 1), repeat=3):
        f = wedge_all([y[k] if pick[k] else z[k] for k in range(3)])
        n_i = sum(pick)
        if n_i % 2 == 0:
            re = re + (-1 if n_i == 2 else 1) * f
        else:
            im = im + (-1 if n_i == 3 else 1) * f
    return {"alpha": alpha, "theta_re": re, "theta_im": im, "dt": dx(7)}


_NK_DEGREE = {"alpha": 2, "theta_re": 3, "theta_im": 3, "dt": 1}


def _nk_d(name: str, lam: Fraction) -> list[tuple[Fraction, tuple[str, ...]]]:
    if name == "alpha":
        return [(3 * lam, ("theta_re",))]
    if name == "theta_im":
        return [(-2 * lam, ("alpha", "alpha"))]
    return []  # d theta_re = 0 (from d^2 alpha = 0), d(dt) = 0


def _formal_d(expr, lam):
    out = []
    for c, mono in expr:
        deg = 0
        for pos, g in enumerate(mono):
            sign = -1 if deg % 2 else 1
            for c2, img in _nk_d(g, lam):
                out.append((sign * c * c2, mono[:pos] + img + mono[pos + 1:]))
            deg += _NK_DEGREE[g]
    return out


def _realize(expr, model) -> Form:
    out = Form(7)
    for c, mono in expr:
        out = out + c * wedge_all([model[g] for g in mono])
    return out


def nearly_kaehler_product_check(lam) -> dict:
    """d*omega for omega = alpha^dt + theta_im over a nearly Kaehler 6-manifold (formal rules)."""
    lam = frac(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    model = _nk_model()
    omega = wedge(model["alpha"], model["dt"]) + model["theta_im"]
    cand = structure_from_form(omega)
    basis_monos = [("alpha", "alpha"), ("theta_re", "dt"), ("theta_im", "dt")]
    basis_forms = [_realize([(Fraction(1), m)], model) for m in basis_monos]
    masks = sorted({m for f in basis_forms for m in f.terms} | set(cand.star.terms))
    mat = [[f.terms.get(m, Fraction(0)) for f in basis_forms] for m in masks]
    coeffs = linalg.solve(mat, [cand.star.terms.get(m, Fraction(0)) for m in masks])
    expr = [(c, m) for c, m in zip(coeffs, basis_monos) if c]
    d_expr = _formal_d(expr, lam)
    d_star = _realize(d_expr, model)
    identity = wedge(model["alpha"], model["theta_re"])
    formal = " ".join(f"{'-' if c < 0 else '+'} {abs(c)}*{'^'.join(m)}" for c, m in d_expr) or "0"
    formal = formal[2:] if formal.startswith("+ ") else formal.replace("- ", "-", 1)
    return {
        "lambda": str(lam),
        "omega": to_text(omega),
        "star_omega": to_text(cand.star),
        "star_omega_decomposition": {"^".join(m): str(c) for c, m in zip(coeffs, basis_monos)},
        "d_star_omega_formal": formal,
        "alpha_wedge_theta_re": to_text(identity),
        "d_star_omega": to_text(d_star),
        "status": "pass" if not d_star and not identity else "fail",
    }
