"""Matched pairs, bicrossed products, and the named algebra families.

A matched pair carries two Lie algebras g, h and mutual actions
(right: h x g -> h, left: h x g -> g) satisfying two module axioms and two
mixed compatibilities; the bicrossed product glues g and h along them.  The
dimension-1 case is equivalent to a twisted derivation of h, which is how
every codimension-1 extension in this toolkit is produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import (
    BadParameter,
    DimensionMismatch,
    FieldMismatch,
    FormatError,
    InvalidMatchedPair,
    InvalidTwistedDerivation,
    NotAFactorization,
)
from .derivations import TwistedDerivation
from .exactmath import (
    Field,
    Matrix,
    basis_vector,
    is_zero_vector,
    vadd,
    vscale,
    vsub,
    zero_vector,
)
from .liecore import LieAlgebra, Subspace, subalgebra_structure


class MatchedPair:
    """Two Lie algebras with mutual actions, stored on basis pairs.

    right[(i, j)] is the h-vector (h_i acted by g_j from the right);
    left[(i, j)] is the g-vector (h_i acting on g_j).  Zero entries are
    not stored.
    """

    __slots__ = ("g", "h", "right", "left")

    def __init__(self, g: LieAlgebra, h: LieAlgebra, right=None, left=None):
        if g.field != h.field:
            raise FieldMismatch(f"{g.field} vs {h.field}")
        self.g = g
        self.h = h
        self.right = {}
        self.left = {}
        for (i, j), vec in (right or {}).items():
            v = tuple(g.field.scalar(x) for x in vec)
            if len(v) != h.dim:
                raise DimensionMismatch("right action value must live in h")
            if not is_zero_vector(v):
                self.right[(i, j)] = v
        for (i, j), vec in (left or {}).items():
            v = tuple(g.field.scalar(x) for x in vec)
            if len(v) != g.dim:
                raise DimensionMismatch("left action value must live in g")
            if not is_zero_vector(v):
                self.left[(i, j)] = v

    @property
    def field(self) -> Field:
        return self.g.field

    def act_right(self, x, a) -> tuple:
        """Bilinear extension of (x, a) -> x <| a, valued in h."""
        out = zero_vector(self.field, self.h.dim)
        for (i, j), vec in self.right.items():
            c = x[i] * a[j]
            if c:
                out = vadd(out, vscale(c, vec))
        return out

    def act_left(self, x, a) -> tuple:
        """Bilinear extension of (x, a) -> x |> a, valued in g."""
        out = zero_vector(self.field, self.g.dim)
        for (i, j), vec in self.left.items():
            c = x[i] * a[j]
            if c:
                out = vadd(out, vscale(c, vec))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MatchedPair)
            and self.g.same_brackets(other.g)
            and self.h.same_brackets(other.h)
            and self.right == other.right
            and self.left == other.left
        )

    def __repr__(self):
        return f"MatchedPair(g dim {self.g.dim}, h dim {self.h.dim} over {self.field})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        def table(entries, value_names):
            out = []
            for (i, j), vec in sorted(entries.items()):
                terms = [[value_names[k], str(c)] for k, c in enumerate(vec) if c]
                out.append({"x": self.h.basis_names[i], "g": self.g.basis_names[j], "out": terms})
            return out

        return {
            "g": self.g.to_json_dict(),
            "h": self.h.to_json_dict(),
            "right_action": table(self.right, self.h.basis_names),
            "left_action": table(self.left, self.g.basis_names),
        }

    @classmethod
    def from_json_dict(cls, data) -> "MatchedPair":
        if not isinstance(data, dict) or "g" not in data or "h" not in data:
            raise FormatError("pair record must contain g and h algebras")
        g = LieAlgebra.from_json_dict(data["g"])
        h = LieAlgebra.from_json_dict(data["h"])

        def read(entries, target: LieAlgebra):
            table = {}
            for rec in entries or []:
                try:
                    xi = h.name_index(rec["x"])
                    gj = g.name_index(rec["g"])
                    out = rec["out"]
                except (TypeError, KeyError) as exc:
                    raise FormatError(f"bad action record {rec!r}") from exc
                if (xi, gj) in table:
                    raise FormatError(f"action pair ({rec['x']}, {rec['g']}) listed twice")
                vec = list(zero_vector(g.field, target.dim))
                for name, coeff in out:
                    k = target.name_index(name)
                    vec[k] = vec[k] + g.field.scalar(coeff)
                table[(xi, gj)] = tuple(vec)
            return table

        return cls(g, h, right=read(data.get("right_action"), h), left=read(data.get("left_action"), g))


def load_pair(path) -> MatchedPair:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return MatchedPair.from_json_dict(data)


def dump_pair(pair: MatchedPair, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pair.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def check_matched_pair(mp: MatchedPair) -> list:
    """Violated axioms as (axiom, indices, defect) records; empty = valid."""
    g, h = mp.g, mp.h
    f = mp.field
    report = []
    gb = [basis_vector(f, g.dim, j) for j in range(g.dim)]
    hb = [basis_vector(f, h.dim, i) for i in range(h.dim)]

    # (g, |>) is a left h-module
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            bij = h.bracket_basis(i, j)
            for k in range(g.dim):
                lhs = mp.act_left(bij, gb[k])
                rhs = vsub(
                    mp.act_left(hb[i], mp.act_left(hb[j], gb[k])),
                    mp.act_left(hb[j], mp.act_left(hb[i], gb[k])),
                )
                if lhs != rhs:
                    report.append(("left-module", (i, j, k), vsub(lhs, rhs)))

    # (h, <|) is a right g-module
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            bab = g.bracket_basis(a, b)
            for i in range(h.dim):
                lhs = mp.act_right(hb[i], bab)
                rhs = vsub(
                    mp.act_right(mp.act_right(hb[i], gb[a]), gb[b]),
                    mp.act_right(mp.act_right(hb[i], gb[b]), gb[a]),
                )
                if lhs != rhs:
                    report.append(("right-module", (i, a, b), vsub(lhs, rhs)))

    # x |> [a, b] = [x |> a, b] + [a, x |> b] + (x <| a) |> b - (x <| b) |> a
    for i in range(h.dim):
        for a in range(g.dim):
            for b in range(a + 1, g.dim):
                lhs = mp.act_left(hb[i], g.bracket_basis(a, b))
                rhs = vadd(
                    g.bracket(mp.act_left(hb[i], gb[a]), gb[b]),
                    g.bracket(gb[a], mp.act_left(hb[i], gb[b])),
                )
                rhs = vadd(rhs, mp.act_left(mp.act_right(hb[i], gb[a]), gb[b]))
                rhs = vsub(rhs, mp.act_left(mp.act_right(hb[i], gb[b]), gb[a]))
                if lhs != rhs:
                    report.append(("compat-left", (i, a, b), vsub(lhs, rhs)))

    # [x, y] <| a = [x, y <| a] + [x <| a, y] + x <| (y |> a) - y <| (x |> a)
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            bij = h.bracket_basis(i, j)
            for a in range(g.dim):
                lhs = mp.act_right(bij, gb[a])
                rhs = vadd(
                    h.bracket(hb[i], mp.act_right(hb[j], gb[a])),
                    h.bracket(mp.act_right(hb[i], gb[a]), hb[j]),
                )
                rhs = vadd(rhs, mp.act_right(hb[i], mp.act_left(hb[j], gb[a])))
                rhs = vsub(rhs, mp.act_right(hb[j], mp.act_left(hb[i], gb[a])))
                if lhs != rhs:
                    report.append(("compat-right", (i, j, a), vsub(lhs, rhs)))
    return report


def bicrossed_product(mp: MatchedPair, names=None) -> LieAlgebra:
    """Lie algebra on g x h with the mixed bracket; g and h embed as blocks."""
    report = check_matched_pair(mp)
    if report:
        raise InvalidMatchedPair(
            f"matched pair axioms fail: {report[0][0]} at {report[0][1]}", report
        )
    g, h = mp.g, mp.h
    f = mp.field
    dg, dim = g.dim, g.dim + h.dim
    if names is None:
        right = [n if n not in g.basis_names else f"{n}'" for n in h.basis_names]
        names = tuple(g.basis_names) + tuple(right)
    brackets = {}
    for (i, j), vec in g.sc_pairs():
        brackets[(i, j)] = tuple(vec) + zero_vector(f, h.dim)
    for (i, j), vec in h.sc_pairs():
        brackets[(dg + i, dg + j)] = zero_vector(f, dg) + tuple(vec)
    gb = [basis_vector(f, dg, j) for j in range(dg)]
    hb = [basis_vector(f, h.dim, i) for i in range(h.dim)]
    for j in range(dg):
        for i in range(h.dim):
            gpart = vscale(-f.one, mp.act_left(hb[i], gb[j]))
            hpart = vscale(-f.one, mp.act_right(hb[i], gb[j]))
            vec = tuple(gpart) + tuple(hpart)
            if not is_zero_vector(vec):
                brackets[(j, dg + i)] = vec
    out = LieAlgebra(f, names, brackets)
    bad = out.check_jacobi()
    if bad:
        raise InvalidMatchedPair(f"bicrossed bracket violates Jacobi at {bad[0][:3]}", bad)
    return out


@dataclass(frozen=True)
class Factorization:
    """An ambient algebra written as g + h with trivial intersection."""

    ambient: LieAlgebra
    gsub: Subspace
    hsub: Subspace

    def problems(self) -> list:
        out = []
        if self.gsub.algebra != self.ambient or self.hsub.algebra != self.ambient:
            out.append("subspaces must reference the ambient algebra")
            return out
        if not self.gsub.is_subalgebra():
            out.append("g is not a subalgebra")
        if not self.hsub.is_subalgebra():
            out.append("h is not a subalgebra")
        if self.gsub.dim + self.hsub.dim != self.ambient.dim:
            out.append("dim g + dim h != dim ambient")
        elif self.gsub.sum_with(self.hsub).dim != self.ambient.dim:
            out.append("g and h intersect nontrivially")
        return out


def canonical_matched_pair(fact: Factorization) -> MatchedPair:
    """Actions extracted from [x, a] by the unique g + h decomposition."""
    problems = fact.problems()
    if problems:
        raise NotAFactorization("; ".join(problems))
    amb = fact.ambient
    f = amb.field
    g_alg = subalgebra_structure(amb, fact.gsub)
    h_alg = subalgebra_structure(amb, fact.hsub)
    # columns: g basis then h basis, as ambient vectors
    cols = list(fact.gsub.basis) + list(fact.hsub.basis)
    minv = Matrix.from_cols(f, cols).inverse()
    right = {}
    left = {}
    for i, xvec in enumerate(fact.hsub.basis):
        for j, avec in enumerate(fact.gsub.basis):
            w = minv.mul_vector(amb.bracket(xvec, avec))
            left[(i, j)] = w[: fact.gsub.dim]
            right[(i, j)] = w[fact.gsub.dim :]
    return MatchedPair(g_alg, h_alg, right=right, left=left)


# -- dimension one: twisted derivations as matched pairs -----------------------


def _fresh_name(taken, preferred=("F", "H")) -> str:
    for name in preferred:
        if name not in taken:
            return name
    k = 1
    while f"F{k}" in taken:
        k += 1
    return f"F{k}"


def pair_from_twisted(h: LieAlgebra, t: TwistedDerivation, name: Optional[str] = None) -> MatchedPair:
    """The matched pair (k0, h) with x <| a = a*Delta(x), x |> a = a*lambda(x)."""
    bad = t.violations(h)
    if bad:
        raise InvalidTwistedDerivation(f"twisted derivation law fails: {bad[0]}")
    gname = name or _fresh_name(set(h.basis_names))
    g = LieAlgebra.abelian(h.field, 1, (gname,))
    right = {}
    left = {}
    for i in range(h.dim):
        right[(i, 0)] = t.delta.col(i)
        if t.lam[i]:
            left[(i, 0)] = (t.lam[i],)
    return MatchedPair(g, h, right=right, left=left)


def h_lambda_delta(h: LieAlgebra, t: TwistedDerivation, name: Optional[str] = None) -> LieAlgebra:
    """Codimension-1 extension of h along a twisted derivation.

    Basis: the new generator first, then the basis of h, with
    [e_i, F] = lambda(e_i) F + Delta(e_i).
    """
    bad = t.violations(h)
    if bad:
        raise InvalidTwistedDerivation(f"twisted derivation law fails: {bad[0]}")
    f = h.field
    gname = name or _fresh_name(set(h.basis_names))
    names = (gname,) + tuple(h.basis_names)
    dim = h.dim + 1
    brackets = {}
    for (i, j), vec in h.sc_pairs():
        brackets[(i + 1, j + 1)] = (f.zero,) + tuple(vec)
    for i in range(h.dim):
        # stored pair (0, i+1) is [F, e_i] = -(lambda(e_i) F + Delta(e_i))
        vec = (-t.lam[i],) + tuple(-x for x in t.delta.col(i))
        if not is_zero_vector(vec):
            brackets[(0, i + 1)] = vec
    out = LieAlgebra(f, names, brackets)
    jac = out.check_jacobi()
    if jac:
        raise InvalidTwistedDerivation(f"extension violates Jacobi at {jac[0][:3]}")
    return out


# -- canonical matched pairs of the two pinned extensions ----------------------


def canonical_pair_L(n: int, field: Field) -> MatchedPair:
    """Canonical actions of the extension kH inside L(2n+2): E_i <| H = -E_i,
    F_i <| H = F_i, G <| H = G, G |> H = H."""
    h = make_l(n, field)
    g = LieAlgebra.abelian(field, 1, ("H",))
    right = {}
    left = {}
    for i in range(n):
        right[(i, 0)] = vscale(-field.one, basis_vector(field, h.dim, i))
        right[(n + i, 0)] = basis_vector(field, h.dim, n + i)
    right[(2 * n, 0)] = basis_vector(field, h.dim, 2 * n)
    left[(2 * n, 0)] = (field.one,)
    return MatchedPair(g, h, right=right, left=left)


def canonical_pair_m(n: int, field: Field) -> MatchedPair:
    """Canonical actions of kH inside m(2n+2): E_i <| H = E_i, F_i <| H = F_i,
    G <| H = E_1 + F_n; the left action is trivial."""
    h = make_l(n, field)
    g = LieAlgebra.abelian(field, 1, ("H",))
    right = {}
    for i in range(n):
        right[(i, 0)] = basis_vector(field, h.dim, i)
        right[(n + i, 0)] = basis_vector(field, h.dim, n + i)
    right[(2 * n, 0)] = vadd(
        basis_vector(field, h.dim, 0), basis_vector(field, h.dim, 2 * n - 1)
    )
    return MatchedPair(g, h, right=right)


# -- named families -------------------------------------------------------------


def _lnames(n: int, extra=()) -> tuple:
    if n == 1:
        base = ("E", "F", "G")
    else:
        base = tuple(f"E{i + 1}" for i in range(n)) + tuple(f"F{i + 1}" for i in range(n)) + ("G",)
    return base + tuple(extra)


def _finish(field: Field, names, named_brackets) -> LieAlgebra:
    out = LieAlgebra.from_named_brackets(field, names, named_brackets)
    bad = out.check_jacobi()
    if bad:
        raise BadParameter(f"parameters break the Jacobi identity at {bad[0][:3]}")
    return out


def make_l(n: int, field: Field) -> LieAlgebra:
    """l(2n+1,k): [E_i, G] = E_i, [G, F_i] = F_i."""
    if n < 1:
        raise BadParameter("n must be >= 1")
    names = _lnames(n)
    br = {}
    for i in range(n):
        br[(names[i], "G")] = [(names[i], 1)]
        br[("G", names[n + i])] = [(names[n + i], 1)]
    return _finish(field, names, br)


def make_L(n: int, field: Field) -> LieAlgebra:
    """L(2n+2,k), the pinned extension with [G, H] = H + G."""
    if n < 1:
        raise BadParameter("n must be >= 1")
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(e, -1)]
        br[(f_, "H")] = [(f_, 1)]
    br[("G", "H")] = [("H", 1), ("G", 1)]
    return _finish(field, names, br)


def make_m(n: int, field: Field) -> LieAlgebra:
    """m(2n+2,k), the pinned extension with [G, H] = E_1 + F_n."""
    if n < 1:
        raise BadParameter("n must be >= 1")
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(e, 1)]
        br[(f_, "H")] = [(f_, 1)]
    br[("G", "H")] = [(names[0], 1), (names[2 * n - 1], 1)]
    return _finish(field, names, br)


def _require_char_ne_2(field: Field, what: str):
    if field.characteristic() == 2:
        raise BadParameter(f"{what} requires characteristic != 2")


def _require_char_2(field: Field, what: str):
    if field.characteristic() != 2:
        raise BadParameter(f"{what} requires characteristic 2")


def _delta_scalars(field: Field, delta, expected: int) -> tuple:
    d = tuple(field.scalar(x) for x in delta)
    if len(d) != expected:
        raise BadParameter(f"delta must have length {expected}")
    return d


def _block(field: Field, n: int, m) -> Matrix:
    mat = m if isinstance(m, Matrix) else Matrix(field, m)
    if mat.nrows != n or mat.ncols != n:
        raise BadParameter("matrix parameter must be n x n")
    return mat


def make_l1(n: int, field: Field, lambda0, delta) -> LieAlgebra:
    """First char-!=-2 family: lambda0 outside {0, 2, -2}, delta of length 2n+1."""
    _require_char_ne_2(field, "this family")
    lam0 = field.scalar(lambda0)
    two = field.scalar(2)
    if lam0 == field.zero or lam0 == two or lam0 == -two:
        raise BadParameter("lambda0 must avoid {0, 2, -2}")
    d = _delta_scalars(field, delta, 2 * n + 1)
    names = _lnames(n, ("H",))
    coef = lam0.inverse() * d[-1]
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(e, -coef)]
        br[(f_, "H")] = [(f_, coef)]
    gh = [("H", lam0), ("G", d[-1])]
    gh += [(names[j], d[j]) for j in range(2 * n)]
    br[("G", "H")] = gh
    return _finish(field, names, br)


def make_l2(n: int, field: Field, A, D, delta) -> LieAlgebra:
    """Second char-!=-2 family (lambda0 = 0): free diagonal blocks A, D."""
    _require_char_ne_2(field, "this family")
    a = _block(field, n, A)
    dmat = _block(field, n, D)
    d = _delta_scalars(field, delta, 2 * n)
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(names[j], a.rows[j][i]) for j in range(n)]
        br[(f_, "H")] = [(names[n + j], dmat.rows[j][i]) for j in range(n)]
    br[("G", "H")] = [(names[j], d[j]) for j in range(2 * n)]
    return _finish(field, names, br)


def make_l3(n: int, field: Field, C, delta) -> LieAlgebra:
    """Third char-!=-2 family (lambda0 = 2): free block C."""
    _require_char_ne_2(field, "this family")
    c = _block(field, n, C)
    d = _delta_scalars(field, delta, 2 * n + 1)
    half = field.scalar(2).inverse() * d[-1]
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(e, -half)] + [(names[n + j], c.rows[j][i]) for j in range(n)]
        br[(f_, "H")] = [(f_, half)]
    br[("G", "H")] = [("H", 2), ("G", d[-1])] + [(names[j], d[j]) for j in range(2 * n)]
    return _finish(field, names, br)


def make_l4(n: int, field: Field, B, delta) -> LieAlgebra:
    """Fourth char-!=-2 family (lambda0 = -2): free block B."""
    _require_char_ne_2(field, "this family")
    b = _block(field, n, B)
    d = _delta_scalars(field, delta, 2 * n + 1)
    half = field.scalar(2).inverse() * d[-1]
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(e, half)]
        br[(f_, "H")] = [(names[j], b.rows[j][i]) for j in range(n)] + [(f_, -half)]
    br[("G", "H")] = [("H", -2), ("G", d[-1])] + [(names[j], d[j]) for j in range(2 * n)]
    return _finish(field, names, br)


def make_l1_char2(n: int, field: Field, A, B, C, D, delta) -> LieAlgebra:
    """Characteristic-2 family at lambda0 = 0: all four blocks free."""
    _require_char_2(field, "this family")
    a, b = _block(field, n, A), _block(field, n, B)
    c, dmat = _block(field, n, C), _block(field, n, D)
    d = _delta_scalars(field, delta, 2 * n)
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(names[j], a.rows[j][i]) for j in range(n)] + [
            (names[n + j], c.rows[j][i]) for j in range(n)
        ]
        br[(f_, "H")] = [(names[j], b.rows[j][i]) for j in range(n)] + [
            (names[n + j], dmat.rows[j][i]) for j in range(n)
        ]
    br[("G", "H")] = [(names[j], d[j]) for j in range(2 * n)]
    return _finish(field, names, br)


def make_l2_char2(n: int, field: Field, lambda0, delta) -> LieAlgebra:
    """Characteristic-2 family at lambda0 != 0."""
    _require_char_2(field, "this family")
    lam0 = field.scalar(lambda0)
    if not lam0:
        raise BadParameter("lambda0 must be nonzero")
    d = _delta_scalars(field, delta, 2 * n + 1)
    coef = lam0.inverse() * d[-1]
    names = _lnames(n, ("H",))
    br = {}
    for i in range(n):
        e, f_ = names[i], names[n + i]
        br[(e, "G")] = [(e, 1)]
        br[("G", f_)] = [(f_, 1)]
        br[(e, "H")] = [(e, -coef)]
        br[(f_, "H")] = [(f_, coef)]
    br[("G", "H")] = [("H", lam0), ("G", d[-1])] + [(names[j], d[j]) for j in range(2 * n)]
    return _finish(field, names, br)


def make_h5(field: Field) -> LieAlgebra:
    """The perfect 5-dimensional algebra used for the codimension-1 study."""
    _require_char_ne_2(field, "the perfect 5-dim algebra")
    names = ("e1", "e2", "e3", "e4", "e5")
    br = {
        ("e1", "e2"): [("e3", 1)],
        ("e1", "e3"): [("e1", -2)],
        ("e1", "e5"): [("e4", 1)],
        ("e3", "e4"): [("e4", 1)],
        ("e2", "e3"): [("e2", 2)],
        ("e2", "e4"): [("e5", 1)],
        ("e3", "e5"): [("e5", -1)],
    }
    return _finish(field, names, br)


def h5_noninner_derivation(field: Field) -> Matrix:
    """The pinned non-inner derivation of make_h5 driving its complement study."""
    rows = [
        [1, 0, 0, 0, 0],
        [0, -1, 0, 0, 0],
        [0, 0, 0, 0, 0],
        [-1, 0, 0, -1, 0],
        [0, 0, 1, 0, -2],
    ]
    return Matrix(field, rows)


def h5_derivation_pattern(field: Field) -> list:
    """Generators of the six-parameter derivation space of make_h5."""
    def unit(entries):
        rows = [[0] * 5 for _ in range(5)]
        for (r, c), v in entries.items():
            rows[r - 1][c - 1] = v
        return Matrix(field, rows)

    return [
        unit({(1, 1): 1, (2, 2): -1, (5, 5): -1}),
        unit({(3, 1): 1, (2, 3): -2, (5, 4): -1}),
        unit({(4, 1): 1, (5, 3): -1}),
        unit({(1, 3): -2, (3, 2): 1, (4, 5): 1}),
        unit({(4, 3): 1, (5, 2): 1}),
        unit({(4, 4): 1, (5, 5): 1}),
    ]


def make_sl2(field: Field) -> LieAlgebra:
    """sl2 with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    names = ("e", "f", "h")
    br = {
        ("e", "f"): [("h", 1)],
        ("h", "e"): [("e", 2)],
        ("h", "f"): [("f", -2)],
    }
    return _finish(field, names, br)


def make_Lalpha(field: Field, alpha) -> LieAlgebra:
    """The 3-dim family [x,z] = x, [y,z] = alpha*y."""
    names = ("x", "y", "z")
    br = {
        ("x", "z"): [("x", 1)],
        ("y", "z"): [("y", field.scalar(alpha))],
    }
    return _finish(field, names, br)
