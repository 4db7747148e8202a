"""Lie algebras given by structure constants, and their structural machinery.

A LieAlgebra stores the bracket only on ordered basis pairs (i < j), so
antisymmetry holds by construction and the Jacobi identity is the single
property left to validate.  Characteristic subspaces (center, derived and
lower central series), invariant bilinear forms, self-duality search and
product structures all reduce to exact linear algebra over the base field.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from .errors import (
    CharTwo,
    DimensionMismatch,
    FieldMismatch,
    FormatError,
)
from .exactmath import (
    Field,
    Matrix,
    Scalar,
    basis_vector,
    enumerate_vectors,
    is_zero_vector,
    span_rref,
    vadd,
    vsub,
    zero_vector,
)


class LieAlgebra:
    """Finite-dimensional Lie algebra over an exact field.

    sc maps an index pair (i, j) with i < j to the coordinate vector of
    [e_i, e_j]; pairs that bracket to zero are not stored.
    """

    __slots__ = ("field", "dim", "basis_names", "_sc", "_index")

    def __init__(self, field: Field, basis_names, brackets):
        self.field = field
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        if len(set(self.basis_names)) != self.dim:
            raise FormatError("duplicate basis names")
        self._index = {name: i for i, name in enumerate(self.basis_names)}
        sc = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < self.dim):
                raise FormatError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            v = tuple(field.scalar(x) for x in vec)
            if len(v) != self.dim:
                raise DimensionMismatch("bracket vector has wrong length")
            if not is_zero_vector(v):
                sc[(i, j)] = v
        self._sc = sc

    # -- constructors ----------------------------------------------------------

    @classmethod
    def abelian(cls, field: Field, dim: int, names=None) -> "LieAlgebra":
        names = names or tuple(f"e{i + 1}" for i in range(dim))
        return cls(field, names, {})

    @classmethod
    def from_named_brackets(cls, field: Field, names, named_brackets) -> "LieAlgebra":
        """Build from {(lhs, rhs): [(name, coeff), ...]}; either order allowed.

        Listing both (x, y) and (y, x) is rejected, as is x == y.
        """
        names = tuple(names)
        index = {n: i for i, n in enumerate(names)}
        dim = len(names)
        seen = set()
        brackets = {}
        for (lhs, rhs), terms in named_brackets.items():
            if lhs not in index or rhs not in index:
                raise FormatError(f"unknown basis name in bracket ({lhs}, {rhs})")
            i, j = index[lhs], index[rhs]
            if i == j:
                raise FormatError(f"bracket ({lhs}, {rhs}) of a vector with itself")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise FormatError(f"pair ({lhs}, {rhs}) listed twice (either order)")
            seen.add(key)
            vec = list(zero_vector(field, dim))
            for name, coeff in terms:
                if name not in index:
                    raise FormatError(f"unknown basis name {name!r} in bracket output")
                vec[index[name]] = vec[index[name]] + field.scalar(coeff)
            if i > j:
                vec = [-x for x in vec]
            brackets[key] = tuple(vec)
        return cls(field, names, brackets)

    # -- bracket ---------------------------------------------------------------

    def name_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise FormatError(f"unknown basis name {name!r}") from None

    def sc_pairs(self):
        return self._sc.items()

    def bracket_basis(self, i: int, j: int) -> tuple:
        if i == j:
            return zero_vector(self.field, self.dim)
        if i < j:
            return self._sc.get((i, j), zero_vector(self.field, self.dim))
        v = self._sc.get((j, i))
        return zero_vector(self.field, self.dim) if v is None else tuple(-x for x in v)

    def bracket(self, x, y) -> tuple:
        """Bilinear extension of the structure constants."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("bracket arguments must have length dim")
        out = list(zero_vector(self.field, self.dim))
        for (i, j), vec in self._sc.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k, s in enumerate(vec):
                    if s:
                        out[k] = out[k] + c * s
        return tuple(out)

    def ad(self, x) -> Matrix:
        """Matrix of y -> [x, y] (columns are images of the basis)."""
        cols = [self.bracket(x, basis_vector(self.field, self.dim, j)) for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols)

    def ad_basis(self, i: int) -> Matrix:
        return self.ad(basis_vector(self.field, self.dim, i))

    def check_jacobi(self) -> list:
        """All violating triples (i, j, l, defect); empty means valid."""
        violations = []
        n = self.dim
        for i in range(n):
            ei = basis_vector(self.field, n, i)
            for j in range(i + 1, n):
                ej = basis_vector(self.field, n, j)
                bij = self.bracket_basis(i, j)
                for l in range(j + 1, n):
                    el = basis_vector(self.field, n, l)
                    defect = vadd(
                        vadd(self.bracket(bij, el), self.bracket(self.bracket_basis(j, l), ei)),
                        self.bracket(self.bracket_basis(l, i), ej),
                    )
                    if not is_zero_vector(defect):
                        violations.append((i, j, l, defect))
        return violations

    # -- structure -------------------------------------------------------------

    def same_brackets(self, other: "LieAlgebra") -> bool:
        """Structure-constant equality, ignoring basis names."""
        return (
            self.field == other.field
            and self.dim == other.dim
            and self._sc == other._sc
        )

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.same_brackets(other)
            and self.basis_names == other.basis_names
        )

    def __hash__(self):
        return hash((self.field, self.basis_names, tuple(sorted(self._sc.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, field={self.field}, basis={','.join(self.basis_names)})"

    def change_basis(self, p: Matrix, names=None) -> "LieAlgebra":
        """Conjugate structure constants; columns of p are the new basis vectors."""
        if not p.is_invertible() or p.nrows != self.dim:
            raise DimensionMismatch("change of basis needs an invertible dim x dim matrix")
        pinv = p.inverse()
        names = tuple(names) if names else tuple(f"b{i + 1}" for i in range(self.dim))
        brackets = {}
        for i in range(self.dim):
            vi = p.col(i)
            for j in range(i + 1, self.dim):
                w = self.bracket(vi, p.col(j))
                brackets[(i, j)] = pinv.mul_vector(w)
        return LieAlgebra(self.field, names, brackets)

    def permuted(self, order, names=None) -> "LieAlgebra":
        """Reorder the basis; order[k] is the old index of new basis vector k."""
        cols = [basis_vector(self.field, self.dim, o) for o in order]
        names = names or tuple(self.basis_names[o] for o in order)
        return self.change_basis(Matrix.from_cols(self.field, cols), names)

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        brackets = []
        for (i, j), vec in sorted(self._sc.items()):
            out = [[self.basis_names[k], str(c)] for k, c in enumerate(vec) if c]
            brackets.append({"lhs": self.basis_names[i], "rhs": self.basis_names[j], "out": out})
        return {
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": brackets,
        }

    @classmethod
    def from_json_dict(cls, data) -> "LieAlgebra":
        if not isinstance(data, dict):
            raise FormatError("algebra record must be an object")
        for key in ("field", "dim", "basis", "brackets"):
            if key not in data:
                raise FormatError(f"algebra record missing {key!r}")
        field = Field.from_json(data["field"])
        names = data["basis"]
        if not isinstance(names, list) or len(names) != data["dim"]:
            raise FormatError("dim does not match the basis list")
        named = {}
        for rec in data["brackets"]:
            try:
                lhs, rhs, out = rec["lhs"], rec["rhs"], rec["out"]
            except (TypeError, KeyError) as exc:
                raise FormatError(f"bad bracket record {rec!r}") from exc
            if (lhs, rhs) in named:
                raise FormatError(f"pair ({lhs}, {rhs}) listed twice")
            named[(lhs, rhs)] = [(n, c) for n, c in out]
        return cls.from_named_brackets(field, names, named)


def load_algebra(path) -> LieAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return LieAlgebra.from_json_dict(data)


def dump_algebra(algebra: LieAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


class Subspace:
    """Subspace of the underlying space of a Lie algebra, held in rref form.

    The rref basis makes equality of subspaces canonical.
    """

    __slots__ = ("algebra", "basis")

    def __init__(self, algebra: LieAlgebra, vectors):
        self.algebra = algebra
        self.basis = tuple(span_rref(algebra.field, list(vectors)))

    @classmethod
    def full(cls, algebra: LieAlgebra) -> "Subspace":
        return cls(algebra, [basis_vector(algebra.field, algebra.dim, i) for i in range(algebra.dim)])

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "Subspace":
        return cls(algebra, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        r = list(v)
        for row in self.basis:
            pivot = next(k for k, x in enumerate(row) if x)
            if r[pivot]:
                c = r[pivot]
                r = [a - c * b for a, b in zip(r, row)]
        return is_zero_vector(r)

    def coordinates(self, v) -> Optional[tuple]:
        """Coefficients of v over the rref basis, or None if v is outside."""
        r = list(v)
        coeffs = []
        for row in self.basis:
            pivot = next(k for k, x in enumerate(row) if x)
            c = r[pivot]
            coeffs.append(c)
            if c:
                r = [a - c * b for a, b in zip(r, row)]
        if not is_zero_vector(r):
            return None
        return tuple(coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.algebra.field == other.algebra.field
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.algebra.dim})"

    def sum_with(self, other: "Subspace") -> "Subspace":
        return Subspace(self.algebra, list(self.basis) + list(other.basis))

    def bracket_with(self, other: "Subspace") -> "Subspace":
        vecs = [
            self.algebra.bracket(u, v)
            for u in self.basis
            for v in other.basis
        ]
        return Subspace(self.algebra, vecs)

    def is_subalgebra(self) -> bool:
        for a, u in enumerate(self.basis):
            for v in self.basis[a + 1 :]:
                if not self.contains(self.algebra.bracket(u, v)):
                    return False
        return True


@dataclass(frozen=True)
class LinearMap:
    """Linear map between Lie algebras; matrix columns are basis images."""

    domain: LieAlgebra
    codomain: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.nrows != self.codomain.dim or self.matrix.ncols != self.domain.dim:
            raise DimensionMismatch("matrix shape does not match the algebras")
        if self.matrix.field != self.domain.field or self.domain.field != self.codomain.field:
            raise FieldMismatch("map and algebras must share one field")

    def __call__(self, v) -> tuple:
        return self.matrix.mul_vector(v)

    def is_lie_morphism(self) -> bool:
        n = self.domain.dim
        for i in range(n):
            vi = self.matrix.col(i)
            for j in range(i + 1, n):
                lhs = self.matrix.mul_vector(self.domain.bracket_basis(i, j))
                rhs = self.codomain.bracket(vi, self.matrix.col(j))
                if lhs != rhs:
                    return False
        return True

    def is_invertible(self) -> bool:
        return self.matrix.is_invertible()

    def compose(self, other: "LinearMap") -> "LinearMap":
        if other.codomain is not self.domain and other.codomain.dim != self.domain.dim:
            raise DimensionMismatch("composition shape mismatch")
        return LinearMap(other.domain, self.codomain, self.matrix * other.matrix)

    def inverse(self) -> "LinearMap":
        inv = self.matrix.inverse()
        if inv is None:
            raise DimensionMismatch("map is not invertible")
        return LinearMap(self.codomain, self.domain, inv)


@dataclass(frozen=True)
class BilinearForm:
    """Bilinear form on an algebra, given by its Gram matrix."""

    algebra: LieAlgebra
    gram: Matrix

    def evaluate(self, x, y) -> Scalar:
        field = self.algebra.field
        total = field.zero
        gy = self.gram.mul_vector(y)
        for a, b in zip(x, gy):
            if a and b:
                total = total + a * b
        return total

    def is_invariant(self) -> bool:
        n = self.algebra.dim
        f = self.algebra.field
        for i in range(n):
            ei = basis_vector(f, n, i)
            for j in range(n):
                ej = basis_vector(f, n, j)
                for k in range(n):
                    ek = basis_vector(f, n, k)
                    lhs = self.evaluate(self.algebra.bracket(ei, ej), ek)
                    rhs = self.evaluate(ei, self.algebra.bracket(ej, ek))
                    if lhs != rhs:
                        return False
        return True

    def is_nondegenerate(self) -> bool:
        return bool(self.gram.det())

    def left_radical(self) -> list:
        """Vectors v with B(v, -) = 0."""
        return self.gram.transpose().nullspace()


# -- series and characteristic subspaces --------------------------------------


def center(algebra: LieAlgebra) -> Subspace:
    """Nullspace of the stacked right-bracket maps x -> [x, e_j]."""
    n = algebra.dim
    rows = []
    for j in range(n):
        # coefficient of e_k in [e_i, e_j], as a function of x_i
        for k in range(n):
            rows.append(tuple(algebra.bracket_basis(i, j)[k] for i in range(n)))
    m = Matrix(algebra.field, rows) if rows else Matrix.zeros(algebra.field, 1, n)
    return Subspace(algebra, m.nullspace())


def _series(algebra: LieAlgebra, step) -> list:
    """Shared driver: append terms until the series stabilizes.

    Terminates with the first repeated subspace (kept once) or with 0.
    """
    current = Subspace.full(algebra)
    series = [current]
    while True:
        nxt = step(current)
        if nxt == current:
            series.append(nxt)
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series
        current = nxt


def derived_series(algebra: LieAlgebra) -> list:
    return _series(algebra, lambda s: s.bracket_with(s))


def lower_central_series(algebra: LieAlgebra) -> list:
    full = Subspace.full(algebra)
    return _series(algebra, lambda s: full.bracket_with(s))


def derived_dims(algebra: LieAlgebra) -> tuple:
    return tuple(s.dim for s in derived_series(algebra))


def solvable_length(algebra: LieAlgebra) -> Optional[int]:
    """Number of derived steps to reach 0; None if the series stalls above 0."""
    series = derived_series(algebra)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def is_perfect(algebra: LieAlgebra) -> bool:
    return derived_series(algebra)[1].dim == algebra.dim


def is_metabelian(algebra: LieAlgebra) -> bool:
    length = solvable_length(algebra)
    return length is not None and length <= 2


def abelianization_dim(algebra: LieAlgebra) -> int:
    return algebra.dim - derived_series(algebra)[1].dim


def killing_gram(algebra: LieAlgebra) -> Matrix:
    ads = [algebra.ad_basis(i) for i in range(algebra.dim)]
    n = algebra.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = ads[i] * ads[j]
            tr = algebra.field.zero
            for k in range(n):
                tr = tr + prod.rows[k][k]
            row.append(tr)
        rows.append(row)
    return Matrix(algebra.field, rows)


# -- invariant bilinear forms and self-duality ---------------------------------


def invariant_bilinear_forms(algebra: LieAlgebra, symmetric: bool = False) -> list:
    """Basis of forms with B([a,b],c) = B(a,[b,c]) on all basis triples."""
    n = algebra.dim
    f = algebra.field
    rows = []
    # unknown gram entries g_{m,k} flattened row-major: index m*n + k
    for i in range(n):
        for j in range(n):
            cij = algebra.bracket_basis(i, j)
            for k in range(n):
                cjk = algebra.bracket_basis(j, k)
                row = list(zero_vector(f, n * n))
                for m in range(n):
                    if cij[m]:
                        row[m * n + k] = row[m * n + k] + cij[m]
                    if cjk[m]:
                        row[i * n + m] = row[i * n + m] - cjk[m]
                if not is_zero_vector(row):
                    rows.append(tuple(row))
    if symmetric:
        for a in range(n):
            for b in range(a + 1, n):
                row = list(zero_vector(f, n * n))
                row[a * n + b] = f.one
                row[b * n + a] = -f.one
                rows.append(tuple(row))
    if not rows:
        sols = [basis_vector(f, n * n, t) for t in range(n * n)]
    else:
        sols = Matrix(f, rows).nullspace()
    forms = []
    for flat in sols:
        gram = Matrix(f, [flat[r * n : (r + 1) * n] for r in range(n)])
        forms.append(BilinearForm(algebra, gram))
    return forms


@dataclass(frozen=True)
class SelfDualResult:
    verdict: str  # "yes" | "no" | "unknown"
    form: Optional[BilinearForm] = None
    witness: Optional[tuple] = None
    detail: str = ""


def self_dual(algebra: LieAlgebra, budget: int = 2000) -> SelfDualResult:
    """Search for a non-degenerate invariant bilinear form.

    yes  -> the returned form is invariant with nonzero determinant;
    no   -> the witness vector kills every invariant form from the left,
            so every linear combination stays degenerate;
    unknown -> the candidate budget ran out with neither certificate.
    """
    f = algebra.field
    n = algebra.dim
    basis = invariant_bilinear_forms(algebra)
    if not basis:
        return SelfDualResult(
            "no",
            witness=basis_vector(f, n, 0),
            detail="only the zero form is invariant",
        )
    stacked = basis[0].gram.transpose()
    for form in basis[1:]:
        stacked = stacked.stack(form.gram.transpose())
    radical = stacked.nullspace()
    if radical:
        return SelfDualResult(
            "no",
            witness=radical[0],
            detail="common left radical of all invariant forms",
        )

    def attempt(gram: Matrix) -> Optional[SelfDualResult]:
        form = BilinearForm(algebra, gram)
        if form.is_nondegenerate() and form.is_invariant():
            return SelfDualResult("yes", form=form)
        return None

    kg = killing_gram(algebra)
    if not kg.is_zero():
        hit = attempt(kg)
        if hit:
            return hit
    # is the identity gram an invariant form?
    coeff_cols = [form.gram.entries_flat() for form in basis]
    target = Matrix.identity(f, n).entries_flat()
    sol = Matrix.from_cols(f, coeff_cols).solve(target)
    if sol is not None:
        hit = attempt(Matrix.identity(f, n))
        if hit:
            return hit
    tried = 0
    for form in basis:
        tried += 1
        hit = attempt(form.gram)
        if hit:
            return hit
    total = basis[0].gram
    for form in basis[1:]:
        total = total + form.gram
    hit = attempt(total)
    if hit:
        return hit
    d = len(basis)
    if f.is_finite:
        for coeffs in enumerate_vectors(f, d):
            tried += 1
            if tried > budget:
                return SelfDualResult("unknown", detail=f"budget {budget} exhausted")
            gram = Matrix.zeros(f, n, n)
            for c, form in zip(coeffs, basis):
                if c:
                    gram = gram + c * form.gram
            hit = attempt(gram)
            if hit:
                return hit
        # every combination over this field is degenerate, yet no single
        # vector kills them all; the no-contract demands a radical witness
        return SelfDualResult("unknown", detail="all combinations degenerate, no common radical")
    # integer boxes of growing side over the rationals
    box = 1
    while tried <= budget:
        for raw in itertools.product(range(-box, box + 1), repeat=d):
            if all(abs(x) < box for x in raw):
                continue  # interior already tried with a smaller box
            tried += 1
            if tried > budget:
                return SelfDualResult("unknown", detail=f"budget {budget} exhausted")
            gram = Matrix.zeros(f, n, n)
            for c, form in zip(raw, basis):
                if c:
                    gram = gram + f.scalar(c) * form.gram
            hit = attempt(gram)
            if hit:
                return hit
        box += 1
    return SelfDualResult("unknown", detail=f"budget {budget} exhausted")


# -- product structures ---------------------------------------------------------


def is_product_structure(algebra: LieAlgebra, f: LinearMap) -> bool:
    """Involution f != +-id whose +-1 eigenspaces factorize the algebra.

    Integrability: f([x,y]) = [f(x),y] + [x,f(y)] - f([f(x),f(y)]) on all
    basis pairs.  (Some write the defining condition as "f^2 = f" while
    still working with +-1 eigenspaces; the eigenspace decomposition needs
    an involution, so f^2 = id is what this checks.)
    """
    m = f.matrix
    n = algebra.dim
    if m.nrows != n or m.ncols != n:
        raise DimensionMismatch("product structure must be an endomorphism")
    ident = Matrix.identity(algebra.field, n)
    if m * m != ident:
        return False
    if m == ident or m == -ident:
        return False
    for i in range(n):
        fi = m.col(i)
        for j in range(i + 1, n):
            fj = m.col(j)
            ej = basis_vector(algebra.field, n, j)
            ei = basis_vector(algebra.field, n, i)
            lhs = m.mul_vector(algebra.bracket_basis(i, j))
            rhs = vsub(
                vadd(algebra.bracket(fi, ej), algebra.bracket(ei, fj)),
                m.mul_vector(algebra.bracket(fi, fj)),
            )
            if lhs != rhs:
                return False
    return True


def split_product_structure(algebra: LieAlgebra, f: LinearMap) -> tuple:
    """The (+1, -1) eigenspace pair of a product structure."""
    if algebra.field.characteristic() == 2:
        raise CharTwo("eigenspace split undefined in characteristic 2")
    if not is_product_structure(algebra, f):
        raise DimensionMismatch("not a product structure")
    ident = Matrix.identity(algebra.field, algebra.dim)
    plus = Subspace(algebra, (f.matrix - ident).nullspace())
    minus = Subspace(algebra, (f.matrix + ident).nullspace())
    if not plus.is_subalgebra() or not minus.is_subalgebra():
        raise DimensionMismatch("eigenspaces fail to close under the bracket")
    return plus, minus


# -- direct products --------------------------------------------------------------


def direct_product(a: LieAlgebra, b: LieAlgebra, names=None) -> LieAlgebra:
    """Block-diagonal structure constants; all cross brackets vanish."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    f = a.field
    if names is None:
        right = [n if n not in a.basis_names else f"{n}'" for n in b.basis_names]
        names = tuple(a.basis_names) + tuple(right)
    dim = a.dim + b.dim
    brackets = {}
    for (i, j), vec in a.sc_pairs():
        brackets[(i, j)] = tuple(vec) + zero_vector(f, b.dim)
    for (i, j), vec in b.sc_pairs():
        brackets[(a.dim + i, a.dim + j)] = zero_vector(f, a.dim) + tuple(vec)
    return LieAlgebra(f, names, brackets)


def subalgebra_structure(algebra: LieAlgebra, space: Subspace, names=None) -> LieAlgebra:
    """Structure constants of a bracket-closed subspace over its rref basis."""
    m = space.dim
    if names is None:
        names = []
        for vec in space.basis:
            hits = [k for k, x in enumerate(vec) if x]
            if len(hits) == 1 and vec[hits[0]] == algebra.field.one:
                names.append(algebra.basis_names[hits[0]])
            else:
                names.append(f"s{len(names) + 1}")
        names = tuple(names)
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            w = algebra.bracket(space.basis[i], space.basis[j])
            coords = space.coordinates(w)
            if coords is None:
                raise FormatError("subspace is not closed under the bracket")
            brackets[(i, j)] = coords
    return LieAlgebra(algebra.field, names, brackets)
