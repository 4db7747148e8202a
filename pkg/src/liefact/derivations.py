"""Derivations and twisted derivations of a Lie algebra.

A twisted derivation is a pair (lambda, Delta): a covector vanishing on the
derived algebra together with an endomorphism obeying the perturbed
derivation law

    Delta([g,h]) = [Delta(g),h] + [g,Delta(h)] + lambda(h)Delta(g) - lambda(g)Delta(h).

The lambda-terms carry the sign that makes every codimension-1 extension
bracket satisfy Jacobi; with lambda = 0 the law reduces to the ordinary
derivation law.  Twisted derivations of the family l(2n+1,k) admit a block
closed form (TnElement below), which the tests play off against this
module's generic solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidTn,
    LambdaNotAdmissible,
    NotADerivation,
    NotFinite,
)
from .exactmath import (
    Field,
    Matrix,
    Scalar,
    basis_vector,
    enumerate_affine,
    span_rref,
    vadd,
    vscale,
    vsub,
    zero_vector,
)
from .liecore import LieAlgebra, LinearMap


@dataclass(frozen=True)
class TwistedDerivation:
    lam: tuple  # covector, length dim
    delta: Matrix

    def violations(self, algebra: LieAlgebra) -> list:
        """Defects of the two defining identities on all basis pairs."""
        bad = []
        n = algebra.dim
        f = algebra.field
        for i in range(n):
            ei = basis_vector(f, n, i)
            di = self.delta.col(i)
            for j in range(i + 1, n):
                bij = algebra.bracket_basis(i, j)
                lam_val = _covector_apply(self.lam, bij, f)
                if lam_val:
                    bad.append(("lambda", i, j, lam_val))
                dj = self.delta.col(j)
                lhs = self.delta.mul_vector(bij)
                rhs = vadd(
                    algebra.bracket(di, basis_vector(f, n, j)),
                    algebra.bracket(ei, dj),
                )
                rhs = vadd(rhs, vsub(vscale(self.lam[j], di), vscale(self.lam[i], dj)))
                if lhs != rhs:
                    bad.append(("delta", i, j, vsub(lhs, rhs)))
        return bad

    def is_valid_for(self, algebra: LieAlgebra) -> bool:
        return not self.violations(algebra)


def _covector_apply(lam, v, field: Field) -> Scalar:
    total = field.zero
    for a, b in zip(lam, v):
        if a and b:
            total = total + a * b
    return total


def _twisted_system(algebra: LieAlgebra, lam) -> Matrix:
    """Linear system in the dim^2 entries of Delta for a fixed lambda."""
    n = algebra.dim
    f = algebra.field
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = algebra.bracket_basis(i, j)
            for k in range(n):
                row = [f.zero] * (n * n)
                for m in range(n):
                    if cij[m]:
                        row[k * n + m] = row[k * n + m] + cij[m]
                    cmj = algebra.bracket_basis(m, j)[k]
                    if cmj:
                        row[m * n + i] = row[m * n + i] - cmj
                    cim = algebra.bracket_basis(i, m)[k]
                    if cim:
                        row[m * n + j] = row[m * n + j] - cim
                if lam[j]:
                    row[k * n + i] = row[k * n + i] - lam[j]
                if lam[i]:
                    row[k * n + j] = row[k * n + j] + lam[i]
                rows.append(row)
    if not rows:
        return Matrix.zeros(f, 1, n * n)
    return Matrix(f, rows)


def _maps_from_flat(algebra: LieAlgebra, flats) -> list:
    n = algebra.dim
    maps = []
    for flat in flats:
        m = Matrix(algebra.field, [flat[r * n : (r + 1) * n] for r in range(n)])
        maps.append(LinearMap(algebra, algebra, m))
    return maps


def derivation_space(algebra: LieAlgebra) -> list:
    """Basis of {D : D[x,y] = [Dx,y] + [x,Dy]}."""
    lam = zero_vector(algebra.field, algebra.dim)
    return _maps_from_flat(algebra, _twisted_system(algebra, lam).nullspace())


def is_derivation(algebra: LieAlgebra, d: LinearMap) -> bool:
    n = algebra.dim
    f = algebra.field
    for i in range(n):
        di = d.matrix.col(i)
        for j in range(i + 1, n):
            lhs = d.matrix.mul_vector(algebra.bracket_basis(i, j))
            rhs = vadd(
                algebra.bracket(di, basis_vector(f, n, j)),
                algebra.bracket(basis_vector(f, n, i), d.matrix.col(j)),
            )
            if lhs != rhs:
                return False
    return True


def inner_derivation(algebra: LieAlgebra, x) -> LinearMap:
    """The map y -> [x, y]."""
    return LinearMap(algebra, algebra, algebra.ad(x))


def is_inner(algebra: LieAlgebra, d: LinearMap) -> Optional[tuple]:
    """Witness x with [x, -] = d, or None.

    Raises NotADerivation when d fails the derivation law.
    """
    if not is_derivation(algebra, d):
        raise NotADerivation("the map does not satisfy the derivation law")
    n = algebra.dim
    rows = []
    rhs = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(algebra.bracket_basis(i, j)[k] for i in range(n)))
            rhs.append(d.matrix.rows[k][j])
    sol = Matrix(algebra.field, rows).solve(tuple(rhs))
    if sol is None:
        return None
    return sol[0]


def lambda_is_admissible(algebra: LieAlgebra, lam) -> bool:
    for (_, _), vec in algebra.sc_pairs():
        if _covector_apply(lam, vec, algebra.field):
            return False
    return True


def twisted_derivations_for_lambda(algebra: LieAlgebra, lam) -> list:
    """Basis of the Delta-solution space for one fixed admissible lambda."""
    lam = tuple(algebra.field.scalar(x) for x in lam)
    if len(lam) != algebra.dim:
        raise DimensionMismatch("lambda must have length dim")
    if not lambda_is_admissible(algebra, lam):
        raise LambdaNotAdmissible("lambda does not vanish on the derived algebra")
    return _maps_from_flat(algebra, _twisted_system(algebra, lam).nullspace())


def admissible_lambdas(algebra: LieAlgebra) -> list:
    """rref basis of the covectors vanishing on the derived algebra."""
    rows = [vec for _, vec in algebra.sc_pairs()]
    if not rows:
        m = Matrix.zeros(algebra.field, 1, algebra.dim)
    else:
        m = Matrix(algebra.field, rows)
    return m.nullspace()


def enumerate_twisted_derivations(algebra: LieAlgebra, budget: int = 10**7) -> list:
    """One (lambda, Delta-basis) entry per admissible lambda, finite fields only."""
    if not algebra.field.is_finite:
        raise NotFinite("enumeration of admissible lambdas needs a finite field")
    basis = admissible_lambdas(algebra)
    count = algebra.field.p ** len(basis)
    if count > budget:
        raise BudgetExceeded(
            f"{count} admissible covectors exceed budget {budget}", required=count
        )
    out = []
    origin = zero_vector(algebra.field, algebra.dim)
    for lam in enumerate_affine(algebra.field, origin, basis):
        out.append((lam, twisted_derivations_for_lambda(algebra, lam)))
    return out


def canonical_solution_span(maps) -> tuple:
    """rref of the stacked flattened matrices; canonical set-equality key."""
    if not maps:
        return ()
    field = maps[0].matrix.field
    return tuple(span_rref(field, [m.matrix.entries_flat() for m in maps]))


# -- the block closed form for l(2n+1,k) --------------------------------------


@dataclass(frozen=True)
class TnElement:
    """Block datum (A, B, C, D, lambda0, delta) for a twisted derivation of l(2n+1,k).

    A, B, C, D are n x n; delta has length 2n+1.  Validity couples the blocks:
    lambda0*A = -delta_last*I, (2+lambda0)*B = 0, (2-lambda0)*C = 0,
    lambda0*D = delta_last*I.
    """

    n: int
    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix
    lambda0: Scalar
    delta: tuple

    @property
    def field(self) -> Field:
        return self.A.field

    def __post_init__(self):
        for block in (self.A, self.B, self.C, self.D):
            if block.nrows != self.n or block.ncols != self.n:
                raise DimensionMismatch("blocks must be n x n")
        if len(self.delta) != 2 * self.n + 1:
            raise DimensionMismatch("delta must have length 2n+1")


def tn_to_json(t: TnElement) -> dict:
    """Serialize mirroring the block layout: A, B, C, D, lambda0, delta."""
    return {
        "n": t.n,
        "A": [[str(x) for x in row] for row in t.A.rows],
        "B": [[str(x) for x in row] for row in t.B.rows],
        "C": [[str(x) for x in row] for row in t.C.rows],
        "D": [[str(x) for x in row] for row in t.D.rows],
        "lambda0": str(t.lambda0),
        "delta": [str(x) for x in t.delta],
    }


def tn_from_json(field: Field, data: dict) -> TnElement:
    try:
        return tn_element(
            field, data["n"], data["A"], data["B"], data["C"], data["D"],
            data["lambda0"], data["delta"],
        )
    except (KeyError, TypeError) as exc:
        raise DimensionMismatch(f"bad block record: {exc}") from exc


def tn_element(field: Field, n: int, A, B, C, D, lambda0, delta) -> TnElement:
    """Convenience constructor accepting raw entry lists."""
    def as_matrix(x):
        if isinstance(x, Matrix):
            return x
        if x == 0:
            return Matrix.zeros(field, n, n)
        return Matrix(field, x)

    return TnElement(
        n=n,
        A=as_matrix(A),
        B=as_matrix(B),
        C=as_matrix(C),
        D=as_matrix(D),
        lambda0=field.scalar(lambda0),
        delta=tuple(field.scalar(x) for x in delta),
    )


def tn_validate(t: TnElement) -> bool:
    f = t.field
    n = t.n
    dlast = t.delta[-1]
    ident = Matrix.identity(f, n)
    two = f.scalar(2)
    if t.lambda0 * t.A != (-dlast) * ident:
        return False
    if (two + t.lambda0) * t.B != Matrix.zeros(f, n, n):
        return False
    if (two - t.lambda0) * t.C != Matrix.zeros(f, n, n):
        return False
    if t.lambda0 * t.D != dlast * ident:
        return False
    return True


def tn_delta_matrix(t: TnElement) -> Matrix:
    """Assemble Delta in the basis (E_1..E_n, F_1..F_n, G) from the blocks."""
    f = t.field
    n = t.n
    rows = []
    for i in range(n):
        rows.append(list(t.A.rows[i]) + list(t.B.rows[i]) + [t.delta[i]])
    for i in range(n):
        rows.append(list(t.C.rows[i]) + list(t.D.rows[i]) + [t.delta[n + i]])
    rows.append(list(zero_vector(f, 2 * n)) + [t.delta[2 * n]])
    return Matrix(f, rows)


def tn_to_twisted(t: TnElement) -> TwistedDerivation:
    if not tn_validate(t):
        raise InvalidTn("block constraints violated")
    f = t.field
    lam = tuple(zero_vector(f, 2 * t.n)) + (t.lambda0,)
    return TwistedDerivation(lam=lam, delta=tn_delta_matrix(t))


def tn_space_for_lambda0(field: Field, n: int, lambda0) -> list:
    """Basis TnElements of the block-constraint solution space at fixed lambda0.

    The constraints are linear in (A, B, C, D, delta) once lambda0 is fixed,
    so the valid data form a linear space; its image under tn_delta_matrix is
    the closed-form Delta-space the generic solver must reproduce.
    """
    lam0 = field.scalar(lambda0)
    two = field.scalar(2)
    nn = n * n
    total = 4 * nn + 2 * n + 1
    # unknown layout: A | B | C | D | delta
    rows = []
    dlast = 4 * nn + 2 * n
    for i in range(n):
        for j in range(n):
            row = [field.zero] * total
            row[i * n + j] = lam0
            if i == j:
                row[dlast] = field.one
            rows.append(row)
            row = [field.zero] * total
            row[nn + i * n + j] = two + lam0
            rows.append(row)
            row = [field.zero] * total
            row[2 * nn + i * n + j] = two - lam0
            rows.append(row)
            row = [field.zero] * total
            row[3 * nn + i * n + j] = lam0
            if i == j:
                row[dlast] = -field.one
            rows.append(row)
    sols = Matrix(field, rows).nullspace()
    elements = []
    for flat in sols:
        def block(offset):
            return Matrix(field, [flat[offset + r * n : offset + (r + 1) * n] for r in range(n)])

        elements.append(
            TnElement(
                n=n,
                A=block(0),
                B=block(nn),
                C=block(2 * nn),
                D=block(3 * nn),
                lambda0=lam0,
                delta=tuple(flat[4 * nn :]),
            )
        )
    return elements


def tn_delta_span(field: Field, n: int, lambda0) -> tuple:
    """Canonical rref span of the closed-form Delta-space at fixed lambda0."""
    flats = [tn_delta_matrix(t).entries_flat() for t in tn_space_for_lambda0(field, n, lambda0)]
    return tuple(span_rref(field, flats))
