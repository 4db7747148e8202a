"""Exact field arithmetic and linear algebra over the rationals and GF(p).

Everything here is exact: rationals are stdlib fractions (always in lowest
terms, positive denominator), prime-field residues are ints in [0, p).  All
values are immutable and all operations pure, so concurrent use is safe and
every test downstream can assert strict equality.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import DimensionMismatch, FieldMismatch, FormatError, NotFinite

KIND_Q = "Q"
KIND_FP = "Fp"


def _is_prime(p: int) -> bool:
    # Trial division; moduli here are desk scale.
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Descriptor for the rationals or a prime field GF(p)."""

    __slots__ = ("kind", "p")

    _Q_SINGLETON = None

    def __init__(self, kind: str, p: Optional[int] = None):
        if kind == KIND_Q:
            if p is not None:
                raise ValueError("rationals take no modulus")
        elif kind == KIND_FP:
            if p is None or not _is_prime(p):
                raise ValueError(f"modulus must be prime, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        if cls._Q_SINGLETON is None:
            cls._Q_SINGLETON = cls(KIND_Q)
        return cls._Q_SINGLETON

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(KIND_FP, p)

    def characteristic(self) -> int:
        return 0 if self.kind == KIND_Q else self.p

    @property
    def is_finite(self) -> bool:
        return self.kind == KIND_FP

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == KIND_Q else f"GF({self.p})"

    # -- element construction ------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, digit string or same-field Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field}, expected {self}")
            return value
        if isinstance(value, str):
            return self.from_string(value)
        if self.kind == KIND_Q:
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator not invertible mod {self.p}")
            num = value.numerator % self.p
            den = pow(value.denominator % self.p, self.p - 2, self.p)
            return Scalar(self, (num * den) % self.p)
        return Scalar(self, int(value) % self.p)

    def from_string(self, text: str) -> "Scalar":
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.scalar(Fraction(int(num), int(den)))
            return self.scalar(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad field element {text!r} over {self}: {exc}") from exc

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def elements(self) -> Iterator["Scalar"]:
        """All field elements in ascending residue order (finite fields only)."""
        if not self.is_finite:
            raise NotFinite("cannot enumerate the rationals")
        for v in range(self.p):
            yield Scalar(self, v)

    def nonzero_elements(self) -> Iterator["Scalar"]:
        if not self.is_finite:
            raise NotFinite("cannot enumerate the rationals")
        for v in range(1, self.p):
            yield Scalar(self, v)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == KIND_Q:
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, data) -> "Field":
        if not isinstance(data, dict) or "kind" not in data:
            raise FormatError(f"bad field record: {data!r}")
        kind = data["kind"]
        if kind == "Q":
            return cls.rationals()
        if kind == "Fp":
            try:
                return cls.gf(int(data["p"]))
            except (KeyError, ValueError) as exc:
                raise FormatError(f"bad field record: {data!r}") from exc
        raise FormatError(f"unknown field kind {kind!r}")


class Scalar:
    """A single exact field element, tagged by its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, str)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == KIND_Q:
            return Scalar(self.field, self.value + other.value)
        return Scalar(self.field, (self.value + other.value) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == KIND_Q:
            return Scalar(self.field, self.value - other.value)
        return Scalar(self.field, (self.value - other.value) % self.field.p)

    def __rsub__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced.__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == KIND_Q:
            return Scalar(self.field, self.value * other.value)
        return Scalar(self.field, (self.value * other.value) % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __neg__(self):
        if self.field.kind == KIND_Q:
            return Scalar(self.field, -self.value)
        return Scalar(self.field, (-self.value) % self.field.p)

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.field.kind == KIND_Q:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, self.field.p - 2, self.field.p))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"{self.value}:{self.field}"

    def to_json(self):
        """Rationals as "num/den"-style strings, residues as plain ints."""
        if self.field.kind == KIND_FP:
            return self.value
        return str(self.value)


# -- vectors: plain tuples of Scalars ---------------------------------------


def zero_vector(field: Field, n: int) -> tuple:
    z = field.zero
    return (z,) * n


def basis_vector(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c: Scalar, u):
    return tuple(c * a for a in u)


def is_zero_vector(u) -> bool:
    return not any(u)


def vector_from_strings(field: Field, parts: Iterable) -> tuple:
    return tuple(field.scalar(s) for s in parts)


def enumerate_vectors(field: Field, length: int) -> Iterator[tuple]:
    """All vectors of a given length, lexicographic, first coordinate slowest.

    Exactly p**length vectors; order is deterministic so brute-force results
    are reproducible bit for bit.
    """
    if not field.is_finite:
        raise NotFinite("vector enumeration needs a finite field")
    elems = list(field.elements())
    for combo in itertools.product(elems, repeat=length):
        yield combo


class Matrix:
    """Dense exact matrix; rows is a tuple of row tuples of Scalars."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_rref")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(field.scalar(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatch("ragged rows")
        self._rref = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        return cls(field, rows)

    @classmethod
    def from_cols(cls, field: Field, cols) -> "Matrix":
        cols = [tuple(field.scalar(x) for x in c) for c in cols]
        if not cols:
            return cls(field, [])
        return cls(field, [[c[i] for c in cols] for i in range(len(cols[0]))])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [basis_vector(field, n, i) for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [zero_vector(field, ncols)] * nrows)

    # -- basic algebra -------------------------------------------------------

    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch")

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(self.field, [vadd(r, s) for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(self.field, [vsub(r, s) for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.field, [vneg(r) for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.field != other.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            if self.ncols != other.nrows:
                raise DimensionMismatch("inner dimensions differ")
            cols = list(zip(*other.rows)) if other.rows else []
            return Matrix(
                self.field,
                [
                    [_dot(row, col, self.field) for col in cols]
                    for row in self.rows
                ],
            )
        return Matrix(self.field, [vscale(self.field.scalar(other), r) for r in self.rows])

    __rmul__ = __mul__

    def mul_vector(self, v) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length != ncols")
        return tuple(_dot(row, v, self.field) for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [])

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def cols(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    def stack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols or self.field != other.field:
            raise DimensionMismatch("cannot stack")
        return Matrix(self.field, list(self.rows) + list(other.rows))

    def augment(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows or self.field != other.field:
            raise DimensionMismatch("cannot augment")
        return Matrix(self.field, [r + s for r, s in zip(self.rows, other.rows)])

    def is_zero(self) -> bool:
        return all(is_zero_vector(r) for r in self.rows)

    def entries_flat(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols} | {body}]"

    # -- elimination ---------------------------------------------------------

    def rref(self) -> tuple:
        """Reduced row echelon form and the strictly increasing pivot columns."""
        if self._rref is not None:
            return self._rref
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            pivot_row = None
            for r in range(pr, self.nrows):
                if rows[r][pc]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = rows[pr][pc].inverse()
            rows[pr] = [inv * x for x in rows[pr]]
            for r in range(self.nrows):
                if r != pr and rows[r][pc]:
                    f = rows[r][pc]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.nrows:
                break
        result = (Matrix(self.field, rows), tuple(pivots))
        self._rref = result
        return result

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list:
        """Basis vectors annihilated by the matrix, one per free column."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for f in free:
            v = list(zero_vector(self.field, self.ncols))
            v[f] = self.field.one
            for r, p in enumerate(pivots):
                v[p] = -red.rows[r][f]
            basis.append(tuple(v))
        return basis

    def solve(self, b) -> Optional[tuple]:
        """Particular solution of A x = b plus a nullspace basis, or None."""
        if len(b) != self.nrows:
            raise DimensionMismatch("rhs length != nrows")
        aug = self.augment(Matrix.from_cols(self.field, [b]))
        red, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            return None
        x = list(zero_vector(self.field, self.ncols))
        for r, p in enumerate(pivots):
            x[p] = red.rows[r][self.ncols]
        return tuple(x), self.nullspace()

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.nrows
        rows = [list(r) for r in self.rows]
        det = self.field.one
        for c in range(n):
            pivot_row = None
            for r in range(c, n):
                if rows[r][c]:
                    pivot_row = r
                    break
            if pivot_row is None:
                return self.field.zero
            if pivot_row != c:
                rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = rows[c][c].inverse()
            for r in range(c + 1, n):
                if rows[r][c]:
                    f = rows[r][c] * inv
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
        return det

    def inverse(self) -> Optional["Matrix"]:
        if self.nrows != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        red, pivots = self.augment(Matrix.identity(self.field, n)).rref()
        if len(pivots) < n or pivots[n - 1] != n - 1:
            return None
        return Matrix(self.field, [row[n:] for row in red.rows])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"entries": [[str(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, field: Field, data) -> "Matrix":
        if not isinstance(data, dict) or "entries" not in data:
            raise FormatError(f"bad matrix record: {data!r}")
        return cls(field, [[field.scalar(x) for x in row] for row in data["entries"]])


def _dot(u, v, field: Field) -> Scalar:
    total = field.zero
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def dot(u, v, field: Field) -> Scalar:
    if len(u) != len(v):
        raise DimensionMismatch("dot of unequal lengths")
    return _dot(u, v, field)


def rref(m: Matrix) -> tuple:
    return m.rref()


def nullspace(m: Matrix) -> list:
    return m.nullspace()


def solve_linear(a: Matrix, b) -> Optional[tuple]:
    return a.solve(b)


def span_rref(field: Field, vectors) -> list:
    """Canonical (rref) basis of the span; zero rows dropped."""
    vecs = [v for v in vectors]
    if not vecs:
        return []
    red, pivots = Matrix(field, vecs).rref()
    return [red.rows[i] for i in range(len(pivots))]


def intersect_spans(field: Field, basis_a, basis_b, ambient_dim: int) -> list:
    """rref basis of span(basis_a) ∩ span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    cols = [list(v) for v in basis_a] + [[-x for x in v] for v in basis_b]
    m = Matrix.from_cols(field, cols)
    vecs = []
    for sol in m.nullspace():
        coeffs = sol[: len(basis_a)]
        v = zero_vector(field, ambient_dim)
        for c, bvec in zip(coeffs, basis_a):
            if c:
                v = vadd(v, vscale(c, bvec))
        vecs.append(v)
    return span_rref(field, vecs)


def enumerate_affine(field: Field, particular, basis) -> Iterator[tuple]:
    """All points particular + span(basis) over a finite field, deterministic."""
    if not basis:
        yield tuple(particular)
        return
    for coeffs in enumerate_vectors(field, len(basis)):
        v = tuple(particular)
        for c, b in zip(coeffs, basis):
            if c:
                v = vadd(v, vscale(c, b))
        yield v
