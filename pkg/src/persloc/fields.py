"""Exact dense linear algebra over a prime field F_p or over Q.

Everything downstream (graded slices, transition matrices, subspace lattices)
reduces to the primitives here: reduced echelon forms with deterministic
first-nonzero pivoting, kernels, and sums/intersections of subspaces held in a
canonical basis.  All values are exact: integers in [0, p) for characteristic
p, `fractions.Fraction` for characteristic 0.  Matrices and subspaces are
immutable; operations return fresh objects, so sharing them between threads is
safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbientMismatchError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field: characteristic p (prime) or 0 for the rationals."""

    char: int = 5

    def __post_init__(self) -> None:
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.char}")

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def coerce(self, value):
        """Bring an int, Fraction, or 'p/q' string into canonical form."""
        if self.char == 0:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            if isinstance(value, str):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} into Q")
        if isinstance(value, str):
            value = int(value)
        if isinstance(value, Fraction):
            if value.denominator % self.char == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.char}")
            return value.numerator * pow(value.denominator, -1, self.char) % self.char
        if not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into F_{self.char}")
        return value % self.char

    def normalize(self, value):
        """Canonical representative of a value produced by ring arithmetic."""
        if self.char == 0:
            return value if isinstance(value, Fraction) else Fraction(value)
        return value % self.char

    def neg(self, value):
        return self.normalize(-value)

    def inv(self, value):
        if self.char == 0:
            if value == 0:
                raise ZeroDivisionError("inverting 0")
            return 1 / Fraction(value)
        value %= self.char
        if value == 0:
            raise ZeroDivisionError("inverting 0")
        return pow(value, self.char - 2, self.char)

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"F_{self.char}"


DEFAULT_FIELD = Field(5)


def _rref(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list).

    Pivot choice is deterministic: scan columns left to right, take the first
    row (top to bottom) with a nonzero entry.
    """
    norm = field.normalize
    r = 0
    pivots: list[int] = []
    nrows = len(rows)
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != 1:
            rows[r] = [norm(x * inv) for x in rows[r]]
        top = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [norm(x - f * y) for x, y in zip(rows[i], top)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with exact entries over a fixed field."""

    field: Field
    nrows: int
    ncols: int
    entries: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        ent = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        return cls(field, len(rows), ncols, ent)

    @classmethod
    def from_cols(cls, field: Field, ncols_ambient: int, cols) -> "Matrix":
        cols = [list(c) for c in cols]
        for c in cols:
            if len(c) != ncols_ambient:
                raise ValueError("column of wrong height")
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(ncols_ambient)]
        ent = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        return cls(field, ncols_ambient, len(cols), ent)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        ent = tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        )
        return cls(field, n, n, ent)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero
        return cls(field, nrows, ncols, tuple((zero,) * ncols for _ in range(nrows)))

    def transpose(self) -> "Matrix":
        ent = tuple(
            tuple(self.entries[i][j] for i in range(self.nrows))
            for j in range(self.ncols)
        )
        return Matrix(self.field, self.ncols, self.nrows, ent)

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.nrows))

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.field != self.field or other.nrows != self.nrows:
            raise AmbientMismatchError("hstack shape or field mismatch")
        ent = tuple(a + b for a, b in zip(self.entries, other.entries))
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, ent)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        ent = tuple(
            tuple(self.entries[i][j] for j in col_idx) for i in row_idx
        )
        return Matrix(self.field, len(row_idx), len(col_idx), ent)

    def mul(self, other: "Matrix") -> "Matrix":
        if other.field != self.field or self.ncols != other.nrows:
            raise AmbientMismatchError("matmul shape or field mismatch")
        norm = self.field.normalize
        ocols = other.ncols
        out = []
        for i in range(self.nrows):
            arow = self.entries[i]
            row = []
            for j in range(ocols):
                acc = 0
                for k in range(self.ncols):
                    a = arow[k]
                    if a != 0:
                        acc += a * other.entries[k][j]
                row.append(norm(acc))
            out.append(tuple(row))
        return Matrix(self.field, self.nrows, ocols, tuple(out))

    def apply(self, vec) -> tuple:
        """Matrix times column vector (length ncols) -> tuple of length nrows."""
        vec = list(vec)
        if len(vec) != self.ncols:
            raise AmbientMismatchError("vector length mismatch")
        norm = self.field.normalize
        out = []
        for i in range(self.nrows):
            acc = 0
            row = self.entries[i]
            for k in range(self.ncols):
                if row[k] != 0 and vec[k] != 0:
                    acc += row[k] * vec[k]
            out.append(norm(acc))
        return tuple(out)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        rows = [list(r) for r in self.entries]
        rows, pivots = _rref(self.field, rows, self.ncols)
        return (
            Matrix(self.field, self.nrows, self.ncols, tuple(tuple(r) for r in rows)),
            tuple(pivots),
        )

    def rank(self) -> int:
        rows = [list(r) for r in self.entries]
        _, pivots = _rref(self.field, rows, self.ncols)
        return len(pivots)

    def kernel(self) -> "Subspace":
        """Right kernel {v : A v = 0} as a canonical subspace of F^ncols."""
        rows = [list(r) for r in self.entries]
        rr, pivots = _rref(self.field, rows, self.ncols)
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        neg = self.field.neg
        basis = []
        for f in free:
            v = [self.field.zero] * self.ncols
            v[f] = self.field.one
            for r, pc in enumerate(pivots):
                v[pc] = neg(rr[r][f])
            basis.append(v)
        return Subspace.span(self.field, self.ncols, basis)

    def image(self) -> "Subspace":
        """Column span as a canonical subspace of F^nrows."""
        return Subspace.span(self.field, self.nrows, self.columns())


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient in reduced column echelon basis.

    Basis columns have strictly increasing pivot rows, each pivot entry is 1,
    and pivot rows vanish in every other basis column; the representation of a
    given subspace is therefore unique, so `==` decides subspace equality.
    """

    ambient: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient: int, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise AmbientMismatchError("spanning vector of wrong height")
        rows = [[field.coerce(x) for x in v] for v in vectors]
        rows, pivots = _rref(field, rows, ambient)
        rows = rows[: len(pivots)]
        basis = Matrix.from_cols(field, ambient, rows)
        return cls(ambient, basis, tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls.span(field, ambient, [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls.span(field, ambient, Matrix.identity(field, ambient).columns())

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def reduce(self, vec) -> tuple:
        """Subtract the unique basis combination matching vec on pivot rows.

        The result vanishes on all pivot rows; it is zero iff vec lies in the
        subspace.
        """
        field = self.basis.field
        v = [field.normalize(x) for x in vec]
        if len(v) != self.ambient:
            raise AmbientMismatchError("vector length mismatch")
        ent = self.basis.entries
        for k, p in enumerate(self.pivots):
            c = v[p]
            if c != 0:
                v = [field.normalize(x - c * ent[i][k]) for i, x in enumerate(v)]
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise AmbientMismatchError("ambient mismatch")
        return all(self.contains_vector(c) for c in other.basis.columns())

    def plus(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.field != self.field:
            raise AmbientMismatchError("ambient mismatch")
        return Subspace.span(
            self.field, self.ambient, self.basis.columns() + other.basis.columns()
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Kernel construction: solve U x = W y, read off the common vectors."""
        if other.ambient != self.ambient or other.field != self.field:
            raise AmbientMismatchError("ambient mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        concat = self.basis.hstack(other.basis)
        ker = concat.kernel()
        vecs = []
        for kv in ker.basis.columns():
            x = kv[: self.dim]
            vecs.append(self.basis.apply(x))
        return Subspace.span(self.field, self.ambient, vecs)

    def image_under(self, a: Matrix) -> "Subspace":
        if a.ncols != self.ambient:
            raise AmbientMismatchError("map domain mismatch")
        return Subspace.span(
            a.field, a.nrows, [a.apply(c) for c in self.basis.columns()]
        )


def sum_and_intersection(u: Subspace, w: Subspace) -> tuple[Subspace, Subspace]:
    """Both lattice operations at once (they share the dimension identity)."""
    return u.plus(w), u.intersect(w)
