"""Exact linear algebra over the rationals.

Entries are Python ints or :class:`fractions.Fraction`; both compare and hash
consistently, so matrices mixing them are still syntactically comparable.
Subspaces are stored by their reduced row echelon basis, which makes subspace
equality a plain ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = int | Fraction


class ShapeError(ValueError):
    pass


def _norm(x) -> Scalar:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"non-exact entry {x!r}")


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeError(f"data does not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(_norm(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ShapeError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.data)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(tuple(r[j] for r in self.data) for j in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(_norm(sum(a * c[k] for k, a in nz)) for c in ocols))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for matrix {self.shape}")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(_norm(sum(r[k] * a for k, a in nz)) for r in self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(
            tuple(_norm(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(_norm(c * a) for a in r) for r in self.data))

    def is_zero(self) -> bool:
        return all(not a for r in self.data for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_injective(self) -> bool:
        return self.rank() == self.cols

    def is_surjective(self) -> bool:
        return self.rank() == self.rows

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix(n, 2 * n, tuple(r + e for r, e in zip(self.data, Matrix.identity(n).data)))
        R, piv = rref(aug)
        if piv[:n] != tuple(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(n, n, tuple(r[n:] for r in R.data[:n]))

    def entries(self) -> Iterable[Scalar]:
        for r in self.data:
            yield from r

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in M.data]
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        lead = pr[c]
        if lead != 1:
            inv = Fraction(1) / lead
            pr = [_norm(a * inv) if a else 0 for a in pr]
            rows[r] = pr
        nzc = [j for j in range(c, M.cols) if pr[j]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for j in nzc:
                    ri[j] = _norm(ri[j] - f * pr[j])
        pivots.append(c)
        r += 1
    R = Matrix(M.rows, M.cols, tuple(tuple(x) for x in rows))
    return R, tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``k^ambient_dim`` held as its reduced echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        vecs = [tuple(_norm(a) for a in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ShapeError("vector length differs from ambient dimension")
        if not vecs:
            return cls(ambient_dim, (), ())
        R, piv = rref(Matrix(len(vecs), ambient_dim, tuple(vecs)))
        return cls(ambient_dim, R.data[: len(piv)], piv)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim).data, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as columns: the inclusion ``k^dim -> k^ambient``."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return Subspace.span(self.ambient_dim, list(self.basis) + [tuple(v)]).dim == self.dim

    def coordinates(self, v: Sequence[Scalar], check: bool = True) -> tuple[Scalar, ...]:
        c = tuple(v[p] for p in self.pivots)
        if check:
            back = [sum(ci * b[j] for ci, b in zip(c, self.basis)) for j in range(self.ambient_dim)]
            if any(_norm(x) != _norm(y) for x, y in zip(back, v)):
                raise ValueError("vector is not in the subspace")
        return tuple(_norm(x) for x in c)

    def coordinate_matrix(self, M: Matrix, check: bool = True) -> Matrix:
        """Express the columns of ``M`` (which must lie in the subspace) in the basis."""
        cols = [self.coordinates(M.column(j), check) for j in range(M.cols)]
        return Matrix.from_columns(cols, self.dim)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis + other.basis)


def kernel_basis(M: Matrix) -> Subspace:
    R, piv = rref(M)
    free = [j for j in range(M.cols) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for i, p in enumerate(piv):
            v[p] = _norm(-R.data[i][f])
        vecs.append(v)
    return Subspace.span(M.cols, vecs)


def image_basis(M: Matrix) -> Subspace:
    return Subspace.span(M.rows, [M.column(j) for j in range(M.cols)])


def solve(M: Matrix, b: Sequence[Scalar]) -> tuple[Scalar, ...] | None:
    """One solution of ``M x = b`` or ``None``."""
    if len(b) != M.rows:
        raise ShapeError("right-hand side length differs from row count")
    aug = Matrix(M.rows, M.cols + 1, tuple(r + (_norm(x),) for r, x in zip(M.data, b)))
    R, piv = rref(aug)
    if piv and piv[-1] == M.cols:
        return None
    x = [0] * M.cols
    for i, p in enumerate(piv):
        x[p] = R.data[i][M.cols]
    return tuple(x)


def kron(M: Matrix, N: Matrix) -> Matrix:
    data = []
    for r in M.data:
        for s in N.data:
            data.append(tuple(_norm(a * b) if a and b else 0 for a in r for b in s))
    return Matrix(M.rows * N.rows, M.cols * N.cols, tuple(data))


def direct_sum(*Ms: Matrix) -> Matrix:
    rows = sum(m.rows for m in Ms)
    cols = sum(m.cols for m in Ms)
    data = []
    off = 0
    for m in Ms:
        for r in m.data:
            data.append((0,) * off + r + (0,) * (cols - off - m.cols))
        off += m.cols
    return Matrix(rows, cols, tuple(data))


def hstack(*Ms: Matrix) -> Matrix:
    rows = Ms[0].rows
    if any(m.rows != rows for m in Ms):
        raise ShapeError("hstack row mismatch")
    return Matrix(rows, sum(m.cols for m in Ms), tuple(
        sum((m.data[i] for m in Ms), ()) for i in range(rows)))


def vstack(*Ms: Matrix) -> Matrix:
    cols = Ms[0].cols
    if any(m.cols != cols for m in Ms):
        raise ShapeError("vstack column mismatch")
    return Matrix(sum(m.rows for m in Ms), cols, sum((m.data for m in Ms), ()))


def quotient_map(ambient_dim: int, sub: Subspace) -> Matrix:
    """Canonical surjection ``k^ambient -> k^(ambient - dim sub)`` with kernel ``sub``.

    Coordinates of the quotient are the non-pivot coordinates of the ambient
    space, so :func:`quotient_section` is a right inverse.
    """
    if sub.ambient_dim != ambient_dim:
        raise ShapeError("subspace lives in a different ambient space")
    pivset = set(sub.pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    pos = {j: i for i, j in enumerate(free)}
    cols = []
    row_of_pivot = {p: i for i, p in enumerate(sub.pivots)}
    for j in range(ambient_dim):
        col = [0] * len(free)
        if j in pos:
            col[pos[j]] = 1
        else:
            b = sub.basis[row_of_pivot[j]]
            for f in free:
                col[pos[f]] = _norm(-b[f])
        cols.append(col)
    return Matrix.from_columns(cols, len(free))


def quotient_section(ambient_dim: int, sub: Subspace) -> Matrix:
    pivset = set(sub.pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    cols = []
    for f in free:
        c = [0] * ambient_dim
        c[f] = 1
        cols.append(c)
    return Matrix.from_columns(cols, ambient_dim)
