"""Dense matrices over Q: echelon forms, kernels, exact solves."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import RationalPoly, as_fraction, format_rational

Vector = tuple[Fraction, ...]


def vec(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vector:
    c = as_fraction(c)
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    total = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


class QMatrix:
    """Immutable rows x cols matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        data = tuple(as_fraction(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "QMatrix":
        if not columns:
            return cls(nrows or 0, 0, ())
        return cls.from_rows(columns).T

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"QMatrix([{body}])"

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, (a + b for a, b in zip(self._data, other._data)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, (a - b for a, b in zip(self._data, other._data)))

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, (-a for a in self._data))

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        return QMatrix(self.rows, self.cols, (c * a for a in self._data))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return QMatrix(
                self.rows, other.cols,
                (dot(self.row(i), ocols[j]) for i in range(self.rows) for j in range(other.cols)),
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def __pow__(self, n: int) -> "QMatrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = QMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply_poly(self, f: RationalPoly) -> "QMatrix":
        """f(M) by Horner's rule."""
        n = self.rows
        acc = QMatrix.zeros(n, n)
        eye = QMatrix.identity(n)
        for c in reversed(f.coeffs):
            acc = acc @ self + eye.scale(c)
        return acc

    def rank(self) -> int:
        return len(rref(self)[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = self.to_rows()
        n = self.rows
        sign = 1
        result = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                sign = -sign
            piv = m[c][c]
            result *= piv
            for r in range(c + 1, n):
                f = m[r][c]
                if f:
                    q = f / piv
                    m[r] = [a - q * b for a, b in zip(m[r], m[c])]
        return sign * result

    def inverse(self) -> "QMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = QMatrix.from_rows([list(self.row(i)) + list(unit_vec(n, i)) for i in range(n)])
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        return QMatrix.from_rows([red.row(i)[n:] for i in range(n)])

    def charpoly(self) -> RationalPoly:
        """det(tI - M) by the Faddeev-LeVerrier recursion."""
        if not self.is_square():
            raise ValueError("characteristic polynomial of a non-square matrix")
        n = self.rows
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        eye = QMatrix.identity(n)
        mk = QMatrix.zeros(n, n)
        for k in range(1, n + 1):
            mk = self @ (mk + eye.scale(coeffs[n - k + 1]))
            trace = sum((mk[i, i] for i in range(n)), Fraction(0))
            coeffs[n - k] = -trace / k
        return RationalPoly(coeffs)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def block_diag(self, other: "QMatrix") -> "QMatrix":
        r, c = self.rows + other.rows, self.cols + other.cols
        rows = [[Fraction(0)] * c for _ in range(r)]
        for i in range(self.rows):
            rows[i][:self.cols] = self.row(i)
        for i in range(other.rows):
            rows[self.rows + i][self.cols:] = other.row(i)
        return QMatrix.from_rows(rows)


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = m.to_rows()
    nr, nc = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [a / piv for a in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return QMatrix(nr, nc, (e for row in rows for e in row)), pivots


def kernel_basis(m: QMatrix) -> list[Vector]:
    """Basis of {v : M v = 0}, in reduced echelon normal form.

    Vectors are returned so that, stacked as rows, they form a reduced
    row echelon matrix (each has a leading 1 in a distinct free column,
    zeros in the other free columns), ordered by leading position.
    """
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(v)
    if not basis:
        return []
    # free-variable parametrization has identity on free columns; re-echelonize
    # so that the leading entry of each vector is its first nonzero coordinate
    stacked, _ = rref(QMatrix.from_rows(basis))
    return [stacked.row(i) for i in range(len(basis))]


class LinearSystemError(ArithmeticError):
    pass


def solve_unique(m: QMatrix, rhs: Sequence) -> Vector:
    """The unique x with M x = rhs; raises if none or several exist."""
    b = vec(rhs)
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug = QMatrix.from_rows([list(m.row(i)) + [b[i]] for i in range(m.rows)])
    red, pivots = rref(aug)
    if m.cols in pivots:
        raise LinearSystemError("no solution")
    if len(pivots) < m.cols:
        raise LinearSystemError("solution not unique")
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r, m.cols]
    return tuple(x)


def solve_any(m: QMatrix, rhs: Sequence) -> Vector | None:
    """Some solution of M x = rhs (free variables set to 0), or None."""
    b = vec(rhs)
    aug = QMatrix.from_rows([list(m.row(i)) + [b[i]] for i in range(m.rows)])
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r, m.cols]
    return tuple(x)


def companion_matrix(f: RationalPoly) -> QMatrix:
    """Matrix of multiplication by t on Q[t]/(f) in the basis 1, t, ..., t^(m-1).

    Columns are images: t e_i = e_{i+1} for i < m, t e_m = -sum a_{i-1} e_i.
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if f.leading != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    m = f.degree
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = Fraction(1)
    for i in range(m):
        rows[i][m - 1] = -f.coeff(i)
    return QMatrix.from_rows(rows)


def multiplication_matrix(u: RationalPoly, f: RationalPoly) -> QMatrix:
    """Matrix of v -> u*v on Q[t]/(f) in the power basis (f monic)."""
    return companion_matrix(f).apply_poly(u)


def poly_to_coords(u: RationalPoly, f: RationalPoly) -> Vector:
    r = u % f
    return tuple(r.coeff(i) for i in range(f.degree))


def coords_to_poly(v: Sequence) -> RationalPoly:
    return RationalPoly(v)
