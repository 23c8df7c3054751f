"""
Exact integer matrix algebra.

Hermite and Smith normal forms with their unimodular transforms, integer
linear solving, kernel bases and lattice membership. Entries are Python
integers throughout, so intermediate growth never overflows and nothing is
ever reduced modulo anything or rounded.

Conventions:
- Matrices act on column vectors, ``A.apply(x) == A @ x``.
- ``hnf`` is row style: ``U @ A == H``.
- ``snf`` satisfies ``U @ A @ V == S``; a zero invariant factor is a free
  summand and zeros always come last.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from sympy import Matrix
from sympy.core.intfunc import igcdex

_LOGGER = logging.getLogger(__name__)

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        """Check the shape."""
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Invalid shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ValueError(
                f"Entry count does not match the shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], cols: int | None = None
    ) -> IntMatrix:
        """Build a matrix from a list of rows."""
        data = tuple(tuple(int(value) for value in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        """Build a matrix from a list of columns of length ``rows``."""
        data = [tuple(int(value) for value in column) for column in columns]
        for column in data:
            if len(column) != rows:
                raise ValueError(f"Column of length {len(column)}, expected {rows}")
        return cls(
            rows,
            len(data),
            tuple(tuple(column[i] for column in data) for i in range(rows)),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        """Return the zero matrix."""
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        """Return the identity matrix."""
        return cls(
            size,
            size,
            tuple(
                tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
            ),
        )

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntMatrix:
        """Return a square diagonal matrix."""
        size = len(values)
        return cls(
            size,
            size,
            tuple(
                tuple(int(values[i]) if i == j else 0 for j in range(size))
                for i in range(size)
            ),
        )

    def __getitem__(self, key: tuple[int, int]) -> int:
        """Return a single entry."""
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        """Return row ``i``."""
        return self.entries[i]

    def column(self, j: int) -> Vector:
        """Return column ``j``."""
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        """Return all columns."""
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMatrix:  # noqa: N802
        """Return the transpose."""
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(
                tuple(self.entries[i][j] for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        """Return the matrix product."""
        if self.cols != other.rows:
            raise ValueError(
                f"Cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        other_columns = other.columns()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(_dot(row, column) for column in other_columns)
                for row in self.entries
            ),
        )

    def apply(self, vector: Sequence[int]) -> Vector:
        """Return the product with a column vector."""
        if len(vector) != self.cols:
            raise ValueError(
                f"Vector of length {len(vector)} for a matrix with {self.cols} columns"
            )
        return tuple(_dot(row, vector) for row in self.entries)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        """Return the entrywise sum."""
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(left, right, strict=True))
                for left, right in zip(self.entries, other.entries, strict=True)
            ),
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        """Return the entrywise difference."""
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        """Return the negated matrix."""
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(-a for a in row) for row in self.entries),
        )

    def hstack(self, other: IntMatrix) -> IntMatrix:
        """Return ``[self | other]``."""
        if self.rows != other.rows:
            raise ValueError("Cannot stack matrices with different row counts")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(
                left + right
                for left, right in zip(self.entries, other.entries, strict=True)
            ),
        )

    def is_zero(self) -> bool:
        """Return True if every entry is zero."""
        return not any(any(row) for row in self.entries)

    def determinant(self) -> int:
        """Return the exact determinant of a square matrix."""
        if self.rows != self.cols:
            raise ValueError("Determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(Matrix(self.to_lists()).det(method="bareiss"))

    def to_lists(self) -> list[list[int]]:
        """Return the entries as nested lists."""
        return [list(row) for row in self.entries]

    def _check_same_shape(self, other: IntMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"Shape mismatch: {self.rows}x{self.cols} and "
                f"{other.rows}x{other.cols}"
            )


@dataclass(frozen=True)
class HermiteDecomposition:
    """Row Hermite form ``H = U @ A``.

    ``pivots[r]`` is the pivot column of the nonzero row ``r``; rows from
    ``rank`` on are zero.
    """

    H: IntMatrix  # noqa: N815
    U: IntMatrix  # noqa: N815
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        """Return the number of nonzero rows."""
        return len(self.pivots)


@dataclass(frozen=True)
class SmithDecomposition:
    """Smith form ``S = U @ A @ V`` with invariant factors ``d``."""

    U: IntMatrix  # noqa: N815
    S: IntMatrix  # noqa: N815
    V: IntMatrix  # noqa: N815
    d: tuple[int, ...]

    @property
    def rank(self) -> int:
        """Return the number of nonzero invariant factors."""
        return sum(1 for value in self.d if value)


def _dot(left: Sequence[int], right: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(left, right, strict=True))


def _identity_lists(size: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def _freeze(data: list[list[int]], cols: int) -> IntMatrix:
    return IntMatrix(len(data), cols, tuple(tuple(row) for row in data))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(s, t, g)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s, t, g = igcdex(a, b)
    return int(s), int(t), int(g)


def _combine_rows(
    data: list[list[int]], p: int, i: int, coeffs: tuple[int, int, int, int]
) -> None:
    """Replace rows p, i by (a*p + b*i, c*p + d*i)."""
    a, b, c, d = coeffs
    row_p, row_i = data[p], data[i]
    data[p] = [a * x + b * y for x, y in zip(row_p, row_i, strict=True)]
    data[i] = [c * x + d * y for x, y in zip(row_p, row_i, strict=True)]


def _combine_cols(
    data: list[list[int]], p: int, j: int, coeffs: tuple[int, int, int, int]
) -> None:
    """Replace columns p, j by (a*p + b*j, c*p + d*j)."""
    a, b, c, d = coeffs
    for row in data:
        x, y = row[p], row[j]
        row[p] = a * x + b * y
        row[j] = c * x + d * y


def _gcd_coeffs(a: int, b: int) -> tuple[int, int, int, int]:
    """Return a determinant-one 2x2 transform sending (a, b) to (gcd, 0)."""
    if a and b % a == 0:
        return 1, 0, -(b // a), 1
    s, t, g = _xgcd(a, b)
    return s, t, -b // g, a // g


def _add_row(data: list[list[int]], target: int, source: int, factor: int) -> None:
    data[target] = [
        x + factor * y for x, y in zip(data[target], data[source], strict=True)
    ]


def _negate_row(data: list[list[int]], i: int) -> None:
    data[i] = [-x for x in data[i]]


def hnf(matrix: IntMatrix) -> HermiteDecomposition:
    """Return the row Hermite normal form of ``matrix``.

    Pivots are positive and the entries above each pivot lie in
    ``[0, pivot)``.
    """
    m, n = matrix.rows, matrix.cols
    h = matrix.to_lists()
    u = _identity_lists(m)
    pivots: list[int] = []
    for col in range(n):
        p = len(pivots)
        if p == m:
            break
        for i in range(p + 1, m):
            if h[i][col]:
                coeffs = _gcd_coeffs(h[p][col], h[i][col])
                _combine_rows(h, p, i, coeffs)
                _combine_rows(u, p, i, coeffs)
        value = h[p][col]
        if value == 0:
            continue
        if value < 0:
            _negate_row(h, p)
            _negate_row(u, p)
            value = -value
        for i in range(p):
            quotient = h[i][col] // value
            if quotient:
                _add_row(h, i, p, -quotient)
                _add_row(u, i, p, -quotient)
        pivots.append(col)
    return HermiteDecomposition(_freeze(h, n), _freeze(u, m), tuple(pivots))


def _smallest_nonzero(data: list[list[int]], t: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_value = 0
    for i in range(t, len(data)):
        for j in range(t, len(data[i])):
            value = abs(data[i][j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
                if value == 1:
                    return best
    return best


def _non_divisible_row(data: list[list[int]], t: int) -> int | None:
    pivot = data[t][t]
    for i in range(t + 1, len(data)):
        for j in range(t + 1, len(data[i])):
            if data[i][j] % pivot:
                return i
    return None


def snf(matrix: IntMatrix) -> SmithDecomposition:
    """Return the Smith normal form of ``matrix`` with its transforms."""
    m, n = matrix.rows, matrix.cols
    s = matrix.to_lists()
    u = _identity_lists(m)
    v = _identity_lists(n)
    size = min(m, n)
    t = 0
    while t < size:
        position = _smallest_nonzero(s, t)
        if position is None:
            break
        i, j = position
        if i != t:
            s[t], s[i] = s[i], s[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            _combine_cols(s, t, j, (0, 1, 1, 0))
            _combine_cols(v, t, j, (0, 1, 1, 0))
        while True:
            for i in range(t + 1, m):
                if s[i][t]:
                    coeffs = _gcd_coeffs(s[t][t], s[i][t])
                    _combine_rows(s, t, i, coeffs)
                    _combine_rows(u, t, i, coeffs)
            for j in range(t + 1, n):
                if s[t][j]:
                    coeffs = _gcd_coeffs(s[t][t], s[t][j])
                    _combine_cols(s, t, j, coeffs)
                    _combine_cols(v, t, j, coeffs)
            if any(s[i][t] for i in range(t + 1, m)):
                continue
            bad = _non_divisible_row(s, t)
            if bad is None:
                break
            _add_row(s, t, bad, 1)
            _add_row(u, t, bad, 1)
        if s[t][t] < 0:
            _negate_row(s, t)
            _negate_row(u, t)
        t += 1
    factors = tuple(s[i][i] for i in range(size))
    _LOGGER.debug("Smith form of %sx%s matrix: %s", m, n, factors)
    return SmithDecomposition(_freeze(u, m), _freeze(s, n), _freeze(v, n), factors)


def solve(matrix: IntMatrix, rhs: Sequence[int]) -> Vector | None:
    """Return an integer ``x`` with ``matrix @ x == rhs``, or None."""
    if len(rhs) != matrix.rows:
        raise ValueError(
            f"Right-hand side of length {len(rhs)} for {matrix.rows} equations"
        )
    smith = snf(matrix)
    target = smith.U.apply(rhs)
    y = [0] * matrix.cols
    for i, value in enumerate(target):
        factor = smith.d[i] if i < len(smith.d) else 0
        if factor == 0:
            if value:
                return None
            continue
        quotient, remainder = divmod(value, factor)
        if remainder:
            return None
        y[i] = quotient
    return smith.V.apply(y)


def kernel_basis(matrix: IntMatrix) -> IntMatrix:
    """Return a matrix whose columns are a basis of ``{x : matrix @ x == 0}``."""
    hermite = hnf(matrix.T)
    n = matrix.cols
    return IntMatrix.from_columns(
        [hermite.U.row(i) for i in range(hermite.rank, n)], rows=n
    )


def lattice_member(lattice: IntMatrix, vector: Sequence[int]) -> Vector | None:
    """Return ``c`` with ``lattice @ c == vector``, or None.

    The lattice is spanned by the columns of ``lattice``.
    """
    if len(vector) != lattice.rows:
        raise ValueError(
            f"Vector of length {len(vector)} for a lattice in dimension "
            f"{lattice.rows}"
        )
    hermite = hnf(lattice.T)
    residual = list(vector)
    coefficients: list[int] = []
    for r, col in enumerate(hermite.pivots):
        quotient, remainder = divmod(residual[col], hermite.H[r, col])
        if remainder:
            return None
        coefficients.append(quotient)
        if quotient:
            residual = [
                x - quotient * h
                for x, h in zip(residual, hermite.H.row(r), strict=True)
            ]
    if any(residual):
        return None
    return tuple(
        sum(coefficients[r] * hermite.U[r, j] for r in range(hermite.rank))
        for j in range(lattice.cols)
    )


def rank(matrix: IntMatrix) -> int:
    """Return the rank over the rationals."""
    return hnf(matrix).rank


def unimodular_inverse(matrix: IntMatrix) -> IntMatrix:
    """Return the inverse of a unimodular matrix."""
    hermite = hnf(matrix)
    if matrix.rows != matrix.cols or hermite.H != IntMatrix.identity(matrix.rows):
        raise ValueError("Matrix is not unimodular")
    return hermite.U
