"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow and no rounding. Matrices are small (rank at most a
few dozen), which is why the normal forms use plain elementary row and
column operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]


class DimensionError(ValueError):
    """Operand shapes do not fit together."""


class SingularMatrixError(ValueError):
    """A square matrix with zero determinant was given where an inverse is needed."""


class _Matrix:
    __slots__ = ("rows", "cols", "entries")

    _coerce = staticmethod(lambda x: x)

    def __init__(self, rows: int, cols: int, entries: Iterable[Number]):
        entries = tuple(self._coerce(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Number]], rows: Optional[int] = None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[Number]):
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return type(self).from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self).from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def is_diagonal(self) -> bool:
        return all(
            self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()!r})"

    def _result_type(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return IntMatrix

    def __matmul__(self, other):
        if isinstance(other, _Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            rows = [[(k, a) for k, a in enumerate(self.row(i)) if a] for i in range(self.rows)]
            out = [sum(a * c[k] for k, a in r) for r in rows for c in cols]
            return self._result_type(other)(self.rows, other.cols, out)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length-{len(vec)} vector")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    def _elementwise(self, other, op):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return self._result_type(other)(
            self.rows, self.cols, [op(a, b) for a, b in zip(self.entries, other.entries)]
        )

    def __add__(self, other):
        return self._elementwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._elementwise(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c: Number):
        cls = RatMatrix if isinstance(c, Fraction) and c.denominator != 1 else type(self)
        return cls(self.rows, self.cols, [c * a for a in self.entries])

    def is_integral(self) -> bool:
        return all(Fraction(e).denominator == 1 for e in self.entries)

    def det(self) -> Number:
        return det(self)

    def to_rational(self) -> "RatMatrix":
        return self if isinstance(self, RatMatrix) else RatMatrix(self.rows, self.cols, self.entries)


def _as_int(x) -> int:
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError(f"non-integral entry {x}")
    return f.numerator


class IntMatrix(_Matrix):
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ()
    _coerce = staticmethod(_as_int)


class RatMatrix(_Matrix):
    """Immutable dense matrix of reduced fractions."""

    __slots__ = ()
    _coerce = staticmethod(Fraction)

    def to_integer(self) -> IntMatrix:
        """Convert to :class:`IntMatrix`; raises ``ValueError`` if any entry is fractional."""
        return IntMatrix(self.rows, self.cols, self.entries)


def block_diagonal(blocks: Sequence[_Matrix]):
    """Direct sum of matrices, keeping IntMatrix if every block is integral."""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    cls = RatMatrix if any(isinstance(b, RatMatrix) for b in blocks) else IntMatrix
    return cls.from_rows(out, cols=cols)


def det(M: _Matrix) -> Number:
    """Determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise DimensionError("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    if isinstance(M, RatMatrix):
        # clear denominators, then rescale
        den = 1
        for e in M.entries:
            den = den * e.denominator // gcd(den, e.denominator)
        return Fraction(det(IntMatrix(n, n, [e * den for e in M.entries])), den ** n)
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --- normal forms -----------------------------------------------------------


def hnf(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. Pivots of
    ``H`` are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last.
    """
    if M.rows == 0 or M.cols == 0:
        raise DimensionError("hnf needs a nonempty matrix")
    m, n = M.shape
    a = M.tolist()
    u = IntMatrix.identity(m).tolist()

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def addmul(dst, src, c):
        if c:
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            swap(r, p)
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    addmul(i, r, -(a[i][c] // a[r][c]))
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            negate(r)
        for i in range(r):
            addmul(i, r, -(a[i][c] // a[r][c]))
        r += 1
    return IntMatrix.from_rows(a, cols=n), IntMatrix.from_rows(u, cols=m)


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def shape(self) -> Tuple[int, int]:
        return self.S.shape

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Diagonal entries different from 1 (zeros included, as free summands)."""
        return tuple(d for d in self.diagonal if d != 1)


def snf(M: IntMatrix) -> SnfDecomposition:
    """Smith normal form by elementary row/column operations.

    The pivot is always an entry of minimal absolute value in the remaining
    block; a pivot is only accepted once it divides the whole block, which
    yields the divisibility chain directly.
    """
    if M.rows == 0 or M.cols == 0:
        raise DimensionError("snf needs a nonempty matrix")
    m, n = M.shape
    a = M.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_add(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    for k in range(min(m, n)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(k, m) for j in range(k, n) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            row_swap(k, pi)
            col_swap(k, pj)
            p = a[k][k]
            clean = True
            for i in range(k + 1, m):
                q = a[i][k] // p
                if q:
                    row_add(i, k, -q)
                clean &= a[i][k] == 0
            for j in range(k + 1, n):
                q = a[k][j] // p
                if q:
                    col_add(j, k, -q)
                clean &= a[k][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row in; the next pass finds a smaller remainder
            row_add(k, bad, 1)
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
        if a[k][k] == 0:
            break
    return SnfDecomposition(
        IntMatrix.from_rows(a, cols=n),
        IntMatrix.from_rows(u, cols=m),
        IntMatrix.from_rows(v, cols=n),
    )


# --- solving ----------------------------------------------------------------


def solve_in_lattice(M: IntMatrix, b: Sequence[Number]) -> Optional[Tuple[int, ...]]:
    """Find an integer vector ``x`` with ``M @ x == b``.

    The columns of ``M`` generate a lattice and ``b`` is a rational vector in
    the same ambient coordinates. Returns ``None`` when ``b`` is not in the
    lattice.
    """
    b = tuple(Fraction(x) for x in b)
    if len(b) != M.rows:
        raise DimensionError(f"vector of length {len(b)} against {M.rows} rows")
    if M.cols == 0 or M.rows == 0:
        return tuple(0 for _ in range(M.cols)) if not any(b) else None
    dec = snf(M)
    ub = dec.U @ b
    diag = dec.diagonal
    y = []
    for i, c in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c != 0:
                return None
            if i < M.cols:
                y.append(0)
            continue
        q = c / d
        if q.denominator != 1:
            return None
        y.append(q.numerator)
    y.extend([0] * (M.cols - len(y)))
    return tuple(int(x) for x in dec.V @ y)


def invert_rational(M: _Matrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    if M.rows != M.cols:
        raise DimensionError("only square matrices are invertible")
    n = M.rows
    a = [[Fraction(x) for x in M.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RatMatrix.from_rows([r[n:] for r in a], cols=n)


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Basis (as columns) of ``{x in Z^n : M @ x == 0}``."""
    H, U = hnf(M.T)
    zero_rows = [i for i in range(H.rows) if not any(H.row(i))]
    return IntMatrix.from_columns([U.row(i) for i in zero_rows], rows=M.cols)
