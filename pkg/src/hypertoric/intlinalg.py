"""Exact linear algebra over the integers.

Everything here runs on Python's arbitrary-precision ints; there is no
floating point and no fixed-width arithmetic anywhere.  Matrices are
immutable values, so they are safe to share between threads, and every
operation is deterministic: pivots are chosen by smallest absolute value
with ties broken by lowest (row, column) index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DimensionMismatch, ZeroRow

__all__ = [
    "IntMatrix",
    "HNFResult",
    "SNFDecomposition",
    "xgcd",
    "det",
    "hnf",
    "snf",
    "invariant_factors",
    "rank",
    "is_lattice_surjection",
    "kernel_basis",
    "iter_maximal_minors",
    "maximal_minors",
    "is_unimodular",
    "row_primitive_part",
    "sign_normalize",
    "column_lattice_canonical",
    "rows_match_up_to_permutation",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


@dataclass(frozen=True)
class IntMatrix:
    """Dense immutable integer matrix, stored as a tuple of row tuples.

    Empty dimensions are legal: a 0 x k or k x 0 matrix behaves like the
    corresponding degenerate linear map.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        """Build a matrix from an iterable of row iterables.

        ``cols`` is only needed to disambiguate a matrix with zero rows.
        """
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
        else:
            width = 0 if cols is None else cols
        return cls(len(data), width, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols_of_other = other.transpose().entries
        data = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols_of_other)
                     for row in self.entries)
        return IntMatrix(self.rows, other.cols, data)

    def select_rows(self, indices) -> "IntMatrix":
        return IntMatrix.from_rows((self.entries[i] for i in indices), cols=self.cols)

    def select_columns(self, indices) -> "IntMatrix":
        idx = tuple(indices)
        return IntMatrix(self.rows, len(idx),
                         tuple(tuple(r[j] for j in idx) for r in self.entries))

    def drop_column(self, j: int) -> "IntMatrix":
        return self.select_columns(k for k in range(self.cols) if k != j)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"<empty {self.rows}x{self.cols}>"
        widths = [max(len(str(r[j])) for r in self.entries) for j in range(self.cols)]
        return "\n".join(" ".join(str(x).rjust(w) for x, w in zip(r, widths)) for r in self.entries)


@dataclass(frozen=True)
class HNFResult:
    """Row Hermite normal form H with a unimodular U such that U @ A = H."""

    H: IntMatrix
    U: IntMatrix


@dataclass(frozen=True)
class SNFDecomposition:
    """Smith decomposition U @ A @ V = diag(invariant_factors), padded with zeros.

    U and V are unimodular.  Invariant factors are nonnegative, each
    divides the next (ascending convention), trailing entries may be 0,
    and the list has length min(rows, cols).
    """

    U: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]


# -- row operation helpers on mutable list-of-list workspaces ---------------

def _negate_row(mat, i):
    mat[i] = [-x for x in mat[i]]


def _row_combine(mat, aux, i1, i2, x, y, u, v):
    """Rows (i1, i2) <- (x*r1 + y*r2, u*r1 + v*r2) on mat and aux alike."""
    for m in (mat, aux):
        if m is None:
            continue
        r1, r2 = m[i1], m[i2]
        m[i1] = [x * a + y * b for a, b in zip(r1, r2)]
        m[i2] = [u * a + v * b for a, b in zip(r1, r2)]


def _clear_entry_with_row_ops(mat, aux, r, i, c):
    """Zero mat[i][c] against pivot row r using a unimodular 2x2 row op."""
    a, b = mat[r][c], mat[i][c]
    if b == 0:
        return
    if a == 0:
        mat[r], mat[i] = mat[i], mat[r]
        if aux is not None:
            aux[r], aux[i] = aux[i], aux[r]
    elif b % a == 0:
        q = b // a
        mat[i] = [p - q * s for p, s in zip(mat[i], mat[r])]
        if aux is not None:
            aux[i] = [p - q * s for p, s in zip(aux[i], aux[r])]
    else:
        g, x, y = xgcd(a, b)
        _row_combine(mat, aux, r, i, x, y, -(b // g), a // g)


def _row_hnf_inplace(work, track: bool):
    """Reduce ``work`` to row HNF in place; return (U rows or None, pivots)."""
    m = len(work)
    n = len(work[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        # pivot: smallest |entry| among rows >= r, ties by lowest row index
        best = None
        for i in range(r, m):
            v = work[i][c]
            if v:
                key = (abs(v), i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        i = best[1]
        if i != r:
            work[r], work[i] = work[i], work[r]
            if track:
                U[r], U[i] = U[i], U[r]
        for i in range(r + 1, m):
            _clear_entry_with_row_ops(work, U, r, i, c)
        if work[r][c] < 0:
            _negate_row(work, r)
            if track:
                _negate_row(U, r)
        pivots.append((r, c))
        r += 1
    # reduce entries above each pivot into [0, pivot)
    for r, c in pivots:
        p = work[r][c]
        for i in range(r):
            q = work[i][c] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                if track:
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
    return U, pivots


def hnf(A: IntMatrix) -> HNFResult:
    """Row Hermite normal form of A.

    The result H has positive pivots in echelon position, entries above
    each pivot reduced into [0, pivot), and the same row lattice as A.
    H is the canonical representative of that row lattice.
    """
    work = A.to_rows()
    U, _ = _row_hnf_inplace(work, track=True)
    return HNFResult(IntMatrix.from_rows(work, cols=A.cols),
                     IntMatrix.from_rows(U, cols=A.rows))


def _smith_inplace(work, n: int, track: bool):
    """Diagonalize ``work`` (m rows of width n) by unimodular row/column ops.

    Returns (U, V, factors) where U, V are row lists (or None when not
    tracked) and factors is the nonnegative ascending divisibility chain
    of length min(rows, cols).
    """
    m = len(work)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if track else None
    k = 0
    limit = min(m, n)
    while k < limit:
        # global pivot over the trailing block: smallest |entry|, then (row, col)
        best = None
        for i in range(k, m):
            wi = work[i]
            for j in range(k, n):
                v = wi[j]
                if v:
                    key = (abs(v), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            work[pi], work[k] = work[k], work[pi]
            if track:
                U[pi], U[k] = U[k], U[pi]
        if pj != k:
            for row in work:
                row[pj], row[k] = row[k], row[pj]
            if track:
                for row in V:
                    row[pj], row[k] = row[k], row[pj]
        while True:
            for i in range(k + 1, m):
                _clear_entry_with_row_ops(work, U, k, i, k)
            if all(work[k][j] == 0 for j in range(k + 1, n)):
                break
            _clear_row_with_col_ops(work, V, k)
            if all(work[i][k] == 0 for i in range(k + 1, m)):
                break
        d = work[k][k]
        viol = None
        for i in range(k + 1, m):
            wi = work[i]
            for j in range(k + 1, n):
                if wi[j] % d:
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            # fold the offending row into row k and rerun this stage
            work[k] = [a + b for a, b in zip(work[k], work[viol])]
            if track:
                U[k] = [a + b for a, b in zip(U[k], U[viol])]
            continue
        if work[k][k] < 0:
            _negate_row(work, k)
            if track:
                _negate_row(U, k)
        k += 1
    factors = tuple(work[i][i] for i in range(limit))
    return U, V, factors


def _clear_row_with_col_ops(work, V, k):
    """Zero work[k][j] for j > k using unimodular column ops, mirrored on V."""
    n = len(work[0])
    for j in range(k + 1, n):
        a, b = work[k][k], work[k][j]
        if b == 0:
            continue
        if a == 0:
            for row in work:
                row[k], row[j] = row[j], row[k]
            if V is not None:
                for row in V:
                    row[k], row[j] = row[j], row[k]
        elif b % a == 0:
            q = b // a
            for row in work:
                row[j] -= q * row[k]
            if V is not None:
                for row in V:
                    row[j] -= q * row[k]
        else:
            g, x, y = xgcd(a, b)
            u, v = -(b // g), a // g
            for row in work:
                rk, rj = row[k], row[j]
                row[k] = x * rk + y * rj
                row[j] = u * rk + v * rj
            if V is not None:
                for row in V:
                    rk, rj = row[k], row[j]
                    row[k] = x * rk + y * rj
                    row[j] = u * rk + v * rj


def snf(A: IntMatrix) -> SNFDecomposition:
    """Smith normal form with both unimodular transforms.

    U @ A @ V equals the rectangular diagonal of the invariant factors.
    The chain is ascending (each factor divides the next); the number of
    nonzero factors equals rank(A).
    """
    work = A.to_rows()
    U, V, factors = _smith_inplace(work, A.cols, track=True)
    return SNFDecomposition(IntMatrix.from_rows(U, cols=A.rows),
                            IntMatrix.from_rows(V, cols=A.cols),
                            factors)


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of A without tracking the transforms."""
    work = A.to_rows()
    _, _, factors = _smith_inplace(work, A.cols, track=False)
    return factors


def rank(A: IntMatrix) -> int:
    work = A.to_rows()
    _, pivots = _row_hnf_inplace(work, track=False)
    return len(pivots)


def is_lattice_surjection(A: IntMatrix) -> bool:
    """True iff the map Z^cols -> Z^rows given by A is onto.

    Equivalently, rank(A) = rows and every invariant factor equals 1.
    """
    factors = invariant_factors(A)
    nonzero = [f for f in factors if f]
    return len(nonzero) == A.rows and all(f == 1 for f in nonzero)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """A cols x k matrix whose columns freely generate ker(A) over Z.

    The kernel of an integer matrix is automatically a saturated
    sublattice; the basis is returned in the canonical bottom-anchored
    column form (see column_lattice_canonical), so equal kernels give
    identical matrices.
    """
    dec = snf(A)
    r = sum(1 for f in dec.invariant_factors if f)
    cols = [dec.V.column(i) for i in range(r, A.cols)]
    if cols:
        raw = IntMatrix(A.cols, len(cols),
                        tuple(tuple(c[i] for c in cols) for i in range(A.cols)))
    else:
        raw = IntMatrix.zeros(A.cols, 0)
    return column_lattice_canonical(raw)


def det(A: IntMatrix) -> int:
    """Determinant of a square matrix by fraction-free elimination."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant needs a square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def iter_maximal_minors(A: IntMatrix):
    """Yield (index subset, minor value) in lexicographic subset order.

    Subsets run over columns when rows <= cols, over rows otherwise, so a
    square matrix has exactly one maximal minor: its determinant.  There
    are C(max(rows, cols), min(rows, cols)) of them; callers accept the
    combinatorial cost.
    """
    if A.rows <= A.cols:
        for S in itertools.combinations(range(A.cols), A.rows):
            yield S, det(A.select_columns(S))
    else:
        for S in itertools.combinations(range(A.rows), A.cols):
            yield S, det(A.select_rows(S))


def maximal_minors(A: IntMatrix) -> list[int]:
    """All maximal minors of A, ordered by lexicographic index subset."""
    return [v for _, v in iter_maximal_minors(A)]


def is_unimodular(A: IntMatrix) -> bool:
    """True iff every maximal minor is in {-1, 0, 1} and some minor is nonzero.

    Stops at the first minor outside {-1, 0, 1}.
    """
    any_nonzero = False
    for _, v in iter_maximal_minors(A):
        if v not in (-1, 0, 1):
            return False
        if v:
            any_nonzero = True
    return any_nonzero


def row_primitive_part(v) -> tuple[tuple[int, ...], int]:
    """Split a nonzero integer vector as (primitive vector, positive gcd).

    The orientation of v is preserved: v = m * b with m > 0.
    """
    vec = tuple(int(x) for x in v)
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    if g == 0:
        raise ZeroRow()
    return tuple(x // g for x in vec), g


def sign_normalize(v) -> tuple[int, ...]:
    """Flip the vector so its first nonzero entry is positive."""
    vec = tuple(int(x) for x in v)
    for x in vec:
        if x > 0:
            return vec
        if x < 0:
            return tuple(-y for y in vec)
    return vec


def column_lattice_canonical(A: IntMatrix) -> IntMatrix:
    """Canonical basis matrix of the column lattice of A.

    Two matrices have equal column lattices iff their canonical forms are
    identical.  The form is a bottom-anchored column echelon: the lowest
    nonzero entry of each column is a positive pivot, pivot depths
    decrease strictly from left to right, and the other columns are
    reduced at each pivot row.  Zero columns are dropped, so the result
    has exactly rank(A) columns.  For a kernel of an [I | M]-shaped
    matrix this reproduces the familiar [[-M], [I]] solution basis.
    """
    t = A.transpose()
    work = [list(reversed(row)) for row in t.entries]
    _row_hnf_inplace(work, track=False)
    kept = [list(reversed(row)) for row in work if any(row)]
    n = A.rows
    return IntMatrix(n, len(kept), tuple(tuple(row[i] for row in kept) for i in range(n)))


def rows_match_up_to_permutation(A: IntMatrix, B: IntMatrix) -> bool:
    """True iff the multisets of rows of A and B coincide."""
    if A.rows != B.rows or A.cols != B.cols:
        return False
    return sorted(A.entries) == sorted(B.entries)
