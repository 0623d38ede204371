"""Re-presentation of a lattice surjection with primitive kernel rows.

Two routes compute the same answer.  The direct route primitivizes the
kernel matrix (each row m*b with b primitive becomes m copies of b) and
presents its cokernel.  The iterated route repeatedly expands the matrix
one witness column at a time; each step is verified against the exact
sequence it must produce.  Both preserve the kernel rank, and their
results agree up to row permutation and per-row sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InternalVerificationFailure,
    IterationLimitExceeded,
    NotCodim2Witness,
    NotSurjective,
    ZeroRow,
)
from .gale import cokernel_matrix, gale_dual, verify_exact
from .intlinalg import (
    IntMatrix,
    invariant_factors,
    is_lattice_surjection,
    row_primitive_part,
    sign_normalize,
    snf,
)

__all__ = [
    "DIRECT",
    "ITERATED",
    "ExpansionForm",
    "ExpansionStep",
    "RowClass",
    "Primitivization",
    "Terminalization",
    "expansion_normal_form",
    "step_expand",
    "primitivize_rows",
    "terminalize",
]

DIRECT = "direct"
ITERATED = "iterated"


@dataclass(frozen=True)
class ExpansionForm:
    """A surjection rewritten so one column isolates a divisibility m > 1.

    ``matrix`` = P @ A @ (column permutation), where the permutation moves
    the witness column to position 0.  Its first row is
    (a, m*c_1, ..., m*c_{n-1}) with gcd(a, m) = 1, and replacing that row
    by (1, c_1, ..., c_{n-1}) leaves a lattice surjection.  P is not
    unique; consumers must rely on these properties, not on its entries.
    """

    P: IntMatrix
    column_order: tuple[int, ...]
    m: int
    matrix: IntMatrix


@dataclass(frozen=True)
class ExpansionStep:
    """One expansion: (d x n) -> (d+m-1 x n+m-1), exactness verified."""

    form: ExpansionForm
    A_next: IntMatrix
    B_next: IntMatrix


@dataclass(frozen=True)
class RowClass:
    """Kernel rows sharing one primitive direction up to sign."""

    direction: tuple[int, ...]
    multiplicities: tuple[int, ...]
    source_rows: tuple[int, ...]


@dataclass(frozen=True)
class Primitivization:
    """Row-expanded kernel matrix with provenance.

    ``matrix`` keeps the original row order and each row's orientation;
    ``row_source[i]`` is the input row that produced output row i.
    Multiplying output row i by the gcd of its source row and collapsing
    duplicates reconstructs the input exactly.
    """

    classes: tuple[RowClass, ...]
    matrix: IntMatrix
    row_source: tuple[int, ...]


@dataclass(frozen=True)
class Terminalization:
    """Final pair (A, B) with every row of B primitive.

    n and d are the final dimensions; n - d always equals the input's
    kernel rank.  ``steps`` records the expansion trail on the iterated
    path and is None on the direct path.
    """

    A: IntMatrix
    B: IntMatrix
    n: int
    d: int
    steps: tuple[ExpansionStep, ...] | None
    path: str


def _first_row_shape_ok(M: IntMatrix, m: int) -> bool:
    first = M.entries[0]
    return (all(x % m == 0 for x in first[1:])
            and math.gcd(first[0], m) == 1)


def _with_divided_first_row(M: IntMatrix, m: int) -> IntMatrix:
    first = M.entries[0]
    new_first = (1,) + tuple(x // m for x in first[1:])
    return IntMatrix(M.rows, M.cols, (new_first,) + M.entries[1:])


def expansion_normal_form(A: IntMatrix, j0: int) -> ExpansionForm:
    """Rewrite A so column j0's divisibility obstruction sits in row 0.

    Requires A surjective and j0 a witness column: dropping it keeps the
    row rank full but breaks surjectivity.  m is the largest invariant
    factor of the punctured matrix; for a surjective A it is the only
    factor exceeding 1.  P = identity is used whenever the permuted
    matrix is already in shape, so matrices presented in normal form pass
    through unchanged.
    """
    if not (0 <= j0 < A.cols):
        raise IndexError(f"column {j0} out of range")
    if not is_lattice_surjection(A):
        raise NotSurjective(
            "the matrix must define a surjection onto Z^d before a column "
            "can be expanded")
    d = A.rows
    punctured = A.drop_column(j0)
    factors = invariant_factors(punctured)
    nonzero = [f for f in factors if f]
    if len(nonzero) != d:
        raise NotCodim2Witness(j0, "removing it drops the row rank")
    if all(f == 1 for f in nonzero):
        raise NotCodim2Witness(j0, "the remaining columns still surject")
    if any(f != 1 for f in nonzero[:-1]):
        raise InternalVerificationFailure(
            f"punctured matrix of a surjection has factors {nonzero}; "
            "exactly one may exceed 1")
    m = nonzero[-1]
    order = (j0,) + tuple(i for i in range(A.cols) if i != j0)
    permuted = A.select_columns(order)
    if _first_row_shape_ok(permuted, m):
        P = IntMatrix.identity(d)
        shaped = permuted
    else:
        # U from the punctured SNF ends with the non-unit factor in the
        # last row; swapping rows 0 and d-1 moves it to the first row.
        U = snf(punctured).U
        rows = list(U.entries)
        rows[0], rows[d - 1] = rows[d - 1], rows[0]
        P = IntMatrix.from_rows(rows, cols=d)
        shaped = P @ permuted
        if not _first_row_shape_ok(shaped, m):
            raise InternalVerificationFailure(
                "row transform failed to isolate the divisibility "
                f"m={m} at column {j0}")
    if not is_lattice_surjection(_with_divided_first_row(shaped, m)):
        raise InternalVerificationFailure(
            "dividing the first row of the normal form broke surjectivity")
    return ExpansionForm(P, order, m, shaped)


def step_expand(form: ExpansionForm, B: IntMatrix) -> ExpansionStep:
    """One expansion of the normal form, with its matched kernel matrix.

    B must be a kernel matrix of the original A (before P and the column
    permutation).  The output pair is (d+m-1) x (n+m-1) and
    (n+m-1) x (n-d); its exactness and the surjectivity of the expanded
    matrix are verified before returning.
    """
    m = form.m
    d, n = form.matrix.rows, form.matrix.cols
    a = form.matrix.entries

    top = (a[0][0],) + (0,) * (m - 1) + tuple(x // m for x in a[0][1:])
    mid = tuple((a[i][0],) * m + a[i][1:] for i in range(1, d))
    chain = tuple(
        tuple(1 if j == k else (-1 if j == k + 1 else 0) for j in range(n + m - 1))
        for k in range(m - 1))
    A_next = IntMatrix(d + m - 1, n + m - 1, (top,) + mid + chain)

    B_perm = B.select_rows(form.column_order)
    first = B_perm.entries[0]
    if any(x % m for x in first):
        raise InternalVerificationFailure(
            f"kernel row for the witness column is not divisible by m={m}")
    b0 = tuple(x // m for x in first)
    B_next = IntMatrix.from_rows((b0,) * m + B_perm.entries[1:], cols=B.cols)

    cert = verify_exact(A_next, B_next)
    if not cert.holds():
        raise InternalVerificationFailure(
            f"expanded pair failed its exactness certificate: {cert}")
    return ExpansionStep(form, A_next, B_next)


def primitivize_rows(B: IntMatrix) -> Primitivization:
    """Replace each row m*b (b primitive) by m consecutive copies of b.

    Row order and orientation are preserved.  Classes group rows whose
    primitive directions agree up to sign, in order of first appearance,
    keyed by the sign-normalized direction.
    """
    if B.cols == 0:
        return Primitivization((), B, tuple(range(B.rows)))
    parts = []
    for i, row in enumerate(B.entries):
        try:
            parts.append(row_primitive_part(row))
        except ZeroRow:
            raise ZeroRow(i) from None
    out_rows: list[tuple[int, ...]] = []
    source: list[int] = []
    grouped: dict[tuple[int, ...], tuple[list[int], list[int]]] = {}
    for i, (b, mult) in enumerate(parts):
        out_rows.extend([b] * mult)
        source.extend([i] * mult)
        mults, srcs = grouped.setdefault(sign_normalize(b), ([], []))
        mults.append(mult)
        srcs.append(i)
    classes = tuple(RowClass(direction, tuple(mults), tuple(srcs))
                    for direction, (mults, srcs) in grouped.items())
    return Primitivization(classes, IntMatrix.from_rows(out_rows, cols=B.cols),
                           tuple(source))


def _first_nonprimitive_row(B: IntMatrix) -> int | None:
    if B.cols == 0:
        return None
    for i, row in enumerate(B.entries):
        g = 0
        for x in row:
            g = math.gcd(g, x)
        if g > 1:
            return i
    return None


def terminalize(A: IntMatrix, path: str = DIRECT) -> Terminalization:
    """Present the input so that every kernel row becomes primitive.

    The direct path primitivizes the kernel matrix and presents its
    cokernel.  The iterated path expands one witness column at a time
    (always the lowest-index kernel row that is non-primitive; the
    normal-form construction independently re-checks the matching column
    condition) until no witness remains, recording every step.
    """
    if path not in (DIRECT, ITERATED):
        raise ValueError(f"unknown path {path!r}")
    pair = gale_dual(A)
    n, d = A.cols, A.rows

    if path == DIRECT:
        prim = primitivize_rows(pair.B)
        B_final = prim.matrix
        A_final = cokernel_matrix(B_final)
        steps = None
    else:
        budget = 1 + sum(row_primitive_part(r)[1] - 1 for r in pair.B.entries) \
            if pair.B.cols else 1
        A_cur, B_cur = A, pair.B
        trail = []
        while True:
            j0 = _first_nonprimitive_row(B_cur)
            if j0 is None:
                break
            if len(trail) >= budget:
                raise IterationLimitExceeded(
                    f"more than {budget} expansion steps requested")
            form = expansion_normal_form(A_cur, j0)
            step = step_expand(form, B_cur)
            trail.append(step)
            A_cur, B_cur = step.A_next, step.B_next
        A_final, B_final = A_cur, B_cur
        steps = tuple(trail)

    cert = verify_exact(A_final, B_final)
    if not cert.holds():
        raise InternalVerificationFailure(
            f"terminalized pair failed its exactness certificate: {cert}")
    if _first_nonprimitive_row(B_final) is not None:
        raise InternalVerificationFailure(
            "terminalized kernel matrix still has a non-primitive row")
    return Terminalization(A_final, B_final, B_final.rows, A_final.rows,
                           steps, path)
