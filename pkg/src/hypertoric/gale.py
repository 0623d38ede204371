"""Exact pairs 0 -> Z^(n-d) -> Z^n -> Z^d -> 0 in both directions.

``gale_dual`` goes from a surjection A to a kernel matrix B;
``cokernel_matrix`` goes back from a saturated injection B to a
presentation A of its cokernel.  ``verify_exact`` certifies a candidate
pair; failure there is data, not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InternalVerificationFailure,
    NotSaturated,
    NotSurjective,
    ZeroKernelRow,
)
from .intlinalg import (
    IntMatrix,
    invariant_factors,
    is_lattice_surjection,
    kernel_basis,
    rank,
    snf,
)

__all__ = ["ExactnessCertificate", "GalePair", "gale_dual", "cokernel_matrix", "verify_exact"]


@dataclass(frozen=True)
class ExactnessCertificate:
    """Four independently computed flags; the pair is exact iff all hold.

    Saturation of the image of B is equivalent to surjectivity of its
    transpose, which is how ``b_saturated`` is computed.
    """

    product_is_zero: bool
    a_surjective: bool
    b_saturated: bool
    ranks_complementary: bool

    def holds(self) -> bool:
        return (self.product_is_zero and self.a_surjective
                and self.b_saturated and self.ranks_complementary)


@dataclass(frozen=True)
class GalePair:
    """A matched pair (A, B) with its exactness certificate."""

    A: IntMatrix
    B: IntMatrix
    certificate: ExactnessCertificate


def verify_exact(A: IntMatrix, B: IntMatrix) -> ExactnessCertificate:
    """Certify exactness of 0 -> Z^k -B-> Z^n -A-> Z^d -> 0.

    Never raises on mathematical failure; each flag is computed on its
    own so a failing certificate localizes the defect.
    """
    if A.cols != B.rows:
        raise DimensionMismatch(
            f"A has {A.cols} columns but B has {B.rows} rows")
    product_is_zero = (A @ B).is_zero()
    a_surjective = is_lattice_surjection(A)
    b_saturated = is_lattice_surjection(B.transpose())
    ranks_complementary = rank(A) + rank(B) == A.cols
    return ExactnessCertificate(product_is_zero, a_surjective,
                                b_saturated, ranks_complementary)


def gale_dual(A: IntMatrix) -> GalePair:
    """Kernel matrix of a lattice surjection, with a full certificate.

    Raises NotSurjective when A is not onto, and ZeroKernelRow when some
    row of the kernel matrix vanishes (for a kernel with zero columns the
    row check is vacuous and the empty dual is returned).
    """
    if not is_lattice_surjection(A):
        raise NotSurjective(
            "the matrix must define a surjection onto Z^d: "
            "full row rank with all Smith invariant factors equal 1")
    B = kernel_basis(A)
    if B.cols > 0:
        for i, row in enumerate(B.entries):
            if not any(row):
                raise ZeroKernelRow(i)
    cert = verify_exact(A, B)
    if not cert.holds():
        raise InternalVerificationFailure(
            f"kernel construction produced a non-exact pair: {cert}")
    return GalePair(A, B, cert)


def cokernel_matrix(B: IntMatrix) -> IntMatrix:
    """A surjection A with ker(A) equal to the column lattice of B.

    Requires B injective with saturated image (all invariant factors 1).
    With U @ B @ V = [I; 0], A is the bottom block of U; the result is
    one fixed representative of its left-GL(Z) class, deterministic under
    the pivot rule, and callers must compare such presentations by kernel
    lattice rather than by entries.
    """
    k = B.cols
    factors = invariant_factors(B)
    nonzero = [f for f in factors if f]
    if len(nonzero) != k or any(f != 1 for f in nonzero):
        raise NotSaturated(
            "the matrix must be injective with saturated image "
            f"(invariant factors all 1); got factors {list(factors)} "
            f"with {k} columns")
    dec = snf(B)
    A = dec.U.select_rows(range(k, B.rows))
    cert = verify_exact(A, B)
    if not cert.holds():
        raise InternalVerificationFailure(
            f"cokernel construction produced a non-exact pair: {cert}")
    return A
