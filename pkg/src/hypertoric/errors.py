"""Exception hierarchy shared by all modules.

``InvalidInput`` subclasses report violated preconditions on user data and
map to CLI exit code 1.  ``InternalVerificationFailure`` means a runtime
cross-check of a mathematical identity failed, which indicates a bug in
this package rather than bad input; it maps to exit code 2.
"""


class HypertoricError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(HypertoricError):
    """The input violates a standing assumption of the computation."""


class NotSurjective(InvalidInput):
    """The matrix must define a surjection Z^n -> Z^d.

    Equivalently: full row rank with all Smith invariant factors equal 1.
    """


class ZeroRow(InvalidInput):
    """A row vector that must be nonzero is zero."""

    def __init__(self, index=None, message=None):
        self.index = index
        if message is None:
            message = "zero row" if index is None else f"row {index} is zero"
        super().__init__(message)


class ZeroKernelRow(ZeroRow):
    """A row of the kernel matrix is zero.

    The analysis assumes every row of the kernel basis matrix is nonzero;
    a zero row means the corresponding coordinate never moves and should
    be dropped from the presentation before analysing it.
    """

    def __init__(self, index):
        super().__init__(index, f"kernel matrix row {index} is zero")


class NotSaturated(InvalidInput):
    """The column lattice is not a saturated full-column-rank sublattice.

    Raised when a cokernel presentation is requested for a matrix whose
    image has torsion quotient (some invariant factor exceeds 1) or whose
    columns are dependent.
    """


class DimensionMismatch(InvalidInput):
    """Operands have incompatible shapes."""


class NotCodim2Witness(InvalidInput):
    """The selected column does not witness a codimension-2 locus.

    Removing the column must keep the row rank full while breaking
    lattice surjectivity; the message records which half failed.
    """

    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"column {index} is not a codimension-2 witness: {reason}")


class EnumerationTooLarge(InvalidInput):
    """A subset enumeration would exceed the configured budget."""


class ParseError(InvalidInput):
    """Matrix input could not be parsed."""


class InternalVerificationFailure(HypertoricError):
    """A runtime self-check of a proved identity failed (package bug)."""


class IterationLimitExceeded(InternalVerificationFailure):
    """The expansion loop ran longer than its mathematical bound."""
