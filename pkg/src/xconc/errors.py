"""Exception hierarchy.

Every error raised on purpose by this package derives from :class:`XConcError`.
The ``exit_code`` attribute is what the command line returns for it.
"""


class XConcError(Exception):
    exit_code = 1


class ValidationError(XConcError, ValueError):
    exit_code = 3


class ShapeError(ValidationError):
    pass


class PositivityViolation(ValidationError):
    def __init__(self, index, detail):
        self.index = index
        super().__init__(f"pair {index}: {detail}")


class NormalizationError(ValidationError):
    def __init__(self, trace):
        self.trace = trace
        super().__init__(f"trace is {trace!r}, expected 1")


class DimensionMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class InvalidPermutation(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class NoEntanglement(ValidationError):
    pass


class NotDensityMatrix(ValidationError):
    pass


class NotTwoPairSupport(ValidationError):
    pass


class ParseError(XConcError, ValueError):
    exit_code = 2


class VerificationError(XConcError):
    exit_code = 4


class IterationLimit(VerificationError):
    """Raised in strict mode when a certificate cannot be completed.

    The partial certificate is attached so callers can still inspect it.
    """

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(
            f"residual trace {certificate.residual_trace:.3g} above tolerance "
            f"after {certificate.iterations} iterations"
        )


class StorageLimit(XConcError, MemoryError):
    exit_code = 5
