"""Exception hierarchy shared by all signlab modules.

Every domain error carries a short stable ``code`` string so that callers
(CLI, tests, report generators) can match on the condition without parsing
messages.
"""


class SignLabError(Exception):
    """Base class for all signlab domain errors."""

    code = "ERROR"


class ArityMismatchError(SignLabError):
    """Two tables/functions with different arities were combined."""

    code = "ARITY_MISMATCH"


class LimitError(SignLabError):
    """A documented size/range limit was exceeded."""

    code = "LIMIT"


class ZeroFunctionError(SignLabError):
    """Pure high degree requested for the identically-zero table."""

    code = "ZERO_FUNCTION"


class NotALowerBoundError(SignLabError):
    """Dual witness extraction was requested at a feasible degree."""

    code = "NOT_A_LOWER_BOUND"


class InvalidWitnessError(SignLabError):
    """A dual witness failed verification where a valid one is required."""

    code = "INVALID_WITNESS"


class TrivialCaseError(SignLabError):
    """Witness composition with an inner witness of claimed degree 0."""

    code = "TRIVIAL_CASE"


class ZeroCertificateError(SignLabError):
    """An adversary certificate with an all-zero matrix."""

    code = "ZERO_CERTIFICATE"


class DegenerateCertificateError(SignLabError):
    """All masked norms vanish, so the adversary ratio is 0/0."""

    code = "DEGENERATE_CERTIFICATE"


class FormulaSyntaxError(SignLabError):
    """Formula text did not conform to the grammar."""

    code = "SYNTAX"

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FormatError(SignLabError):
    """A table/witness/certificate file did not conform to its format."""

    code = "FORMAT"


class ConvergenceError(SignLabError):
    """Power iteration failed to reach the requested residual."""

    code = "NO_CONVERGENCE"

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class SimplexLimitError(SignLabError):
    """The exact simplex exceeded its pivot budget (never expected)."""

    code = "PIVOT_LIMIT"
