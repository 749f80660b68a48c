"""Exception hierarchy.

Every domain error carries a ``kind`` used by the CLI for its
``ERROR <kind>:`` prefix on standard error.
"""
from __future__ import annotations


class PovmrtError(Exception):
    kind = "Error"


class NonHermitian(PovmrtError):
    kind = "NonHermitian"

    def __init__(self, deviation: float, index: int | None = None):
        self.deviation = deviation
        self.index = index
        where = "" if index is None else f" (element {index})"
        super().__init__(f"operator is not Hermitian{where}: max |A - A^dag| = {deviation:.3e}")


class DimensionMismatch(PovmrtError):
    kind = "DimensionMismatch"


class ShapeMismatch(PovmrtError):
    kind = "ShapeMismatch"


class NotPsd(PovmrtError):
    kind = "NotPsd"

    def __init__(self, index: int, min_eigenvalue: float):
        self.index = index
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"element {index} is not positive semi-definite: min eigenvalue {min_eigenvalue:.3e}")


class IncompletenessResidual(PovmrtError):
    kind = "IncompletenessResidual"

    def __init__(self, value: float):
        self.value = value
        super().__init__(f"elements do not sum to the identity: max-entry residual {value:.3e}")


class InvalidDistribution(PovmrtError):
    kind = "InvalidDistribution"

    def __init__(self, index: int, detail: str):
        self.index = index
        super().__init__(f"column/block {index}: {detail}")


class InvalidState(PovmrtError):
    kind = "InvalidState"


class SolverStall(PovmrtError):
    kind = "SolverStall"


class PreconditionViolated(PovmrtError):
    kind = "PreconditionViolated"


class SingularNormalizer(PovmrtError):
    kind = "SingularNormalizer"


class ParseError(PovmrtError):
    kind = "ParseError"


class ValidationError(PovmrtError):
    kind = "ValidationError"

    def __init__(self, message: str, cause: PovmrtError | None = None):
        self.cause = cause
        super().__init__(message)


class IoError(PovmrtError):
    kind = "IoError"


class ConfigError(PovmrtError):
    kind = "ConfigError"
