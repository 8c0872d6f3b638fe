"""Exception hierarchy shared by all modules."""


class AnholonomyError(Exception):
    """Base class; ``code`` is the machine-readable name used by the CLI."""

    code = "AnholonomyError"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class NotUnitary(AnholonomyError):
    code = "NotUnitary"


class NoConvergence(AnholonomyError):
    code = "NoConvergence"

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual

    def to_dict(self) -> dict:
        return {**super().to_dict(), "residual": self.residual}


class DimensionOverflow(AnholonomyError):
    code = "DimensionOverflow"


class DegenerateSpectrum(AnholonomyError):
    code = "DegenerateSpectrum"


class FamilyMismatch(AnholonomyError):
    code = "FamilyMismatch"


class OddParamsRequired(AnholonomyError):
    code = "OddParamsRequired"


class DegeneracyOnPath(AnholonomyError):
    code = "DegeneracyOnPath"

    def __init__(self, message: str, window: tuple[float, float]):
        super().__init__(message)
        self.window = window

    def to_dict(self) -> dict:
        return {**super().to_dict(), "window": list(self.window)}


class UnderResolved(AnholonomyError):
    code = "UnderResolved"

    def __init__(self, message: str, worst_overlap: float):
        super().__init__(message)
        self.worst_overlap = worst_overlap

    def to_dict(self) -> dict:
        return {**super().to_dict(), "worst_overlap": self.worst_overlap}


class NotPeriodic(AnholonomyError):
    code = "NotPeriodic"


class NotClosed(AnholonomyError):
    code = "NotClosed"


class QuadratureNotConverged(AnholonomyError):
    code = "QuadratureNotConverged"

    def __init__(self, message: str, value: float):
        super().__init__(message)
        self.value = value

    def to_dict(self) -> dict:
        return {**super().to_dict(), "value": self.value}


class NonPositiveParams(AnholonomyError):
    code = "NonPositiveParams"


class InstanceTooLarge(AnholonomyError):
    code = "InstanceTooLarge"


class ParseError(AnholonomyError):
    code = "ParseError"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason

    def to_dict(self) -> dict:
        return {"error": self.code, "line": self.line, "reason": self.reason}
