"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI prints it verbatim so
scripts can match on it.
"""


class FramelinkError(Exception):
    code = "FramelinkError"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class DiagramError(FramelinkError):
    code = "DiagramError"

    def __init__(self, message, crossing=None):
        super().__init__(message)
        self.crossing = crossing

    def to_dict(self):
        out = super().to_dict()
        if self.crossing is not None:
            out["crossing"] = self.crossing
        return out


class DanglingArc(DiagramError):
    code = "DanglingArc"


class BrokenCycle(DiagramError):
    code = "BrokenCycle"


class EmptyCrossing(DiagramError):
    code = "EmptyCrossing"


class ArcNotOnComponent(FramelinkError):
    code = "ArcNotOnComponent"


class NoCommonFace(FramelinkError):
    code = "NoCommonFace"


class IndexOutOfRange(FramelinkError):
    code = "IndexOutOfRange"


class SameComponent(FramelinkError):
    code = "SameComponent"


class FramingCountError(FramelinkError):
    code = "FramingCountError"


class ParseError(FramelinkError):
    """Token grammar violation; ``line`` and ``col`` are 1-based."""

    code = "SyntaxError"

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col

    def to_dict(self):
        out = super().to_dict()
        out.update(line=self.line, col=self.col)
        return out


class ArcCountError(ParseError):
    code = "ArcCountError"


class UnpairedCrossing(FramelinkError):
    code = "UnpairedCrossing"


class SignMismatch(FramelinkError):
    code = "SignMismatch"


class InvalidPairing(FramelinkError):
    code = "InvalidPairing"


class AmbiguousEmbedding(FramelinkError):
    code = "AmbiguousEmbedding"


class StaleSite(FramelinkError):
    code = "StaleSite"


class NotALongitude(FramelinkError):
    code = "NotALongitude"


class ZeroClass(FramelinkError):
    code = "ZeroClass"


class NonIntegerCoefficients(FramelinkError):
    code = "NonIntegerCoefficients"


class InvalidCoefficient(FramelinkError):
    code = "InvalidCoefficient"


class DegenerateAfterRetries(FramelinkError):
    code = "DegenerateAfterRetries"


class CurvesTooClose(FramelinkError):
    code = "CurvesTooClose"


class NonIntegerResult(FramelinkError):
    code = "NonIntegerResult"


class UndersampledField(FramelinkError):
    code = "UndersampledField"


class TangentField(FramelinkError):
    code = "TangentField"


class OffsetTooLarge(FramelinkError):
    code = "OffsetTooLarge"


class InvalidCurve(FramelinkError):
    code = "InvalidCurve"
