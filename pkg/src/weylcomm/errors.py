"""Exception hierarchy shared by every layer of the package."""


class WeylCommError(Exception):
    """Base class for domain errors (mapped to CLI exit code 1)."""


class NotDivisible(WeylCommError, ArithmeticError):
    pass


class GridDegenerate(WeylCommError):
    pass


class NotAffine(WeylCommError):
    pass


class NotCommuting(WeylCommError):
    pass


class BadIndex(WeylCommError, IndexError):
    pass


class SingularPoint(WeylCommError):
    pass


class RankMismatch(WeylCommError):
    pass


class NotPolynomialCoefficients(WeylCommError):
    pass


class ZeroOperator(WeylCommError):
    pass


class TrivialOperator(WeylCommError):
    pass


class BracketVanishes(WeylCommError):
    pass


class NotAPower(WeylCommError):
    pass


class Unsupported(WeylCommError):
    pass


class UnsupportedStructure(WeylCommError):
    pass


class NoSolution(WeylCommError):
    pass


class OrderMismatch(WeylCommError):
    pass


class NotOrder4(WeylCommError):
    pass


class CurveShapeUnexpected(WeylCommError):
    pass


class OperatorSyntaxError(WeylCommError, SyntaxError):
    """Parse failure; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=1, column=1, text=""):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.line = line
        self.column = column
        self.source = text

    def __str__(self):
        return f"{self.msg} (line {self.line}, column {self.column})"


class NonIntegerExponent(OperatorSyntaxError):
    pass
