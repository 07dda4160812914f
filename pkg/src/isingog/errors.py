"""Exception hierarchy.

Two families: `ValidationError` for malformed input (CLI exit code 1) and
`MathError` for inputs that are well formed but mathematically inconsistent
with what an operation expects (CLI exit code 2).
"""


class IsingOGError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(IsingOGError, ValueError):
    pass


class MathError(IsingOGError, ArithmeticError):
    pass


# input validation

class ParseError(ValidationError):
    pass


class EulerViolation(ValidationError):
    pass


class LoopEdge(ValidationError):
    pass


class BadBoundaryOrder(ValidationError):
    pass


class CouplingOutOfRange(ValidationError):
    pass


class RotationError(ValidationError):
    pass


class NotSymmetric(ValidationError):
    pass


class BadDiagonal(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NotCrossing(ValidationError):
    pass


class OddSymmetricDifference(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


# mathematical inconsistencies

class StrandCycle(MathError):
    pass


class RankDeficient(MathError):
    pass


class NotOG(MathError):
    pass


class NotTNN(MathError):
    pass


class ZeroDenominator(MathError):
    pass


class OrientationFailure(MathError):
    pass


class NoMatchings(MathError):
    pass


class NoBridge(MathError):
    pass


class NoEdges(MathError):
    pass


class NotReduced(MathError):
    pass


class DegenerateBlock(MathError):
    pass


class Inconsistent(MathError):
    pass
