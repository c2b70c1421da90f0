"""
Named error cases raised across the toolkit.

The class name is the error case name; the cli prints it and maps
ParseError to exit code 2 and every other FlatbandError to exit code 1.
"""


class FlatbandError(Exception):
    """Base class for all domain errors"""

    @property
    def name(self) -> str:
        return type(self).__name__

    def __str__(self):
        message = super().__str__()
        return f"{self.name}: {message}" if message else self.name


# graph_model
class WeakSymmetryViolation(FlatbandError):
    pass


class SelfLoopZeroShift(FlatbandError):
    pass


class EmptyGraph(FlatbandError):
    pass


class RankMismatch(FlatbandError):
    pass


class VertexOutOfRange(FlatbandError):
    pass


# laurent_algebra
class BackendMismatch(FlatbandError, TypeError):
    pass


class ZeroComponent(FlatbandError):
    pass


class NonSquare(FlatbandError):
    pass


class EmptyInput(FlatbandError):
    pass


class ZeroPolynomial(FlatbandError):
    pass


# floquet
class SizeMismatch(FlatbandError):
    pass


class EigenSolverFailure(FlatbandError):
    pass


class DimensionTooLarge(FlatbandError):
    pass


# loop_calculus
class ExplosionGuard(FlatbandError):
    pass


class DegeneratePotential(FlatbandError):
    pass


class BranchTrackingAmbiguity(FlatbandError):
    pass


# extremal_loops
class NoNonzeroQuasiLoop(FlatbandError):
    pass


class NoneFound(FlatbandError):
    pass


class ObstructionNotFound(FlatbandError):
    pass


class EnumerationMismatch(FlatbandError):
    pass


# cli
class ParseError(FlatbandError):
    """Input document could not be read; reason names the underlying case"""

    def __init__(self, message: str, reason: str = "ParseError", field: str = ""):
        self.reason = reason
        self.field = field
        detail = f"[{reason}]"
        if field:
            detail += f" at {field}"
        super().__init__(f"{detail} {message}")
