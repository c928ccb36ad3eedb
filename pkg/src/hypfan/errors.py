"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`HypfanError`
so callers (and the command line front end) can separate domain failures
from programming errors.
"""


class HypfanError(Exception):
    """Base class for all package errors."""


# surface construction and combinatorics

class SurfaceError(HypfanError, ValueError):
    pass


class PairingNotInvolution(SurfaceError):
    pass


class FixedHalfEdge(SurfaceError):
    pass


class NonNegativeEulerCharacteristic(SurfaceError):
    pass


class NoCusp(SurfaceError):
    pass


class SelfFoldedEdge(SurfaceError):
    pass


class BadCuspIndex(SurfaceError, IndexError):
    pass


class BadCorner(SurfaceError, IndexError):
    pass


# decorated structure

class NonPositiveLambda(HypfanError, ValueError):
    pass


class NonPositiveWeight(HypfanError, ValueError):
    pass


class FlipBudgetExceeded(HypfanError, RuntimeError):
    pass


# cones and fans

class NotDelaunayForWeight(HypfanError, ValueError):
    pass


class EmptyCone(HypfanError, ValueError):
    pass


class DimensionMismatch(HypfanError, ValueError):
    pass


class BoundaryFacet(HypfanError, ValueError):
    pass


class StepUnderflow(HypfanError, RuntimeError):
    pass


class UnknownLabel(HypfanError, KeyError):
    pass


# floating point development

class DegenerateEdge(HypfanError, ArithmeticError):
    pass


class NonPositiveHeightComponent(HypfanError, ValueError):
    pass


class TailBoundNotReached(HypfanError, RuntimeError):
    pass


class NormalFanMismatch(HypfanError, AssertionError):
    pass


# euclidean oracle

class NotATriangulation(HypfanError, ValueError):
    pass


class TooManyPoints(HypfanError, ValueError):
    pass


# rendering

class UnsupportedDimension(HypfanError, ValueError):
    pass
