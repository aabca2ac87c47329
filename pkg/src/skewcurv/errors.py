"""Exception types raised across the package."""


class SkewCurvError(Exception):
    """Base class for every error raised by skewcurv."""


class SingularMatrix(SkewCurvError, ValueError):
    pass


class ParseError(SkewCurvError, ValueError):
    """Expression text could not be parsed.

    ``offset`` is the byte offset (UTF-8) into the source where parsing
    stopped, ``expected`` a short description of what would have been valid.
    """

    def __init__(self, message: str, offset: int, expected: str):
        super().__init__(f"{message} at byte {offset} (expected {expected})")
        self.offset = offset
        self.expected = expected


class DomainError(SkewCurvError, ArithmeticError):
    pass


class NotPositiveDefinite(SkewCurvError, ValueError):
    pass


class DegenerateMetric(SkewCurvError, ValueError):
    pass


class ZeroVector(SkewCurvError, ValueError):
    pass


class DegenerateBasis(SkewCurvError, ValueError):
    pass


class DegeneratePlane(SkewCurvError, ValueError):
    pass


class AngleOutOfRange(SkewCurvError, ValueError):
    pass


class ParameterOutOfRange(SkewCurvError, ValueError):
    pass


class NotOrthonormalBasis(SkewCurvError, ValueError):
    pass


class NotUnitVector(SkewCurvError, ValueError):
    pass


class PropertyNotSatisfied(SkewCurvError):
    """A theorem's curvature hypothesis does not hold for the given tensor."""

    def __init__(self, prop: str, residual: float, tolerance: float):
        super().__init__(
            f"curvature property {prop} not satisfied: residual {residual:.3e} > {tolerance:.1e}"
        )
        self.prop = prop
        self.residual = residual
        self.tolerance = tolerance


class ManifoldFileError(SkewCurvError, ValueError):
    """Manifold definition file failed schema validation."""
