"""Exception types shared across the package."""


class ConeCurveError(Exception):
    """Base class for all package errors."""


class NonSpacelikeError(ConeCurveError):
    """Curve tangent is not spacelike where a spacelike tangent is required."""


class NotOnConstraintError(ConeCurveError):
    """Reduced state does not lie on any of the admissible constraint sets."""


class ZeroStateError(ConeCurveError):
    """Reduced state is the zero vector, which is excluded from every class."""


class CurvatureSingularError(ConeCurveError):
    """Inverse-flow right-hand side hit the curvature-zero barrier c + a*tau = 0."""

    def __init__(self, message: str, s: float | None = None):
        super().__init__(message)
        self.s = s


class NoFixedPointsError(ConeCurveError):
    """The reduced system has no fixed points for the given parameters."""


class InvalidConfigError(ConeCurveError):
    """Integrator or run configuration violates its invariants."""


class RhsFailureError(ConeCurveError):
    """Right-hand side raised during integration; carries the failure location."""

    def __init__(self, message: str, s: float, cause: Exception | None = None):
        super().__init__(f"{message} (at s={s!r})")
        self.s = s
        self.cause = cause


class ApexSingularError(ConeCurveError):
    """Polar radius reached the cone apex (rho -> 0)."""


class NoFrameFoundError(ConeCurveError):
    """No polar initial frame matches the requested reduced state."""

    def __init__(self, message: str, best_residual: float | None = None):
        super().__init__(message)
        self.best_residual = best_residual


class ReconstructionMismatchError(ConeCurveError):
    """Reconstructed curve disagrees with the reduced trajectory beyond tolerance."""


class OutOfDomainError(ConeCurveError):
    """Argument outside the domain of a closed-form expression or flow."""


class PoleAtRootError(ConeCurveError):
    """Evaluation requested at (or too close to) the real root of r^(3/2) + D."""


class DegenerateAlphaError(ConeCurveError):
    """Soliton projection alpha vanished (tau zero crossing); curve must be split."""


class CurvatureZeroError(ConeCurveError):
    """Duality map requested on a component whose curvature vanishes."""


class InvalidSpecError(ConeCurveError):
    """Conic specification inconsistent (kind does not match sign of curvature)."""
