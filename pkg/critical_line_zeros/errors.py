"""Exception hierarchy for the numerical modules and the command line."""
import click


class CriticalLineError(Exception):
    """Base class for every error raised by the library."""


# ---- kernel errors

class PoleError(CriticalLineError):
    """Evaluation requested at a pole."""


class BudgetExceededError(CriticalLineError):
    """Series or quadrature would need more terms than allowed."""


class NonPrimitiveCharacterError(CriticalLineError):
    """Completed L-function or root number requested for an imprimitive character."""


class ModulusOutOfRangeError(CriticalLineError):
    """Character modulus outside 1 ≤ N ≤ 10⁶."""


class InvalidParameterError(CriticalLineError, ValueError):
    """A parameter lies outside its documented domain."""


class SpecFileError(InvalidParameterError):
    """Malformed family spec file."""


# ---- family bookkeeping

class InconsistentInventoryError(CriticalLineError):
    """A declared zero or pole failed its small-circle winding check."""


class IncompleteInventoryError(CriticalLineError):
    """The inventory needed for the B_a bound is not available."""


class NearZeroDenominatorError(CriticalLineError):
    """|h(s)| is below the noise floor where a ratio was requested."""

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class UnsupportedVariantError(CriticalLineError):
    """The family variant has no asymptotic envelope."""


# ---- tracing and contour errors

class LineZeroEncounteredError(CriticalLineError):
    """h vanishes (numerically) on the traced part of the critical line."""

    def __init__(self, message: str, tau: float):
        super().__init__(message)
        self.tau = tau


class BoundaryTooCloseError(CriticalLineError):
    """A zero or pole sits too close to a contour to trust the winding number."""

    def __init__(self, message: str, point: complex):
        super().__init__(message)
        self.point = point


class PerturbationFailedError(CriticalLineError):
    """No usable contour height was found after the allowed perturbations."""


class EnvelopeUnavailableError(CriticalLineError):
    """No σ₀ with a certified |F| < ½ could be chosen."""


class PoleInIntervalError(CriticalLineError):
    """A real-axis scan interval contains a pole in its interior."""


class MaxDepthExceededError(CriticalLineError):
    """Quadrisection could not isolate zeros within the depth cap."""

    def __init__(self, message: str, box: tuple[float, float, float, float]):
        super().__init__(message)
        self.box = box


class RadiusSelectionError(CriticalLineError):
    """No admissible radius for a multiplicity circle."""


class BracketInvalidError(CriticalLineError):
    """A root bracket does not enclose a sign change."""


class RootFindingError(CriticalLineError):
    """Polynomial root computation failed."""


class FunctionalEquationViolatedError(CriticalLineError):
    """h does not satisfy h̄(2a−s) = e^{iθ} h(s) at the sampled points."""


class BoundCheckFailed(CriticalLineError):
    """A count fell outside the window a family check asserts."""


# ---- command line

class BoundViolation(click.ClickException):
    """An explicit bound failed; reported with exit code 3."""

    exit_code = 3

    def show(self, file=None) -> None:
        click.secho(f"Bound violated: {self.format_message()}", fg="red", err=True, file=file)
