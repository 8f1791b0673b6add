"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the operation."""


class RangeError(ValueError):
    """Argument outside the supported numerical range."""


class SectorError(ValueError):
    """Point lies outside the analyticity sector required by the integral."""


class PoleError(ValueError):
    """Evaluation requested at (or too close to) a pole."""


class PathError(ValueError):
    """A surface path segment crosses a cut illegally."""


class ContourError(RuntimeError):
    """A contour integrand failed its boundedness / validity check."""


class ConvergenceError(RuntimeError):
    """An adaptive quadrature or series failed to stabilize."""


class PrecisionError(RuntimeError):
    """Requested quantity is below the achievable accuracy floor."""


class NearSingularError(RuntimeError):
    """Linear system too ill-conditioned to trust."""


class GridError(RuntimeError):
    """A finite-difference grid point could not be evaluated."""


class UsageError(ValueError):
    """Bad command-line or configuration input."""


class SingularityWarning(UserWarning):
    """Determinant pivot dangerously small; value may be unreliable."""


class TruncationWarning(UserWarning):
    """Series truncation tail exceeds the requested tolerance."""
