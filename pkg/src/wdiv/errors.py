"""Exception types shared across the package."""


class WdivError(Exception):
    """Base class for all package errors."""


class NonCoprimeError(WdivError, ValueError):
    """gcd(h, k) > 1: the modular inverse of h mod k does not exist."""


class CapExceededError(WdivError, ValueError):
    """Requested sieve bound exceeds the configured memory cap."""


class OutOfRangeError(WdivError, ValueError):
    """Evaluation point lies outside the sieved range."""


class PoleAt1Error(WdivError, ArithmeticError):
    """Evaluation too close to the pole at s = 1."""


class NonpositiveIntegerPoleError(WdivError, ArithmeticError):
    """Digamma evaluated at a nonpositive integer."""


class GammaPoleError(WdivError, ArithmeticError):
    """Gamma factor has a pole at the requested point."""


class BesselDomainError(WdivError, ValueError):
    """Bessel argument outside the supported domain (x must be > 0)."""


class ConvergenceTooSlowError(WdivError, ValueError):
    """Dirichlet-series evaluation requested left of its convergence margin."""


class CutoffTooSmallError(WdivError, ValueError):
    """Series cutoff too small for the requested tolerance."""


class NumericFailure(WdivError):
    """A tolerance check failed in a recipe or check command."""
