"""Exception types shared across the package."""


class FractalDiracError(Exception):
    """Base class for package-specific errors."""


class CapacityError(FractalDiracError, ValueError):
    """Requested object exceeds the dense-storage dimension cap."""


class DivergenceError(FractalDiracError, ValueError):
    """A trace series diverges at the requested exponent."""


class BudgetExceededError(FractalDiracError, RuntimeError):
    """A word enumeration would visit more cubes than the configured budget."""
