"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PerturbationBreakdownError(ArithmeticError):
    """Second-order results no longer describe a valid state."""


class TruncationError(ValueError):
    """A Fock-space cutoff is too small for the requested accuracy."""


class ResourceError(MemoryError):
    """A dense oracle matrix would exceed the configured dimension cap."""


class LandauerViolation(AssertionError):
    """Raised when heat and entropy change violate the Landauer bound."""
