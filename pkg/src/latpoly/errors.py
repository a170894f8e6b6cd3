"""Exception types shared across the package."""


class InvalidPolytope(ValueError):
    """Input fails a structural requirement (non-lattice, unbounded, empty,
    or lower-dimensional where full dimension is required)."""


class InvariantViolation(RuntimeError):
    """An internal consistency condition that should be unreachable failed."""


class TheoremViolation(InvariantViolation):
    """A classification guarantee failed on a concrete instance."""
