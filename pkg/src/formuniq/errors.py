"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed graph or profile text input."""


class StructuralError(ValueError):
    """The object violates a structural requirement of the requested
    operation (disconnected root, undetermined boundary sphere, zero
    layer-boundary weight, and similar)."""


class PreconditionError(ValueError):
    """The mathematical hypotheses of the requested verdict are not met
    (e.g. a killing term where none is allowed, or a non-chain profile
    handed to a chain-only criterion)."""
