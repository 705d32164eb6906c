"""
Error hierarchy for the abelian structure toolkit.
Every error carries the process exit code the CLI maps it to.
"""


class AbstError(Exception):
    """Base error for all pipeline failures."""
    exit_code = 3


class InputParseError(AbstError):
    """Input file could not be parsed into a presentation or module spec."""
    exit_code = 2


class StructuralError(AbstError):
    """Vectors or matrices of incompatible shapes."""
    pass


class ReductionCapError(AbstError):
    """Binomial reduction exceeded its step cap."""
    pass


class GroebnerCapError(AbstError):
    """Buchberger's algorithm exceeded its step cap."""
    pass


class OrderCapError(AbstError):
    """No p-power below the cap kills the generator."""
    pass


class StaircaseCapError(AbstError):
    """Standard monomial enumeration exceeded its cap."""
    pass


class NonFiniteGroupError(AbstError):
    """The presentation has a free part or is not a p-group."""
    pass


class ShapeViolationError(AbstError):
    """A Groebner basis does not have the p-basis shape."""
    pass


class ShapeSearchError(AbstError):
    """No variable ordering produced the p-basis shape."""
    pass


class RingIdentityError(AbstError):
    """The ring identity p = p1 + p2^(p-1) sigma(p2) could not be realized."""
    pass


class SpecError(AbstError):
    """A module spec violates its structural constraints."""
    pass


class StabilizationError(AbstError):
    """The sentinel-length loop did not stabilize."""
    pass


class ConnectorError(AbstError):
    """A connector element vanished where it must be a nonzero socle element."""
    pass
