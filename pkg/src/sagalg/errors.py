"""Exception types shared by all modules."""


class SagError(Exception):
    """Base class for library errors."""


class ParseError(SagError, ValueError):
    """Malformed input: quiver files, walks, polynomials, complexes."""


class ValidationError(SagError, ValueError):
    """Well-formed input that violates a mathematical precondition."""


class UnsupportedAlgebraError(SagError):
    """The requested operation needs an algebra class this one is not in."""


class AmbiguityError(UnsupportedAlgebraError):
    """A choice that is unique in the supported classes turned out not to be."""


class SolverBoundError(SagError):
    """A linear system or search exceeded the configured size bound."""
