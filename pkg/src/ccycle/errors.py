"""Exception hierarchy shared by all computation modules."""


class CCycleError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(CCycleError, ValueError):
    """Malformed or out-of-range arguments."""


class IntegralityViolation(CCycleError, ArithmeticError):
    """A quantity that must be an integer came out fractional.

    Usually means a factor list is incomplete (a Galois orbit of ramified
    exponential factors was only partially supplied).
    """


class GenericityError(CCycleError):
    """Rational stand-ins for symbolic parameters hit a degenerate locus."""


class WitnessFailure(CCycleError, AssertionError):
    """An internal certificate check failed. Indicates an arithmetic bug."""


# Errors the CLI maps to exit code 3.
DOMAIN_ERRORS = (IntegralityViolation, GenericityError, WitnessFailure, InvalidInput)
