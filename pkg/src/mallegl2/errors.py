"""Exception types shared across the package.

Everything derived from :class:`MalleError` is a *domain* error: the input was
well-formed but mathematically unacceptable (singular curve, non-subgroup, ...).
The CLI maps these to exit status 1.
"""


class MalleError(Exception):
    pass


class NotPrimeError(MalleError, ValueError):
    pass


class ModulusMismatchError(MalleError, ValueError):
    pass


class NotInvertibleError(MalleError, ValueError):
    pass


class ClosureError(MalleError, ValueError):
    """Element list handed in as a subgroup is not closed."""


class FaithfulnessError(MalleError, ValueError):
    """Action has a nontrivial kernel."""


class SingularCurveError(MalleError, ValueError):
    pass


class BadReductionError(MalleError, ValueError):
    pass


class UnsupportedPrimeError(MalleError, ValueError):
    pass


class DomainError(MalleError, ValueError):
    pass


class InsufficientDataError(MalleError, ValueError):
    pass
