"""Exception types shared across the package."""


class TropcurveError(Exception):
    """Base class for all package errors."""


class InvalidInputError(TropcurveError):
    """Malformed or inconsistent user input (bad graph file, bad divisor spec, ...)."""


class UnsupportedError(TropcurveError):
    """A precondition of the requested operation is not met (e.g. genus < 2)."""


class OracleInfeasibleError(TropcurveError):
    """The subdivision oracle would exceed its node budget."""


class InternalInvariantError(TropcurveError):
    """An internal consistency check failed; indicates a bug, not bad input."""
