"""Exception types shared across the package."""


class LaplaceLpError(Exception):
    """Base class for all library errors."""


class NumericalFailure(LaplaceLpError):
    """A computation could not deliver a trustworthy number."""


class NonConvergence(NumericalFailure):
    """The evaluation budget ran out before the tolerance was met."""


class Divergent(NumericalFailure):
    """The requested integral or norm is infinite."""


class InvalidInterval(LaplaceLpError, ValueError):
    pass


class DomainError(LaplaceLpError, ValueError):
    pass


class InsufficientData(LaplaceLpError, ValueError):
    pass
