class ChordsError(Exception):
    """Base class for library errors."""


class RepresentationError(ChordsError, ValueError):
    """Body data does not describe a bounded convex body."""


class DomainError(ChordsError, ValueError):
    pass


class DegeneracyError(ChordsError, ValueError):
    pass


class UnsupportedInputError(ChordsError, ValueError):
    pass


class PreconditionError(ChordsError, ValueError):
    pass


class ClosureError(ChordsError, ValueError):
    """Measure fails the closure condition of the Minkowski problem."""


class SolverBoxError(ChordsError, RuntimeError):
    def __init__(self, msg, state=None):
        super().__init__(msg)
        self.state = state


class ConfigError(ChordsError, ValueError):
    pass
