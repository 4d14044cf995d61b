"""Exception types. The CLI maps each class to its own exit code."""


class GraphFramesError(Exception):
    exit_code = 1


class CheckFailed(GraphFramesError):
    """A verification predicate came out false where it was required to hold."""

    exit_code = 1


class InputError(GraphFramesError, ValueError):
    """Malformed or out-of-contract input."""

    exit_code = 2


class ConsistencyError(GraphFramesError, RuntimeError):
    """Numerics disagree with an exactly known fact (e.g. rank from connectivity)."""

    exit_code = 3


class ConvergenceError(ConsistencyError):
    pass
