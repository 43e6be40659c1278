"""Exception hierarchy shared by every module."""


class RigidityError(Exception):
    """Base class for all package errors."""


class GraphError(RigidityError, ValueError):
    """Invalid graph, vertex set or partition."""


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(RigidityError, ValueError):
    """An operation was called outside its domain (e.g. a non-regular graph)."""


class SizeGuardError(RigidityError):
    """Refused because the exponential or O(n^5) work would be too large."""


class ConvergenceError(RigidityError, ArithmeticError):
    """The eigensolver did not converge or failed its residual check."""


class MalformedCoverError(RigidityError, ValueError):
    def __init__(self, message, edge=None):
        self.edge = edge
        super().__init__(message)


class NotRegularError(PreconditionError):
    pass


class DisconnectedError(PreconditionError):
    pass
