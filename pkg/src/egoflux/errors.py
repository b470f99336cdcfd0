"""Exception types shared across the pipeline and the service layer."""


class EgofluxError(Exception):
    """Base class for all egoflux errors."""


class InvalidArgument(EgofluxError):
    """A caller-supplied value violates an operation's preconditions."""


class NotFound(EgofluxError):
    """A referenced paper, author, or collection does not exist."""


class DataError(EgofluxError):
    """Input data is malformed or inconsistent (carries file/line context)."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class ConvergenceError(EgofluxError):
    """The influence solver did not reach tolerance within max_iterations."""

    def __init__(self, residual: float, iterations: int, tolerance: float):
        self.residual = residual
        self.iterations = iterations
        self.tolerance = tolerance
        super().__init__(
            f"no convergence after {iterations} iterations: "
            f"residual {residual:.3e} > tolerance {tolerance:.3e}"
        )


class ConflictError(EgofluxError):
    """Optimistic-concurrency version check failed on a collection edit."""

    def __init__(self, message: str, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(message)


class EmptyCollectionError(InvalidArgument):
    """A visualization was requested for a collection with no papers."""
