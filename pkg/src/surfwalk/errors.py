"""Exception types shared across the package."""


class InvalidGenus(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


class InsufficientRadius(ValueError):
    pass


class ResourceLimitExceeded(RuntimeError):
    pass


class ConsistencyError(RuntimeError):
    """A numeric or algebraic identity that must hold did not."""


class CertificationFailure(RuntimeError):
    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class ConvergenceError(RuntimeError):
    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last
