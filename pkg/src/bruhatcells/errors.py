"""Exception types raised across the package."""


class InvalidRankError(ValueError):
    pass


class NotReducedError(ValueError):
    """Raised for a non-reduced word; ``position`` is the 1-based failing index."""

    def __init__(self, indices, position):
        self.indices = tuple(indices)
        self.position = position
        super().__init__(
            f"word {list(self.indices)} is not reduced: alpha_{position} is not a new positive root"
        )


class IwasawaError(ValueError):
    pass


class DivergenceError(ValueError):
    """Raised when an improper integral does not converge; ``index`` is 1-based when known."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class SeriesError(RuntimeError):
    pass
