"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class InfeasibleError(ValueError):
    """The requested computation is refused because it is too large."""


class TermsCapExceeded(InfeasibleError):
    """Convergence to the requested tolerance needs more series terms than allowed."""

    def __init__(self, required: int, cap: int, epsilon: float):
        self.required = required
        self.cap = cap
        self.epsilon = epsilon
        super().__init__(
            f"error bound < {epsilon:g} requires n = {required} series terms, "
            f"which exceeds the cap of {cap}"
        )


class UndefinedQuantity(DomainError):
    """The requested expectation does not exist for these inputs."""
