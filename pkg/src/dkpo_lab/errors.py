"""Exception hierarchy. The ``category`` attribute feeds the CLI error prefix."""


class DKPOError(Exception):
    category = "internal"


class DomainError(DKPOError, ValueError):
    """A formula was evaluated outside its domain (e.g. negative radicand)."""

    category = "domain"

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class DivergenceError(DomainError):
    """The partition function has a pole; carries the pole order in (1 - delta)."""

    category = "divergence"

    def __init__(self, message, pole_order=2, value=None):
        super().__init__(message, value=value)
        self.pole_order = pole_order


class InvalidCaseError(DomainError):
    category = "invalid-case"


class StructuralError(DKPOError, ValueError):
    category = "structure"


class NumericalError(DKPOError, ArithmeticError):
    """Quadrature, truncation or differentiation failed to reach tolerance."""

    category = "numerical"

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
