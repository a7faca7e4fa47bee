"""Exception hierarchy shared by every module of the engine."""


class OpenGamesError(Exception):
    pass


class DomainError(OpenGamesError, ValueError):
    """A value lies outside the space it was supposed to live in."""


class ConstructionError(OpenGamesError, ValueError):
    """Raw data could not be turned into a distribution."""


class ConditioningError(DomainError):
    """Conditioning on an observation of probability zero."""


class WiringError(OpenGamesError, TypeError):
    """Spaces or interfaces do not line up."""


class ProfileShapeError(WiringError):
    """A strategy profile does not mirror the shape of its game tree."""


class BudgetExceeded(OpenGamesError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"{count} candidate profiles exceed the budget of {budget}")
        self.count = count
        self.budget = budget


class ValidationError(OpenGamesError, ValueError):
    """Malformed input file; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvariantViolation(OpenGamesError):
    """Two independent engines disagreed."""
