"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A model, schedule, or experiment configuration is invalid."""


class CapacityError(ValidationError):
    """A structured generator was asked for more indices than one block exposes."""


class ConfigError(ValidationError):
    """A config file failed to parse or is missing required fields."""


class BudgetError(RuntimeError):
    """An experiment exceeds the configured sample budget."""

    def __init__(self, message: str, suggestion: str = ""):
        super().__init__(message)
        self.suggestion = suggestion
