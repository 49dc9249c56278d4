"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the supported mathematical domain."""


class ConvergenceError(RuntimeError):
    """A numerical procedure failed to reach its accuracy target."""


class ConfigError(ValueError):
    """Malformed run configuration; `field` names the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"config field '{field}': {message}")
