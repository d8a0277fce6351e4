"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a model function."""


class ConfigError(Exception):
    """Base class for configuration problems (CLI exit code 2)."""


class ConfigFileMissingError(ConfigError):
    pass


class ConfigSyntaxError(ConfigError):
    pass


class ConfigSchemaError(ConfigError):
    pass


class ConfigInvariantError(ConfigError):
    """A value passed the schema but violates a model invariant."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
