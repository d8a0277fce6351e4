"""Millimetre-wave KPI toolkit: coverage, capacity and mobility figures of merit."""

from mmkpi.errors import (
    ConfigError,
    ConfigFileMissingError,
    ConfigInvariantError,
    ConfigSchemaError,
    ConfigSyntaxError,
    DomainError,
)
from mmkpi.strand import Strand

__all__ = [
    "ConfigError",
    "ConfigFileMissingError",
    "ConfigInvariantError",
    "ConfigSchemaError",
    "ConfigSyntaxError",
    "DomainError",
    "Strand",
]

__version__ = "0.1.0"
