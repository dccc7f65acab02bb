"""Base exception for nodal-nesting.

Each subpackage defines its own errors next to the code that raises them;
they all derive from NodalNestingError so callers can catch them together.
"""


class NodalNestingError(Exception):
    """Base class for errors raised by nodal-nesting."""

    pass


class ConfigError(NodalNestingError):
    """Raised when an experiment configuration cannot be loaded."""

    pass
