"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: configuration problems exit 2,
numerical failures exit 3, violated operation preconditions exit 4.
"""


class ConfigurationError(ValueError):
    """Invalid configuration file, field value, or solver setting."""


class PreconditionError(ValueError):
    """An operation was called outside its admissible regime."""


class NumericalError(RuntimeError):
    """A numerical procedure failed: instability, non-convergence, or an
    internal consistency check that must never trip for valid inputs."""
