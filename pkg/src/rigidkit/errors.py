"""Exception taxonomy shared by every rigidkit module.

The CLI maps these onto process exit codes: ParameterError (and subclasses)
means the request itself was invalid (exit 2); GenerationError and
NumericError mean a computation was attempted and failed (exit 3).
"""


class RigidkitError(Exception):
    """Base class for all rigidkit errors."""


class ParameterError(RigidkitError):
    """Arguments violate a documented precondition."""


class ScaleError(ParameterError):
    """Input is valid but beyond a documented size cap for this operation."""


class DecodeError(ParameterError):
    """A sketch bit string or file does not decode to a valid graph."""


class GenerationError(RigidkitError):
    """A randomized construction exhausted its attempt budget."""


class NumericError(RigidkitError):
    """A numeric routine failed to converge or violated a tolerance."""


class NoFiniteEpsilonError(NumericError):
    """No finite approximation factor exists for the given pair."""
