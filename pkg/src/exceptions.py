"""
Error hierarchy for the crossing-depth toolkit

Every error raised on purpose by the library derives from DepthError, so callers
can catch one type. The CLI maps each family to an exit code.
"""

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_VERIFICATION_FAILED = 3
EXIT_UNSUPPORTED = 4


class DepthError(ValueError):
    """Base class for all library errors"""

    exit_code = EXIT_INPUT_ERROR


class InstanceError(DepthError):
    """Malformed input: bad rational, wrong arity, unknown or missing field"""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class DimensionMismatchError(InstanceError):
    """Vectors or flats of different ambient dimension were combined"""


class DegenerateInputError(InstanceError):
    """Zero vectors, coincident defining points or dependent bases"""


class UnsupportedFlatError(DepthError):
    """Flat dimension outside what the solvers handle"""

    exit_code = EXIT_UNSUPPORTED


class ConfigurationError(DepthError):
    """Invalid configuration value"""


class VerificationError(DepthError):
    """A reported witness does not reproduce the reported counts"""

    exit_code = EXIT_VERIFICATION_FAILED
