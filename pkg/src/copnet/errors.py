"""Exception types shared across the pipeline."""


class CopnetError(Exception):
    """Base class for pipeline errors."""


class ConfigurationError(CopnetError, ValueError):
    """Invalid configuration value (unknown format tag, bad parameter)."""


class GraphError(CopnetError, ValueError):
    """Graph state on which the requested operation is undefined (e.g. zero total weight)."""


class VocabularyError(CopnetError, ValueError):
    """Vectorization produced an empty vocabulary."""


class NumericalError(CopnetError, ArithmeticError):
    """Non-finite values encountered during numerical optimization."""


class EventFileError(CopnetError, ValueError):
    """Malformed row in an event calendar file."""
