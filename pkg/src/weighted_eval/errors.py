"""Exception hierarchy shared by all modules."""


class EvaluationError(ValueError):
    """Base class for every error raised by this package."""


class ConfigurationError(EvaluationError):
    pass


class UnsupportedSchemeError(EvaluationError):
    pass


class DegenerateDistributionError(EvaluationError):
    pass


class DegenerateVarianceError(EvaluationError):
    pass


class InconsistentInputError(EvaluationError):
    pass


class ParseError(EvaluationError):
    """Malformed input file; carries the offending 1-based line number."""

    def __init__(self, path, lineno, message):
        self.path = str(path)
        self.lineno = lineno
        location = f"{self.path}:{lineno}" if lineno is not None else self.path
        super().__init__(f"{location}: {message}")
