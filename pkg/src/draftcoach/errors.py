"""Exception types shared across the engine.

Every error carries a stable machine-readable ``code`` so the service layer
can map it onto structured error bodies without string matching.
"""


class DraftcoachError(Exception):
    code = "internal"

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.message = message
        self.field = field


class EmptyInput(DraftcoachError):
    code = "empty_input"


class DegenerateCorpus(DraftcoachError):
    code = "degenerate_corpus"


class FormatError(DraftcoachError):
    """Malformed data file; ``line`` is 1-based when known."""

    code = "format_error"

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, field=field)
        self.line = line


class UnknownRelation(DraftcoachError):
    code = "unknown_relation"


class InvalidK(DraftcoachError):
    code = "invalid_k"


class NotFound(DraftcoachError):
    code = "not_found"


class AnalysisUnavailable(DraftcoachError):
    code = "analysis_unavailable"
