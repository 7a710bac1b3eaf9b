class GemFormatError(ValueError):
    """Malformed GEM v1 document; ``lineno`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        if lineno:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DiagramFormatError(ValueError):
    """Malformed HDG v1 document or inconsistent diagram data."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        if lineno:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration hit its configured cap."""
