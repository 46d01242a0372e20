from __future__ import annotations


class NslError(Exception):
    """Base class for every error raised by nslcheck."""


class StructuralError(NslError):
    pass


class ArgumentError(NslError, ValueError):
    pass


class ModeError(NslError):
    pass


class PreconditionError(NslError):
    pass


class ResourceLimitError(NslError):
    pass


class UnsupportedExportError(NslError):
    pass


class InputFormatError(NslError):
    """Malformed DIMACS / set-cover input. ``line`` is 1-based, 0 when unknown."""

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class DimacsError(InputFormatError):
    pass


class SetCoverFormatError(InputFormatError):
    pass


class ProblemSourceError(NslError):
    """An .nsl source that produced diagnostics; carries them for reporting."""

    def __init__(self, source: str, diagnostics) -> None:
        self.source = source
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else "no problem could be built"
        more = f" (+{len(self.diagnostics) - 1} more)" if len(self.diagnostics) > 1 else ""
        super().__init__(f"{source}: {first}{more}")
