from .parser import DiagnosticKind, ParseResult, SourceDiagnostic, load_problem, parse_problem
from .serializer import format_constraint, serialize_problem

__all__ = [
    "DiagnosticKind",
    "ParseResult",
    "SourceDiagnostic",
    "format_constraint",
    "load_problem",
    "parse_problem",
    "serialize_problem",
]
