from .actions import Permutation, apply_transposition, compose_value_permutation
from .constraints import (
    AltClause,
    Constraint,
    Domain,
    ModSucc,
    Pin,
    PinSet,
    PairDomain,
    Table,
    WeightedSum,
    evaluate_constraint,
)
from .errors import (
    ArgumentError,
    ModeError,
    NslError,
    PreconditionError,
    ProblemSourceError,
    ResourceLimitError,
    StructuralError,
    UnsupportedExportError,
)
from .model import ConceptMapping, MappingMode, Problem, is_valid

__all__ = [
    "AltClause",
    "ArgumentError",
    "ConceptMapping",
    "Constraint",
    "Domain",
    "MappingMode",
    "ModSucc",
    "ModeError",
    "NslError",
    "PairDomain",
    "Permutation",
    "Pin",
    "PinSet",
    "PreconditionError",
    "ProblemSourceError",
    "Problem",
    "ResourceLimitError",
    "StructuralError",
    "Table",
    "UnsupportedExportError",
    "WeightedSum",
    "apply_transposition",
    "compose_value_permutation",
    "evaluate_constraint",
    "is_valid",
]
