"""Constraint kinds over concept mappings.

The set of kinds is closed: every constraint the toolkit reasons about is one
of the eight dataclasses below, and ``Constraint`` is their union.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, ClassVar, FrozenSet, Iterable, Mapping, Tuple, Union

from .errors import StructuralError

if TYPE_CHECKING:  # pragma: no cover
    from .model import ConceptMapping


Assignment = Tuple[str, int]


def _tuple_of_pairs(items: Iterable) -> Tuple[Assignment, ...]:
    return tuple((str(name), int(value)) for name, value in items)


def _freeze(obj, name: str, value) -> None:
    object.__setattr__(obj, name, value)


@dataclass(frozen=True)
class WeightedSum:
    """sum(coefficient * phi(output)) == target. Outputs may repeat."""

    terms: Tuple[Assignment, ...]
    target: int
    kind: ClassVar[str] = "sum"

    def __post_init__(self) -> None:
        _freeze(self, "terms", _tuple_of_pairs(self.terms))
        _freeze(self, "target", int(self.target))
        if not self.terms:
            raise StructuralError("weighted sum needs at least one term")

    def outputs(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.terms)

    def concept_values(self) -> Tuple[int, ...]:
        return ()

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        return sum(coef * values[name] for name, coef in self.terms) == self.target


@dataclass(frozen=True)
class ModSucc:
    """phi(dst) == phi(src) + 1 (mod modulus)."""

    src: str
    dst: str
    modulus: int
    kind: ClassVar[str] = "modsucc"

    def __post_init__(self) -> None:
        _freeze(self, "modulus", int(self.modulus))
        if self.modulus < 2:
            raise StructuralError(f"modulus must be >= 2, got {self.modulus}")

    def outputs(self) -> Tuple[str, ...]:
        return (self.src, self.dst)

    def concept_values(self) -> Tuple[int, ...]:
        return ()

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        return (values[self.dst] - values[self.src] - 1) % self.modulus == 0


@dataclass(frozen=True)
class Pin:
    output: str
    concept: int
    kind: ClassVar[str] = "pin"

    def __post_init__(self) -> None:
        _freeze(self, "concept", int(self.concept))

    def outputs(self) -> Tuple[str, ...]:
        return (self.output,)

    def concept_values(self) -> Tuple[int, ...]:
        return (self.concept,)

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        return values[self.output] == self.concept


@dataclass(frozen=True)
class Domain:
    output: str
    concepts: FrozenSet[int]
    kind: ClassVar[str] = "domain"

    def __post_init__(self) -> None:
        _freeze(self, "concepts", frozenset(int(c) for c in self.concepts))
        if not self.concepts:
            raise StructuralError(f"empty domain for {self.output}")

    def outputs(self) -> Tuple[str, ...]:
        return (self.output,)

    def concept_values(self) -> Tuple[int, ...]:
        return tuple(sorted(self.concepts))

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        return values[self.output] in self.concepts


@dataclass(frozen=True)
class PairDomain:
    """Both outputs take values in {concept_x, concept_y}."""

    output_a: str
    output_b: str
    concept_x: int
    concept_y: int
    kind: ClassVar[str] = "pairdomain"

    def __post_init__(self) -> None:
        _freeze(self, "concept_x", int(self.concept_x))
        _freeze(self, "concept_y", int(self.concept_y))
        if self.concept_x == self.concept_y:
            raise StructuralError("pair domain needs two distinct concepts")

    @property
    def concepts(self) -> FrozenSet[int]:
        return frozenset((self.concept_x, self.concept_y))

    def outputs(self) -> Tuple[str, ...]:
        return (self.output_a, self.output_b)

    def concept_values(self) -> Tuple[int, ...]:
        return (self.concept_x, self.concept_y)

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        allowed = self.concepts
        return values[self.output_a] in allowed and values[self.output_b] in allowed


@dataclass(frozen=True)
class Table:
    columns: Tuple[str, ...]
    allowed: FrozenSet[Tuple[int, ...]]
    kind: ClassVar[str] = "table"

    def __post_init__(self) -> None:
        _freeze(self, "columns", tuple(str(c) for c in self.columns))
        _freeze(self, "allowed", frozenset(tuple(int(v) for v in row) for row in self.allowed))
        if not self.columns:
            raise StructuralError("table needs at least one output")
        if not self.allowed:
            raise StructuralError("table needs at least one allowed tuple")
        for row in self.allowed:
            if len(row) != len(self.columns):
                raise StructuralError(
                    f"table row {row} has arity {len(row)}, expected {len(self.columns)}"
                )

    def outputs(self) -> Tuple[str, ...]:
        return self.columns

    def concept_values(self) -> Tuple[int, ...]:
        return tuple(sorted({v for row in self.allowed for v in row}))

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        return tuple(values[c] for c in self.columns) in self.allowed


@dataclass(frozen=True)
class PinSet:
    """Conjunction of pins; the unit of a repair library."""

    assignments: Tuple[Assignment, ...]
    kind: ClassVar[str] = "pinset"

    def __post_init__(self) -> None:
        _freeze(self, "assignments", _tuple_of_pairs(self.assignments))

    def outputs(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.assignments)

    def concept_values(self) -> Tuple[int, ...]:
        return tuple(concept for _, concept in self.assignments)

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        return all(values[name] == concept for name, concept in self.assignments)


@dataclass(frozen=True)
class AltClause:
    """Holds at the intended mapping, elsewhere iff some literal holds."""

    literals: Tuple[Assignment, ...]
    kind: ClassVar[str] = "altclause"

    def __post_init__(self) -> None:
        _freeze(self, "literals", _tuple_of_pairs(self.literals))
        if not self.literals:
            raise StructuralError("alt clause needs at least one literal")

    def outputs(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.literals)

    def concept_values(self) -> Tuple[int, ...]:
        return tuple(concept for _, concept in self.literals)

    def holds(self, values: Mapping[str, int], at_intended: bool) -> bool:
        if at_intended:
            return True
        return any(values[name] == concept for name, concept in self.literals)


Constraint = Union[WeightedSum, ModSucc, Pin, Domain, PairDomain, Table, PinSet, AltClause]

CONSTRAINT_KINDS: Tuple[type, ...] = (
    WeightedSum,
    ModSucc,
    Pin,
    Domain,
    PairDomain,
    Table,
    PinSet,
    AltClause,
)


def evaluate_constraint(c: Constraint, phi: "ConceptMapping", intended: "ConceptMapping") -> bool:
    if phi.outputs != intended.outputs:
        raise StructuralError("mapping and intended mapping range over different outputs")
    values = phi.as_dict()
    missing = [name for name in c.outputs() if name not in values]
    if missing:
        raise StructuralError(f"{c.kind} constraint references unknown output(s): {', '.join(missing)}")
    return c.holds(values, phi.values == intended.values)
