from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .constraints import Constraint
from .errors import ArgumentError, ModeError, StructuralError


class MappingMode(str, Enum):
    FUNCTION = "fn"
    BIJECTION = "bij"

    @property
    def label(self) -> str:
        return "function" if self is MappingMode.FUNCTION else "bijection"

    @classmethod
    def parse(cls, text: str) -> "MappingMode":
        key = text.strip().lower()
        aliases = {"fn": cls.FUNCTION, "function": cls.FUNCTION, "all": cls.FUNCTION,
                   "bij": cls.BIJECTION, "bijection": cls.BIJECTION}
        try:
            return aliases[key]
        except KeyError:
            raise ArgumentError(f"unknown mapping mode {text!r} (use fn or bij)") from None


@functools.total_ordering
@dataclass(frozen=True)
class ConceptMapping:
    """phi: N -> S as a value vector; ``values[i]`` is phi(outputs[i])."""

    outputs: Tuple[str, ...]
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.outputs) != len(self.values):
            raise StructuralError(
                f"mapping has {len(self.values)} values for {len(self.outputs)} outputs"
            )

    @classmethod
    def from_dict(cls, outputs: Sequence[str], assignment: Mapping[str, int]) -> "ConceptMapping":
        missing = [name for name in outputs if name not in assignment]
        if missing:
            raise StructuralError(f"mapping is not total: no value for {', '.join(missing)}")
        return cls(tuple(outputs), tuple(assignment[name] for name in outputs))

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ConceptMapping):
            return NotImplemented
        return self.values < other.values

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, output: str) -> int:
        try:
            return self.values[self.outputs.index(output)]
        except ValueError:
            raise StructuralError(f"unknown output {output!r}") from None

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.outputs, self.values))

    def with_values(self, values: Iterable[int]) -> "ConceptMapping":
        return ConceptMapping(self.outputs, tuple(values))

    def is_bijective(self, concepts: Sequence[int]) -> bool:
        return len(self.values) == len(concepts) and set(self.values) == set(concepts)

    def disagreement(self, other: "ConceptMapping") -> Tuple[str, ...]:
        """Outputs on which the two mappings differ, in output order."""
        return tuple(n for n, a, b in zip(self.outputs, self.values, other.values) if a != b)


@dataclass(frozen=True)
class Problem:
    """The tuple (N, S, C, phi*, D); D only travels as opaque ``metadata``."""

    outputs: Tuple[str, ...]
    concepts: Tuple[int, ...]
    constraints: Tuple[Constraint, ...]
    intended: ConceptMapping
    metadata: Tuple[Tuple[str, str], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "concepts", tuple(int(c) for c in self.concepts))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "metadata", tuple((str(k), str(v)) for k, v in self.metadata))
        self._check()

    def _check(self) -> None:
        if len(set(self.outputs)) != len(self.outputs):
            raise StructuralError("duplicate output identifier")
        if len(set(self.concepts)) != len(self.concepts):
            raise StructuralError("duplicate concept label")
        if self.intended.outputs != self.outputs:
            raise StructuralError("intended mapping does not range over the problem outputs")
        known = set(self.concepts)
        stray = [v for v in self.intended.values if v not in known]
        if stray:
            raise StructuralError(f"intended mapping uses unknown concept(s) {stray}")
        names = set(self.outputs)
        for c in self.constraints:
            unknown = [n for n in c.outputs() if n not in names]
            if unknown:
                raise StructuralError(f"{c.kind} constraint references unknown output(s): {', '.join(unknown)}")
            # sum targets, coefficients and moduli are integers, not concepts
            outside = sorted({v for v in c.concept_values() if v not in known})
            if outside:
                raise StructuralError(f"{c.kind} constraint uses undeclared concept(s) {outside}")
        for key, value in self.metadata:
            if not key.isidentifier() or "\n" in value or value != value.strip():
                raise StructuralError(f"metadata entry {key!r} is not a single-line key/value")

    @property
    def size(self) -> int:
        return len(self.outputs)

    def index_of(self, output: str) -> int:
        try:
            return self.outputs.index(output)
        except ValueError:
            raise StructuralError(f"unknown output {output!r}") from None

    def mapping(self, values: Iterable[int]) -> ConceptMapping:
        return ConceptMapping(self.outputs, tuple(values))

    def with_constraints(self, extra: Iterable[Constraint]) -> "Problem":
        return Problem(
            self.outputs,
            self.concepts,
            self.constraints + tuple(extra),
            self.intended,
            self.metadata,
        )

    def check_mode(self, mode: MappingMode) -> None:
        if mode is MappingMode.BIJECTION and len(self.outputs) != len(self.concepts):
            raise ModeError(
                f"bijection mode needs |N| = |S| (got {len(self.outputs)} outputs, "
                f"{len(self.concepts)} concepts)"
            )


def is_valid(p: Problem, phi: ConceptMapping, mode: MappingMode) -> bool:
    if phi.outputs != p.outputs:
        raise StructuralError("mapping does not range over the problem outputs")
    known = set(p.concepts)
    if any(v not in known for v in phi.values):
        return False
    if mode is MappingMode.BIJECTION and not phi.is_bijective(p.concepts):
        return False
    # Problem construction already checked that every referenced output exists.
    values = phi.as_dict()
    at_intended = phi.values == p.intended.values
    return all(c.holds(values, at_intended) for c in p.constraints)
