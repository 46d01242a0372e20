from __future__ import annotations

from typing import Iterable, List, Tuple

from nslcheck.core.constraints import (
    AltClause,
    Constraint,
    Domain,
    ModSucc,
    PairDomain,
    Pin,
    PinSet,
    Table,
    WeightedSum,
)
from nslcheck.core.errors import StructuralError
from nslcheck.core.model import Problem


def _assignments(pairs: Iterable[Tuple[str, int]]) -> str:
    return " ".join(f"{name}={value}" for name, value in pairs)


def _term(name: str, coef: int) -> str:
    return name if coef == 1 else f"{coef}*{name}"


def format_constraint(c: Constraint) -> str:
    """One ``constraint ...`` line, without the trailing newline."""
    if isinstance(c, WeightedSum):
        body = " + ".join(_term(name, coef) for name, coef in c.terms)
        return f"constraint sum {body} = {c.target}"
    if isinstance(c, ModSucc):
        return f"constraint modsucc {c.src} {c.dst} mod {c.modulus}"
    if isinstance(c, Pin):
        return f"constraint pin {c.output} = {c.concept}"
    if isinstance(c, Domain):
        values = ", ".join(str(v) for v in sorted(c.concepts))
        return f"constraint domain {c.output} {{ {values} }}"
    if isinstance(c, PairDomain):
        return f"constraint pairdomain {c.output_a} {c.output_b} {{ {c.concept_x}, {c.concept_y} }}"
    if isinstance(c, Table):
        rows = ", ".join("( " + " ".join(str(v) for v in row) + " )" for row in sorted(c.allowed))
        return f"constraint table ( {' '.join(c.columns)} ) {{ {rows} }}"
    if isinstance(c, PinSet):
        inner = _assignments(c.assignments)
        return f"constraint pinset {{ {inner} }}" if inner else "constraint pinset { }"
    if isinstance(c, AltClause):
        return f"constraint altclause {{ {_assignments(c.literals)} }}"
    raise StructuralError(f"unsupported constraint {c!r}")


def serialize_problem(p: Problem) -> str:
    lines: List[str] = [
        " ".join(["outputs", *p.outputs]),
        " ".join(["concepts", *(str(c) for c in p.concepts)]),
        " ".join(["intended", *(f"{n}={v}" for n, v in zip(p.outputs, p.intended.values))]),
    ]
    for key, value in p.metadata:
        lines.append(f"meta {key} {value}" if value else f"meta {key}")
    lines.extend(format_constraint(c) for c in p.constraints)
    return "\n".join(lines) + "\n"
