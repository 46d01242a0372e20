from __future__ import annotations

import logging
from typing import List, Optional

from nslcheck.core.errors import ArgumentError, DimacsError

from .cnf import CnfFormula


log = logging.getLogger(__name__)


def parse_dimacs(text: str) -> CnfFormula:
    """Read the DIMACS CNF subset: ``c`` comments, one ``p cnf V C`` header,
    clauses as signed integers terminated by 0 (a clause may span lines)."""
    num_vars: Optional[int] = None
    declared = 0
    clauses: List[List[int]] = []
    current: List[int] = []
    current_line = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        words = raw.split()
        if not words or words[0] == "c":
            continue
        if words[0] == "%":
            break
        if words[0] == "p":
            if num_vars is not None:
                raise DimacsError("second problem line", number)
            if len(words) != 4 or words[1] != "cnf":
                raise DimacsError("expected 'p cnf <vars> <clauses>'", number)
            try:
                num_vars, declared = int(words[2]), int(words[3])
            except ValueError:
                raise DimacsError("header counts must be integers", number) from None
            continue
        if num_vars is None:
            raise DimacsError("clause before the 'p cnf' header", number)
        for word in words:
            try:
                lit = int(word)
            except ValueError:
                raise DimacsError(f"not a literal: {word!r}", number) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", number)
                clauses.append(current)
                current = []
                continue
            if abs(lit) > num_vars:
                raise DimacsError(f"literal {lit} outside 1..{num_vars}", number)
            if not current:
                current_line = number
            current.append(lit)
    if current:
        raise DimacsError("clause not terminated by 0", current_line)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if declared != len(clauses):
        log.warning("Header declares %d clauses, file contains %d", declared, len(clauses))
    try:
        return CnfFormula.from_ints(num_vars, clauses)
    except ArgumentError as exc:
        raise DimacsError(str(exc)) from None


def format_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in formula.as_ints())
    return "\n".join(lines) + "\n"
