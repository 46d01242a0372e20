"""CNF counting reduction: shortcuts of the encoded problem are in one-to-one
correspondence with satisfying assignments of the formula."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from nslcheck.config.settings import default_cap, guard_limit
from nslcheck.core.constraints import AltClause, Constraint, PairDomain
from nslcheck.core.errors import ArgumentError, ResourceLimitError
from nslcheck.core.model import ConceptMapping, MappingMode, Problem
from nslcheck.solver.enumerator import verify


log = logging.getLogger(__name__)

Literal = Tuple[int, bool]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "clauses",
            tuple(tuple((int(v), bool(pol)) for v, pol in clause) for clause in self.clauses),
        )
        if self.num_vars < 1:
            raise ArgumentError(f"a formula needs at least one variable, got {self.num_vars}")
        for clause in self.clauses:
            if not clause:
                raise ArgumentError("empty clause")
            for var, _ in clause:
                if not 1 <= var <= self.num_vars:
                    raise ArgumentError(f"variable {var} outside 1..{self.num_vars}")

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Sequence[int]]) -> "CnfFormula":
        """DIMACS-style signed literals: ``[[1, -2], [2]]``."""
        parsed = []
        for clause in clauses:
            if any(lit == 0 for lit in clause):
                raise ArgumentError("literal 0 is not a variable")
            parsed.append(tuple((abs(lit), lit > 0) for lit in clause))
        return cls(num_vars, tuple(parsed))

    def as_ints(self) -> List[List[int]]:
        return [[v if pol else -v for v, pol in clause] for clause in self.clauses]


def brute_force_sharp_sat(formula: CnfFormula, max_vars: int | None = None) -> int:
    """Count satisfying assignments by evaluating all 2^m of them at once."""
    limit = max_vars if max_vars is not None else guard_limit("sharp_sat_max_vars")
    m = formula.num_vars
    if m > limit:
        raise ResourceLimitError(f"#SAT oracle limited to {limit} variables, formula has {m}")
    # bit v-1 of the row index is the value of variable v
    index = np.arange(2**m, dtype=np.int64)
    satisfied = np.ones(2**m, dtype=bool)
    for clause in formula.clauses:
        hit = np.zeros(2**m, dtype=bool)
        for var, polarity in clause:
            hit |= ((index >> (var - 1)) & 1).astype(bool) == polarity
        satisfied &= hit
    return int(satisfied.sum())


def _names(v: int) -> Tuple[str, str]:
    return f"n{v}", f"nb{v}"


def cnf_to_nsl(formula: CnfFormula) -> Problem:
    """Pairs (n_v, nb_v) hold {T_v, F_v} = {2i, 2i+1}; the extra variable y
    comes last and the clause set is extended with the unit clause (not y).
    The intended mapping is the all-true assignment, kept valid by the
    alt-clause guard."""
    m = formula.num_vars
    outputs: List[str] = []
    concepts: List[int] = []
    intended: List[int] = []
    constraints: List[Constraint] = []
    labels = [str(v) for v in range(1, m + 1)] + ["y"]
    for i, label in enumerate(labels):
        pos, neg = f"n{label}", f"nb{label}"
        outputs += [pos, neg]
        concepts += [2 * i, 2 * i + 1]
        intended += [2 * i, 2 * i + 1]
        constraints.append(PairDomain(pos, neg, 2 * i, 2 * i + 1))
    for clause in formula.clauses:
        literals = []
        for var, polarity in clause:
            pos, neg = _names(var)
            literals.append((pos if polarity else neg, 2 * (var - 1)))
        constraints.append(AltClause(tuple(literals)))
    constraints.append(AltClause((("nby", 2 * m),)))
    return Problem(
        tuple(outputs),
        tuple(concepts),
        tuple(constraints),
        ConceptMapping(tuple(outputs), tuple(intended)),
        (("reduction", f"cnf vars={m} clauses={len(formula.clauses)}"),),
    )


@dataclass(frozen=True)
class CnfReductionCheck:
    sharp_sat: int
    multiplicity: int
    exact: bool

    @property
    def holds(self) -> bool:
        return self.exact and self.sharp_sat == self.multiplicity


def check_cnf_reduction(formula: CnfFormula, cap: int | None = None) -> CnfReductionCheck:
    count = brute_force_sharp_sat(formula)
    result = verify(cnf_to_nsl(formula), MappingMode.BIJECTION, cap or default_cap())
    check = CnfReductionCheck(count, result.multiplicity, result.exact)
    log.info("CNF reduction: #SAT = %d, shortcut multiplicity = %s%d",
             count, "" if result.exact else ">= ", result.multiplicity)
    return check
