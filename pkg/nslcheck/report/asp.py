"""Answer-set program export and optional answer-set counting.

Answer sets of the exported program correspond one-to-one with the valid
mappings the enumerator produces for the same problem and mode.
"""
from __future__ import annotations

import json
import logging
import re
import subprocess
from typing import Dict, List, Optional, Sequence

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
from nslcheck.core.errors import NslError, PreconditionError, UnsupportedExportError
from nslcheck.core.model import MappingMode, Problem


log = logging.getLogger(__name__)

_PLAIN_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def asp_term(name: str) -> str:
    if _PLAIN_ATOM.match(name):
        return name
    escaped = name.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _val_facts(concepts: Sequence[int]) -> str:
    ordered = sorted(concepts)
    if not ordered:
        return "% no concepts"
    if ordered == list(range(ordered[0], ordered[-1] + 1)):
        return f"val({ordered[0]}..{ordered[-1]})."
    return "val(" + ";".join(str(c) for c in ordered) + ")."


class _Encoder:
    def __init__(self, p: Problem) -> None:
        self.p = p
        self.max_concept = max(p.concepts, default=0)
        self.lines: List[str] = []
        self.needs_alt = False
        self._tables = 0
        self._clauses = 0

    @staticmethod
    def _vars(outputs: Sequence[str]) -> Dict[str, str]:
        names: Dict[str, str] = {}
        for name in outputs:
            names.setdefault(name, f"V{len(names)}")
        return names

    @staticmethod
    def _body(names: Dict[str, str]) -> str:
        return ", ".join(f"maps_to({asp_term(n)},{v})" for n, v in names.items())

    def emit(self, c: Constraint) -> None:
        if isinstance(c, WeightedSum):
            names = self._vars(c.outputs())
            coefs: Dict[str, int] = {}
            for name, coef in c.terms:
                coefs[name] = coefs.get(name, 0) + coef
            expr = "+".join(names[n] if k == 1 else f"({k})*{names[n]}" for n, k in coefs.items())
            self.lines.append(f":- {self._body(names)}, {expr} != {c.target}.")
        elif isinstance(c, ModSucc):
            names = self._vars([c.src, c.dst])
            a, b, m = names[c.src], names[c.dst], c.modulus
            # keep the dividend nonnegative
            offset = m * ((self.max_concept + m) // m)
            self.lines.append(f":- {self._body(names)}, ({b}+{offset}-{a}-1)\\{m} != 0.")
        elif isinstance(c, Pin):
            self.lines.append(f":- not maps_to({asp_term(c.output)},{c.concept}).")
        elif isinstance(c, Domain):
            self._domain(c.output, sorted(c.concepts))
        elif isinstance(c, PairDomain):
            for name in (c.output_a, c.output_b):
                self._domain(name, [c.concept_x, c.concept_y])
        elif isinstance(c, Table):
            self._tables += 1
            atom = f"table_{self._tables}"
            for row in sorted(c.allowed):
                self.lines.append(f"{atom}({','.join(str(v) for v in row)}).")
            names = self._vars(c.columns)
            args = ",".join(names[col] for col in c.columns)
            self.lines.append(f":- {self._body(names)}, not {atom}({args}).")
        elif isinstance(c, PinSet):
            for name, concept in c.assignments:
                self.lines.append(f":- not maps_to({asp_term(name)},{concept}).")
        elif isinstance(c, AltClause):
            self.needs_alt = True
            self._clauses += 1
            atom = f"sat_{self._clauses}"
            for name, concept in c.literals:
                self.lines.append(f"{atom} :- maps_to({asp_term(name)},{concept}).")
            self.lines.append(f":- alt, not {atom}.")
        else:  # pragma: no cover
            raise UnsupportedExportError(f"no ASP encoding for {c!r}")

    def _domain(self, name: str, allowed: Sequence[int]) -> None:
        tests = ", ".join(f"V != {v}" for v in allowed)
        self.lines.append(f":- maps_to({asp_term(name)},V), {tests}.")

    def alt_rules(self) -> List[str]:
        # alt holds exactly when the mapping differs from the intended one
        return [
            f"alt :- maps_to({asp_term(n)},V), V != {v}."
            for n, v in zip(self.p.outputs, self.p.intended.values)
        ]


def export_asp(p: Problem, mode: MappingMode, exclude_intended: bool) -> str:
    negative = sorted(c for c in p.concepts if c < 0)
    if negative:
        raise UnsupportedExportError(f"ASP export needs nonnegative concepts, got {negative}")
    p.check_mode(mode)
    encoder = _Encoder(p)
    for c in p.constraints:
        encoder.emit(c)

    lines = [f"% nslcheck export, {mode.label} mode", _val_facts(p.concepts)]
    lines.extend(f"neural({asp_term(n)})." for n in p.outputs)
    lines.append("concept(V) :- val(V).")
    lines.append("1 { maps_to(N,S) : concept(S) } 1 :- neural(N).")
    if mode is MappingMode.BIJECTION:
        lines.append("1 { maps_to(N,S) : neural(N) } 1 :- concept(S).")
    if encoder.needs_alt:
        lines.extend(encoder.alt_rules())
    lines.extend(encoder.lines)
    if exclude_intended:
        pins = ", ".join(f"maps_to({asp_term(n)},{v})" for n, v in zip(p.outputs, p.intended.values))
        lines.append(f":- {pins}." if pins else ":- #true.")
    lines.append("#show maps_to/2.")
    return "\n".join(lines) + "\n"


def clingo_module_available() -> bool:
    try:
        import clingo  # type: ignore[import]  # noqa: F401
    except ModuleNotFoundError:
        return False
    return True


def _count_with_module(program: str) -> int:
    import clingo  # type: ignore[import]

    ctl = clingo.Control(["0", "--warn=none"])
    ctl.add("base", [], program)
    ctl.ground([("base", [])])
    count = 0
    with ctl.solve(yield_=True) as handle:
        for _ in handle:
            count += 1
    return count


def _count_with_binary(program: str, solver: str, timeout: float) -> int:
    cmd = [solver, "0", "--outf=2", "--warn=none", "-"]
    log.debug("Running %s", " ".join(cmd))
    try:
        proc = subprocess.run(cmd, input=program, capture_output=True, text=True, timeout=timeout)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise NslError(f"could not run ASP solver {solver!r}: {exc}") from exc
    try:
        data = json.loads(proc.stdout)
        return int(data["Models"]["Number"])
    except (ValueError, KeyError, TypeError):
        detail = proc.stderr.strip().splitlines()[:1]
        raise NslError(f"unreadable output from {solver!r}: {detail[0] if detail else 'no output'}") from None


def count_answer_sets(program: str, solver: Optional[str] = None, timeout: float = 60.0) -> int:
    """Count answer sets with an external binary when ``solver`` is given,
    otherwise with the clingo Python module."""
    if solver:
        return _count_with_binary(program, solver, timeout)
    if clingo_module_available():
        return _count_with_module(program)
    raise PreconditionError("no ASP solver available (install clingo or set NSLCHECK_ASP_SOLVER)")
