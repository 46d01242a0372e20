"""Parser for the .nsl problem format.

Parsing is total: malformed lines become diagnostics (at most one per line)
and the remaining lines are still read. Declarations may appear in any order;
references are resolved once the whole file has been read.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

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
from nslcheck.core.errors import ProblemSourceError, StructuralError
from nslcheck.core.model import ConceptMapping, Problem

from .lexer import Token, is_identifier, source_lines, strip_comment, tokenize


log = logging.getLogger(__name__)

META_RE = re.compile(r"^[ \t]*meta(?=[ \t]|$)")


class DiagnosticKind(str, Enum):
    SYNTAX = "syntax"
    UNDEFINED_OUTPUT = "undefined-output"
    DUPLICATE_DECLARATION = "duplicate-declaration"
    ARITY_MISMATCH = "arity-mismatch"
    OUT_OF_DOMAIN_VALUE = "out-of-domain-value"


@dataclass(frozen=True)
class SourceDiagnostic:
    line: int
    column: int
    message: str
    kind: DiagnosticKind

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind.value}: {self.message}"


@dataclass(frozen=True)
class ParseResult:
    """``problem`` is built whenever a total intended mapping is available,
    even if some lines were rejected; ``ok`` means no diagnostics at all."""

    problem: Optional[Problem]
    diagnostics: Tuple[SourceDiagnostic, ...]

    @property
    def ok(self) -> bool:
        return self.problem is not None and not self.diagnostics


class _Syntax(Exception):
    def __init__(self, token: Token, message: str, kind: DiagnosticKind = DiagnosticKind.SYNTAX) -> None:
        super().__init__(message)
        self.token = token
        self.message = message
        self.kind = kind


class _LineParser:
    def __init__(self, tokens: List[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    @property
    def nt(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind == "bad":
            raise _Syntax(tok, f"unexpected character {tok.text!r}")
        if tok.kind != "eol":
            self.pos += 1
        return tok

    def peek(self, kind: str) -> bool:
        return self.nt.kind == kind

    def peek_punct(self, text: str) -> bool:
        return self.nt.kind == "punct" and self.nt.text == text

    def match(self, kind: str, what: str) -> Token:
        if not self.peek(kind):
            if self.nt.kind == "bad":
                raise _Syntax(self.nt, f"unexpected character {self.nt.text!r}")
            raise _Syntax(self.nt, f"expected {what}, found {self.nt}")
        return self.advance()

    def match_punct(self, text: str) -> Token:
        if not self.peek_punct(text):
            raise _Syntax(self.nt, f"expected {text!r}, found {self.nt}")
        return self.advance()

    def match_kw(self, word: str) -> Token:
        if not (self.peek("ident") and self.nt.text == word):
            raise _Syntax(self.nt, f"expected keyword {word!r}, found {self.nt}")
        return self.advance()

    def match_eol(self) -> None:
        if not self.peek("eol"):
            raise _Syntax(self.nt, f"unexpected {self.nt} after statement")

    def assignment(self) -> Tuple[Token, Token]:
        name = self.match("ident", "output identifier")
        self.match_punct("=")
        return name, self.match("int", "concept value")

    def int_set(self) -> Tuple[Token, List[Token]]:
        opening = self.match_punct("{")
        values = [self.match("int", "concept value")]
        while self.peek_punct(","):
            self.advance()
            values.append(self.match("int", "concept value"))
        self.match_punct("}")
        return opening, values


@dataclass
class _PendingConstraint:
    constraint: Constraint
    outputs: List[Token]
    values: List[Token]


@dataclass
class _ProblemBuilder:
    outputs: List[str] = field(default_factory=list)
    concepts: List[int] = field(default_factory=list)
    intended: Dict[str, Tuple[Token, Token]] = field(default_factory=dict)
    intended_token: Optional[Token] = None
    metadata: List[Tuple[str, str]] = field(default_factory=list)
    pending: List[_PendingConstraint] = field(default_factory=list)
    diagnostics: List[SourceDiagnostic] = field(default_factory=list)
    _reported: Set[int] = field(default_factory=set)

    def report(self, line: int, column: int, message: str, kind: DiagnosticKind) -> None:
        if line in self._reported:
            return
        self._reported.add(line)
        self.diagnostics.append(SourceDiagnostic(line, column, message, kind))

    def report_at(self, token: Token, message: str, kind: DiagnosticKind) -> None:
        self.report(token.line, token.column, message, kind)

    def report_file(self, message: str, kind: DiagnosticKind) -> None:
        # file-level findings sit at 1:1 next to whatever line 1 reported
        self.diagnostics.append(SourceDiagnostic(1, 1, message, kind))

    # first pass -----------------------------------------------------------

    def read(self, text: str) -> None:
        for number, raw in source_lines(text):
            m = META_RE.match(raw)
            if m:
                self._meta(raw, number, m.end())
                continue
            tokens = tokenize(strip_comment(raw), number)
            if tokens[0].kind == "eol":
                continue
            try:
                self._statement(_LineParser(tokens))
            except _Syntax as exc:
                self.report_at(exc.token, exc.message, exc.kind)

    def _meta(self, raw: str, number: int, start: int) -> None:
        rest = raw[start:]
        parts = rest.strip().split(None, 1)
        if not parts:
            self.report(number, start + 1, "meta needs a key", DiagnosticKind.SYNTAX)
            return
        key = parts[0]
        column = raw.index(key, start) + 1
        value = parts[1].strip() if len(parts) > 1 else ""
        if not is_identifier(key):
            self.report(number, column, f"meta key {key!r} is not an identifier", DiagnosticKind.SYNTAX)
        elif any(k == key for k, _ in self.metadata):
            self.report(number, column, f"meta key {key!r} declared twice", DiagnosticKind.DUPLICATE_DECLARATION)
        else:
            self.metadata.append((key, value))

    def _statement(self, lp: _LineParser) -> None:
        head = lp.match("ident", "statement keyword")
        if head.text == "outputs":
            self._outputs(lp)
        elif head.text == "concepts":
            self._concepts(lp)
        elif head.text == "intended":
            self._intended(lp, head)
        elif head.text == "constraint":
            self.pending.append(self._constraint(lp))
        else:
            raise _Syntax(head, f"unknown statement {head.text!r}")

    def _outputs(self, lp: _LineParser) -> None:
        names: List[Token] = []
        while lp.peek("ident"):
            names.append(lp.advance())
        lp.match_eol()
        for tok in names:
            if tok.text in self.outputs:
                self.report_at(tok, f"output {tok.text!r} declared twice", DiagnosticKind.DUPLICATE_DECLARATION)
            else:
                self.outputs.append(tok.text)

    def _concepts(self, lp: _LineParser) -> None:
        values: List[Token] = []
        while lp.peek("int"):
            values.append(lp.advance())
        lp.match_eol()
        for tok in values:
            if tok.value in self.concepts:
                self.report_at(tok, f"concept {tok.value} declared twice", DiagnosticKind.DUPLICATE_DECLARATION)
            else:
                self.concepts.append(tok.value)

    def _intended(self, lp: _LineParser, head: Token) -> None:
        entries: List[Tuple[Token, Token]] = []
        while lp.peek("ident"):
            entries.append(lp.assignment())
        lp.match_eol()
        if self.intended_token is None:
            self.intended_token = head
        for name, value in entries:
            if name.text in self.intended:
                self.report_at(
                    name,
                    f"intended value for {name.text!r} given twice",
                    DiagnosticKind.DUPLICATE_DECLARATION,
                )
            else:
                self.intended[name.text] = (name, value)

    def _constraint(self, lp: _LineParser) -> _PendingConstraint:
        kind = lp.match("ident", "constraint kind")
        handler = getattr(self, f"_c_{kind.text}", None)
        if handler is None:
            raise _Syntax(kind, f"unknown constraint kind {kind.text!r}")
        pending = handler(lp, kind)
        lp.match_eol()
        return pending

    def _c_sum(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        terms: List[Tuple[Token, int]] = [self._term(lp)]
        while lp.peek_punct("+"):
            lp.advance()
            terms.append(self._term(lp))
        lp.match_punct("=")
        target = lp.match("int", "target value")
        return _PendingConstraint(
            WeightedSum(tuple((tok.text, coef) for tok, coef in terms), target.value),
            [tok for tok, _ in terms],
            [],
        )

    @staticmethod
    def _term(lp: _LineParser) -> Tuple[Token, int]:
        coef = 1
        if lp.peek("int"):
            coef = lp.advance().value
            lp.match_punct("*")
        return lp.match("ident", "output identifier"), coef

    def _c_modsucc(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        src = lp.match("ident", "output identifier")
        dst = lp.match("ident", "output identifier")
        lp.match_kw("mod")
        modulus = lp.match("int", "modulus")
        if modulus.value < 2:
            raise _Syntax(modulus, f"modulus must be at least 2, got {modulus.value}")
        return _PendingConstraint(ModSucc(src.text, dst.text, modulus.value), [src, dst], [])

    def _c_pin(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        name, value = lp.assignment()
        return _PendingConstraint(Pin(name.text, value.value), [name], [value])

    def _c_domain(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        name = lp.match("ident", "output identifier")
        _, values = lp.int_set()
        return _PendingConstraint(Domain(name.text, frozenset(v.value for v in values)), [name], values)

    def _c_pairdomain(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        a = lp.match("ident", "output identifier")
        b = lp.match("ident", "output identifier")
        opening, values = lp.int_set()
        if len(values) != 2 or values[0].value == values[1].value:
            raise _Syntax(opening, "pairdomain needs exactly two distinct concepts", DiagnosticKind.ARITY_MISMATCH)
        return _PendingConstraint(PairDomain(a.text, b.text, values[0].value, values[1].value), [a, b], values)

    def _c_table(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        lp.match_punct("(")
        columns = [lp.match("ident", "output identifier")]
        while lp.peek("ident"):
            columns.append(lp.advance())
        lp.match_punct(")")
        lp.match_punct("{")
        rows: List[Tuple[int, ...]] = []
        seen: List[Token] = []
        while True:
            opening = lp.match_punct("(")
            row = [lp.match("int", "concept value")]
            while lp.peek("int"):
                row.append(lp.advance())
            lp.match_punct(")")
            if len(row) != len(columns):
                raise _Syntax(
                    opening,
                    f"table row has {len(row)} values for {len(columns)} outputs",
                    DiagnosticKind.ARITY_MISMATCH,
                )
            rows.append(tuple(tok.value for tok in row))
            seen.extend(row)
            if not lp.peek_punct(","):
                break
            lp.advance()
        lp.match_punct("}")
        return _PendingConstraint(Table(tuple(c.text for c in columns), frozenset(rows)), columns, seen)

    def _assignment_block(self, lp: _LineParser) -> List[Tuple[Token, Token]]:
        lp.match_punct("{")
        entries: List[Tuple[Token, Token]] = []
        while lp.peek("ident"):
            entries.append(lp.assignment())
        lp.match_punct("}")
        return entries

    def _c_pinset(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        entries = self._assignment_block(lp)
        return _PendingConstraint(
            PinSet(tuple((n.text, v.value) for n, v in entries)),
            [n for n, _ in entries],
            [v for _, v in entries],
        )

    def _c_altclause(self, lp: _LineParser, kind: Token) -> _PendingConstraint:
        entries = self._assignment_block(lp)
        if not entries:
            raise _Syntax(kind, "altclause needs at least one literal")
        return _PendingConstraint(
            AltClause(tuple((n.text, v.value) for n, v in entries)),
            [n for n, _ in entries],
            [v for _, v in entries],
        )

    # second pass ----------------------------------------------------------

    def resolve(self) -> Optional[Problem]:
        declared = set(self.outputs)
        known = set(self.concepts)
        values: Dict[str, int] = {}
        for name, (name_tok, value_tok) in self.intended.items():
            if name not in declared:
                self.report_at(name_tok, f"undeclared output {name!r}", DiagnosticKind.UNDEFINED_OUTPUT)
            elif value_tok.value not in known:
                self.report_at(value_tok, f"concept {value_tok.value} is not declared", DiagnosticKind.OUT_OF_DOMAIN_VALUE)
            else:
                values[name] = value_tok.value

        if self.intended_token is None:
            self.report_file("missing 'intended' declaration", DiagnosticKind.SYNTAX)
        else:
            missing = [name for name in self.outputs if name not in self.intended]
            if missing:
                self.report_at(
                    self.intended_token,
                    f"intended mapping has no value for {', '.join(missing)}",
                    DiagnosticKind.UNDEFINED_OUTPUT,
                )

        constraints: List[Constraint] = []
        for pending in self.pending:
            stray = next((tok for tok in pending.outputs if tok.text not in declared), None)
            if stray is not None:
                self.report_at(stray, f"undeclared output {stray.text!r}", DiagnosticKind.UNDEFINED_OUTPUT)
                continue
            outside = next((tok for tok in pending.values if tok.value not in known), None)
            if outside is not None:
                self.report_at(outside, f"concept {outside.value} is not declared", DiagnosticKind.OUT_OF_DOMAIN_VALUE)
                continue
            constraints.append(pending.constraint)

        if self.intended_token is None or any(name not in values for name in self.outputs):
            return None
        try:
            return Problem(
                tuple(self.outputs),
                tuple(self.concepts),
                tuple(constraints),
                ConceptMapping(tuple(self.outputs), tuple(values[n] for n in self.outputs)),
                tuple(self.metadata),
            )
        except StructuralError as exc:  # pragma: no cover
            self.report(1, 1, str(exc), DiagnosticKind.SYNTAX)
            return None


def parse_problem(text: str) -> ParseResult:
    builder = _ProblemBuilder()
    builder.read(text)
    problem = builder.resolve()
    diagnostics = tuple(sorted(builder.diagnostics, key=lambda d: (d.line, d.column)))
    if diagnostics:
        log.debug("Parsed with %d diagnostic(s)", len(diagnostics))
    return ParseResult(problem, diagnostics)


def load_problem(path: Path) -> Problem:
    """Read and parse an .nsl file, raising when it is not clean."""
    text = Path(path).read_text(encoding="utf-8")
    result = parse_problem(text)
    if not result.ok:
        raise ProblemSourceError(str(path), result.diagnostics)
    return result.problem  # type: ignore[return-value]
