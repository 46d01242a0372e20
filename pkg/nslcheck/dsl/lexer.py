"""Line-oriented tokenizer for the .nsl problem format."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Tuple


TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[=+*{}(),])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "punct" | "bad" | "eol"
    text: str
    line: int
    column: int

    @property
    def value(self) -> int:
        return int(self.text)

    def __str__(self) -> str:
        return "end of line" if self.kind == "eol" else repr(self.text)


def source_lines(text: str) -> Iterator[Tuple[int, str]]:
    """(1-based line number, line) pairs; LF and CRLF both accepted."""
    if text.startswith("\ufeff"):
        text = text[1:]
    for number, raw in enumerate(text.split("\n"), start=1):
        yield number, raw[:-1] if raw.endswith("\r") else raw


def strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def tokenize(line: str, number: int) -> List[Token]:
    tokens: List[Token] = []
    for m in TOKEN_RE.finditer(line):
        kind = m.lastgroup or "bad"
        if kind == "ws":
            continue
        tokens.append(Token(kind, m.group(), number, m.start() + 1))
    tokens.append(Token("eol", "", number, len(line) + 1))
    return tokens


def is_identifier(text: str) -> bool:
    return bool(IDENT_RE.match(text))
