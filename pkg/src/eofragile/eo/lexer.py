from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from ..errors import LexError, OddIndentation, SourceSpan, TabIndentation

INDENT_STEP = 2


class Kind(enum.Enum):
    LBRACK = "["
    RBRACK = "]"
    LPAREN = "("
    RPAREN = ")"
    ARROW = ">"
    DOT = "."
    CARET = "^"
    AT = "@"
    ID = "identifier"
    OPAQUE = "literal"
    META = "meta"
    NL = "newline"
    INDENT = "indent"
    DEDENT = "dedent"


@dataclass(frozen=True)
class Token:
    kind: Kind
    text: str
    span: SourceSpan

    def __repr__(self):
        if self.kind in (Kind.ID, Kind.OPAQUE, Kind.META):
            return f"{self.kind.name}({self.text})"
        return self.kind.name


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ ]+)
  | (?P<comment>\#.*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<number>-?\d+(?:\.\d+)?(?![\w-]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_-]*)
  | (?P<punct>[\[\]()>.^@])
    """,
    re.VERBOSE,
)

_PUNCT = {k.value: k for k in (Kind.LBRACK, Kind.RBRACK, Kind.LPAREN, Kind.RPAREN,
                               Kind.ARROW, Kind.DOT, Kind.CARET, Kind.AT)}


def tokenize(source: str, file: str = "<string>") -> list[Token]:
    """Split EO source into tokens, turning 2-space indentation into INDENT/DEDENT."""
    source = source.replace("\r\n", "\n")
    tokens: list[Token] = []
    depth = 0
    last_line = 1
    for lineno, line in enumerate(source.split("\n"), start=1):
        stripped = line.lstrip(" \t")
        if not stripped.strip() or stripped.startswith("#"):
            continue
        lead = line[: len(line) - len(stripped)]
        if "\t" in lead:
            raise TabIndentation("tab in indentation", SourceSpan(file, lineno, lead.index("\t") + 1))
        if len(lead) % INDENT_STEP:
            raise OddIndentation(
                f"indentation of {len(lead)} spaces is not a multiple of {INDENT_STEP}",
                SourceSpan(file, lineno, 1),
            )
        level = len(lead) // INDENT_STEP
        at = SourceSpan(file, lineno, len(lead) + 1)
        if level > depth + 1:
            raise OddIndentation("indentation grows by more than one level", at)
        if level == depth + 1:
            tokens.append(Token(Kind.INDENT, "", at))
        while level < depth:
            tokens.append(Token(Kind.DEDENT, "", at))
            depth -= 1
        depth = level
        last_line = lineno
        if stripped.startswith("+"):
            tokens.append(Token(Kind.META, stripped.rstrip(), at))
        else:
            tokens.extend(_line_tokens(stripped.rstrip(), file, lineno, len(lead) + 1))
        tokens.append(Token(Kind.NL, "", SourceSpan(file, lineno, len(line.rstrip()) + 1)))
    end = SourceSpan(file, last_line + 1 if tokens else 1, 1)
    tokens.extend(Token(Kind.DEDENT, "", end) for _ in range(depth))
    return tokens


def _line_tokens(text, file, lineno, col0):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", SourceSpan(file, lineno, col0 + pos))
        span = SourceSpan(file, lineno, col0 + pos)
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind == "string" or kind == "number":
            out.append(Token(Kind.OPAQUE, m.group(), span))
        elif kind == "ident":
            out.append(Token(Kind.ID, m.group(), span))
        elif kind == "punct":
            out.append(Token(_PUNCT[m.group()], m.group(), span))
        pos = m.end()
    return out
