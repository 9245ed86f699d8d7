"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}")

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


class EoFragileError(Exception):
    """Base class; ``span`` is set whenever a source location is known."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


# -- lexing ----------------------------------------------------------------

class LexError(EoFragileError):
    pass


class TabIndentation(LexError):
    pass


class OddIndentation(LexError):
    pass


# -- parsing ---------------------------------------------------------------

class ParseError(EoFragileError):
    def __init__(self, message, span=None, expected=()):
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(message, span)


class DuplicateDecoratee(ParseError):
    pass


class DuplicateBinding(ParseError):
    pass


# -- object model ----------------------------------------------------------

class ResolutionError(EoFragileError):
    pass


class UnresolvedDecoratee(ResolutionError):
    def __init__(self, name: str, span: SourceSpan | None = None):
        self.name = name
        super().__init__(f"cannot resolve decoratee {name!r}", span)


class DecorationCycle(ResolutionError):
    def __init__(self, fqns):
        self.fqns = list(fqns)
        super().__init__("decoration cycle: " + " -> ".join(self.fqns))


class MethodNotFound(EoFragileError):
    def __init__(self, object_fqn: str, method_name: str):
        self.object_fqn = object_fqn
        self.method_name = method_name
        super().__init__(f"object {object_fqn!r} has no method {method_name!r}")


# -- mini-OO frontend ------------------------------------------------------

class MiniParseError(ParseError):
    pass


class UnknownSuperclass(MiniParseError):
    def __init__(self, name: str, span: SourceSpan | None = None):
        self.name = name
        super().__init__(f"unknown superclass {name!r}", span)


# -- benchmark -------------------------------------------------------------

class MalformedTest(EoFragileError):
    def __init__(self, path, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"{path}: {reason}")
