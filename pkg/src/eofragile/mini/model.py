"""Syntax tree of the mini object-oriented language."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..errors import SourceSpan


def _span():
    return field(default=None, compare=False, repr=False)


# -- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class BoolLit:
    value: bool
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Name:
    """A bare identifier: a parameter, or a field when no parameter matches."""
    ident: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class FieldRef:
    field: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Call:
    """Call on ``this``; the only receiver the language has."""
    method: str
    args: tuple["Expr", ...]
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    span: SourceSpan | None = _span()


Expr = Union[IntLit, BoolLit, Name, FieldRef, Call, Binary, Unary]


# -- statements --------------------------------------------------------------

@dataclass(frozen=True)
class FieldAssign:
    field: str
    value: Expr
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class MethodCall:
    call: Call
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Return:
    value: Expr | None
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class If:
    condition: Expr
    then: tuple["Statement", ...]
    orelse: tuple["Statement", ...]
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class While:
    condition: Expr
    body: tuple["Statement", ...]
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class SuperCall:
    args: tuple[Expr, ...]
    span: SourceSpan | None = _span()


Statement = Union[FieldAssign, MethodCall, Return, If, While, SuperCall]


# -- declarations ------------------------------------------------------------

@dataclass(frozen=True)
class FieldDecl:
    name: str
    init: Expr | None
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Constructor:
    params: tuple[str, ...]
    body: tuple[Statement, ...]
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class MethodDecl:
    name: str
    params: tuple[str, ...]
    body: tuple[Statement, ...]
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class ClassModel:
    name: str
    superclass: str | None  # dotted; None means classObject
    fields: tuple[FieldDecl, ...] = ()
    constructor: Constructor | None = None
    methods: tuple[MethodDecl, ...] = ()
    nested: tuple["ClassModel", ...] = ()
    span: SourceSpan | None = _span()

    def method(self, name):
        for m in self.methods:
            if m.name == name:
                return m
        return None


def calls_in(node):
    """Method names called anywhere inside a statement, expression or body."""
    if isinstance(node, (tuple, list)):
        for item in node:
            yield from calls_in(item)
    elif isinstance(node, Call):
        yield node.method
        yield from calls_in(node.args)
    elif isinstance(node, MethodCall):
        yield from calls_in(node.call)
    elif isinstance(node, Binary):
        yield from calls_in(node.left)
        yield from calls_in(node.right)
    elif isinstance(node, Unary):
        yield from calls_in(node.operand)
    elif isinstance(node, (FieldAssign, Return)):
        yield from calls_in(node.value)
    elif isinstance(node, If):
        yield from calls_in(node.condition)
        yield from calls_in(node.then)
        yield from calls_in(node.orelse)
    elif isinstance(node, While):
        yield from calls_in(node.condition)
        yield from calls_in(node.body)
    elif isinstance(node, SuperCall):
        yield from calls_in(node.args)
