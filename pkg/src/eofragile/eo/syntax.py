"""EO abstract syntax tree.

Nodes are frozen dataclasses. Spans are excluded from equality so that two
trees parsed from differently formatted sources compare equal when they
have the same structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

from ..errors import SourceSpan

DECORATEE = "@"


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Abstract:
    params: tuple[str, ...]
    bindings: tuple["EoBinding", ...]
    span: SourceSpan | None = _span()

    def binding(self, name):
        for b in self.bindings:
            if b.name == name:
                return b
        return None


@dataclass(frozen=True)
class Application:
    head: "EoExpr"
    args: tuple["EoExpr", ...]
    span: SourceSpan | None = _span()

    def __post_init__(self):
        if not self.args:
            raise ValueError("application needs at least one argument")


@dataclass(frozen=True)
class DotAccess:
    receiver: "EoExpr"
    attribute: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Ref:
    name: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Locator:
    ups: int
    span: SourceSpan | None = _span()

    def __post_init__(self):
        if self.ups < 1:
            raise ValueError("locator needs at least one '^'")


@dataclass(frozen=True)
class Opaque:
    text: str
    span: SourceSpan | None = _span()


EoExpr = Union[Abstract, Application, DotAccess, Ref, Locator, Opaque]


@dataclass(frozen=True)
class EoBinding:
    name: str
    value: EoExpr
    span: SourceSpan | None = _span()

    @property
    def is_decoratee(self):
        return self.name == DECORATEE


@dataclass(frozen=True)
class EoProgram:
    objects: tuple[EoBinding, ...]
    metas: tuple[str, ...] = ()
    file: str = field(default="<string>", compare=False)

    @property
    def package(self):
        """Value of a ``+package`` meta line, if any."""
        for meta in self.metas:
            key, _, rest = meta.partition(" ")
            if key == "+package" and rest.strip():
                return rest.strip()
        return None

    def binding(self, name):
        for b in self.objects:
            if b.name == name:
                return b
        return None


def children(expr):
    """Direct sub-expressions of ``expr`` (binding values for abstracts)."""
    if isinstance(expr, Abstract):
        return [b.value for b in expr.bindings]
    if isinstance(expr, Application):
        return [expr.head, *expr.args]
    if isinstance(expr, DotAccess):
        return [expr.receiver]
    return []


def dotted_path(expr):
    """Split ``a.b.c`` or ``^.^.b`` into (root, [attrs]); None if not a path."""
    attrs = []
    while isinstance(expr, DotAccess):
        attrs.append(expr.attribute)
        expr = expr.receiver
    if isinstance(expr, (Ref, Locator)):
        return expr, attrs[::-1]
    return None


# Paths address a node inside one program: the first step is the index of a
# top-level binding, then ("b", i) enters binding i of an abstract object,
# ("head",) / ("arg", i) enter an application and ("recv",) a dot access.

def node_at(program, path):
    expr = program.objects[path[0]].value
    for step in path[1:]:
        expr = _step(expr, step)
    return expr


def _step(expr, step):
    kind = step[0]
    if kind == "b":
        return expr.bindings[step[1]].value
    if kind == "head":
        return expr.head
    if kind == "arg":
        return expr.args[step[1]]
    if kind == "recv":
        return expr.receiver
    raise ValueError(f"bad path step {step!r}")


def replace_at(program, path, new):
    """Copy of ``program`` with the node at ``path`` replaced by ``new``."""
    top = program.objects[path[0]]
    value = _replace(top.value, path[1:], new)
    objects = list(program.objects)
    objects[path[0]] = replace(top, value=value)
    return replace(program, objects=tuple(objects))


def _replace(expr, steps, new):
    if not steps:
        return new
    step, rest = steps[0], steps[1:]
    kind = step[0]
    if kind == "b":
        bindings = list(expr.bindings)
        b = bindings[step[1]]
        bindings[step[1]] = replace(b, value=_replace(b.value, rest, new))
        return replace(expr, bindings=tuple(bindings))
    if kind == "head":
        return replace(expr, head=_replace(expr.head, rest, new))
    if kind == "arg":
        args = list(expr.args)
        args[step[1]] = _replace(args[step[1]], rest, new)
        return replace(expr, args=tuple(args))
    if kind == "recv":
        return replace(expr, receiver=_replace(expr.receiver, rest, new))
    raise ValueError(f"bad path step {step!r}")
