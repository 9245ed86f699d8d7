"""Object trees built from EO programs.

Two passes:

* :func:`build_partial_tree` mirrors the nesting of abstract objects. Every
  node records its fully-qualified name, the *spelling* of its decoratee and
  the methods it defines together with the names they call on their receiver.
* :func:`resolve` links decoratees to nodes and computes, for every node, the
  extended set of methods visible through the decoration chain, each tagged
  with the object where it was last redefined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .eo.printer import inline
from .eo.syntax import (DECORATEE, Abstract, Application, DotAccess, EoProgram,
                        Locator, Opaque, Ref, children, dotted_path)
from .errors import DecorationCycle, SourceSpan, UnresolvedDecoratee

RECEIVER_NAMES = ("self", "this")


@dataclass(frozen=True)
class CallSite:
    """``r.f ...`` where ``r`` is the enclosing method's receiver parameter."""

    method_name: str
    receiver_is_self: bool = True
    self_passed_first: bool = True
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class StaticCall:
    """``^.f ...`` where the locator points at the object defining the method."""

    method_name: str
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class MethodInfo:
    name: str
    params: tuple[str, ...]
    calls: tuple[CallSite, ...]
    defining_fqn: str
    span: SourceSpan | None = field(default=None, compare=False)
    static_calls: tuple[StaticCall, ...] = ()
    # where the method's abstract object lives: (program index, AST path)
    program_index: int = field(default=0, compare=False)
    path: tuple = field(default=(), compare=False)

    @property
    def receiver(self):
        return self.params[0]

    def call_names(self):
        return [c.method_name for c in self.calls]


@dataclass(eq=False)
class ObjectNode:
    fqn: str
    name: str
    parent: "ObjectNode | None" = field(default=None, repr=False)
    package: str = ""
    params: tuple[str, ...] = ()
    decoratee_expr: object = field(default=None, repr=False)
    decoratee: "ObjectNode | None" = field(default=None, repr=False)
    own_methods: dict[str, MethodInfo] = field(default_factory=dict)
    extended_methods: dict[str, tuple[str, MethodInfo]] = field(default_factory=dict)
    attributes: dict = field(default_factory=dict, repr=False)
    children: list["ObjectNode"] = field(default_factory=list, repr=False)
    span: SourceSpan | None = None
    program_index: int = 0
    path: tuple = ()
    resolved: bool = False
    programs: list[EoProgram] = field(default_factory=list, repr=False)

    @property
    def decoratee_name(self):
        expr = self.decoratee_expr
        if expr is None:
            return None
        if isinstance(expr, Abstract):
            return "[...]"
        return inline(expr)

    def child(self, name):
        for c in self.children:
            if c.name == name:
                return c
        return None

    def walk(self) -> Iterator["ObjectNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def find(self, fqn):
        for node in self.walk():
            if node.fqn == fqn:
                return node
        return None

    def chain(self):
        """The node followed by its decoratees, nearest first (resolved trees only)."""
        node, seen = self, []
        while node is not None:
            if node in seen:
                raise DecorationCycle([n.fqn for n in seen] + [node.fqn])
            seen.append(node)
            node = node.decoratee
        return seen

    @property
    def root(self):
        node = self
        while node.parent is not None:
            node = node.parent
        return node


def qualify(prefix, name):
    return f"{prefix}.{name}" if prefix else name


def is_method(value):
    return isinstance(value, Abstract) and bool(value.params) and value.params[0] in RECEIVER_NAMES


# -- pass 1: partial tree ----------------------------------------------------

def build_partial_tree(program: EoProgram, package: str | None = None) -> ObjectNode:
    if package is None:
        package = program.package or ""
    root = build_context([(program, package)])
    root.fqn = package
    for m in list(root.own_methods.values()):
        root.own_methods[m.name] = _with_owner(m, package)
    return root


def build_context(units) -> ObjectNode:
    """Partial tree for several ``(program, package)`` pairs sharing one root."""
    root = ObjectNode(fqn="", name="")
    for index, (program, package) in enumerate(units):
        root.programs.append(program)
        for i, binding in enumerate(program.objects):
            _add_binding(root, binding, package, package, index, (i,))
    return root


def _with_owner(m, fqn):
    return MethodInfo(m.name, m.params, m.calls, fqn, m.span, m.static_calls, m.program_index, m.path)


def _add_binding(node, binding, package, prefix, program_index, path):
    value = binding.value
    if is_method(value) and binding.name != DECORATEE:
        calls, statics = collect_calls(value)
        node.own_methods[binding.name] = MethodInfo(
            binding.name, value.params, tuple(calls), node.fqn, binding.span,
            tuple(statics), program_index, path)
    elif isinstance(value, Abstract):
        child = ObjectNode(
            fqn=qualify(prefix, binding.name), name=binding.name, parent=node,
            package=package, params=value.params, span=binding.span,
            program_index=program_index, path=path)
        node.children.append(child)
        for j, inner in enumerate(value.bindings):
            _add_binding(child, inner, package, child.fqn, program_index, path + (("b", j),))
        if binding.name == DECORATEE:
            node.decoratee_expr = value
    elif binding.name == DECORATEE:
        node.decoratee_expr = value
    else:
        node.attributes[binding.name] = value


@dataclass(frozen=True)
class Visit:
    expr: object
    path: tuple
    scopes: tuple  # params of the enclosing abstracts, method first
    parent: object
    role: tuple | None


def walk_method(method: Abstract, path=()) -> Iterator[Visit]:
    """Every expression inside a method body, with its lexical scopes."""
    yield from _walk(method, path, (), None, None)


def _walk(expr, path, scopes, parent, role):
    if isinstance(expr, Abstract):
        scopes = scopes + (expr.params,)
        yield Visit(expr, path, scopes, parent, role)
        for j, b in enumerate(expr.bindings):
            yield from _walk(b.value, path + (("b", j),), scopes, expr, ("b", j))
        return
    yield Visit(expr, path, scopes, parent, role)
    if isinstance(expr, Application):
        yield from _walk(expr.head, path + (("head",),), scopes, expr, ("head",))
        for i, a in enumerate(expr.args):
            yield from _walk(a, path + (("arg", i),), scopes, expr, ("arg", i))
    elif isinstance(expr, DotAccess):
        yield from _walk(expr.receiver, path + (("recv",),), scopes, expr, ("recv",))


def visible_binder(name, scopes):
    """Index of the innermost scope declaring ``name``, or None."""
    for i in range(len(scopes) - 1, -1, -1):
        if name in scopes[i]:
            return i
    return None


def collect_calls(method: Abstract):
    receiver = method.params[0]
    calls, statics = [], []
    for v in walk_method(method):
        e = v.expr
        if not isinstance(e, DotAccess):
            continue
        if isinstance(e.receiver, Ref) and e.receiver.name == receiver:
            if visible_binder(receiver, v.scopes) != 0:
                continue  # shadowed by a nested abstract
            first = (isinstance(v.parent, Application) and v.role == ("head",)
                     and v.parent.args[0] == Ref(receiver))
            calls.append(CallSite(e.attribute, True, first, e.span))
        elif isinstance(e.receiver, Locator) and e.receiver.ups == len(v.scopes):
            statics.append(StaticCall(e.attribute, e.span))
    return calls, statics


# -- pass 2: resolution ------------------------------------------------------

_MISSING = object()


def clone_tree(node, parent=None):
    copy = ObjectNode(
        fqn=node.fqn, name=node.name, parent=parent, package=node.package,
        params=node.params, decoratee_expr=node.decoratee_expr,
        own_methods=dict(node.own_methods), attributes=dict(node.attributes),
        span=node.span, program_index=node.program_index, path=node.path,
        programs=list(node.programs))
    copy.children = [clone_tree(c, copy) for c in node.children]
    return copy


def resolve(root: ObjectNode) -> ObjectNode:
    """Return a resolved copy of ``root``; the input tree is left untouched."""
    tree = clone_tree(root)
    _Resolver(tree).run()
    return tree


class _Resolver:
    def __init__(self, root):
        self.root = root
        self.done = set()
        self.busy = []
        self.aliases = set()

    def run(self):
        nodes = list(self.root.walk())
        for node in nodes:
            self.decoratee_of(node)
        for node in nodes:
            node.chain()  # raises DecorationCycle
        for node in nodes:
            ext = {}
            for owner in node.chain():
                for name, info in owner.own_methods.items():
                    ext.setdefault(name, (owner.fqn, info))
            node.extended_methods = ext
            node.resolved = True

    def decoratee_of(self, node):
        if node in self.done:
            return node.decoratee
        if node in self.busy:
            start = self.busy.index(node)
            raise DecorationCycle([n.fqn for n in self.busy[start:]] + [node.fqn])
        self.busy.append(node)
        try:
            expr = node.decoratee_expr
            if isinstance(expr, Abstract):
                target = node.child(DECORATEE)
            elif expr is None:
                target = None
            else:
                target = self.evaluate(expr, node)
        finally:
            self.busy.pop()
        node.decoratee = target
        self.done.add(node)
        return target

    def evaluate(self, expr, scope):
        """Object denoted by ``expr`` in ``scope``; None for opaque or free values."""
        if isinstance(expr, Opaque):
            return None
        if isinstance(expr, Application):
            if isinstance(expr.head, Opaque) and expr.head.text == "seq":
                return self.evaluate(expr.args[-1], scope)
            raise UnresolvedDecoratee(inline(expr), expr.span)
        path = dotted_path(expr)
        if path is None:
            raise UnresolvedDecoratee(inline(expr), getattr(expr, "span", None))
        start, attrs = path
        if isinstance(start, Locator):
            target = scope
            for _ in range(start.ups):
                target = target.parent
                if target is None:
                    raise UnresolvedDecoratee(inline(expr), expr.span)
        elif start.name == DECORATEE:
            target = self.decoratee_of(scope)
        else:
            try:
                target = self.lexical(start.name, scope, expr)
            except UnresolvedDecoratee:
                found = self.qualified([start.name, *attrs])
                if found is None:
                    raise
                target, attrs = found
        for attr in attrs:
            if target is None:
                return None
            target = self.member(target, attr, expr)
        return target

    def local(self, node, name):
        child = node.child(name)
        if child is not None:
            return child
        if name in node.attributes:
            key = (id(node), name)
            if key in self.aliases:
                raise UnresolvedDecoratee(name, node.span)
            self.aliases.add(key)
            try:
                return self.evaluate(node.attributes[name], node)
            finally:
                self.aliases.discard(key)
        if name in node.params or name in node.own_methods:
            return None
        return _MISSING

    def lexical(self, name, scope, expr):
        node = scope
        while node is not None:
            if node.parent is None:
                found = self.top_level(name, scope.package)
            else:
                found = self.local(node, name)
            if found is not _MISSING:
                return found
            node = node.parent
        raise UnresolvedDecoratee(name, expr.span)

    def top_level(self, name, package):
        matches = [c for c in self.root.children if c.name == name]
        if not matches:
            return self.local(self.root, name)
        same = [c for c in matches if c.package == package]
        return (same or matches)[0]

    def qualified(self, parts):
        """``pkg.obj.rest`` naming a top-level object of another package."""
        for cut in range(len(parts) - 1, 0, -1):
            package, name = ".".join(parts[:cut]), parts[cut]
            for c in self.root.children:
                if c.name == name and c.package == package:
                    return c, parts[cut + 1:]
        return None

    def member(self, node, attr, expr):
        seen = []
        while node is not None:
            if node in seen:
                raise DecorationCycle([n.fqn for n in seen] + [node.fqn])
            seen.append(node)
            found = self.local(node, attr)
            if found is not _MISSING:
                return found
            node = self.decoratee_of(node)
        raise UnresolvedDecoratee(inline(expr), expr.span)


# -- queries -------------------------------------------------------------------

def lookup_attribute(node: ObjectNode, name: str):
    """``(owner_fqn, MethodInfo)`` of the nearest definition of method ``name``, else None."""
    if node.resolved:
        return node.extended_methods.get(name)
    for owner in node.chain():
        if name in owner.own_methods:
            return owner.fqn, owner.own_methods[name]
    return None


def attribute_owner(node: ObjectNode, name: str):
    """Nearest object in the decoration chain binding ``name`` in any form."""
    for owner in node.chain():
        if name in owner.own_methods or name in owner.attributes or owner.child(name):
            return owner
    return None


def analysis_units(root):
    """Object nodes worth analysing: every node except an empty root."""
    return [n for n in root.walk() if n.extended_methods or n.own_methods]


def dump_tree(root: ObjectNode) -> str:
    """Deterministic text rendering of a partial or resolved tree."""
    lines = []

    def emit(node, depth):
        pad = "  " * depth
        label = node.fqn or "<root>"
        dec = node.decoratee_name or "-"
        if node.resolved and node.decoratee is not None:
            dec += f" => {node.decoratee.fqn}"
        lines.append(f"{pad}{label} @ {dec}")
        if node.resolved:
            for name in sorted(node.extended_methods):
                owner, info = node.extended_methods[name]
                where = "" if owner == node.fqn else f" [{owner}]"
                lines.append(f"{pad}  .{name}{where} -> {_calls_text(info)}")
        else:
            for name in sorted(node.own_methods):
                lines.append(f"{pad}  .{name} -> {_calls_text(node.own_methods[name])}")
        for child in sorted(node.children, key=lambda c: c.name):
            emit(child, depth + 1)

    emit(root, 0)
    return "\n".join(lines) + "\n"


def _calls_text(info):
    names = [c.method_name for c in info.calls] + [f"^.{s.method_name}" for s in info.static_calls]
    return ", ".join(names) if names else "-"
