"""Emit EO object factories for mini-OO classes.

Each class ``X`` becomes an object ``classX`` decorating its superclass's
object. ``classX.new`` builds the instance: ``super`` from the superclass
factory, then ``this`` decorating ``super`` with memory fields, the
``run_constructor`` method and the class methods. ``classX.constructor``
runs ``new`` and then the constructor code on the fresh instance.
"""

from __future__ import annotations

from ..eo.printer import pretty
from ..eo.syntax import (Abstract, Application, DotAccess, EoBinding, EoProgram,
                         Opaque, Ref)
from .model import (Binary, BoolLit, Call, ClassModel, FieldAssign, FieldRef, If,
                    IntLit, MethodCall, Name, Return, SuperCall, Unary, While)

RECEIVER = "self"
BASE = "classObject"

_OPS = {"+": "add", "-": "sub", "*": "mul", "/": "div", "%": "mod",
        "<": "lt", ">": "gt", "<=": "lte", ">=": "gte", "==": "eq", "!=": "neq",
        "&&": "and", "||": "or"}
_UNARY = {"-": "neg", "!": "not"}


def class_object_name(name: str) -> str:
    return "class" + name


def _bind(name, value):
    return EoBinding(name, value)


def _seq(items):
    return Application(Opaque("seq"), tuple(items))


def _call(recv, method, args):
    return Application(DotAccess(Ref(recv), method), (Ref(recv), *args))


class _Emitter:
    def __init__(self, params=(), recv=RECEIVER):
        self.params = set(params)
        self.recv = recv

    def expr(self, e):
        if isinstance(e, IntLit):
            return Opaque(str(e.value))
        if isinstance(e, BoolLit):
            return Opaque("TRUE" if e.value else "FALSE")
        if isinstance(e, Name):
            if e.ident in self.params:
                return Ref(e.ident)
            return DotAccess(Ref(self.recv), e.ident)
        if isinstance(e, FieldRef):
            return DotAccess(Ref(self.recv), e.field)
        if isinstance(e, Call):
            return _call(self.recv, e.method, [self.expr(a) for a in e.args])
        if isinstance(e, Binary):
            return Application(DotAccess(self.expr(e.left), _OPS[e.op]), (self.expr(e.right),))
        if isinstance(e, Unary):
            return DotAccess(self.expr(e.operand), _UNARY[e.op])
        raise TypeError(f"not an expression: {e!r}")

    def statement(self, s):
        if isinstance(s, FieldAssign):
            target = DotAccess(DotAccess(Ref(self.recv), s.field), "write")
            return Application(target, (self.expr(s.value),))
        if isinstance(s, MethodCall):
            return self.expr(s.call)
        if isinstance(s, Return):
            return Ref(self.recv) if s.value is None else self.expr(s.value)
        if isinstance(s, If):
            guard = DotAccess(self.expr(s.condition), "if")
            return Application(guard, (self.arm(s.then), self.arm(s.orelse)))
        if isinstance(s, While):
            return Application(DotAccess(self.expr(s.condition), "while"), (self.arm(s.body),))
        if isinstance(s, SuperCall):
            return _call("super", "run_constructor", [self.expr(a) for a in s.args])
        raise TypeError(f"not a statement: {s!r}")

    def arm(self, stmts):
        # both arms stay in the tree so the analysis sees their calls
        if not stmts:
            return Ref(self.recv)
        return _seq([self.statement(s) for s in stmts])

    def body(self, stmts):
        items = [self.statement(s) for s in stmts]
        if not stmts or not isinstance(stmts[-1], Return):
            items.append(Ref(self.recv))
        if len(items) == 1:
            return items[0]
        return _seq(items)


def _method(name, params, stmts):
    body = _Emitter(params).body(stmts)
    return _bind(name, Abstract((RECEIVER, *params), (_bind("@", body),)))


def _super_ref(cls: ClassModel):
    if cls.superclass is None:
        return Ref(BASE)
    head, *rest = cls.superclass.split(".")
    expr = Ref(class_object_name(head))
    for part in rest:
        expr = DotAccess(expr, class_object_name(part))
    return expr


def _class(cls: ClassModel) -> EoBinding:
    parent = _super_ref(cls)
    ctor_params = cls.constructor.params if cls.constructor else ()
    ctor_body = list(cls.constructor.body) if cls.constructor else []
    has_super = any(isinstance(s, SuperCall) for s in ctor_body)
    if cls.superclass is not None and not has_super:
        ctor_body.insert(0, SuperCall(()))

    this = [_bind("@", Ref("super"))]
    this += [_bind(f.name, Opaque("memory")) for f in cls.fields]
    this.append(_method("run_constructor", ctor_params, ctor_body))
    this += [_method(m.name, m.params, m.body) for m in cls.methods]

    inits = [FieldAssign(f.name, f.init) for f in cls.fields if f.init is not None]
    if inits:
        emit = _Emitter(recv="this")
        new_value = _seq([emit.statement(s) for s in inits] + [Ref("this")])
    else:
        new_value = Ref("this")
    new = Abstract((), (
        _bind("super", DotAccess(parent, "new")),
        _bind("this", Abstract((), tuple(this))),
        _bind("@", new_value),
    ))

    run = _call("this", "run_constructor", [Ref(p) for p in ctor_params])
    constructor = Abstract(ctor_params, (
        _bind("this", Ref("new")),
        _bind("@", _seq([run, Ref("this")])),
    ))

    members = [_bind("@", parent), _bind("new", new), _bind("constructor", constructor)]
    members += [_class(inner) for inner in cls.nested]
    return _bind(class_object_name(cls.name), Abstract((), tuple(members)))


def translate_program(classes: list[ClassModel], package: str | None = None) -> EoProgram:
    base = _bind(BASE, Abstract((), (_bind("new", Abstract((), ())),)))
    metas = (f"+package {package}",) if package else ()
    return EoProgram((base, *(_class(c) for c in classes)), metas)


def translate(classes: list[ClassModel], package: str | None = None) -> str:
    """EO source text for ``classes``; always accepted by the EO parser."""
    return pretty(translate_program(classes, package))
