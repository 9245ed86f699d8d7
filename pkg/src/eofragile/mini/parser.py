"""Recursive-descent parser for the mini object-oriented language.

The grammar is in ``docs/mini-oo.md``. Types and access modifiers are
accepted and dropped; annotations such as ``@Override`` are ignored.
"""

from __future__ import annotations

import re

from ..errors import MiniParseError, SourceSpan, UnknownSuperclass
from .model import (Binary, BoolLit, Call, ClassModel, Constructor, FieldAssign,
                    FieldDecl, FieldRef, If, IntLit, MethodCall, MethodDecl, Name,
                    Return, SuperCall, Unary, While)

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<annot>@[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>==|!=|<=|>=|&&|\|\||[{}()\[\];,.=<>+\-*/%!])
""", re.VERBOSE | re.DOTALL)

MODIFIERS = {"public", "private", "protected", "final", "abstract"}
TYPES = {"int", "boolean", "void"}
KEYWORDS = {"class", "extends", "return", "if", "else", "while", "this", "super",
            "true", "false", "new", "static"} | MODIFIERS | TYPES

# binary operators by increasing precedence
_LEVELS = [("||",), ("&&",), ("==", "!="), ("<", ">", "<=", ">="), ("+", "-"), ("*", "/", "%")]


def _tokenize(source, file):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise MiniParseError(f"unexpected character {source[pos]!r}",
                                 SourceSpan(file, line, col))
        kind, text = m.lastgroup, m.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind, text, SourceSpan(file, line, col)))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(("eof", "", SourceSpan(file, line, col)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text):
        kind, value, _ = self.tok
        return value == text and kind in ("op", "id")

    def advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def fail(self, expected):
        kind, text, span = self.tok
        found = "end of input" if kind == "eof" else repr(text)
        raise MiniParseError(f"expected {expected}, found {found}", span, expected=(expected,))

    def expect(self, text):
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def ident(self):
        kind, text, span = self.tok
        if kind != "id" or text in KEYWORDS:
            self.fail("identifier")
        self.advance()
        return text, span

    # -- declarations --------------------------------------------------------

    def unit(self):
        classes = []
        while self.tok[0] != "eof":
            self.skip_modifiers()
            classes.append(self.class_decl())
        return classes

    def skip_modifiers(self):
        while self.tok[0] == "annot" or (self.tok[0] == "id" and self.tok[1] in MODIFIERS):
            self.advance()
        if self.at("static"):
            raise MiniParseError("static members are not supported", self.tok[2])

    def class_decl(self):
        span = self.expect("class")[2]
        name, _ = self.ident()
        superclass = None
        if self.at("extends"):
            self.advance()
            parts = [self.ident()[0]]
            while self.at("."):
                self.advance()
                parts.append(self.ident()[0])
            superclass = ".".join(parts)
        self.expect("{")
        fields, methods, nested, ctor = [], [], [], None
        members = set()
        while not self.at("}"):
            self.skip_modifiers()
            mspan = self.tok[2]
            if self.at("class"):
                nested.append(self.class_decl())
            elif self.tok[1] == name and self.peek()[1] == "(":
                if ctor is not None:
                    raise MiniParseError(f"second constructor in class {name}", mspan)
                self.advance()
                params = self.params()
                ctor = Constructor(params, self.block(in_ctor=True), mspan)
            else:
                self.type_name()
                mname, mspan = self.ident()
                if mname in members:
                    raise MiniParseError(f"duplicate member {mname!r} in class {name}", mspan)
                members.add(mname)
                if self.at("("):
                    params = self.params()
                    methods.append(MethodDecl(mname, params, self.block(), mspan))
                else:
                    init = None
                    if self.at("="):
                        self.advance()
                        init = self.expr()
                    self.expect(";")
                    fields.append(FieldDecl(mname, init, mspan))
        self.expect("}")
        return ClassModel(name, superclass, tuple(fields), ctor, tuple(methods),
                          tuple(nested), span)

    def type_name(self):
        kind, text, _ = self.tok
        if kind == "id" and text in TYPES:
            self.advance()
        else:
            self.fail("type")

    def params(self):
        self.expect("(")
        names = []
        while not self.at(")"):
            if names:
                self.expect(",")
            if self.tok[0] == "id" and self.tok[1] in TYPES:
                self.advance()
            pname, pspan = self.ident()
            if pname in names:
                raise MiniParseError(f"duplicate parameter {pname!r}", pspan)
            names.append(pname)
        self.expect(")")
        return tuple(names)

    # -- statements ----------------------------------------------------------

    def block(self, in_ctor=False):
        self.expect("{")
        body = []
        while not self.at("}"):
            body.append(self.statement(in_ctor))
        self.expect("}")
        return tuple(body)

    def body(self, in_ctor):
        if self.at("{"):
            return self.block(in_ctor)
        return (self.statement(in_ctor),)

    def statement(self, in_ctor):
        span = self.tok[2]
        if self.at("return"):
            self.advance()
            value = None if self.at(";") else self.expr()
            self.expect(";")
            return Return(value, span)
        if self.at("if"):
            self.advance()
            cond = self.condition()
            then = self.body(in_ctor)
            orelse = ()
            if self.at("else"):
                self.advance()
                orelse = self.body(in_ctor)
            return If(cond, then, orelse, span)
        if self.at("while"):
            self.advance()
            cond = self.condition()
            return While(cond, self.body(in_ctor), span)
        if self.at("super"):
            if not in_ctor:
                raise MiniParseError("super(...) outside a constructor", span)
            self.advance()
            args = self.args()
            self.expect(";")
            return SuperCall(args, span)
        if self.at("this"):
            self.advance()
            self.expect(".")
        name, _ = self.ident()
        if self.at("("):
            call = Call(name, self.args(), span)
            self.expect(";")
            return MethodCall(call, span)
        self.expect("=")
        value = self.expr()
        self.expect(";")
        return FieldAssign(name, value, span)

    def condition(self):
        self.expect("(")
        cond = self.expr()
        self.expect(")")
        return cond

    def args(self):
        self.expect("(")
        args = []
        while not self.at(")"):
            if args:
                self.expect(",")
            args.append(self.expr())
        self.expect(")")
        return tuple(args)

    # -- expressions ---------------------------------------------------------

    def expr(self, level=0):
        if level == len(_LEVELS):
            return self.unary()
        left = self.expr(level + 1)
        while self.tok[0] == "op" and self.tok[1] in _LEVELS[level]:
            op, span = self.tok[1], self.tok[2]
            self.advance()
            left = Binary(op, left, self.expr(level + 1), span)
        return left

    def unary(self):
        if self.at("-") or self.at("!"):
            op, _, span = self.tok[1], None, self.tok[2]
            self.advance()
            return Unary(op, self.unary(), span)
        return self.primary()

    def primary(self):
        kind, text, span = self.tok
        if kind == "int":
            self.advance()
            return IntLit(int(text), span)
        if self.at("true") or self.at("false"):
            self.advance()
            return BoolLit(text == "true", span)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if self.at("this"):
            self.advance()
            self.expect(".")
            name, _ = self.ident()
            if self.at("("):
                return Call(name, self.args(), span)
            return FieldRef(name, span)
        if kind == "id" and text not in KEYWORDS:
            name, _ = self.ident()
            if self.at("("):
                return Call(name, self.args(), span)
            return Name(name, span)
        self.fail("expression")


def _check_superclasses(classes):
    """Every ``extends`` target must name a class of the unit, looked up lexically."""
    def visit(cls, scopes):
        inner = scopes + [{c.name: c for c in cls.nested}]
        if cls.superclass is not None:
            head, *rest = cls.superclass.split(".")
            target = None
            for scope in reversed(scopes + [{c.name: c for c in cls.nested}]):
                if head in scope:
                    target = scope[head]
                    break
            for part in rest:
                if target is None:
                    break
                target = next((c for c in target.nested if c.name == part), None)
            if target is None:
                raise UnknownSuperclass(cls.superclass, cls.span)
        for child in cls.nested:
            visit(child, inner)

    top = {}
    for cls in classes:
        if cls.name in top:
            raise MiniParseError(f"duplicate class {cls.name!r}", cls.span)
        top[cls.name] = cls
    for cls in classes:
        visit(cls, [top])


def parse_mini_oo(source: str, file: str = "<string>") -> list[ClassModel]:
    classes = _Parser(_tokenize(source.replace("\r\n", "\n"), file)).unit()
    _check_superclasses(classes)
    return classes
