"""Recursive-descent parser for the EO subset used by the analyzer.

Grammar (one logical line per binding; ``{}`` repetition, ``[]`` option)::

    program   := {META NL} {binding}
    binding   := '[' {ID} ']' '>' name NL [INDENT {binding} DEDENT]
               | line
    line      := head {simple} ['>' name] NL [INDENT {line} DEDENT]
    head      := simple | ID '.'          # trailing dot: receiver is first vertical arg
    simple    := primary {'.' ID | '.' '^'}
    primary   := ID | literal | '^' | '@' | '(' simple {simple} ')'

Vertical arguments (indented lines under an application) are appended to
the horizontal ones, so ``f a b > x`` and ``f > x`` with ``a`` and ``b`` on
the following indented lines parse to the same node.
"""

from __future__ import annotations

from ..errors import DuplicateBinding, DuplicateDecoratee, ParseError
from .lexer import Kind, Token, tokenize
from .syntax import (DECORATEE, Abstract, Application, DotAccess, EoBinding,
                     EoProgram, Locator, Opaque, Ref)

# Bare names carried through as opaque atoms instead of lexical references.
OPAQUE_NAMES = frozenset({"memory", "cage", "seq", "nop", "TRUE", "FALSE", "true", "false"})

_SIMPLE_START = {Kind.ID, Kind.OPAQUE, Kind.LPAREN, Kind.CARET, Kind.AT}


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.pos = 0
        self.file = file

    # -- token helpers -----------------------------------------------------

    def peek(self, offset=0):
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, *kinds, offset=0):
        tok = self.peek(offset)
        return tok is not None and tok.kind in kinds

    def expect(self, *kinds):
        tok = self.peek()
        if tok is None or tok.kind not in kinds:
            self.fail("unexpected " + (tok.kind.value if tok else "end of input"), kinds)
        self.pos += 1
        return tok

    def fail(self, message, expected=()):
        tok = self.peek() or (self.tokens[-1] if self.tokens else None)
        raise ParseError(message, tok.span if tok else None, [k.value for k in expected])

    # -- grammar -----------------------------------------------------------

    def program(self):
        metas = []
        while self.at(Kind.META):
            metas.append(self.expect(Kind.META).text)
            self.expect(Kind.NL)
        bindings = []
        while self.peek() is not None:
            if self.at(Kind.META):
                self.fail("meta lines must precede all objects")
            bindings.append(self.binding())
        _check_unique(bindings)
        return EoProgram(tuple(bindings), tuple(metas), self.file)

    def binding(self):
        if self.at(Kind.LBRACK):
            return self.abstract_binding()
        start = self.peek()
        expr, name = self.line(named=True)
        return EoBinding(name, expr, start.span)

    def abstract_binding(self):
        start = self.expect(Kind.LBRACK)
        params = []
        while self.at(Kind.ID):
            tok = self.expect(Kind.ID)
            if tok.text in params:
                raise ParseError(f"duplicate parameter {tok.text!r}", tok.span)
            params.append(tok.text)
        self.expect(Kind.RBRACK)
        self.expect(Kind.ARROW)
        name = self.expect(Kind.ID, Kind.AT).text
        self.expect(Kind.NL)
        body = []
        if self.at(Kind.INDENT):
            self.pos += 1
            while not self.at(Kind.DEDENT):
                if self.peek() is None:
                    self.fail("unterminated block", [Kind.DEDENT])
                body.append(self.binding())
            self.pos += 1
        _check_unique(body)
        return EoBinding(name, Abstract(tuple(params), tuple(body), start.span), start.span)

    def line(self, named):
        start = self.peek()
        if self.at(Kind.LBRACK):
            self.fail("anonymous abstract objects are not supported as arguments")
        head, trailing = self.simple(allow_trailing_dot=True)
        hargs = []
        while self.at(*_SIMPLE_START):
            if trailing:
                self.fail("a trailing-dot head takes its arguments vertically")
            hargs.append(self.simple()[0])
        name = None
        if self.at(Kind.ARROW):
            if not named:
                self.fail("arguments cannot be named")
            self.pos += 1
            name = self.expect(Kind.ID, Kind.AT).text
        elif named:
            self.fail("binding needs a name", [Kind.ARROW])
        self.expect(Kind.NL)
        vargs = []
        if self.at(Kind.INDENT):
            self.pos += 1
            while not self.at(Kind.DEDENT):
                if self.peek() is None:
                    self.fail("unterminated block", [Kind.DEDENT])
                vargs.append(self.line(named=False)[0])
            self.pos += 1
        if trailing:
            if not vargs:
                raise ParseError(f"{head.name}. needs a receiver on the next line", start.span)
            head = DotAccess(vargs.pop(0), head.name, start.span)
        args = tuple(hargs + vargs)
        expr = Application(head, args, start.span) if args else head
        return expr, name

    def simple(self, allow_trailing_dot=False):
        expr = self.primary()
        while self.at(Kind.DOT):
            dot = self.expect(Kind.DOT)
            if self.at(Kind.ID):
                expr = DotAccess(expr, self.expect(Kind.ID).text, dot.span)
            elif self.at(Kind.CARET) and isinstance(expr, Locator):
                self.pos += 1
                expr = Locator(expr.ups + 1, expr.span)
            elif allow_trailing_dot and isinstance(expr, Ref) and self.at(Kind.ARROW, Kind.NL):
                return expr, True
            else:
                self.fail("bad attribute access", [Kind.ID])
        return expr, False

    def primary(self):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        if tok.kind is Kind.ID:
            self.pos += 1
            if tok.text in OPAQUE_NAMES:
                return Opaque(tok.text, tok.span)
            return Ref(tok.text, tok.span)
        if tok.kind is Kind.OPAQUE:
            self.pos += 1
            return Opaque(tok.text, tok.span)
        if tok.kind is Kind.CARET:
            self.pos += 1
            return Locator(1, tok.span)
        if tok.kind is Kind.AT:
            self.pos += 1
            return Ref(DECORATEE, tok.span)
        if tok.kind is Kind.LPAREN:
            self.pos += 1
            head = self.simple()[0]
            args = []
            while self.at(*_SIMPLE_START):
                args.append(self.simple()[0])
            self.expect(Kind.RPAREN)
            return Application(head, tuple(args), tok.span) if args else head
        self.fail(f"unexpected {tok.kind.value}", _SIMPLE_START)


def _check_unique(bindings):
    seen = set()
    for b in bindings:
        if b.name in seen:
            if b.name == DECORATEE:
                raise DuplicateDecoratee("object has more than one decoratee", b.span)
            raise DuplicateBinding(f"duplicate binding {b.name!r}", b.span)
        seen.add(b.name)


def parse(tokens, file="<string>") -> EoProgram:
    return _Parser(list(tokens), file).program()


def parse_source(source: str, file: str = "<string>") -> EoProgram:
    return parse(tokenize(source, file), file)
