"""Lexer, parser and pretty-printer for the EO subset."""

from .lexer import Kind, Token, tokenize
from .parser import parse, parse_source
from .printer import pretty
from .syntax import (Abstract, Application, DotAccess, EoBinding, EoExpr,
                     EoProgram, Locator, Opaque, Ref)

__all__ = [
    "Kind", "Token", "tokenize", "parse", "parse_source", "pretty",
    "Abstract", "Application", "DotAccess", "EoBinding", "EoExpr",
    "EoProgram", "Locator", "Opaque", "Ref",
]
