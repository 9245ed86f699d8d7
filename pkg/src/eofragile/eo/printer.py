from __future__ import annotations

from .syntax import Abstract, Application, DotAccess, Locator, Opaque, Ref

INDENT = "  "


def pretty(program) -> str:
    """Render a program in canonical layout; parsing the result gives an equal tree."""
    lines = list(program.metas)
    if program.metas and program.objects:
        lines.append("")
    for i, binding in enumerate(program.objects):
        if i:
            lines.append("")
        lines.extend(binding_lines(binding, 0))
    return "\n".join(lines) + "\n" if lines else ""


def binding_lines(binding, depth):
    pad = INDENT * depth
    value = binding.value
    if isinstance(value, Abstract):
        out = [f"{pad}[{' '.join(value.params)}] > {binding.name}"]
        for inner in value.bindings:
            out.extend(binding_lines(inner, depth + 1))
        return out
    return _expr_lines(value, depth, f" > {binding.name}")


def _expr_lines(expr, depth, suffix=""):
    pad = INDENT * depth
    if isinstance(expr, Application) and _vertical(expr):
        out = [f"{pad}{_atom(expr.head)}{suffix}"]
        for arg in expr.args:
            out.extend(_expr_lines(arg, depth + 1))
        return out
    return [f"{pad}{inline(expr)}{suffix}"]


def _vertical(app):
    if isinstance(app.head, Opaque) and app.head.text == "seq":
        return True
    # nested applications stay inline in parentheses unless they hold a seq
    return any(isinstance(a, Application) and _vertical(a) for a in app.args)


def inline(expr) -> str:
    if isinstance(expr, Ref):
        return "@" if expr.name == "@" else expr.name
    if isinstance(expr, Opaque):
        return expr.text
    if isinstance(expr, Locator):
        return ".".join(["^"] * expr.ups)
    if isinstance(expr, DotAccess):
        return f"{_atom(expr.receiver)}.{expr.attribute}"
    if isinstance(expr, Application):
        parts = [_atom(expr.head)] + [_atom(a) for a in expr.args]
        return " ".join(parts)
    if isinstance(expr, Abstract):
        raise ValueError("abstract objects can only be printed as bindings")
    raise TypeError(f"not an EO expression: {expr!r}")


def _atom(expr):
    text = inline(expr)
    return f"({text})" if isinstance(expr, Application) else text
