"""Regenerate corpus/inheritance/*.yml.

Each case describes its objects once; the EO and mini-OO programs are both
rendered from that description so the two languages stay equivalent.

    python3 tools/make_corpus.py [OUTDIR]
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from eofragile.eo import parse_source, pretty

OUT = Path(__file__).resolve().parent.parent / "corpus" / "inheritance"
NEST = ("very_outer", "outer")

# method bodies:
#   ("write",)                       store v in x
#   ("call", target, arg)            self.target self arg
#   ("static", target)               ^.target ^ v   (EO only)
#   ("if", (op, lhs, rhs), then, else)
_OPS = {">": "gt", "<": "lt", "==": "eq"}


@dataclass
class Obj:
    name: str
    parent: str | None = None
    methods: list = field(default_factory=list)
    fields: tuple = ()
    where: tuple = ()  # enclosing containers


def write():
    return ("write",)


def call(target, arg="v"):
    return ("call", target, arg)


def if_(cond, then, other):
    return ("if", cond, then, other)


# -- EO rendering -------------------------------------------------------------

def _eo_arg(arg):
    return str(arg)


def _eo_cond(cond):
    op, lhs, rhs = cond
    return f"({lhs}.{_OPS[op]} {rhs})"


def _eo_expr(body, obj):
    kind = body[0]
    if kind == "write":
        target = "x" if "x" in obj.fields else "self.x"
        return f"{target}.write v"
    if kind == "call":
        return f"self.{body[1]} self {_eo_arg(body[2])}"
    if kind == "static":
        return f"^.{body[1]} ^ v"
    raise ValueError(kind)


def _eo_method(name, body, obj, pad):
    lines = [f"{pad}[self v] > {name}"]
    if body[0] == "if":
        lines.append(f"{pad}  {_eo_cond(body[1])}.if > @")
        lines.append(f"{pad}    {_eo_expr(body[2], obj)}")
        lines.append(f"{pad}    {_eo_expr(body[3], obj)}")
    else:
        lines.append(f"{pad}  {_eo_expr(body, obj)} > @")
    return lines


def _eo_object(obj, depth):
    pad = "  " * depth
    lines = [f"{pad}[] > {obj.name}"]
    if obj.parent:
        lines.append(f"{pad}  {obj.parent} > @")
    for f in obj.fields:
        lines.append(f"{pad}  memory > {f}")
    for name, body in obj.methods:
        lines.extend(_eo_method(name, body, obj, pad + "  "))
    return lines


def render_eo(objs):
    blocks, opened = [], None
    for obj in objs:
        if obj.where and obj.where == opened:
            blocks[-1].extend(_eo_object(obj, len(obj.where)))
            continue
        lines = [f"{'  ' * i}[] > {c}" for i, c in enumerate(obj.where)]
        lines.extend(_eo_object(obj, len(obj.where)))
        blocks.append(lines)
        opened = obj.where
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


# -- mini-OO rendering --------------------------------------------------------

def _mini_stmt(body):
    kind = body[0]
    if kind == "write":
        return "this.x = v;"
    if kind == "call":
        return f"{body[1]}({body[2]});"
    raise ValueError(kind)


def _mini_method(name, body, overrides, pad):
    lines = [f"{pad}@Override"] if overrides else []
    if body[0] == "if":
        op, lhs, rhs = body[1]
        lines.append(f"{pad}void {name}(int v) {{")
        lines.append(f"{pad}  if ({lhs} {op} {rhs}) {{ {_mini_stmt(body[2])} }}")
        lines.append(f"{pad}  else {{ {_mini_stmt(body[3])} }}")
        lines.append(f"{pad}}}")
    else:
        lines.append(f"{pad}void {name}(int v) {{ {_mini_stmt(body)} }}")
    return lines


def _mini_class(obj, inherited, depth):
    pad = "  " * depth
    ext = f" extends {obj.parent}" if obj.parent else ""
    lines = [f"{pad}class {obj.name}{ext} {{"]
    for f in obj.fields:
        lines.append(f"{pad}  int {f};")
    for name, body in obj.methods:
        lines.extend(_mini_method(name, body, name in inherited, pad + "  "))
    lines.append(f"{pad}}}")
    return lines


def render_mini(objs):
    known = {}
    blocks, opened = [], None
    for obj in objs:
        inherited = set(known.get(obj.parent, ()))
        visible = inherited | {n for n, _ in obj.methods}
        known[".".join(obj.where + (obj.name,))] = visible
        known[obj.name] = visible
        cls = _mini_class(obj, inherited, len(obj.where))
        if obj.where and obj.where == opened:
            blocks[-1][-len(obj.where):-len(obj.where)] = cls
            continue
        lines = [f"{'  ' * i}class {c} {{" for i, c in enumerate(obj.where)]
        lines.extend(cls)
        lines.extend(f"{'  ' * i}}}" for i in reversed(range(len(obj.where))))
        blocks.append(lines)
        opened = obj.where
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


# -- cases --------------------------------------------------------------------

def base(where=(), methods=None):
    return Obj("base", None, methods or [("n", write()), ("m", call("n"))], ("x",), where)


def ref(name, where):
    return ".".join(where + (name,)) if where else name


INLINED = [("n", write()), ("m", write())]  # good bases: m no longer calls n


def chain(k, bw=(), dw=(), good=False):
    """Inheritance chains base <- derived <- derived_again."""
    b_ref = ref("base", bw if bw != dw else ())
    d_ref = "derived"
    if k == 1:
        objs = [base(bw, INLINED if good else None),
                Obj("derived", b_ref, [("n", call("m"))], where=dw),
                Obj("derived_again", d_ref, [("k", write())], where=dw)]
    elif k == 2:
        objs = [base(bw, INLINED if good else None),
                Obj("derived", b_ref, [("k", write())], where=dw),
                Obj("derived_again", d_ref, [("n", call("m"))], where=dw)]
    elif k == 3:
        objs = [base(bw, [("n", write())]),
                Obj("derived", b_ref, [("m", write() if good else call("n"))], where=dw),
                Obj("derived_again", d_ref, [("n", call("m"))], where=dw)]
    else:
        objs = [base(bw, INLINED if good else None),
                Obj("derived", b_ref, [("o", call("m"))], where=dw),
                Obj("derived_again", d_ref, [("n", call("o"))], where=dw)]
    return objs


def simple(bw=(), dw=(), good=False):
    b = base(bw, INLINED if good else None)
    return [b, Obj("derived", ref("base", bw if bw != dw else ()), [("n", call("m"))], where=dw)]


CASES = {}


def case(slug, title, description, features, bad, good, good_mini=None, bad_mini=None):
    CASES[slug] = dict(title=title, description=description, features=features,
                       bad=bad, good=good, bad_mini=bad_mini or bad,
                       good_mini=good_mini or good)


case("mutual-recursion", "Unanticipated mutual recursion",
     "The base/derived pair: base.m calls n, derived overrides n to call m. "
     "The good EO version is the refinement of base that fixes base.m's call of n "
     "statically (^.n ^ v); the good mini-OO version inlines the call instead.",
     ["inheritance", "mutual-recursion"],
     simple(), [Obj("base", None, [("n", write()), ("m", ("static", "n"))], ("x",)),
                Obj("derived", "base", [("n", call("m"))])],
     good_mini=simple(good=True))

case("mutual-recursion-in-chain-of-calls", "Mutual recursion through a chain of calls",
     "base.m calls o, o calls n; derived overrides n to call m, closing a three-step cycle. "
     "The good version has base.o store the value directly.",
     ["inheritance", "mutual-recursion", "call-chain"],
     [base(methods=[("n", write()), ("m", call("o")), ("o", call("n"))]),
      Obj("derived", "base", [("n", call("m"))])],
     [base(methods=[("n", write()), ("m", call("o")), ("o", write())]),
      Obj("derived", "base", [("n", call("m"))])])

case("mutual-recursion-in-factory", "Mutual recursion through an object factory",
     "derived decorates base_factory.get_base rather than a top-level base. "
     "The good version inlines n into get_base.m.",
     ["inheritance", "mutual-recursion", "factory"],
     [Obj("get_base", None, [("n", write()), ("m", call("n"))], ("x",), ("base_factory",)),
      Obj("derived", "base_factory.get_base", [("n", call("m"))])],
     [Obj("get_base", None, INLINED, ("x",), ("base_factory",)),
      Obj("derived", "base_factory.get_base", [("n", call("m"))])])

_CHAIN_TEXT = {
    1: "derived closes the cycle and derived_again inherits it unchanged.",
    2: "derived adds an unrelated method and derived_again closes the cycle.",
    3: "the calling method m is introduced by derived; derived_again overrides n.",
    4: "derived adds o calling m and derived_again overrides n to call o.",
}
_PLACES = {
    "": ((), (), "All objects are top level."),
    "-nested": (NEST, NEST, "All objects live inside very_outer.outer."),
    "-nested-base": (NEST, (), "Only base lives inside very_outer.outer."),
    "-nested-derived": ((), NEST, "base is top level; the derived objects live inside very_outer.outer."),
}
for suffix, (bw, dw, where_text) in _PLACES.items():
    for k in range(1, 5):
        slug = f"mutual-recursion-in-inheritance-chain{suffix}-{k}"
        case(slug, f"Mutual recursion in an inheritance chain ({suffix.strip('-') or 'flat'}, variant {k})",
             f"Chain base <- derived <- derived_again: {_CHAIN_TEXT[k]} {where_text} "
             "The good version removes the call that closes the cycle inside the chain.",
             ["inheritance", "mutual-recursion", "inheritance-chain"] + (["nested"] if suffix else []),
             chain(k, bw, dw), chain(k, bw, dw, good=True))

for suffix, (bw, dw, where_text) in list(_PLACES.items())[1:]:
    case(f"mutual-recursion{suffix}", f"Mutual recursion ({suffix.strip('-')})",
         f"The base/derived pair with nesting. {where_text} The good version inlines n into base.m.",
         ["inheritance", "mutual-recursion", "nested"],
         simple(bw, dw), simple(bw, dw, good=True))

# Branching: the good programs only terminate because of their conditions,
# which a branch-insensitive analysis cannot see.
case("mutual-recursion-with-if-branching1", "Mutual recursion guarded by if (both sides)",
     "base.m calls n only for negative v; derived.n calls m for negative v in the bad "
     "version and only for positive v in the good one, so the good calls never meet.",
     ["inheritance", "mutual-recursion", "branching"],
     [base(methods=[("n", write()), ("m", if_(("<", "v", 0), call("n"), write()))]),
      Obj("derived", "base", [("n", if_(("<", "v", 0), call("m"), write()))])],
     [base(methods=[("n", write()), ("m", if_(("<", "v", 0), call("n"), write()))]),
      Obj("derived", "base", [("n", if_((">", "v", 0), call("m"), write()))])])

case("mutual-recursion-with-if-branching2", "Mutual recursion guarded by if (base side)",
     "base.m calls n only when v > 10. derived.n always calls m in the bad version; "
     "in the good version it calls m only when v < 5, where m does not call back.",
     ["inheritance", "mutual-recursion", "branching"],
     [base(methods=[("n", write()), ("m", if_((">", "v", 10), call("n"), write()))]),
      Obj("derived", "base", [("n", call("m"))])],
     [base(methods=[("n", write()), ("m", if_((">", "v", 10), call("n"), write()))]),
      Obj("derived", "base", [("n", if_(("<", "v", 5), call("m"), write()))])])

case("mutual-recursion-with-if-branching3", "Mutual recursion guarded by an equality test",
     "base.m stores v when it is zero and otherwise calls n. derived.n passes v on in the "
     "bad version and the constant 0 in the good one, so base.m stops at once.",
     ["inheritance", "mutual-recursion", "branching"],
     [base(methods=[("n", write()), ("m", if_(("==", "v", 0), write(), call("n")))]),
      Obj("derived", "base", [("n", call("m"))])],
     [base(methods=[("n", write()), ("m", if_(("==", "v", 0), write(), call("n")))]),
      Obj("derived", "base", [("n", call("m", 0))])])

case("mutual-recursion-with-random-if-branching", "Mutual recursion behind an unpredictable branch",
     "base.o calls m depending on the stored value x, which the analysis cannot predict. "
     "derived.m calls o with v in the bad version; in the good version it calls o with 0 "
     "only for positive v and otherwise stores v, so every run stops.",
     ["inheritance", "mutual-recursion", "branching"],
     [base(methods=[("m", write()), ("o", if_((">", "x", 5), call("m"), write()))]),
      Obj("derived", "base", [("m", call("o"))])],
     [base(methods=[("m", write()), ("o", if_((">", "x", 5), call("m"), write()))]),
      Obj("derived", "base", [("m", if_((">", "v", 0), call("o", 0), write()))])])


class _Literal(str):
    pass


def _literal(dumper, data):
    return dumper.represent_scalar("tag:yaml.org,2002:str", data, style="|")


yaml.add_representer(_Literal, _literal)


def canonical(source):
    return pretty(parse_source(source))


def document(case):
    return {
        "title": case["title"],
        "description": case["description"],
        "features": case["features"],
        "bad": {"test.eo": _Literal(canonical(render_eo(case["bad"]))),
                "test.mini": _Literal(render_mini(case["bad_mini"]))},
        "good": {"test.eo": _Literal(canonical(render_eo(case["good"]))),
                 "test.mini": _Literal(render_mini(case["good_mini"]))},
    }


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else OUT
    out.mkdir(parents=True, exist_ok=True)
    for slug, case in sorted(CASES.items()):
        text = yaml.dump(document(case), sort_keys=False, width=100, allow_unicode=True)
        (out / f"{slug}.yml").write_text(text, encoding="utf-8")
    print(f"wrote {len(CASES)} files to {out}")


if __name__ == "__main__":
    main()
