import pytest

from conftest import data, resolved
from eofragile.eo import parse_source
from eofragile.errors import DecorationCycle, UnresolvedDecoratee
from eofragile.model import (build_context, build_partial_tree, dump_tree, lookup_attribute,
                             resolve)

EXAMPLE_PARTIAL = """\
<root> @ -
  a @ -
    a.new @ b.new
      .f -> g
  b @ -
    b.new @ c.new
  c @ -
    c.new @ -
      .f -> -
      .g -> f
"""

EXAMPLE_RESOLVED = """\
<root> @ -
  a @ -
    a.new @ b.new => b.new
      .f -> g
      .g [c.new] -> f
  b @ -
    b.new @ c.new => c.new
      .f [c.new] -> -
      .g [c.new] -> f
  c @ -
    c.new @ -
      .f -> -
      .g -> f
"""


def tree(src, package=""):
    return resolve(build_context([(parse_source(src), package)]))


def test_partial_tree_dump():
    partial = build_partial_tree(parse_source(data("example.eo")), "")
    assert dump_tree(partial) == EXAMPLE_PARTIAL


def test_resolved_tree_dump():
    assert dump_tree(resolved("example.eo")) == EXAMPLE_RESOLVED


def test_resolve_is_idempotent():
    once = resolved("example.eo")
    assert dump_tree(resolve(once)) == dump_tree(once)


def test_resolve_leaves_partial_tree_alone():
    partial = build_partial_tree(parse_source(data("example.eo")), "")
    resolve(partial)
    assert dump_tree(partial) == EXAMPLE_PARTIAL


def test_package_prefix():
    root = resolved("motivating.eo", "test")
    assert [n.fqn for n in root.children] == ["test.base", "test.derived"]
    owner, info = root.find("test.derived").extended_methods["m"]
    assert owner == "test.base" and info.name == "m"


def test_plus_package_line_is_default():
    partial = build_partial_tree(parse_source("+package org.x\n\n[] > a\n"))
    assert partial.children[0].fqn == "org.x.a"


def test_methods_need_self_or_this_first():
    root = tree("[] > a\n  [self v] > m\n    v > @\n  [this] > n\n    this > @\n  [v] > k\n    v > @\n")
    a = root.find("a")
    assert sorted(a.own_methods) == ["m", "n"]
    assert a.child("k") is not None


def test_call_sites_record_self_passing():
    root = tree("[] > a\n  [self v] > m\n    seq > @\n      self.n self v\n      self.k v\n")
    calls = {c.method_name: c for c in root.find("a").own_methods["m"].calls}
    assert calls["n"].self_passed_first and calls["n"].receiver_is_self
    assert not calls["k"].self_passed_first


def test_shadowed_receiver_is_not_a_call():
    root = tree("[] > a\n  [self] > m\n    [self] > @\n      self.n self > r\n")
    assert root.find("a").own_methods["m"].calls == ()


def test_locator_call_is_static():
    root = tree("[] > a\n  [self] > m\n    ^.n ^ > @\n  [self] > n\n    self > @\n")
    m = root.find("a").own_methods["m"]
    assert m.calls == () and [s.method_name for s in m.static_calls] == ["n"]


def test_decoratee_through_alias_and_seq():
    src = (
        "[] > base\n  [self] > f\n    self > @\n"
        "[] > maker\n  [] > new\n    base > super\n    [] > this\n      super > @\n"
        "    seq > @\n      this\n"
    )
    root = tree(src)
    new = root.find("maker.new")
    assert new.decoratee.fqn == "maker.new.this"
    assert [n.fqn for n in new.chain()] == ["maker.new", "maker.new.this", "base"]
    assert lookup_attribute(new, "f")[0] == "base"


def test_free_parameter_decoratee_is_unknown():
    root = tree("[center radius] > circle\n  center > @\n")
    assert root.find("circle").decoratee is None


def test_dotted_decoratee_is_looked_up_through_members():
    src = "[] > outer\n  [] > base\n    [self] > f\n      self > @\n[] > d\n  outer.base > @\n"
    assert tree(src).find("d").decoratee.fqn == "outer.base"


def test_unresolved_decoratee():
    with pytest.raises(UnresolvedDecoratee) as exc:
        tree("[] > a\n  nowhere > @\n")
    assert exc.value.name == "nowhere" and exc.value.span.line == 2


def test_decoration_cycle():
    with pytest.raises(DecorationCycle) as exc:
        tree("[] > a\n  b > @\n[] > b\n  a > @\n")
    assert set(exc.value.fqns) >= {"a", "b"}


def test_multi_file_context_resolves_across_packages():
    base = parse_source("[] > base\n  [self] > f\n    self.g self > @\n")
    derived = parse_source("[] > derived\n  lib.base > @\n  [self] > g\n    self.f self > @\n")
    root = resolve(build_context([(base, "lib"), (derived, "app")]))
    assert root.find("app.derived").decoratee.fqn == "lib.base"
