import pytest

from eofragile.eo.lexer import Kind, tokenize
from eofragile.errors import OddIndentation, TabIndentation


def kinds(source):
    return [t.kind for t in tokenize(source)]


def test_single_binding_tokens():
    toks = tokenize("[] > a\n  1 > x\n")
    assert [(t.kind, t.text) for t in toks] == [
        (Kind.LBRACK, "["), (Kind.RBRACK, "]"), (Kind.ARROW, ">"), (Kind.ID, "a"), (Kind.NL, ""),
        (Kind.INDENT, ""), (Kind.OPAQUE, "1"), (Kind.ARROW, ">"), (Kind.ID, "x"), (Kind.NL, ""),
        (Kind.DEDENT, ""),
    ]


def test_spans_are_one_based():
    toks = tokenize("[] > a\n  1 > x\n", "f.eo")
    first_x = [t for t in toks if t.text == "x"][0]
    assert (first_x.span.file, first_x.span.line, first_x.span.column) == ("f.eo", 2, 7)


def test_blank_and_comment_lines_are_skipped():
    src = "# header\n\n[] > a\n\n  # inside\n  1 > x\n"
    assert kinds(src) == kinds("[] > a\n  1 > x\n")


def test_dedent_closes_every_level():
    ks = kinds("[] > a\n  [] > b\n    1 > c\n[] > d\n")
    assert ks.count(Kind.INDENT) == 2
    assert ks.count(Kind.DEDENT) == 2


def test_locator_and_decoratee():
    ks = kinds("[] > a\n  ^.^.f ^.^ > @\n")
    assert Kind.CARET in ks and Kind.AT in ks


def test_tab_indentation_rejected():
    with pytest.raises(TabIndentation) as exc:
        tokenize("[] > a\n\t1 > x\n", "t.eo")
    assert exc.value.span.line == 2


@pytest.mark.parametrize("src", ["[] > a\n 1 > x\n", "[] > a\n      1 > x\n"])
def test_odd_or_skipped_indentation_rejected(src):
    with pytest.raises(OddIndentation):
        tokenize(src)


def test_meta_lines():
    toks = tokenize("+package test\n\n[] > a\n")
    assert toks[0].kind == Kind.META and toks[0].text == "+package test"


def test_crlf_is_normalised():
    assert kinds("[] > a\r\n  1 > x\r\n") == kinds("[] > a\n  1 > x\n")


def test_string_literal_is_opaque():
    toks = tokenize('[] > a\n  "hi there" > s\n')
    assert any(t.kind == Kind.OPAQUE and t.text == '"hi there"' for t in toks)
