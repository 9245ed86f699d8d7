"""Regression corpus: outcome pattern and detection messages of the EO programs."""

import pytest

from conftest import CORPUS
from eofragile.bench import load_test_file, run_case

INHERITANCE = CORPUS / "inheritance"
BRANCHING = {"mutual-recursion-with-if-branching1", "mutual-recursion-with-if-branching2",
             "mutual-recursion-with-if-branching3", "mutual-recursion-with-random-if-branching"}
# same cycle, reported from a different starting link (see rotated() below)
ROTATED = {"mutual-recursion-in-chain-of-calls-bad"}

# expected messages per program; every program not listed here reports nothing
EXPECTED_MESSAGES = {
    'mutual-recursion-bad': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-chain-of-calls-bad': [
        'test.derived: test.derived.o (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base") -> test.derived.o (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-factory-bad': [
        'test.derived: test.derived.m (was last redefined in "test.base_factory.get_base") -> test.derived.n -> test.derived.m (was last redefined in "test.base_factory.get_base")',
    ],
    'mutual-recursion-in-inheritance-chain-1-bad': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
        'test.derived_again: test.derived_again.m (was last redefined in "test.base") -> test.derived_again.n (was last redefined in "test.derived") -> test.derived_again.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-inheritance-chain-2-bad': [
        'test.derived_again: test.derived_again.m (was last redefined in "test.base") -> test.derived_again.n -> test.derived_again.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-inheritance-chain-3-bad': [
        'test.derived_again: test.derived_again.m (was last redefined in "test.derived") -> test.derived_again.n -> test.derived_again.m (was last redefined in "test.derived")',
    ],
    'mutual-recursion-in-inheritance-chain-4-bad': [
        'test.derived_again: test.derived_again.m (was last redefined in "test.base") -> test.derived_again.n -> test.derived_again.o (was last redefined in "test.derived") -> test.derived_again.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-1-bad': [
        'test.very_outer.outer.derived: test.very_outer.outer.derived.m (was last redefined in "test.very_outer.outer.base") -> test.very_outer.outer.derived.n -> test.very_outer.outer.derived.m (was last redefined in "test.very_outer.outer.base")',
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.base") -> test.very_outer.outer.derived_again.n (was last redefined in "test.very_outer.outer.derived") -> test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-2-bad': [
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.base") -> test.very_outer.outer.derived_again.n -> test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-3-bad': [
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.derived") -> test.very_outer.outer.derived_again.n -> test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.derived")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-4-bad': [
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.base") -> test.very_outer.outer.derived_again.n -> test.very_outer.outer.derived_again.o (was last redefined in "test.very_outer.outer.derived") -> test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-base-1-bad': [
        'test.derived: test.derived.m (was last redefined in "test.very_outer.outer.base") -> test.derived.n -> test.derived.m (was last redefined in "test.very_outer.outer.base")',
        'test.derived_again: test.derived_again.m (was last redefined in "test.very_outer.outer.base") -> test.derived_again.n (was last redefined in "test.derived") -> test.derived_again.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-base-2-bad': [
        'test.derived_again: test.derived_again.m (was last redefined in "test.very_outer.outer.base") -> test.derived_again.n -> test.derived_again.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-base-3-bad': [
        'test.derived_again: test.derived_again.m (was last redefined in "test.derived") -> test.derived_again.n -> test.derived_again.m (was last redefined in "test.derived")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-base-4-bad': [
        'test.derived_again: test.derived_again.m (was last redefined in "test.very_outer.outer.base") -> test.derived_again.n -> test.derived_again.o (was last redefined in "test.derived") -> test.derived_again.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-derived-1-bad': [
        'test.very_outer.outer.derived: test.very_outer.outer.derived.m (was last redefined in "test.base") -> test.very_outer.outer.derived.n -> test.very_outer.outer.derived.m (was last redefined in "test.base")',
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.base") -> test.very_outer.outer.derived_again.n (was last redefined in "test.very_outer.outer.derived") -> test.very_outer.outer.derived_again.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-derived-2-bad': [
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.base") -> test.very_outer.outer.derived_again.n -> test.very_outer.outer.derived_again.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-derived-3-bad': [
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.derived") -> test.very_outer.outer.derived_again.n -> test.very_outer.outer.derived_again.m (was last redefined in "test.very_outer.outer.derived")',
    ],
    'mutual-recursion-in-inheritance-chain-nested-derived-4-bad': [
        'test.very_outer.outer.derived_again: test.very_outer.outer.derived_again.m (was last redefined in "test.base") -> test.very_outer.outer.derived_again.n -> test.very_outer.outer.derived_again.o (was last redefined in "test.very_outer.outer.derived") -> test.very_outer.outer.derived_again.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-nested-bad': [
        'test.very_outer.outer.derived: test.very_outer.outer.derived.m (was last redefined in "test.very_outer.outer.base") -> test.very_outer.outer.derived.n -> test.very_outer.outer.derived.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-nested-base-bad': [
        'test.derived: test.derived.m (was last redefined in "test.very_outer.outer.base") -> test.derived.n -> test.derived.m (was last redefined in "test.very_outer.outer.base")',
    ],
    'mutual-recursion-nested-derived-bad': [
        'test.very_outer.outer.derived: test.very_outer.outer.derived.m (was last redefined in "test.base") -> test.very_outer.outer.derived.n -> test.very_outer.outer.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-if-branching1-bad': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-if-branching1-good': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-if-branching2-bad': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-if-branching2-good': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-if-branching3-bad': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-if-branching3-good': [
        'test.derived: test.derived.m (was last redefined in "test.base") -> test.derived.n -> test.derived.m (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-random-if-branching-bad': [
        'test.derived: test.derived.o (was last redefined in "test.base") -> test.derived.m -> test.derived.o (was last redefined in "test.base")',
    ],
    'mutual-recursion-with-random-if-branching-good': [
        'test.derived: test.derived.o (was last redefined in "test.base") -> test.derived.m -> test.derived.o (was last redefined in "test.base")',
    ],
}


def stems():
    return sorted(p.stem for p in INHERITANCE.glob("*.yml"))


def links(message):
    _, chain = message.split(": ", 1)
    return chain.split(" -> ")[:-1]


def rotated(a, b):
    if a.split(": ")[0] != b.split(": ")[0]:
        return False
    x, y = links(a), links(b)
    return len(x) == len(y) and any(x[i:] + x[:i] == y for i in range(len(x)))


def test_corpus_has_26_files():
    assert len(stems()) == 26
    for stem in stems():
        case = load_test_file(INHERITANCE / f"{stem}.yml")
        assert {n.rsplit(".", 1)[1] for n in case.bad} == {"eo", "mini"}
        assert {n.rsplit(".", 1)[1] for n in case.good} == {"eo", "mini"}


def test_listed_programs_exist():
    names = {f"{s}-{k}" for s in stems() for k in ("bad", "good")}
    assert set(EXPECTED_MESSAGES) <= names


@pytest.mark.parametrize("stem", stems())
def test_outcome_pattern(stem):
    result = run_case(INHERITANCE / f"{stem}.yml")
    for analyzer in ("eo", "mini"):
        bad, good = result.outcome(analyzer, "bad"), result.outcome(analyzer, "good")
        assert bad.value == "TP"
        assert good.value == ("FP" if stem in BRANCHING else "TN")


@pytest.mark.parametrize("stem", stems())
def test_eo_messages(stem):
    result = run_case(INHERITANCE / f"{stem}.yml", ("eo",))
    for r in result.results:
        program = f"{stem}-{r.kind}"
        want = EXPECTED_MESSAGES.get(program, [])
        if program in ROTATED:
            assert len(r.messages) == len(want)
            assert all(rotated(g, w) for g, w in zip(r.messages, want))
            assert list(r.messages) != want
        else:
            assert list(r.messages) == want


def test_rotation_helper():
    a = "o: o.a (was last redefined in \"p\") -> o.b -> o.a (was last redefined in \"p\")"
    b = "o: o.b -> o.a (was last redefined in \"p\") -> o.b"
    assert rotated(a, b) and not rotated(a, "x: " + b.split(": ", 1)[1])
