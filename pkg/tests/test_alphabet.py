import pytest

from comtrace.alphabet import (
    compare_actions,
    compare_steps,
    enumerate_steps,
    format_alphabet,
    is_step,
    parse_alphabet,
    validate_alphabet,
)
from comtrace.errors import (
    CapExceeded,
    DuplicateAction,
    ParseError,
    ReflexivePair,
    SerNotInSim,
    UnknownAction,
)


def fs(text):
    return frozenset(text)


def test_worked_alphabet_relations(theta):
    rel = theta.relations
    assert rel.ind == {("a", "b"), ("b", "a")}
    assert rel.ssm == {("a", "c"), ("c", "a")}
    assert rel.wdp == {("a", "d"), ("c", "b"), ("d", "c")}
    assert {("b", "d"), ("d", "b")} <= rel.dep
    assert {(x, x) for x in "abcd"} <= rel.dep
    assert rel.dep == {(x, x) for x in "abcd"} | {("b", "d"), ("d", "b")}
    assert rel.sin == rel.ssm | rel.wdp


def test_symmetric_ser_is_radical():
    alph = validate_alphabet("abc", [("a", "b"), ("b", "c")], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")])
    rel = alph.relations
    assert not rel.sin and not rel.ssm and not rel.wdp
    assert rel.ind == alph.ser
    assert alph.is_radical()


def test_empty_sim_is_fully_dependent():
    alph = validate_alphabet("abc")
    assert alph.relations.dep == {(x, y) for x in "abc" for y in "abc"}
    assert not (alph.relations.ind or alph.relations.sin)


@pytest.mark.parametrize(
    "sim, ser, error",
    [
        ([("a", "b")], [("a", "c")], SerNotInSim),
        ([("a", "a")], [], ReflexivePair),
        ([("a", "z")], [], UnknownAction),
    ],
)
def test_validation_errors(sim, ser, error):
    with pytest.raises(error):
        validate_alphabet("abc", sim, ser)


def test_duplicate_action():
    with pytest.raises(DuplicateAction):
        validate_alphabet(["a", "b", "a"])


def test_parse_roundtrip(theta):
    text = format_alphabet(theta)
    assert parse_alphabet(text) == theta
    assert parse_alphabet("# c\nactions x y\nsim x y\n").actions == ("x", "y")


@pytest.mark.parametrize(
    "text",
    ["sim a b\n", "actions a b\nfoo a b\n", "actions a b\nsim a\n", "actions a\nactions b\n", "actions 1x\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_alphabet(text)


def test_is_step(theta):
    assert is_step(theta, "abc")
    assert not is_step(theta, "abd")
    assert is_step(theta, "a")
    assert not is_step(theta, "")
    with pytest.raises(UnknownAction):
        is_step(theta, "az")


def test_enumerate_steps(theta):
    expected = ["a", "b", "c", "d", "ab", "ac", "ad", "bc", "cd", "abc", "acd"]
    assert enumerate_steps(theta) == [fs(s) for s in expected]
    assert enumerate_steps(validate_alphabet("ab")) == [fs("a"), fs("b")]
    full = validate_alphabet("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert len(enumerate_steps(full)) == 7
    with pytest.raises(CapExceeded):
        enumerate_steps(theta, cap=5)


def test_orders(theta):
    assert compare_actions(theta, "a", "d") == -1
    assert compare_steps(theta, "d", "ad") == -1
    assert compare_steps(theta, "ad", "bc") == -1
    assert compare_steps(theta, "ab", "ba") == 0
    assert compare_steps(theta, "cd", "ad") == 1
    with pytest.raises(UnknownAction):
        compare_steps(theta, "a", "q")


def test_listing_order_not_alphabetical():
    alph = validate_alphabet(["z", "y"], [("z", "y")])
    assert compare_actions(alph, "z", "y") == -1
    assert compare_steps(alph, "y", "z") == 1


def test_kernel_tables_shape(theta):
    t = theta.tables
    # 4 unary pairs plus 5 non-independent binary pairs
    assert len(theta.pairs) == 9
    assert len(t.pair_a) == len(t.pair_b) == 9
    assert t.part_ptr[-1] == len(t.part_act)
