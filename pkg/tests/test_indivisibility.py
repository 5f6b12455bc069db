import itertools
import random

import pytest

from comtrace.alphabet import enumerate_steps, validate_alphabet
from comtrace.errors import AlreadyIndivisible, NotAStep, NotIndivisible
from comtrace.indivisibility import (
    divide_step,
    indiv_alphabet,
    indiv_dependence,
    is_indivisible,
    minlex_step,
    sin_classes,
    split,
    step_equiv_classes,
    strongly_connected,
)
from comtrace.oracle import enumerate_class, oracle_equivalent
from comtrace.projection import projection_representation
from comtrace.stepseq import StepSequence

from conftest import random_alphabet, random_sequence


def fs(text):
    return frozenset(text)


def test_classes(theta):
    assert set(step_equiv_classes(theta, "abc").classes) == {fs("b"), fs("ac")}
    assert set(step_equiv_classes(theta, "ab").classes) == {fs("a"), fs("b")}
    assert step_equiv_classes(theta, "d").classes == (fs("d"),)
    with pytest.raises(NotAStep):
        step_equiv_classes(theta, "bd")


def test_indivisible(theta):
    assert is_indivisible(theta, "ac")
    assert not is_indivisible(theta, "abc")
    assert is_indivisible(theta, "acd")
    assert all(is_indivisible(theta, x) for x in "abcd")
    assert indiv_alphabet(theta) == [fs(s) for s in ["a", "b", "c", "d", "ac", "acd"]]


def test_indiv_alphabet_edge_cases():
    radical = validate_alphabet("abc", [("a", "b")], [("a", "b"), ("b", "a")])
    assert indiv_alphabet(radical) == [fs("a"), fs("b"), fs("c")]
    glued = validate_alphabet("ab", [("a", "b")], [])
    assert fs("ab") in indiv_alphabet(glued)


def test_indiv_dependence(theta):
    assert indiv_dependence(theta, fs("a"), fs("b")) == "independent"
    assert indiv_dependence(theta, fs("a"), fs("d")) == "dependent"
    assert indiv_dependence(theta, fs("ac"), fs("b")) == "dependent"
    with pytest.raises(NotIndivisible):
        indiv_dependence(theta, fs("abc"), fs("d"))


def test_divide_step(theta):
    assert divide_step(theta, "abc") == (fs("b"), fs("ac"))
    assert divide_step(theta, "ab") == (fs("a"), fs("b"))
    with pytest.raises(AlreadyIndivisible):
        divide_step(theta, "acd")


def test_minlex_step_and_split(theta, seq):
    assert minlex_step(theta, "abc") == seq("(b)(ac)")
    assert minlex_step(theta, "ab") == seq("(a)(b)")
    assert minlex_step(theta, "ac") == seq("(ac)")
    assert split(theta, seq("(d)(ab)")) == seq("(d)(a)(b)")
    assert split(theta, seq("(d)(a)(b)")) == seq("(d)(a)(b)")
    assert split(theta, seq("(abc)")) == seq("(b)(ac)")


def test_strongly_connected_cycle():
    succ = {1: [2], 2: [3], 3: [1], 4: [1]}
    comps = strongly_connected([1, 2, 3, 4], succ.__getitem__)
    assert sorted(map(sorted, comps)) == [[1, 2, 3], [4]]


def test_random_properties():
    rng = random.Random(3)
    for _ in range(150):
        theta = random_alphabet(rng)
        ser = theta.ser
        for step in enumerate_steps(theta):
            classes = sin_classes(theta, step)
            assert frozenset().union(*classes) == step
            assert sum(map(len, classes)) == len(step)
            least = enumerate_class(theta, StepSequence(theta, [step]))[0]
            assert minlex_step(theta, step) == least
            if len(classes) > 1:
                b, c = divide_step(theta, step)
                assert all((x, y) in ser for x in b for y in c)
                assert oracle_equivalent(theta, StepSequence(theta, [step]), StepSequence(theta, [b, c]))
        w = random_sequence(rng, theta)
        sw = split(theta, w)
        assert oracle_equivalent(theta, w, sw)
        assert split(theta, sw) == sw


def test_indivisible_members_form_a_trace():
    # all-indivisible members are closed under swapping adjacent independent
    # indivisible steps, and share their projections
    rng = random.Random(8)
    for _ in range(80):
        theta = random_alphabet(rng)
        w = random_sequence(rng, theta, 5)
        members = enumerate_class(theta, w)
        indiv = {m.steps for m in members if all(is_indivisible(theta, s) for s in m.steps)}
        assert indiv
        for steps in indiv:
            for i in range(len(steps) - 1):
                a, b = steps[i], steps[i + 1]
                if indiv_dependence(theta, a, b) == "independent":
                    swapped = steps[:i] + (b, a) + steps[i + 2:]
                    assert swapped in indiv
        reps = {projection_representation(theta, StepSequence(theta, s, check=False)) for s in indiv}
        assert len(reps) == 1


def test_two_cycle_glues():
    theta = validate_alphabet("abc", [(x, y) for x, y in itertools.combinations("abc", 2)], [("b", "c")])
    assert set(step_equiv_classes(theta, "abc").classes) == {fs("abc")}
