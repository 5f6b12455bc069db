import itertools
import random
from collections import deque

import pytest

from comtrace.alphabet import validate_alphabet
from comtrace.errors import NotAStep, NotRadical, ParseError, ReflexivePair, UnknownAction
from comtrace.mztrace import (
    ConcurrentAlphabet,
    format_concurrent_alphabet,
    is_radical,
    load_concurrent_alphabet,
    parse_concurrent_alphabet,
    radical_bridge,
    steptrace_equivalent,
    steptrace_foata,
    steptrace_minlex,
    steptrace_projections,
    trace_equivalent,
    trace_foata,
    trace_foata_blocks,
    trace_minlex,
    trace_projections,
)
from comtrace.oracle import enumerate_class
from comtrace.projection import BOTTOM, projection_representation
from comtrace.reconstruct import foata, minlex
from comtrace.stepseq import StepSequence, lex, parse_stepseq, sstep

from conftest import IND_EXAMPLE, random_alphabet, random_sequence, random_word


@pytest.fixture(scope="module")
def psi():
    return load_concurrent_alphabet(IND_EXAMPLE)


def w(text):
    return tuple(text)


def word_class(psi, word):
    """All words reachable by swapping adjacent independent letters."""
    seen = {tuple(word)}
    todo = deque(seen)
    while todo:
        cur = todo.popleft()
        for i in range(len(cur) - 1):
            if psi.independent(cur[i], cur[i + 1]):
                nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return seen


def test_worked_words(psi):
    assert trace_equivalent(psi, w("abbaacd"), w("abbcaad"))
    p = trace_projections(psi, w("abbaacd"))
    assert p["a", "b"] == w("abbaa")
    assert p["b", "c"] == w("bbc")
    assert p["c", "d"] == w("cd")
    assert p["a", "d"] == w("aaad")
    assert [p[x, x] for x in "abcd"] == [w("aaa"), w("bb"), w("c"), w("d")]
    assert ("a", "c") not in p


def test_word_basics(psi):
    assert trace_equivalent(psi, w("abc"), w("abc"))
    assert not trace_equivalent(psi, w("ab"), w("ba"))
    assert all(v == () for v in trace_projections(psi, ()).values())
    single = trace_projections(psi, w("a"))
    assert all(v == (("a",) if "a" in k else ()) for k, v in single.items())
    assert trace_foata(psi, ()) == ()
    with pytest.raises(UnknownAction):
        trace_equivalent(psi, w("ax"), w("a"))


def test_word_minlex_commutes():
    psi = ConcurrentAlphabet("ab", {frozenset("ab")})
    assert trace_minlex(psi, w("ba")) == w("ab")


def test_foata_blocks_match_oracle(psi):
    blocks = trace_foata_blocks(psi, w("abbcaad"))
    assert blocks == [w("a"), w("b"), w("b"), w("ac"), w("a"), w("d")]
    theta = psi.as_comtrace()
    step_foata = steptrace_foata(psi, sstep(theta, w("abbcaad")))
    assert [tuple(theta.sorted_actions(s)) for s in step_foata.steps] == blocks
    assert enumerate_class(theta, sstep(theta, w("abbcaad")))[-1] == step_foata


def test_alphabet_format(psi):
    assert parse_concurrent_alphabet(format_concurrent_alphabet(psi)) == psi
    with pytest.raises(ParseError):
        parse_concurrent_alphabet("actions a b\nind a\n")
    with pytest.raises(ReflexivePair):
        parse_concurrent_alphabet("actions a b\nind a a\n")
    with pytest.raises(UnknownAction):
        parse_concurrent_alphabet("actions a b\nind a z\n")


def test_step_traces(psi):
    theta = psi.as_comtrace()
    s = lambda t: parse_stepseq(theta, t)  # noqa: E731
    assert steptrace_equivalent(psi, s("(d)(ac)"), s("(d)(a)(c)"))
    assert not steptrace_equivalent(psi, s("(a)(b)"), s("(b)(a)"))
    assert steptrace_minlex(psi, s("(bd)(ac)")) == s("(b)(d)(a)(c)")
    with pytest.raises(NotAStep):
        loose = validate_alphabet("abcd", [("a", "b")])
        steptrace_foata(psi, StepSequence(loose, [{"a", "b"}]))


def test_unique_step_trace_for_word(psi):
    # the step trace whose lexicographical form linearises to a given word
    theta = psi.as_comtrace()
    sigma = w("abbaacd")
    tau = sstep(theta, trace_minlex(psi, sigma))
    assert lex(steptrace_minlex(psi, tau)) == trace_minlex(psi, sigma)
    matching = set()
    for member in word_class(psi, sigma):
        m = steptrace_minlex(psi, sstep(theta, member))
        matching.add(m)
    assert len(matching) == 1


def test_radical(theta):
    assert not is_radical(theta)
    with pytest.raises(NotRadical):
        radical_bridge(theta)
    rad = validate_alphabet("abc", [("a", "b"), ("b", "c")], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")])
    assert is_radical(rad)
    assert radical_bridge(rad).ind == rad.sim


def test_radical_bridge_random():
    rng = random.Random(17)
    for _ in range(150):
        theta = random_alphabet(rng, radical=True)
        psi = radical_bridge(theta)
        x = random_sequence(rng, theta)
        step = StepSequence(psi.as_comtrace(), x.steps)
        p = projection_representation(theta, x)
        q = steptrace_projections(psi, step)
        assert p.entries == q.entries
        assert all(BOTTOM not in e for e in p.entries.values())
        assert foata(theta, x).steps == steptrace_foata(psi, step).steps
        assert minlex(theta, x).steps == steptrace_minlex(psi, step).steps
        assert all(len(s) == 1 for s in minlex(theta, x).steps)


def test_word_ops_against_swap_closure():
    rng = random.Random(23)
    for _ in range(200):
        k = rng.randint(1, 4)
        actions = "abcd"[:k]
        ind = {frozenset(p) for p in itertools.combinations(actions, 2) if rng.random() < 0.5}
        psi = ConcurrentAlphabet(actions, ind)
        u = random_word(rng, actions)
        v = random_word(rng, actions)
        cls = word_class(psi, u)
        assert trace_equivalent(psi, u, v) == (v in cls)
        assert trace_minlex(psi, u) == min(cls, key=lambda x: [psi.index[c] for c in x])
        assert trace_foata(psi, u) in cls
        theta = psi.as_comtrace()
        su = sstep(theta, u)
        # lex of the step-trace Foata form is the word Foata form
        assert lex(steptrace_foata(psi, su)) == trace_foata(psi, u)
        # lex and sstep fixpoint laws
        assert lex(sstep(theta, u)) == u
        f = steptrace_foata(psi, su)
        assert (sstep(theta, lex(f)) == f) == all(len(s) == 1 for s in f.steps)
