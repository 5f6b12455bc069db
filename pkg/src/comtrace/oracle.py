"""Brute-force ground truth: a comtrace as the closure under join and split.

Exponential, meant for sequences of a handful of occurrences.  Everything
else in the package is tested against it.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .alphabet import ComtraceAlphabet
from .errors import AlphabetMismatch, CapExceeded
from .stepseq import StepSequence

DEFAULT_CAP = 10**6


def _serialisable(ser, first, second) -> bool:
    return all((a, b) in ser for a in first for b in second)


def _splits(alphabet, step):
    """Every ordered partition (B, C) of ``step`` with B x C inside ser."""
    ser = alphabet.ser
    members = alphabet.sorted_actions(step)
    for r in range(1, len(members)):
        for chosen in combinations(members, r):
            first = frozenset(chosen)
            second = step - first
            if _serialisable(ser, first, second):
                yield first, second


def neighbours(alphabet: ComtraceAlphabet, steps: tuple):
    """Sequences one join or one split away from ``steps``."""
    ser = alphabet.ser
    for i in range(len(steps) - 1):
        a, b = steps[i], steps[i + 1]
        if _serialisable(ser, a, b):
            yield steps[:i] + (a | b,) + steps[i + 2:]
    for i, step in enumerate(steps):
        for first, second in _splits(alphabet, step):
            yield steps[:i] + (first, second) + steps[i + 1:]


def enumerate_class(alphabet: ComtraceAlphabet, w: StepSequence, cap: int = DEFAULT_CAP) -> list:
    """All members of the comtrace of ``w``, sorted by the sequence order."""
    if w.alphabet != alphabet:
        raise AlphabetMismatch("sequence is not over the given alphabet")
    start = w.steps
    seen = {start}
    frontier = deque([start])
    while frontier:
        current = frontier.popleft()
        for nxt in neighbours(alphabet, current):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(f"class has more than {cap} members")
                frontier.append(nxt)
    members = [StepSequence(alphabet, s, check=False) for s in seen]
    members.sort(key=StepSequence.key)
    return members


def oracle_equivalent(alphabet: ComtraceAlphabet, w: StepSequence, u: StepSequence,
                      cap: int = DEFAULT_CAP) -> bool:
    if u.alphabet != alphabet:
        raise AlphabetMismatch("sequence is not over the given alphabet")
    if w.size != u.size:
        return False
    return u in enumerate_class(alphabet, w, cap)
