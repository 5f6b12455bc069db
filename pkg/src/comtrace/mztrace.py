"""Mazurkiewicz traces over words and step traces over step sequences.

Word traces get a small standalone implementation (projections, Foata blocks
by occurrence level, least-letter-first lexicographic form).  Step traces are
comtraces whose sim and ser both equal the independence relation, so they go
through the comtrace engine unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .alphabet import NAME_RE, ComtraceAlphabet, _directive_lines
from .errors import (
    DuplicateAction,
    NotRadical,
    ParseError,
    ReflexivePair,
    UnknownAction,
)
from .projection import ProjectionSet, equivalent, projection_representation
from .reconstruct import foata, minlex
from .stepseq import StepSequence

Word = tuple


@dataclass(frozen=True)
class ConcurrentAlphabet:
    """Actions in listing order plus a symmetric, irreflexive independence."""

    actions: tuple
    ind: frozenset  # of 2-element frozensets
    index: dict = field(init=False, compare=False, repr=False)
    pairs: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        if len(set(self.actions)) != len(self.actions):
            raise DuplicateAction("actions listed twice")
        index = {a: i for i, a in enumerate(self.actions)}
        cleaned = set()
        for pair in self.ind:
            members = tuple(pair)
            if len(members) != 2 or members[0] == members[1]:
                raise ReflexivePair(f"ind entry {sorted(pair)} is reflexive")
            for x in members:
                if x not in index:
                    raise UnknownAction(f"unknown action {x!r}")
            cleaned.add(frozenset(members))
        object.__setattr__(self, "ind", frozenset(cleaned))
        object.__setattr__(self, "index", index)
        dep_pairs = tuple(
            (a, b) for i, a in enumerate(self.actions) for b in self.actions[i:]
            if a == b or frozenset((a, b)) not in cleaned
        )
        object.__setattr__(self, "pairs", dep_pairs)

    def __hash__(self):
        return hash((self.actions, self.ind))

    def independent(self, a, b) -> bool:
        return frozenset((a, b)) in self.ind

    def check_word(self, word) -> None:
        for a in word:
            if a not in self.index:
                raise UnknownAction(f"unknown action {a!r}")

    def as_comtrace(self) -> ComtraceAlphabet:
        """The comtrace alphabet whose comtraces are exactly the step traces."""
        cached = self.__dict__.get("_embedded")
        if cached is None:
            ser = {(a, b) for p in self.ind for a in p for b in p if a != b}
            cached = ComtraceAlphabet(self.actions, self.ind, frozenset(ser))
            object.__setattr__(self, "_embedded", cached)
        return cached


def parse_concurrent_alphabet(text: str) -> ConcurrentAlphabet:
    """Line format: one ``actions`` line, then ``ind <a> <b>`` lines."""
    actions = None
    ind = []
    for lineno, words in _directive_lines(text):
        head, args = words[0], words[1:]
        if head == "actions":
            if actions is not None:
                raise ParseError("second 'actions' line", lineno)
            if not args:
                raise ParseError("'actions' needs at least one name", lineno)
            actions = args
        elif head == "ind":
            if len(args) != 2:
                raise ParseError("'ind' takes exactly two actions", lineno)
            ind.append(frozenset(args) if args[0] != args[1] else (args[0],))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
        for name in args:
            if not NAME_RE.match(name):
                raise ParseError(f"invalid action name {name!r}", lineno)
    if actions is None:
        raise ParseError("missing 'actions' line")
    return ConcurrentAlphabet(tuple(actions), frozenset(ind))


def load_concurrent_alphabet(path) -> ConcurrentAlphabet:
    with open(path, encoding="utf-8") as fh:
        return parse_concurrent_alphabet(fh.read())


def format_concurrent_alphabet(psi: ConcurrentAlphabet) -> str:
    idx = psi.index
    lines = ["actions " + " ".join(psi.actions)]
    for a, b in sorted((tuple(sorted(p, key=idx.get)) for p in psi.ind),
                       key=lambda p: (idx[p[0]], idx[p[1]])):
        lines.append(f"ind {a} {b}")
    return "\n".join(lines) + "\n"


# ---- words -----------------------------------------------------------------


def trace_projections(psi: ConcurrentAlphabet, word: Sequence[str]) -> dict:
    """Subword on each dependent pair (unary pairs included)."""
    psi.check_word(word)
    return {(a, b): tuple(x for x in word if x == a or x == b) for a, b in psi.pairs}


def trace_equivalent(psi: ConcurrentAlphabet, u: Sequence[str], w: Sequence[str]) -> bool:
    psi.check_word(u)
    psi.check_word(w)
    if len(u) != len(w):
        return False
    return trace_projections(psi, u) == trace_projections(psi, w)


def trace_foata_blocks(psi: ConcurrentAlphabet, word: Sequence[str]) -> list:
    """Foata factorisation as a list of blocks (tuples in listing order).

    An occurrence lands one level above the highest earlier occurrence it
    depends on; blocks are the levels.
    """
    psi.check_word(word)
    top = {}  # action -> highest level reached by its occurrences so far
    blocks = []
    for x in word:
        level = 0
        for y, lv in top.items():
            if lv >= level and not psi.independent(x, y):
                level = lv + 1
        top[x] = level
        if level == len(blocks):
            blocks.append([])
        blocks[level].append(x)
    idx = psi.index
    return [tuple(sorted(b, key=idx.__getitem__)) for b in blocks]


def trace_foata(psi: ConcurrentAlphabet, word: Sequence[str]) -> Word:
    return tuple(x for block in trace_foata_blocks(psi, word) for x in block)


def trace_minlex(psi: ConcurrentAlphabet, word: Sequence[str]) -> Word:
    """Least equivalent word: repeatedly pull forward the least letter that can move."""
    psi.check_word(word)
    rest = list(word)
    idx = psi.index
    out = []
    while rest:
        best = None
        blocked = set()
        for i, x in enumerate(rest):
            if x not in blocked and (best is None or idx[x] < idx[rest[best]]):
                best = i
            # letters depending on x cannot pass it
            blocked.update(y for y in psi.actions if not psi.independent(x, y))
            if len(blocked) == len(psi.actions):
                break
        out.append(rest.pop(best))
    return tuple(out)


# ---- step traces -------------------------------------------------------------


def _embedded(psi: ConcurrentAlphabet, w: StepSequence) -> tuple:
    theta = psi.as_comtrace()
    if w.alphabet != theta:
        w = StepSequence(theta, w.steps)
    return theta, w


def steptrace_equivalent(psi: ConcurrentAlphabet, w: StepSequence, u: StepSequence) -> bool:
    theta, w = _embedded(psi, w)
    _, u = _embedded(psi, u)
    return equivalent(theta, w, u)


def steptrace_projections(psi: ConcurrentAlphabet, w: StepSequence) -> ProjectionSet:
    theta, w = _embedded(psi, w)
    return projection_representation(theta, w)


def steptrace_foata(psi: ConcurrentAlphabet, w: StepSequence) -> StepSequence:
    theta, w = _embedded(psi, w)
    return foata(theta, w)


def steptrace_minlex(psi: ConcurrentAlphabet, w: StepSequence) -> StepSequence:
    theta, w = _embedded(psi, w)
    return minlex(theta, w)


# ---- radical comtraces -------------------------------------------------------


def is_radical(alphabet: ComtraceAlphabet) -> bool:
    return not alphabet.relations.sin


def radical_bridge(alphabet: ComtraceAlphabet) -> ConcurrentAlphabet:
    """The concurrent alphabet whose step traces are the comtraces of ``alphabet``."""
    if not is_radical(alphabet):
        raise NotRadical("alphabet has semi-independent pairs")
    return ConcurrentAlphabet(alphabet.actions, alphabet.sim)

