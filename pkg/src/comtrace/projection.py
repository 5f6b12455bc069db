"""Projection representation of comtraces and the fast equivalence test.

An entry exists for every unordered pair of actions that is not independent,
including each action paired with itself.  Joint occurrences of a weakly
dependent pair are recorded in their serialisable order; joint occurrences of
a strongly simultaneous pair are recorded as a single ``BOTTOM`` symbol.
"""

from __future__ import annotations

from array import array
from typing import Mapping

from . import kernels
from .alphabet import (
    REL_IND,
    REL_SSM,
    REL_WDP,
    REL_WDP_INV,
    ComtraceAlphabet,
    is_step,
)
from .errors import (
    AlphabetMismatch,
    BottomOnNonSsmPair,
    IndependentPair,
    NotAStep,
    ParseError,
    UnknownAction,
)
from .stepseq import StepSequence

BOTTOM = "⊥"
BOTTOM_ASCII = "!"


def canonical_pair(alphabet: ComtraceAlphabet, a: str, b: str) -> tuple:
    ia, ib = alphabet._idx(a), alphabet._idx(b)
    return (a, b) if ia <= ib else (b, a)


class ProjectionSet:
    """Map from non-independent unordered pairs to symbol tuples.

    Keys are ``(a, b)`` with ``a`` not after ``b`` in listing order; lookups
    accept either orientation.  Missing entries are empty.
    """

    __slots__ = ("alphabet", "entries")

    def __init__(self, alphabet: ComtraceAlphabet, entries: Mapping = (), check: bool = True):
        self.alphabet = alphabet
        full = {(alphabet.actions[i], alphabet.actions[j]): () for i, j in alphabet.pairs}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (a, b), symbols in items:
            key = canonical_pair(alphabet, a, b)
            if key not in full:
                raise IndependentPair(f"{a} and {b} are independent; no projection onto them")
            symbols = tuple(symbols)
            if check:
                _check_entry(alphabet, key, symbols)
            full[key] = symbols
        self.entries = full

    def __getitem__(self, pair):
        a, b = pair
        key = canonical_pair(self.alphabet, a, b)
        try:
            return self.entries[key]
        except KeyError:
            raise IndependentPair(f"{a} and {b} are independent") from None

    def __eq__(self, other):
        if not isinstance(other, ProjectionSet):
            return NotImplemented
        return self.alphabet == other.alphabet and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.values()))

    def __repr__(self):
        inner = ", ".join(f"{a}{b}:{''.join(s)}" for (a, b), s in self.nonempty().items())
        return f"ProjectionSet({inner})"

    def __str__(self):
        return format_projection_set(self)

    def nonempty(self) -> dict:
        return {k: v for k, v in self.entries.items() if v}

    def is_empty(self) -> bool:
        return not any(self.entries.values())


def _check_entry(alphabet, key, symbols):
    a, b = key
    legal = {a, b}
    is_ssm = a != b and alphabet.relation(a, b) == REL_SSM
    for s in symbols:
        if s == BOTTOM:
            if not is_ssm:
                raise BottomOnNonSsmPair(f"⊥ in entry {a} {b}, which is not strongly simultaneous")
        elif s not in legal:
            raise ParseError(f"symbol {s!r} not allowed in entry {a} {b}")


def project_step(alphabet: ComtraceAlphabet, step, a: str, b: str) -> tuple:
    """Projection of a single step onto the pair {a, b}."""
    r = alphabet.relation(a, b)
    if r == REL_IND:
        raise IndependentPair(f"{a} and {b} are independent")
    if not is_step(alphabet, step):
        raise NotAStep(f"{sorted(step)} is not a step")
    has_a, has_b = a in step, b in step
    if a == b or not (has_a and has_b):
        return ((a,) if has_a else ()) + ((b,) if has_b and a != b else ())
    if r == REL_WDP:
        return (b, a)
    if r == REL_WDP_INV:
        return (a, b)
    return (BOTTOM,)


def encode(w: StepSequence) -> tuple:
    """``(acts, offsets)`` integer arrays for the kernels."""
    index = w.alphabet.index
    acts = array("i")
    offsets = array("i", [0])
    for s in w.steps:
        acts.extend(index[a] for a in s)
        offsets.append(len(acts))
    return acts, offsets


def projection_representation(alphabet: ComtraceAlphabet, w: StepSequence) -> ProjectionSet:
    """Compute every projection of ``w`` in one streaming pass, O(nk)."""
    if w.alphabet != alphabet:
        raise AlphabetMismatch("sequence is not over the given alphabet")
    t = alphabet.tables
    acts, offsets = encode(w)
    syms, starts, lengths = kernels.project_codes(
        t.k, t.rel, t.part_ptr, t.part_act, t.part_pid, t.pair_a, t.pair_b, acts, offsets
    )
    return _decode(alphabet, syms, starts, lengths)


def _decode(alphabet, syms, starts, lengths):
    # code -1 (bottom) picks the last element
    names = list(alphabet.actions) + [BOTTOM]
    pick = names.__getitem__
    actions = alphabet.actions
    entries = {}
    for p, (i, j) in enumerate(alphabet.pairs):
        st = starts[p]
        entries[(actions[i], actions[j])] = tuple(map(pick, syms[st:st + lengths[p]]))
    ps = ProjectionSet.__new__(ProjectionSet)
    ps.alphabet = alphabet
    ps.entries = entries
    return ps


class ProjectionBuilder:
    """Online projection: push steps one at a time, snapshot at any point.

    Each pair remembers the last step that touched it so a joint occurrence
    contributes its two-symbol fragment exactly once.
    """

    def __init__(self, alphabet: ComtraceAlphabet):
        self.alphabet = alphabet
        self._lists = [[] for _ in alphabet.pairs]
        self._last = [-1] * len(alphabet.pairs)
        self._count = 0

    def push(self, step) -> None:
        alphabet = self.alphabet
        if not is_step(alphabet, step):
            raise NotAStep(f"{sorted(step)} is not a step")
        s = self._count
        index, k, rel = alphabet.index, len(alphabet.actions), alphabet.rel
        members = {index[a] for a in step}
        for a in members:
            for b, p in alphabet.partners[a]:
                out = self._lists[p]
                if b == a or b not in members:
                    out.append(a)
                elif self._last[p] != s:
                    self._last[p] = s
                    r = rel[a * k + b]
                    if r == REL_WDP:
                        out.extend((b, a))
                    elif r == REL_WDP_INV:
                        out.extend((a, b))
                    else:
                        out.append(kernels.BOTTOM_CODE)
        self._count += 1

    def extend(self, steps) -> "ProjectionBuilder":
        for step in steps:
            self.push(step)
        return self

    def snapshot(self) -> ProjectionSet:
        syms, starts, lengths = [], [], []
        for lst in self._lists:
            starts.append(len(syms))
            lengths.append(len(lst))
            syms.extend(lst)
        return _decode(self.alphabet, syms, starts, lengths)


def equivalent(alphabet: ComtraceAlphabet, w: StepSequence, u: StepSequence) -> bool:
    """Comtrace equivalence by comparing projection representations."""
    if w.alphabet != alphabet or u.alphabet != alphabet:
        raise AlphabetMismatch("sequences are not over the given alphabet")
    if w.size != u.size:
        return False
    return projection_representation(alphabet, w) == projection_representation(alphabet, u)


def compare_projection_sets(p: ProjectionSet, q: ProjectionSet) -> bool:
    if p.alphabet != q.alphabet:
        raise AlphabetMismatch("projection sets are over different alphabets")
    return p.entries == q.entries


# ---- text format -------------------------------------------------------------


def format_projection_set(p: ProjectionSet) -> str:
    lines = []
    for (a, b), symbols in p.entries.items():
        if symbols:
            body = " ".join(BOTTOM_ASCII if s == BOTTOM else s for s in symbols)
            lines.append(f"proj {a} {b} : {body}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_projection_set(alphabet: ComtraceAlphabet, text: str) -> ProjectionSet:
    """Parse ``proj <a> <b> : <sym>...`` lines; ``!`` stands for ⊥."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        words = head.split()
        if not sep or len(words) != 3 or words[0] != "proj":
            raise ParseError("expected 'proj <a> <b> : <symbols>'", lineno)
        a, b = words[1], words[2]
        for x in (a, b):
            if x not in alphabet.index:
                raise UnknownAction(f"unknown action {x!r} (line {lineno})")
        key = canonical_pair(alphabet, a, b)
        if key in entries:
            raise ParseError(f"duplicate entry for {a} {b}", lineno)
        if alphabet.relation(a, b) == REL_IND:
            raise IndependentPair(f"line {lineno}: {a} and {b} are independent")
        symbols = tuple(BOTTOM if s in (BOTTOM_ASCII, BOTTOM) else s for s in body.split())
        try:
            _check_entry(alphabet, key, symbols)
        except ParseError as exc:
            raise ParseError(exc.reason, lineno) from None
        entries[key] = symbols
    return ProjectionSet(alphabet, entries, check=False)


def load_projection_set(alphabet: ComtraceAlphabet, path) -> ProjectionSet:
    with open(path, encoding="utf-8") as fh:
        return parse_projection_set(alphabet, fh.read())


__all__ = [
    "BOTTOM",
    "ProjectionBuilder",
    "ProjectionSet",
    "compare_projection_sets",
    "equivalent",
    "format_projection_set",
    "load_projection_set",
    "parse_projection_set",
    "project_step",
    "projection_representation",
]
