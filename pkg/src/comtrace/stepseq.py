"""Step sequences over a comtrace alphabet, their text form and orders."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .alphabet import (
    NAME_RE,
    ComtraceAlphabet,
    format_step,
    is_step,
    sequence_key,
)
from .errors import AlphabetMismatch, NotAStep, ParseError, UnknownAction

LAMBDA = "λ"


class StepSequence:
    """An immutable finite sequence of steps bound to one alphabet.

    Steps are stored as frozensets of action names.  Two sequences are equal
    when their alphabets and steps are equal.
    """

    __slots__ = ("alphabet", "steps", "_hash")

    def __init__(self, alphabet: ComtraceAlphabet, steps: Iterable = (), check: bool = True):
        steps = tuple(frozenset(s) for s in steps)
        if check:
            for s in steps:
                if not is_step(alphabet, s):
                    raise NotAStep(f"{format_step(alphabet, s)} is not a step")
        self.alphabet = alphabet
        self.steps = steps
        self._hash = None

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return StepSequence(self.alphabet, self.steps[item], check=False)
        return self.steps[item]

    def __eq__(self, other):
        if not isinstance(other, StepSequence):
            return NotImplemented
        return self.steps == other.steps and (
            self.alphabet is other.alphabet or self.alphabet == other.alphabet
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.steps)
        return self._hash

    def __add__(self, other):
        return concat(self, other)

    def __str__(self):
        return format_stepseq(self)

    def __repr__(self):
        return f"StepSequence({format_stepseq(self, show_lambda=True)!r})"

    @property
    def size(self) -> int:
        """Total number of action occurrences."""
        return sum(len(s) for s in self.steps)

    def key(self) -> tuple:
        return sequence_key(self.alphabet, self.steps)


def parse_stepseq(alphabet: ComtraceAlphabet, text: str) -> StepSequence:
    """Parse ``(a b)(c)``-style text.

    Whitespace inside a group is optional when every action name is a single
    character, so ``(ab)(c)`` is accepted for such alphabets.
    """
    stripped = text.strip()
    if stripped in ("", LAMBDA):
        return StepSequence(alphabet, ())
    compact = alphabet.single_char()
    steps = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(f"expected '(' but found {ch!r}", i)
        close = text.find(")", i + 1)
        if close < 0:
            raise ParseError("unterminated step", i)
        body = text[i + 1:close]
        if "(" in body:
            raise ParseError("nested '('", i + 1 + body.index("("))
        if compact:
            names = [c for c in body if not c.isspace()]
        else:
            names = body.split()
        if not names:
            raise ParseError("empty step", i)
        for name in names:
            if not NAME_RE.match(name):
                raise ParseError(f"invalid action name {name!r}", i)
            if name not in alphabet.index:
                raise UnknownAction(f"unknown action {name!r}")
        if len(set(names)) != len(names):
            dup = next(a for a, c in Counter(names).items() if c > 1)
            raise ParseError(f"action {dup!r} repeated within a step", i)
        step = frozenset(names)
        if not is_step(alphabet, step):
            raise NotAStep(f"{format_step(alphabet, step)} is not a step")
        steps.append(step)
        i = close + 1
    return StepSequence(alphabet, steps, check=False)


def format_stepseq(w: StepSequence, show_lambda: bool = False) -> str:
    if not w.steps:
        return LAMBDA if show_lambda else ""
    return "".join(format_step(w.alphabet, s) for s in w.steps)


def _same_alphabet(w, u):
    if not (w.alphabet is u.alphabet or w.alphabet == u.alphabet):
        raise AlphabetMismatch("step sequences are over different alphabets")


def concat(w: StepSequence, u: StepSequence) -> StepSequence:
    _same_alphabet(w, u)
    return StepSequence(w.alphabet, w.steps + u.steps, check=False)


def alph(w: StepSequence) -> frozenset:
    return frozenset().union(*w.steps)


def occurrences(w: StepSequence, action: str) -> int:
    w.alphabet.check_actions([action])
    return sum(1 for s in w.steps if action in s)


def step_alphabet(w: StepSequence) -> frozenset:
    return frozenset(w.steps)


def lex(w: StepSequence) -> tuple:
    """Linearise every step in listing order and concatenate (a word)."""
    sort = w.alphabet.sorted_actions
    return tuple(a for s in w.steps for a in sort(s))


def sstep(alphabet: ComtraceAlphabet, word: Sequence[str]) -> StepSequence:
    """Wrap each action of a word as a singleton step."""
    alphabet.check_actions(word)
    return StepSequence(alphabet, (frozenset((a,)) for a in word), check=False)


def compare_sequences(alphabet: ComtraceAlphabet, w: StepSequence, u: StepSequence) -> int:
    _same_alphabet(w, u)
    if w.alphabet != alphabet:
        raise AlphabetMismatch("sequence is not over the given alphabet")
    kw, ku = w.key(), u.key()
    return (kw > ku) - (kw < ku)


# ---- words ------------------------------------------------------------------


def parse_word(actions: Sequence[str], text: str) -> tuple:
    """Parse a word; character-wise when all names are one character long."""
    known = set(actions)
    text = text.strip()
    if text in ("", "ε"):
        return ()
    if all(len(a) == 1 for a in actions):
        names = [c for c in text if not c.isspace()]
    else:
        names = text.split()
    for name in names:
        if name not in known:
            raise UnknownAction(f"unknown action {name!r}")
    return tuple(names)


def format_word(actions: Sequence[str], word: Sequence[str]) -> str:
    if all(len(a) == 1 for a in actions):
        return "".join(word)
    return " ".join(word)
