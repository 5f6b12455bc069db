"""Rebuilding step sequences from projection sets.

Each stage finds the actions that can open the sequence, picks an allowed
first step according to a strategy, and strips that step off the front of
every entry.  Taking every possible action yields the Foata canonical form;
taking the least class that may go first yields the lexicographical one.
"""

from __future__ import annotations

import enum
from array import array
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, Union

from . import kernels
from .alphabet import REL_SSM, ComtraceAlphabet, is_step, step_key
from .errors import (
    ComtraceError,
    EmptyPossibleSet,
    MalformedProjectionSet,
    NotAllowedStep,
    NotRealizable,
)
from .indivisibility import sin_classes, sink_classes
from .projection import (
    BOTTOM,
    ProjectionSet,
    _check_entry,
    _decode,
    projection_representation,
)
from .stepseq import StepSequence


class Strategy(enum.Enum):
    FOATA = "foata"
    MINLEX = "lex"


Chooser = Callable[[ComtraceAlphabet, list], frozenset]


@dataclass(frozen=True)
class Stage:
    """Diagnostics of one reconstruction stage (all sets hold action names)."""

    index: int
    cpa: frozenset
    cnd: frozenset
    imp: frozenset
    possible: frozenset
    chosen: Optional[frozenset] = None


class ReconstructionState:
    """Read cursors over the entries of a projection set."""

    def __init__(self, p: ProjectionSet):
        alphabet = p.alphabet
        self.alphabet = alphabet
        code = dict(alphabet.index)
        code[BOTTOM] = kernels.BOTTOM_CODE
        syms = array("i")
        pos = array("i")
        end = array("i")
        actions = alphabet.actions
        for i, j in alphabet.pairs:
            pos.append(len(syms))
            syms.extend(code[s] for s in p.entries[(actions[i], actions[j])])
            end.append(len(syms))
        self.syms, self.pos, self.end = syms, pos, end
        self.remaining = len(syms)
        self._mask = array("b", bytes(len(actions)))

    def copy(self) -> "ReconstructionState":
        clone = object.__new__(ReconstructionState)
        clone.alphabet = self.alphabet
        clone.syms, clone.pos, clone.end = self.syms, array("i", self.pos), self.end
        clone.remaining = self.remaining
        clone._mask = array("b", self._mask)
        return clone

    def scan(self) -> tuple:
        """``(cpa, cnd)`` as an index mask and a flat pair list."""
        t = self.alphabet.tables
        return kernels.scan_stage(t.k, t.rel, t.part_ptr, t.part_act, t.part_pid,
                                  self.syms, self.pos, self.end)

    def possible(self) -> tuple:
        """``(cpa, cnd, imp, M)`` in index form."""
        cpa, cnd = self.scan()
        k = len(cpa)
        needed_by = [[] for _ in range(k)]
        for n in range(0, len(cnd), 2):
            needed_by[cnd[n + 1]].append(cnd[n])
        imp = [not c for c in cpa]
        work = [a for a in range(k) if imp[a]]
        while work:
            b = work.pop()
            for a in needed_by[b]:
                if not imp[a]:
                    imp[a] = True
                    work.append(a)
        possible = [a for a in range(k) if not imp[a]]
        return cpa, cnd, imp, possible

    def extract(self, chosen_idx) -> None:
        t = self.alphabet.tables
        mask = self._mask
        for a in chosen_idx:
            mask[a] = 1
        self.remaining -= kernels.advance(t.k, t.rel, t.part_ptr, t.part_act, t.part_pid,
                                          self.pos, chosen_idx, mask)
        for a in chosen_idx:
            mask[a] = 0

    def projection_set(self) -> ProjectionSet:
        syms = self.syms
        flat, starts, lengths = [], [], []
        for p in range(len(self.pos)):
            starts.append(len(flat))
            chunk = syms[self.pos[p]:self.end[p]]
            lengths.append(len(chunk))
            flat.extend(chunk)
        return _decode(self.alphabet, flat, starts, lengths)


def _names(alphabet, idx):
    return frozenset(alphabet.actions[i] for i in idx)


def _stage_info(alphabet, n, cpa, cnd, imp, possible, chosen=None):
    acts = alphabet.actions
    return Stage(
        index=n,
        cpa=frozenset(acts[a] for a, c in enumerate(cpa) if c),
        cnd=frozenset((acts[cnd[i]], acts[cnd[i + 1]]) for i in range(0, len(cnd), 2)),
        imp=frozenset(acts[a] for a, x in enumerate(imp) if x),
        possible=_names(alphabet, possible),
        chosen=chosen,
    )


def conditionally_possible(alphabet: ComtraceAlphabet, p: ProjectionSet) -> tuple:
    """``(cpa, cnd)``: conditionally possible actions and the condition pairs."""
    cpa, cnd = ReconstructionState(_own(alphabet, p)).scan()
    acts = alphabet.actions
    return (
        frozenset(acts[a] for a, c in enumerate(cpa) if c),
        frozenset((acts[cnd[i]], acts[cnd[i + 1]]) for i in range(0, len(cnd), 2)),
    )


def possible_actions(alphabet: ComtraceAlphabet, p: ProjectionSet) -> frozenset:
    """Actions that are not impossible (the set M)."""
    *_, possible = ReconstructionState(_own(alphabet, p)).possible()
    return _names(alphabet, possible)


def _own(alphabet, p):
    if p.alphabet != alphabet:
        raise ComtraceError("projection set is over a different alphabet")
    return p


def _successor_classes(alphabet, classes):
    sin = alphabet.relations.sin
    succ = []
    for i, c in enumerate(classes):
        succ.append({j for j, d in enumerate(classes)
                     if j != i and any((a, b) in sin for a in c for b in d)})
    return succ


def _is_closed(chosen: set, succ) -> bool:
    return all(succ[i] <= chosen for i in chosen)


def allowed_first_steps(alphabet: ComtraceAlphabet, p: ProjectionSet) -> list:
    """Every step that may open a sequence with projection set ``p``.

    These are the unions of ``sin`` classes of M that are closed under
    ``sin`` successors (upper sets of the condensation), sorted by the step
    order.
    """
    possible = possible_actions(alphabet, p)
    if not possible:
        raise EmptyPossibleSet("no action is possible")
    return _allowed(alphabet, possible)


def _allowed(alphabet, possible):
    classes = sin_classes(alphabet, possible)
    succ = _successor_classes(alphabet, classes)
    out = []
    for r in range(1, len(classes) + 1):
        for combo in combinations(range(len(classes)), r):
            chosen = set(combo)
            if _is_closed(chosen, succ):
                step = frozenset().union(*(classes[i] for i in combo))
                if is_step(alphabet, step):
                    out.append(step)
    return sorted(out, key=lambda s: step_key(alphabet, s))


def _check_allowed(alphabet, possible, step):
    step = frozenset(step)
    if not step or not step <= possible:
        return False
    classes = sin_classes(alphabet, possible)
    chosen = {i for i, c in enumerate(classes) if c & step}
    if frozenset().union(*(classes[i] for i in chosen)) != step:
        return False
    return _is_closed(chosen, _successor_classes(alphabet, classes)) and is_step(alphabet, step)


def extract(alphabet: ComtraceAlphabet, p: ProjectionSet, step) -> ProjectionSet:
    """Strip an allowed first step off the front of every entry."""
    state = ReconstructionState(_own(alphabet, p))
    *_, possible = state.possible()
    if not _check_allowed(alphabet, _names(alphabet, possible), step):
        raise NotAllowedStep(f"{sorted(step)} is not an allowed first step")
    state.extract([alphabet.index[a] for a in alphabet.sorted_actions(step)])
    return state.projection_set()


def sanity_check(alphabet: ComtraceAlphabet, p: ProjectionSet) -> None:
    """Structural checks that every genuine projection representation passes."""
    try:
        for key, symbols in p.entries.items():
            _check_entry(alphabet, key, symbols)
    except ComtraceError as exc:
        raise MalformedProjectionSet(str(exc), stage=0, remaining=p.nonempty()) from None
    counts = {}
    for a in alphabet.actions:
        unary = p.entries[(a, a)]
        if any(s != a for s in unary):
            raise MalformedProjectionSet(f"unary entry of {a} contains other symbols",
                                         stage=0, remaining=p.nonempty())
        counts[a] = len(unary)
    for (a, b), symbols in p.entries.items():
        if a == b:
            continue
        bottoms = symbols.count(BOTTOM)
        if symbols.count(a) + bottoms != counts[a] or symbols.count(b) + bottoms != counts[b]:
            raise MalformedProjectionSet(
                f"entry {a} {b} disagrees with the occurrence counts of {a} and {b}",
                stage=0, remaining=p.nonempty())
        if bottoms and alphabet.relation(a, b) != REL_SSM:
            raise MalformedProjectionSet(f"⊥ in entry {a} {b}", stage=0, remaining=p.nonempty())


def reconstruct(
    alphabet: ComtraceAlphabet,
    p: ProjectionSet,
    strategy: Union[Strategy, str, Chooser] = Strategy.FOATA,
    on_stage: Optional[Callable[[Stage], None]] = None,
) -> StepSequence:
    """Rebuild a step sequence whose projection representation is ``p``.

    ``strategy`` is ``Strategy.FOATA``, ``Strategy.MINLEX`` (or their string
    values) or a callable ``chooser(alphabet, allowed_steps) -> step``.
    Raises ``NotRealizable`` when ``p`` represents no comtrace.
    """
    _own(alphabet, p)
    if isinstance(strategy, str):
        strategy = Strategy(strategy)
    sanity_check(alphabet, p)
    state = ReconstructionState(p)
    actions = alphabet.actions
    steps = []
    while state.remaining:
        cpa, cnd, imp, possible = state.possible()
        if not possible:
            _report(on_stage, alphabet, len(steps), cpa, cnd, imp, possible)
            raise NotRealizable(
                f"stuck after {len(steps)} steps: no possible action",
                stage=len(steps), remaining=state.projection_set().nonempty())
        if strategy is Strategy.FOATA:
            chosen = _names(alphabet, possible)
        elif strategy is Strategy.MINLEX:
            names = _names(alphabet, possible)
            classes = sin_classes(alphabet, names)
            chosen = min(sink_classes(alphabet, classes), key=lambda c: step_key(alphabet, c))
        else:
            names = _names(alphabet, possible)
            allowed = _allowed(alphabet, names)
            chosen = frozenset(strategy(alphabet, allowed)) if allowed else None
            if chosen is not None and chosen not in allowed:
                raise NotAllowedStep(f"chooser returned {sorted(chosen)}, not an allowed step")
        if chosen is None or not is_step(alphabet, chosen):
            _report(on_stage, alphabet, len(steps), cpa, cnd, imp, possible)
            raise NotRealizable(
                f"stuck after {len(steps)} steps: possible actions do not form a legal step",
                stage=len(steps), remaining=state.projection_set().nonempty())
        _report(on_stage, alphabet, len(steps), cpa, cnd, imp, possible, chosen)
        state.extract([alphabet.index[a] for a in actions if a in chosen])
        steps.append(chosen)
    result = StepSequence(alphabet, steps, check=False)
    if projection_representation(alphabet, result) != p:
        raise NotRealizable("rebuilt sequence does not reproduce the projection set",
                            stage=len(steps), remaining=p.nonempty())
    return result


def _report(on_stage, alphabet, n, cpa, cnd, imp, possible, chosen=None):
    if on_stage is not None:
        on_stage(_stage_info(alphabet, n, cpa, cnd, imp, possible, chosen))


def foata(alphabet: ComtraceAlphabet, w: StepSequence) -> StepSequence:
    """Foata canonical form (greatest member in the sequence order)."""
    return reconstruct(alphabet, projection_representation(alphabet, w), Strategy.FOATA)


def minlex(alphabet: ComtraceAlphabet, w: StepSequence) -> StepSequence:
    """Lexicographical canonical form (least member in the sequence order)."""
    return reconstruct(alphabet, projection_representation(alphabet, w), Strategy.MINLEX)
