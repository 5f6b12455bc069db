"""Indivisible steps and the split operator.

Inside a step, two actions are glued together when each reaches the other
through the semi-independence relation.  The glued classes are the strongly
connected components of ``sin`` restricted to the step.  A class may be
executed before the rest of the step exactly when no ``sin`` edge leaves it
towards the rest.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .alphabet import ComtraceAlphabet, enumerate_steps, is_step, step_key
from .errors import AlreadyIndivisible, NotAStep, NotIndivisible
from .stepseq import StepSequence


class StepPartition(NamedTuple):
    step: frozenset
    classes: tuple  # frozensets, sorted by the step order


def strongly_connected(vertices, successors) -> list:
    """Tarjan's algorithm, iterative.  Returns a list of vertex sets."""
    index, low, on_stack = {}, {}, set()
    stack, out = [], []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.add(x)
                    if x == v:
                        break
                out.append(frozenset(comp))
    return out


def sin_classes(alphabet: ComtraceAlphabet, actions: Iterable[str]) -> tuple:
    """Strongly connected components of ``sin`` restricted to ``actions``."""
    members = alphabet.sorted_actions(set(actions))
    inside = set(members)
    sin = alphabet.relations.sin

    def successors(a):
        return [b for b in members if b != a and (a, b) in sin and b in inside]

    comps = strongly_connected(members, successors)
    return tuple(sorted(comps, key=lambda c: step_key(alphabet, c)))


def sink_classes(alphabet: ComtraceAlphabet, classes) -> list:
    """Classes with no ``sin`` edge into another class of the pool.

    These are the classes that may be executed first.
    """
    sin = alphabet.relations.sin
    pool = list(classes)
    sinks = []
    for i, c in enumerate(pool):
        others = [x for j, d in enumerate(pool) if j != i for x in d]
        if not any((a, b) in sin for a in c for b in others):
            sinks.append(c)
    return sinks


def _require_step(alphabet, step):
    step = frozenset(step)
    if not is_step(alphabet, step):
        raise NotAStep(f"{sorted(step)} is not a step")
    return step


def step_equiv_classes(alphabet: ComtraceAlphabet, step) -> StepPartition:
    step = _require_step(alphabet, step)
    return StepPartition(step, sin_classes(alphabet, step))


def is_indivisible(alphabet: ComtraceAlphabet, step) -> bool:
    return len(step_equiv_classes(alphabet, step).classes) == 1


def indiv_alphabet(alphabet: ComtraceAlphabet, cap=None) -> list:
    steps = enumerate_steps(alphabet) if cap is None else enumerate_steps(alphabet, cap)
    return [s for s in steps if len(sin_classes(alphabet, s)) == 1]


def indiv_dependence(alphabet: ComtraceAlphabet, a, b) -> str:
    """``"independent"`` iff every cross pair of the two indivisible steps is in ind."""
    for s in (a, b):
        if not is_indivisible(alphabet, s):
            raise NotIndivisible(f"{sorted(s)} is not indivisible")
    ind = alphabet.relations.ind
    if all((x, y) in ind for x in a for y in b):
        return "independent"
    return "dependent"


def divide_step(alphabet: ComtraceAlphabet, step) -> tuple:
    """Split a divisible step into ``(B, C)`` with ``B x C`` inside ser.

    ``B`` is the least (in the step order) class that may go first.
    """
    part = step_equiv_classes(alphabet, step)
    if len(part.classes) == 1:
        raise AlreadyIndivisible(f"{sorted(part.step)} is indivisible")
    first = min(sink_classes(alphabet, part.classes), key=lambda c: step_key(alphabet, c))
    return first, part.step - first


def minlex_classes(alphabet: ComtraceAlphabet, classes) -> list:
    """Order classes greedily, always emitting the least class that may go first."""
    remaining = list(classes)
    out = []
    while remaining:
        first = min(sink_classes(alphabet, remaining), key=lambda c: step_key(alphabet, c))
        out.append(first)
        remaining.remove(first)
    return out


def minlex_step(alphabet: ComtraceAlphabet, step) -> StepSequence:
    """Least representative of the comtrace of a single step."""
    part = step_equiv_classes(alphabet, step)
    return StepSequence(alphabet, minlex_classes(alphabet, part.classes), check=False)


def split(alphabet: ComtraceAlphabet, w: StepSequence) -> StepSequence:
    """Replace every step of ``w`` by its least representative."""
    steps = []
    for s in w.steps:
        classes = sin_classes(alphabet, s)
        if len(classes) == 1:
            steps.append(s)
        else:
            steps.extend(minlex_classes(alphabet, classes))
    return StepSequence(alphabet, steps, check=False)
