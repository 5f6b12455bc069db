"""Comtrace alphabets, derived relations and the orders on actions and steps.

The total order on actions is the order in which they are listed, never the
alphabetical order of their names.  Every canonical form computed by this
package depends on it.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import (
    CapExceeded,
    ComtraceError,
    DuplicateAction,
    NotAStep,
    ParseError,
    ReflexivePair,
    SerNotInSim,
    UnknownAction,
)

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

DEFAULT_STEP_CAP = 2**20

# relation codes for an ordered pair (a, b); shared with the kernels
REL_DEP = 0
REL_IND = 1
REL_WDP = 2  # (a, b) in wdp
REL_WDP_INV = 3  # (b, a) in wdp
REL_SSM = 4

Pair = tuple[str, str]
Step = frozenset


class KernelTables(NamedTuple):
    """Flat ``array('i')`` tables consumed by the compiled/pure kernels."""

    k: int
    rel: array
    part_ptr: array
    part_act: array
    part_pid: array
    pair_a: array
    pair_b: array


@dataclass(frozen=True)
class DerivedRelations:
    """The five relations derived from (sim, ser), as sets of ordered pairs."""

    dep: frozenset
    ind: frozenset
    sin: frozenset
    ssm: frozenset
    wdp: frozenset


def _derive(actions, sim_ordered, ser):
    everything = {(a, b) for a in actions for b in actions}
    ser_inv = {(b, a) for a, b in ser}
    sin = sim_ordered - ser
    sin_inv = {(b, a) for a, b in sin}
    return DerivedRelations(
        dep=frozenset(everything - sim_ordered),
        ind=frozenset(ser & ser_inv),
        sin=frozenset(sin),
        ssm=frozenset(sin - ser_inv),
        wdp=frozenset(sin - sin_inv),
    )


@dataclass(frozen=True)
class ComtraceAlphabet:
    """A comtrace alphabet (actions, sim, ser).

    ``sim`` holds unordered pairs (two-element frozensets), ``ser`` ordered
    pairs.  Construction validates the invariants and precomputes the derived
    relations together with the integer tables used by the kernels.
    """

    actions: tuple
    sim: frozenset
    ser: frozenset
    relations: DerivedRelations = field(init=False, repr=False, compare=False)
    index: dict = field(init=False, repr=False, compare=False)
    sim_ordered: frozenset = field(init=False, repr=False, compare=False)
    rel: tuple = field(init=False, repr=False, compare=False)
    pair_id: tuple = field(init=False, repr=False, compare=False)
    pairs: tuple = field(init=False, repr=False, compare=False)
    partners: tuple = field(init=False, repr=False, compare=False)
    tables: KernelTables = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        actions = tuple(self.actions)
        seen = set()
        for a in actions:
            if not isinstance(a, str) or not NAME_RE.match(a):
                raise UnknownAction(f"invalid action name {a!r}")
            if a in seen:
                raise DuplicateAction(f"action {a!r} listed twice")
            seen.add(a)
        sim_ordered = set()
        sim = set()
        for pair in self.sim:
            members = tuple(pair)
            if len(members) == 1 or (len(members) == 2 and members[0] == members[1]):
                raise ReflexivePair(f"sim contains reflexive pair {members[0]}-{members[0]}")
            if len(members) != 2:
                raise ComtraceError(f"sim entry {pair!r} is not a pair")
            a, b = members
            for x in (a, b):
                if x not in seen:
                    raise UnknownAction(f"sim mentions unknown action {x!r}")
            sim.add(frozenset((a, b)))
            sim_ordered.add((a, b))
            sim_ordered.add((b, a))
        ser = set()
        for a, b in self.ser:
            for x in (a, b):
                if x not in seen:
                    raise UnknownAction(f"ser mentions unknown action {x!r}")
            if a == b:
                raise ReflexivePair(f"ser contains reflexive pair ({a},{a})")
            if (a, b) not in sim_ordered:
                raise SerNotInSim(f"({a},{b}) in ser but {a}-{b} not in sim")
            ser.add((a, b))

        setattr_ = object.__setattr__
        setattr_(self, "actions", actions)
        setattr_(self, "sim", frozenset(sim))
        setattr_(self, "ser", frozenset(ser))
        setattr_(self, "sim_ordered", frozenset(sim_ordered))
        relations = _derive(actions, sim_ordered, ser)
        setattr_(self, "relations", relations)
        index = {a: i for i, a in enumerate(actions)}
        setattr_(self, "index", index)

        k = len(actions)
        rel = [REL_DEP] * (k * k)
        for a, b in relations.ind:
            rel[index[a] * k + index[b]] = REL_IND
        for a, b in relations.wdp:
            rel[index[a] * k + index[b]] = REL_WDP
            rel[index[b] * k + index[a]] = REL_WDP_INV
        for a, b in relations.ssm:
            rel[index[a] * k + index[b]] = REL_SSM
        pair_id = [-1] * (k * k)
        pairs = []
        for i in range(k):
            for j in range(i, k):
                if rel[i * k + j] != REL_IND:
                    pair_id[i * k + j] = pair_id[j * k + i] = len(pairs)
                    pairs.append((i, j))
        partners = tuple(
            tuple((j, pair_id[i * k + j]) for j in range(k) if pair_id[i * k + j] >= 0)
            for i in range(k)
        )
        setattr_(self, "rel", tuple(rel))
        setattr_(self, "pair_id", tuple(pair_id))
        setattr_(self, "pairs", tuple(pairs))
        setattr_(self, "partners", partners)
        part_ptr = [0]
        for plist in partners:
            part_ptr.append(part_ptr[-1] + len(plist))
        setattr_(self, "tables", KernelTables(
            k,
            array("i", rel),
            array("i", part_ptr),
            array("i", [j for plist in partners for j, _ in plist]),
            array("i", [p for plist in partners for _, p in plist]),
            array("i", [i for i, _ in pairs]),
            array("i", [j for _, j in pairs]),
        ))

    def __hash__(self):
        return hash((self.actions, self.sim, self.ser))

    def __len__(self):
        return len(self.actions)

    def __contains__(self, action):
        return action in self.index

    # ---- relation queries -------------------------------------------------

    def relation(self, a: str, b: str) -> int:
        """Relation code (``REL_*``) of the ordered pair (a, b)."""
        k = len(self.actions)
        return self.rel[self._idx(a) * k + self._idx(b)]

    def in_sim(self, a, b):
        return (a, b) in self.sim_ordered

    def in_ser(self, a, b):
        return (a, b) in self.ser

    def in_sin(self, a, b):
        return (a, b) in self.relations.sin

    def in_ind(self, a, b):
        return (a, b) in self.relations.ind

    def is_radical(self) -> bool:
        return not self.relations.sin

    def _idx(self, a):
        try:
            return self.index[a]
        except KeyError:
            raise UnknownAction(f"unknown action {a!r}") from None

    def check_actions(self, actions: Iterable[str]) -> None:
        for a in actions:
            if a not in self.index:
                raise UnknownAction(f"unknown action {a!r}")

    def sorted_actions(self, actions: Iterable[str]) -> list:
        """Actions sorted by the alphabet's listing order."""
        index = self.index
        try:
            return sorted(actions, key=index.__getitem__)
        except KeyError as exc:
            raise UnknownAction(f"unknown action {exc.args[0]!r}") from None

    def single_char(self) -> bool:
        return all(len(a) == 1 for a in self.actions)


def validate_alphabet(actions, sim=(), ser=()) -> ComtraceAlphabet:
    """Build a validated alphabet from raw lists.

    ``sim`` pairs may be given in either orientation; they are symmetrised.
    """
    sim_pairs = []
    for pair in sim:
        members = tuple(pair)
        if len(members) == 1 or (len(members) == 2 and members[0] == members[1]):
            raise ReflexivePair(f"sim contains reflexive pair {members[0]}-{members[0]}")
        if len(members) != 2:
            raise ComtraceError(f"sim entry {pair!r} is not a pair")
        sim_pairs.append(frozenset(members))
    return ComtraceAlphabet(tuple(actions), frozenset(sim_pairs), frozenset(tuple(p) for p in ser))


def _directive_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_alphabet(text: str) -> ComtraceAlphabet:
    """Parse the line-based alphabet format (``actions``/``sim``/``ser``)."""
    actions = None
    sim, ser = [], []
    for lineno, words in _directive_lines(text):
        head, args = words[0], words[1:]
        if head == "actions":
            if actions is not None:
                raise ParseError("second 'actions' line", lineno)
            if not args:
                raise ParseError("'actions' needs at least one name", lineno)
            actions = args
        elif head in ("sim", "ser"):
            if len(args) != 2:
                raise ParseError(f"'{head}' takes exactly two actions", lineno)
            (sim if head == "sim" else ser).append(tuple(args))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
        for name in args:
            if not NAME_RE.match(name):
                raise ParseError(f"invalid action name {name!r}", lineno)
    if actions is None:
        raise ParseError("missing 'actions' line")
    return validate_alphabet(actions, sim, ser)


def load_alphabet(path) -> ComtraceAlphabet:
    with open(path, encoding="utf-8") as fh:
        return parse_alphabet(fh.read())


def format_alphabet(alphabet: ComtraceAlphabet) -> str:
    idx = alphabet.index
    lines = ["actions " + " ".join(alphabet.actions)]
    for pair in sorted((alphabet.sorted_actions(p) for p in alphabet.sim),
                       key=lambda p: (idx[p[0]], idx[p[1]])):
        lines.append(f"sim {pair[0]} {pair[1]}")
    for a, b in sorted(alphabet.ser, key=lambda p: (idx[p[0]], idx[p[1]])):
        lines.append(f"ser {a} {b}")
    return "\n".join(lines) + "\n"


def derive_relations(alphabet: ComtraceAlphabet) -> DerivedRelations:
    return alphabet.relations


# ---- steps ----------------------------------------------------------------


def is_step(alphabet: ComtraceAlphabet, actions: Iterable[str]) -> bool:
    members = list(actions)
    alphabet.check_actions(members)
    if not members or len(set(members)) != len(members):
        return False
    sim = alphabet.sim_ordered
    return all((a, b) in sim for i, a in enumerate(members) for b in members[i + 1:])


def require_step(alphabet: ComtraceAlphabet, actions: Iterable[str]) -> frozenset:
    step = frozenset(actions)
    if not is_step(alphabet, step):
        raise NotAStep(f"{format_step(alphabet, step)} is not a step")
    return step


def enumerate_steps(alphabet: ComtraceAlphabet, cap: int = DEFAULT_STEP_CAP) -> list:
    """All steps (nonempty sim-cliques), sorted by the step order."""
    actions = alphabet.actions
    sim = alphabet.sim_ordered
    later = [[b for b in actions[i + 1:] if (a, b) in sim] for i, a in enumerate(actions)]
    pos = alphabet.index
    found = []

    def extend(clique, candidates):
        found.append(frozenset(clique))
        if len(found) > cap:
            raise CapExceeded(f"more than {cap} steps")
        for n, b in enumerate(candidates):
            nb = set(later[pos[b]])
            extend(clique + [b], [c for c in candidates[n + 1:] if c in nb])

    for i, a in enumerate(actions):
        extend([a], later[i])
    return sorted(found, key=lambda s: step_key(alphabet, s))


def format_step(alphabet: ComtraceAlphabet, step) -> str:
    index = alphabet.index
    return "(" + " ".join(sorted(step, key=lambda a: index.get(a, len(index)))) + ")"


# ---- orders ---------------------------------------------------------------


def step_key(alphabet: ComtraceAlphabet, step) -> tuple:
    """Sort key realising the step order: size first, then sorted members.

    For equal sizes, comparing sorted index tuples is the same as comparing
    ``min(A - B)`` with ``min(B - A)``.
    """
    index = alphabet.index
    return (len(step), tuple(sorted(index[a] for a in step)))


def sequence_key(alphabet: ComtraceAlphabet, steps) -> tuple:
    """Sort key for step sequences; a proper prefix sorts first."""
    return tuple(step_key(alphabet, s) for s in steps)


def _cmp(x, y):
    return (x > y) - (x < y)


def compare_actions(alphabet: ComtraceAlphabet, a: str, b: str) -> int:
    return _cmp(alphabet._idx(a), alphabet._idx(b))


def compare_steps(alphabet: ComtraceAlphabet, a, b) -> int:
    alphabet.check_actions(a)
    alphabet.check_actions(b)
    return _cmp(step_key(alphabet, a), step_key(alphabet, b))
