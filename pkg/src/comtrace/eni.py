"""Elementary net systems with inhibitor arcs.

Markings are frozensets of place names.  A step fires when its input places
are marked, its output and inhibitor places are empty, and no two of its
transitions share an input place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .alphabet import NAME_RE, ComtraceAlphabet, DerivedRelations, _directive_lines
from .errors import CapExceeded, ComtraceError, ParseError, StepNotEnabled, UnknownNode

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class EniNet:
    places: tuple
    transitions: tuple
    flow: frozenset  # (source, target) arcs
    inhibit: frozenset  # (place, transition)
    initial_marking: frozenset
    _pre: dict = field(init=False, compare=False, repr=False)
    _post: dict = field(init=False, compare=False, repr=False)
    _inh: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        places, transitions = tuple(self.places), tuple(self.transitions)
        object.__setattr__(self, "places", places)
        object.__setattr__(self, "transitions", transitions)
        pset, tset = set(places), set(transitions)
        if len(pset) != len(places) or len(tset) != len(transitions):
            raise ComtraceError("a node is declared twice")
        if pset & tset:
            raise ComtraceError(f"nodes declared as both place and transition: {sorted(pset & tset)}")
        pre = {x: set() for x in places + transitions}
        post = {x: set() for x in places + transitions}
        for src, dst in self.flow:
            if not ((src in pset and dst in tset) or (src in tset and dst in pset)):
                raise UnknownNode(f"arc {src} -> {dst} must join a place and a transition")
            post[src].add(dst)
            pre[dst].add(src)
        inh = {t: set() for t in transitions}
        for p, t in self.inhibit:
            if p not in pset or t not in tset:
                raise UnknownNode(f"inhibitor arc {p} -o {t} must go from a place to a transition")
            inh[t].add(p)
        if not set(self.initial_marking) <= pset:
            raise UnknownNode(f"marking names unknown places: {sorted(set(self.initial_marking) - pset)}")
        object.__setattr__(self, "initial_marking", frozenset(self.initial_marking))
        object.__setattr__(self, "_pre", {x: frozenset(s) for x, s in pre.items()})
        object.__setattr__(self, "_post", {x: frozenset(s) for x, s in post.items()})
        object.__setattr__(self, "_inh", {x: frozenset(s) for x, s in inh.items()})

    def __hash__(self):
        return hash((self.places, self.transitions, self.flow, self.inhibit, self.initial_marking))

    def _lift(self, table, nodes, what):
        out = set()
        for x in nodes:
            try:
                out |= table[x]
            except KeyError:
                raise UnknownNode(f"unknown {what} {x!r}") from None
        return frozenset(out)

    def preset(self, nodes) -> frozenset:
        return self._lift(self._pre, _nodes(nodes), "node")

    def postset(self, nodes) -> frozenset:
        return self._lift(self._post, _nodes(nodes), "node")

    def inhset(self, transitions) -> frozenset:
        return self._lift(self._inh, _nodes(transitions), "transition")

    def neighbourhood(self, t) -> frozenset:
        return self.preset(t) | self.postset(t)


def _nodes(x) -> Iterable:
    return (x,) if isinstance(x, str) else x


def parse_net(text: str) -> EniNet:
    """Line format: ``places``, ``transitions``, ``flow x -> y``, ``inhibit p t``, ``marking``."""
    places, transitions, marking = None, None, ()
    flow, inhibit = set(), set()
    for lineno, words in _directive_lines(text):
        head, args = words[0], words[1:]
        if head in ("places", "transitions"):
            if (places if head == "places" else transitions) is not None:
                raise ParseError(f"second '{head}' line", lineno)
            for name in args:
                if not NAME_RE.match(name):
                    raise ParseError(f"invalid name {name!r}", lineno)
            if head == "places":
                places = tuple(args)
            else:
                transitions = tuple(args)
        elif head == "flow":
            if len(args) != 3 or args[1] != "->":
                raise ParseError("expected 'flow <src> -> <dst>'", lineno)
            flow.add((args[0], args[2]))
        elif head == "inhibit":
            if len(args) != 2:
                raise ParseError("expected 'inhibit <place> <transition>'", lineno)
            inhibit.add((args[0], args[1]))
        elif head == "marking":
            marking = tuple(args)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if places is None or transitions is None:
        raise ParseError("both 'places' and 'transitions' lines are required")
    return EniNet(places, transitions, frozenset(flow), frozenset(inhibit), frozenset(marking))


def load_net(path) -> EniNet:
    with open(path, encoding="utf-8") as fh:
        return parse_net(fh.read())


def step_enabled(net: EniNet, marking, step, disjoint_postsets: bool = False) -> bool:
    step = frozenset(_nodes(step))
    if not step:
        return False
    for t in step:
        if t not in net._inh:
            raise UnknownNode(f"unknown transition {t!r}")
    marking = frozenset(marking)
    if not net.preset(step) <= marking:
        return False
    if net.postset(step) & marking or net.inhset(step) & marking:
        return False
    members = list(step)
    for i, t in enumerate(members):
        for u in members[i + 1:]:
            if net._pre[t] & net._pre[u]:
                return False
            if disjoint_postsets and net._post[t] & net._post[u]:
                return False
    return True


def fire(net: EniNet, marking, step, disjoint_postsets: bool = False) -> frozenset:
    step = frozenset(_nodes(step))
    if not step_enabled(net, marking, step, disjoint_postsets):
        raise StepNotEnabled(f"step {sorted(step)} is not enabled in {sorted(marking)}")
    return (frozenset(marking) - net.preset(step)) | net.postset(step)


def enabled_steps(net: EniNet, marking, transitions=None, disjoint_postsets: bool = False) -> list:
    """All enabled steps, sorted by size then listing order."""
    marking = frozenset(marking)
    pool = net.transitions if transitions is None else [t for t in net.transitions if t in set(transitions)]
    single = [t for t in pool if step_enabled(net, marking, (t,))]

    def compatible(t, u):
        if net._pre[t] & net._pre[u]:
            return False
        return not (disjoint_postsets and net._post[t] & net._post[u])

    found = []

    def extend(chosen, candidates):
        if chosen:
            found.append(tuple(chosen))
        for n, t in enumerate(candidates):
            extend(chosen + [t], [u for u in candidates[n + 1:] if compatible(t, u)])

    extend([], single)
    order = {t: i for i, t in enumerate(net.transitions)}
    found.sort(key=lambda s: (len(s), [order[t] for t in s]))
    return [frozenset(s) for s in found]


def _seq_key(net, seq):
    order = {t: i for i, t in enumerate(net.transitions)}
    return tuple((len(s), tuple(sorted(order[t] for t in s))) for s in seq)


def enumerate_executions(
    net: EniNet,
    max_steps: int,
    transitions: Optional[Iterable[str]] = None,
    budget: int = DEFAULT_BUDGET,
    disjoint_postsets: bool = False,
) -> list:
    """Every firing sequence of at most ``max_steps`` steps from the initial marking.

    ``transitions`` restricts which transitions may fire.  The empty
    sequence is included.  Result is sorted (length of each step, then
    listing order).
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    if transitions is not None:
        transitions = frozenset(transitions)
        unknown = transitions - set(net.transitions)
        if unknown:
            raise UnknownNode(f"unknown transitions {sorted(unknown)}")
    memo = {}
    produced = 0

    def runs(marking, depth):
        nonlocal produced
        key = (marking, depth)
        if key in memo:
            return memo[key]
        out = [()]
        if depth:
            for step in enabled_steps(net, marking, transitions, disjoint_postsets):
                nxt = (marking - net.preset(step)) | net.postset(step)
                for rest in runs(nxt, depth - 1):
                    out.append((step,) + rest)
        produced += len(out)
        if produced > budget:
            raise CapExceeded(f"more than {budget} partial executions")
        memo[key] = out
        return out

    result = runs(net.initial_marking, max_steps)
    return sorted(result, key=lambda seq: _seq_key(net, seq))


def reachable_markings(net: EniNet, max_steps: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                       disjoint_postsets: bool = False) -> list:
    """Markings reachable within ``max_steps`` steps (unbounded if None), breadth first."""
    seen = {net.initial_marking}
    order = [net.initial_marking]
    frontier = [net.initial_marking]
    depth = 0
    while frontier and (max_steps is None or depth < max_steps):
        nxt_frontier = []
        for m in frontier:
            for step in enabled_steps(net, m, None, disjoint_postsets):
                nxt = (m - net.preset(step)) | net.postset(step)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > budget:
                        raise CapExceeded(f"more than {budget} markings")
                    order.append(nxt)
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
        depth += 1
    return order


# ---- alphabet of a net -----------------------------------------------------------


def _overlaps(net, a, b) -> bool:
    return bool(net.neighbourhood(a) & net.neighbourhood(b)
                or net.inhset(a) & net.preset(b) or net.inhset(b) & net.preset(a))


def derive_alphabet(net: EniNet) -> ComtraceAlphabet:
    """Comtrace alphabet read off the net structure.

    ``a`` and ``b`` are simultaneous when their neighbourhoods are disjoint and
    neither has an input place inhibiting the other; ``(a, b)`` is
    serialisable when additionally no output of ``a`` is an input or an
    inhibitor of ``b``.
    """
    ts = net.transitions
    sim, ser = set(), set()
    for i, a in enumerate(ts):
        for b in ts[i + 1:]:
            if _overlaps(net, a, b):
                continue
            sim.add(frozenset((a, b)))
            for x, y in ((a, b), (b, a)):
                if not net.postset(x) & (net.preset(y) | net.inhset(y)):
                    ser.add((x, y))
    return ComtraceAlphabet(ts, frozenset(sim), frozenset(ser))


def table_relations(net: EniNet) -> DerivedRelations:
    """The five relations computed directly from the net, without sim/ser."""
    ts = net.transitions
    dep, ind, sin, ssm, wdp = set(), set(), set(), set(), set()
    for a in ts:
        for b in ts:
            if a == b or _overlaps(net, a, b):
                dep.add((a, b))
                continue
            a_blocks_b = bool(net.inhset(b) & net.postset(a))
            b_blocks_a = bool(net.inhset(a) & net.postset(b))
            if not a_blocks_b and not b_blocks_a:
                ind.add((a, b))
            if a_blocks_b:
                sin.add((a, b))
                (ssm if b_blocks_a else wdp).add((a, b))
    return DerivedRelations(frozenset(dep), frozenset(ind), frozenset(sin), frozenset(ssm), frozenset(wdp))


def format_net(net: EniNet) -> str:
    order = {x: i for i, x in enumerate(net.places + net.transitions)}
    lines = ["places " + " ".join(net.places), "transitions " + " ".join(net.transitions)]
    for src, dst in sorted(net.flow, key=lambda e: (order[e[0]], order[e[1]])):
        lines.append(f"flow {src} -> {dst}")
    for p, t in sorted(net.inhibit, key=lambda e: (order[e[0]], order[e[1]])):
        lines.append(f"inhibit {p} {t}")
    lines.append("marking " + " ".join(p for p in net.places if p in net.initial_marking))
    return "\n".join(lines) + "\n"
