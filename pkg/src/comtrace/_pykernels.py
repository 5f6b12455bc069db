"""Pure-Python hot loops.  ``_ckernels.pyx`` mirrors these signatures exactly.

Actions are integer indices in listing order; the strong-simultaneity marker
is ``BOTTOM_CODE``.  Every pair (i <= j) that is not independent has an id;
``part_ptr/part_act/part_pid`` list, per action, its partners and pair ids
(the action itself included, for the unary pair).
"""

BOTTOM_CODE = -1
NO_SYMBOL = -2

REL_DEP = 0
REL_IND = 1
REL_WDP = 2
REL_WDP_INV = 3
REL_SSM = 4


def project_codes(k, rel, part_ptr, part_act, part_pid, pair_a, pair_b, acts, offsets):
    """Streaming projection of an encoded step sequence.

    Returns ``(syms, starts, lengths)``: the entry of pair ``p`` is
    ``syms[starts[p]:starts[p] + lengths[p]]``.
    """
    npairs = len(pair_a)
    counts = [0] * k
    for a in acts:
        counts[a] += 1
    starts = [0] * npairs
    total = 0
    for p in range(npairs):
        starts[p] = total
        i, j = pair_a[p], pair_b[p]
        total += counts[i] if i == j else counts[i] + counts[j]
    syms = [0] * total
    cur = list(starts)
    last = [-1] * npairs
    stamp = [-1] * k
    nsteps = len(offsets) - 1
    for s in range(nsteps):
        lo, hi = offsets[s], offsets[s + 1]
        for t in range(lo, hi):
            stamp[acts[t]] = s
        for t in range(lo, hi):
            a = acts[t]
            base = a * k
            for q in range(part_ptr[a], part_ptr[a + 1]):
                b = part_act[q]
                p = part_pid[q]
                if b == a or stamp[b] != s:
                    syms[cur[p]] = a
                    cur[p] += 1
                    continue
                # both members present: emit the joint fragment once per step
                if last[p] == s:
                    continue
                last[p] = s
                r = rel[base + b]
                c = cur[p]
                if r == REL_WDP:
                    syms[c] = b
                    syms[c + 1] = a
                    cur[p] = c + 2
                elif r == REL_WDP_INV:
                    syms[c] = a
                    syms[c + 1] = b
                    cur[p] = c + 2
                elif r == REL_SSM:
                    syms[c] = BOTTOM_CODE
                    cur[p] = c + 1
                else:
                    raise ValueError("dependent actions share a step")
    lengths = [cur[p] - starts[p] for p in range(npairs)]
    return syms, starts, lengths


def scan_stage(k, rel, part_ptr, part_act, part_pid, syms, pos, end):
    """Conditionally possible actions and the condition relation.

    Returns ``(cpa, cnd)`` where ``cpa[a]`` is 1/0 and ``cnd`` is a flat list
    ``[a0, b0, a1, b1, ...]`` of ordered pairs.
    """
    cpa = [0] * k
    cnd = []
    for a in range(k):
        ok = True
        base = a * k
        for q in range(part_ptr[a], part_ptr[a + 1]):
            b = part_act[q]
            p = part_pid[q]
            at = pos[p]
            first = syms[at] if at < end[p] else NO_SYMBOL
            if first == a:
                continue
            if b == a:
                ok = False
                continue
            r = rel[base + b]
            if r == REL_WDP:
                if first == b and at + 1 < end[p] and syms[at + 1] == a:
                    cnd.append(a)
                    cnd.append(b)
                else:
                    ok = False
            elif r == REL_SSM:
                if first == BOTTOM_CODE:
                    cnd.append(a)
                    cnd.append(b)
                else:
                    ok = False
            else:
                ok = False
        if ok:
            cpa[a] = 1
    return cpa, cnd


def advance(k, rel, part_ptr, part_act, part_pid, pos, chosen, mask):
    """Extract the step ``chosen`` (action indices; ``mask[a]`` is 1 inside it).

    Moves the read positions forward and returns the number of symbols
    consumed.
    """
    consumed = 0
    for a in chosen:
        base = a * k
        for q in range(part_ptr[a], part_ptr[a + 1]):
            b = part_act[q]
            p = part_pid[q]
            if b == a or not mask[b]:
                pos[p] += 1
                consumed += 1
            elif a < b:
                if rel[base + b] == REL_SSM:
                    pos[p] += 1
                    consumed += 1
                else:
                    pos[p] += 2
                    consumed += 2
    return consumed
