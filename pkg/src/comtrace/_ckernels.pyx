# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``; same signatures, same results."""

from cpython cimport array
import array

cdef enum:
    BOTTOM = -1
    NONE = -2
    REL_WDP = 2
    REL_WDP_INV = 3
    REL_SSM = 4

BOTTOM_CODE = BOTTOM
NO_SYMBOL = NONE

cdef array.array _int_template = array.array('i', [])


cdef inline array.array _ints(Py_ssize_t n, bint zero=True):
    return array.clone(_int_template, n, zero=zero)


def project_codes(int k, const int[:] rel, const int[:] part_ptr, const int[:] part_act,
                  const int[:] part_pid, const int[:] pair_a, const int[:] pair_b,
                  const int[:] acts, const int[:] offsets):
    cdef Py_ssize_t npairs = pair_a.shape[0]
    cdef Py_ssize_t n = acts.shape[0]
    cdef Py_ssize_t nsteps = offsets.shape[0] - 1
    cdef array.array counts_arr = _ints(k)
    cdef int[:] counts = counts_arr
    cdef array.array starts_arr = _ints(npairs)
    cdef int[:] starts = starts_arr
    cdef Py_ssize_t t, p, q, s, total = 0
    cdef int a, b, i, j, r, c, lo, hi, base
    for t in range(n):
        counts[acts[t]] += 1
    for p in range(npairs):
        starts[p] = total
        i = pair_a[p]
        j = pair_b[p]
        total += counts[i] if i == j else counts[i] + counts[j]
    cdef array.array syms_arr = _ints(total, False)
    cdef int[:] syms = syms_arr
    cdef array.array cur_arr = array.copy(starts_arr)
    cdef int[:] cur = cur_arr
    cdef array.array last_arr = _ints(npairs)
    cdef int[:] last = last_arr
    cdef array.array stamp_arr = _ints(k)
    cdef int[:] stamp = stamp_arr
    for p in range(npairs):
        last[p] = -1
    for a in range(k):
        stamp[a] = -1
    for s in range(nsteps):
        lo = offsets[s]
        hi = offsets[s + 1]
        for t in range(lo, hi):
            stamp[acts[t]] = <int>s
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
                if last[p] == s:
                    continue
                last[p] = <int>s
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
                    syms[c] = BOTTOM
                    cur[p] = c + 1
                else:
                    raise ValueError("dependent actions share a step")
    cdef array.array lengths_arr = _ints(npairs)
    cdef int[:] lengths = lengths_arr
    for p in range(npairs):
        lengths[p] = cur[p] - starts[p]
    return syms_arr, starts_arr, lengths_arr


def scan_stage(int k, const int[:] rel, const int[:] part_ptr, const int[:] part_act,
               const int[:] part_pid, const int[:] syms, const int[:] pos, const int[:] end):
    cdef list cpa = [0] * k
    cdef list cnd = []
    cdef int a, b, p, at, first, r, base
    cdef Py_ssize_t q
    cdef bint ok
    for a in range(k):
        ok = True
        base = a * k
        for q in range(part_ptr[a], part_ptr[a + 1]):
            b = part_act[q]
            p = part_pid[q]
            at = pos[p]
            first = syms[at] if at < end[p] else NONE
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
                if first == BOTTOM:
                    cnd.append(a)
                    cnd.append(b)
                else:
                    ok = False
            else:
                ok = False
        if ok:
            cpa[a] = 1
    return cpa, cnd


def advance(int k, const int[:] rel, const int[:] part_ptr, const int[:] part_act,
            const int[:] part_pid, int[:] pos, chosen, const signed char[:] mask):
    cdef long consumed = 0
    cdef int a, b, p, base
    cdef Py_ssize_t q
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
