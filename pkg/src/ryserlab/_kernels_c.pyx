# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound kernels on 64-bit masks.

Same algorithms and branching order as ``_kernels_py``; callers must keep
point and line counts <= 64.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long x) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long x) nogil

cdef enum:
    WIDTH = 64


cdef struct HitCtx:
    int n_lines
    uint64_t line_pts[WIDTH]
    uint64_t pt_lines[WIDTH]
    int best
    uint64_t best_set
    long long nodes
    bint first_only
    bint done


cdef int _hit_lb(HitCtx* c, uint64_t unhit, uint64_t avail) nogil:
    cdef uint64_t used = 0, rest = unhit, pts
    cdef int count = 0
    while rest:
        pts = c.line_pts[ctz64(rest)] & avail
        rest &= rest - 1
        if not (pts & used):
            used |= pts
            count += 1
    return count


cdef void _hit_dfs(HitCtx* c, uint64_t unhit, uint64_t chosen, int size, uint64_t avail) nogil:
    cdef uint64_t rest, bit, cand
    cdef int pick = -1, pick_sz = 1 << 30, sz, ln, k = 0, i, j, p
    cdef int order[WIDTH]
    cdef int gain[WIDTH]
    c.nodes += 1
    if unhit == 0:
        if size < c.best:
            c.best = size
            c.best_set = chosen
            if c.first_only:
                c.done = 1
        return
    if size + 1 >= c.best:
        return
    if size + _hit_lb(c, unhit, avail) >= c.best:
        return
    rest = unhit
    while rest:
        ln = ctz64(rest)
        rest &= rest - 1
        sz = popcount64(c.line_pts[ln] & avail)
        if sz < pick_sz:
            pick = ln
            pick_sz = sz
    if pick_sz == 0:
        return
    cand = c.line_pts[pick] & avail
    while cand:
        p = ctz64(cand)
        cand &= cand - 1
        sz = popcount64(c.pt_lines[p] & unhit)
        # insertion sort: decreasing gain, then increasing index
        i = k
        while i > 0 and gain[i - 1] < sz:
            order[i] = order[i - 1]
            gain[i] = gain[i - 1]
            i -= 1
        order[i] = p
        gain[i] = sz
        k += 1
    for j in range(k):
        p = order[j]
        bit = (<uint64_t>1) << p
        _hit_dfs(c, unhit & ~c.pt_lines[p], chosen | bit, size + 1, avail & ~bit)
        if c.done:
            return
        avail &= ~bit


def hitting_set(line_masks, point_lines, unsigned long long forced, unsigned long long allowed,
                int limit, bint first_only=False):
    cdef HitCtx c
    cdef int i, size = 0
    cdef uint64_t unhit, rest
    if len(line_masks) > WIDTH or len(point_lines) > WIDTH:
        raise ValueError("compiled kernel supports at most 64 points and 64 lines")
    c.n_lines = len(line_masks)
    for i in range(c.n_lines):
        c.line_pts[i] = line_masks[i]
    for i in range(len(point_lines)):
        c.pt_lines[i] = point_lines[i]
    c.best = limit
    c.best_set = 0
    c.nodes = 0
    c.first_only = first_only
    c.done = 0
    unhit = ((<uint64_t>1) << c.n_lines) - 1 if c.n_lines < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    rest = forced
    while rest:
        unhit &= ~c.pt_lines[ctz64(rest)]
        rest &= rest - 1
        size += 1
    with nogil:
        _hit_dfs(&c, unhit, forced, size, allowed & ~forced)
    if c.best >= limit:
        return -1, 0, c.nodes
    return c.best, c.best_set, c.nodes


cdef struct PackCtx:
    int k
    int cap
    uint64_t cand[WIDTH]
    int ids[WIDTH]
    int best
    uint64_t best_set
    int target
    long long nodes
    bint done


cdef void _pack_dfs(PackCtx* c, int i, uint64_t once, uint64_t twice, int size, uint64_t chosen) nogil:
    cdef uint64_t blocked, mk
    cdef int cnt = 0, first = -1, j
    c.nodes += 1
    if size > c.best:
        c.best = size
        c.best_set = chosen
        if size >= c.target:
            c.done = 1
            return
    blocked = once if c.cap == 1 else twice
    for j in range(i, c.k):
        if not (c.cand[j] & blocked):
            if first < 0:
                first = j
            cnt += 1
    if size + cnt <= c.best:
        return
    j = first
    mk = c.cand[j]
    if c.cap == 1:
        _pack_dfs(c, j + 1, once | mk, 0, size + 1, chosen | ((<uint64_t>1) << c.ids[j]))
    else:
        _pack_dfs(c, j + 1, once ^ mk, twice | (once & mk), size + 1,
                  chosen | ((<uint64_t>1) << c.ids[j]))
    if c.done:
        return
    _pack_dfs(c, j + 1, once, twice, size, chosen)


def packing(line_masks, order, int cap, unsigned long long forced, int target):
    cdef PackCtx c
    cdef uint64_t once = 0, twice = 0, mk, rest
    cdef int size = 0, i
    if len(line_masks) > WIDTH:
        raise ValueError("compiled kernel supports at most 64 lines")
    rest = forced
    while rest:
        mk = line_masks[ctz64(rest)]
        rest &= rest - 1
        if cap == 1:
            if mk & once:
                return -1, 0, 0
            once |= mk
        else:
            if mk & twice:
                return -1, 0, 0
            twice = twice | (once & mk)
            once = once ^ mk
        size += 1
    c.k = len(order)
    c.cap = cap
    for i in range(c.k):
        c.ids[i] = order[i]
        c.cand[i] = line_masks[order[i]]
    c.best = size - 1
    c.best_set = 0
    c.target = target
    c.nodes = 0
    c.done = 0
    with nogil:
        _pack_dfs(&c, 0, once, twice, size, forced)
    return c.best, c.best_set, c.nodes
