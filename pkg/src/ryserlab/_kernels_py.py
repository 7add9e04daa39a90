"""Pure-Python branch-and-bound kernels (reference backend, no size limits).

Must make exactly the same branching decisions as ``_kernels_c`` so both
backends return identical values, witnesses and node counts.
"""

from __future__ import annotations

from typing import Sequence


def hitting_set(line_masks: Sequence[int], point_lines: Sequence[int], forced: int,
                allowed: int, limit: int, first_only: bool = False) -> tuple[int, int, int]:
    """Minimum point set T with forced <= T <= forced|allowed hitting every line.

    Only solutions with |T| < limit are reported. Returns (size, mask, nodes);
    size is -1 when nothing below ``limit`` exists. With ``first_only`` the
    search stops at the first solution found.
    """
    n_lines = len(line_masks)
    best = [limit, 0]
    nodes = [0]
    done = [False]

    def lower_bound(unhit: int, avail: int) -> int:
        used = 0
        count = 0
        rest = unhit
        while rest:
            low = rest & -rest
            rest ^= low
            pts = line_masks[low.bit_length() - 1] & avail
            if not pts & used:
                used |= pts
                count += 1
        return count

    def dfs(unhit: int, chosen: int, size: int, avail: int) -> None:
        nodes[0] += 1
        if unhit == 0:
            if size < best[0]:
                best[0], best[1] = size, chosen
                if first_only:
                    done[0] = True
            return
        if size + 1 >= best[0]:
            return
        if size + lower_bound(unhit, avail) >= best[0]:
            return
        pick, pick_sz = -1, 1 << 30
        rest = unhit
        while rest:
            low = rest & -rest
            rest ^= low
            ln = low.bit_length() - 1
            sz = (line_masks[ln] & avail).bit_count()
            if sz < pick_sz:
                pick, pick_sz = ln, sz
        if pick_sz == 0:
            return
        cand = []
        rest = line_masks[pick] & avail
        while rest:
            low = rest & -rest
            rest ^= low
            p = low.bit_length() - 1
            cand.append((-(point_lines[p] & unhit).bit_count(), p))
        cand.sort()
        for _, p in cand:
            bit = 1 << p
            dfs(unhit & ~point_lines[p], chosen | bit, size + 1, avail & ~bit)
            if done[0]:
                return
            avail &= ~bit

    unhit = (1 << n_lines) - 1
    size = 0
    rest = forced
    while rest:
        low = rest & -rest
        rest ^= low
        unhit &= ~point_lines[low.bit_length() - 1]
        size += 1
    dfs(unhit, forced, size, allowed & ~forced)
    if best[0] >= limit:
        return -1, 0, nodes[0]
    return best[0], best[1], nodes[0]


def packing(line_masks: Sequence[int], order: Sequence[int], cap: int, forced: int,
            target: int) -> tuple[int, int, int]:
    """Largest line set R (forced lines plus lines from ``order``) with every
    point on at most ``cap`` lines of R, cap in {1, 2}.

    Lines in ``order`` are branched include-first in the given order; the
    bound is current size plus the number of still-compatible candidates.
    Stops as soon as a packing of size >= target is found. Returns
    (size, line mask, nodes); size is -1 if the forced lines are infeasible.
    """
    once = twice = 0
    size = 0
    rest = forced
    while rest:
        low = rest & -rest
        rest ^= low
        mk = line_masks[low.bit_length() - 1]
        if cap == 1:
            if mk & once:
                return -1, 0, 0
            once |= mk
        else:
            if mk & twice:
                return -1, 0, 0
            once, twice = once ^ mk, twice | (once & mk)
        size += 1
    cand = [line_masks[i] for i in order]
    ids = list(order)
    k = len(cand)
    best = [size - 1, 0]
    nodes = [0]
    done = [False]

    def dfs(i: int, once: int, twice: int, size: int, chosen: int) -> None:
        nodes[0] += 1
        if size > best[0]:
            best[0], best[1] = size, chosen
            if size >= target:
                done[0] = True
                return
        blocked = once if cap == 1 else twice
        cnt = 0
        first = -1
        for j in range(i, k):
            if not cand[j] & blocked:
                if first < 0:
                    first = j
                cnt += 1
        if size + cnt <= best[0]:
            return
        j = first
        mk = cand[j]
        if cap == 1:
            dfs(j + 1, once | mk, 0, size + 1, chosen | (1 << ids[j]))
        else:
            dfs(j + 1, once ^ mk, twice | (once & mk), size + 1, chosen | (1 << ids[j]))
        if done[0]:
            return
        dfs(j + 1, once, twice, size, chosen)

    dfs(0, once, twice, size, forced)
    return best[0], best[1], nodes[0]
