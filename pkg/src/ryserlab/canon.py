"""Canonical labelling of incidence structures.

A structure is viewed as a bipartite graph with points on one side and lines
on the other; isomorphisms may relabel points and lines but never swap the
two sides. The canonical key is the lexicographically least incidence
certificate over the leaves of an individualisation-refinement search tree,
with subtrees skipped when a known automorphism maps them onto explored ones.
"""

from __future__ import annotations

import struct
from itertools import permutations
from typing import Sequence

from .system import LinearSystem, strip_isolated


def _refine(colors: list[int], adj: list[list[int]]) -> list[int]:
    """Colour refinement to the coarsest equitable partition below ``colors``.

    New colour = rank of (old colour, sorted neighbour colours); ranking keeps
    the old colour order as the primary key so the result is label-invariant.
    """
    n_colors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        k = len(ranks)
        colors = new
        if k == n_colors:
            return colors
        n_colors = k


def _individualize(colors: list[int], v: int) -> list[int]:
    sigs = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
    ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranks[s] for s in sigs]


def _target_cell(colors: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _orbit_reps(cell: list[int], gens: list[list[int]], fixed: Sequence[int]) -> dict[int, int]:
    """Union-find orbit representative of each cell vertex under generators fixing ``fixed``."""
    parent = {v: v for v in cell}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[f] != f for f in fixed):
            continue
        for v in cell:
            w = g[v]
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return {v: find(v) for v in cell}


def canonical_labeling(num_points: int, lines: Sequence[Sequence[int]]):
    """Return ``(certificate, point_rank, line_rank)`` for the incidence structure.

    ``certificate`` is a tuple of sorted point-rank tuples, one per line in
    line-rank order; isomorphic inputs give equal certificates.
    """
    P, L = num_points, len(lines)
    adj: list[list[int]] = [[] for _ in range(P + L)]
    for i, ln in enumerate(lines):
        for p in ln:
            adj[p].append(P + i)
            adj[P + i].append(p)
    start = _refine([0] * P + [1] * L, adj)

    best: dict = {"cert": None, "lab": None}
    gens: list[list[int]] = []

    def leaf_cert(colors: list[int]):
        line_by_rank = sorted(range(L), key=lambda i: colors[P + i])
        return tuple(tuple(sorted(colors[p] for p in lines[i])) for i in line_by_rank)

    def search(colors: list[int], path: list[int]) -> None:
        cell = _target_cell(colors)
        if cell is None:
            cert = leaf_cert(colors)
            if best["cert"] is None or cert < best["cert"]:
                best["cert"], best["lab"] = cert, colors
            elif cert == best["cert"]:
                # colors and best["lab"] are both bijections onto 0..n-1
                inv = [0] * len(colors)
                for v, c in enumerate(best["lab"]):
                    inv[c] = v
                gens.append([inv[c] for c in colors])
            return
        done: set[int] = set()
        for v in cell:
            if done:
                reps = _orbit_reps(cell, gens, path)
                if any(reps[v] == reps[u] for u in done):
                    continue
            done.add(v)
            search(_refine(_individualize(colors, v), adj), path + [v])

    search(start, [])
    lab = best["lab"]
    point_rank = lab[:P]
    line_rank = [c - P for c in lab[P:]]
    return best["cert"], point_rank, line_rank


def _encode(num_points: int, cert: tuple) -> bytes:
    out = [struct.pack(">HH", num_points, len(cert))]
    for ln in cert:
        out.append(struct.pack(">H", len(ln)) + struct.pack(f">{len(ln)}H", *ln))
    return b"".join(out)


def canonical_form(sys: LinearSystem) -> bytes:
    """Isomorphism-invariant byte key; isolated points are ignored."""
    core, _ = strip_isolated(sys)
    cert, _, _ = canonical_labeling(core.num_points, core.lines)
    return _encode(core.num_points, cert)


def brute_force_isomorphic(a: LinearSystem, b: LinearSystem, max_points: int = 8) -> bool:
    """Isomorphism test by trying every point permutation (factorial time)."""
    a, _ = strip_isolated(a)
    b, _ = strip_isolated(b)
    if a.num_points != b.num_points or a.num_lines != b.num_lines:
        return False
    if a.num_points > max_points:
        raise ValueError(f"brute-force isomorphism capped at {max_points} points")
    target = {frozenset(ln) for ln in b.lines}
    if len(target) != b.num_lines:
        raise ValueError("duplicate lines are not supported")
    for perm in permutations(range(a.num_points)):
        if all(frozenset(perm[p] for p in ln) in target for ln in a.lines):
            return True
    return False
