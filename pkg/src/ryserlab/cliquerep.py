"""Intersecting linear systems as edge-clique partitions of K_m.

In an intersecting linear system any two lines meet in exactly one point, so
the points of degree >= 2 partition the edges of the complete graph on the
lines into cliques. The degree-1 points only pad lines up to size r.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .canon import canonical_labeling, _encode
from .parallel import Workers
from .system import (LinearSystem, SidePartition, color_graph, is_intersecting,
                     require_valid)


class RealizationError(ValueError):
    """Some line lies in more than r cliques, so it cannot have r points."""

    def __init__(self, line: int, count: int, r: int):
        super().__init__(f"line {line} lies in {count} cliques, more than r={r}")
        self.line = line


class EnumerationIncomplete(RuntimeError):
    """Budget ran out before the enumeration finished."""

    def __init__(self, msg: str, completed_m: int):
        super().__init__(msg)
        self.completed_m = completed_m


@dataclass(frozen=True)
class CliquePartition:
    m: int
    cliques: tuple[tuple[int, ...], ...]
    padding: tuple[int, ...] | None = field(default=None, compare=False)

    def __init__(self, m: int, cliques, padding=None):
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "cliques", tuple(sorted(tuple(sorted(c)) for c in cliques)))
        object.__setattr__(self, "padding", None if padding is None else tuple(padding))

    def cliques_on(self) -> list[int]:
        count = [0] * self.m
        for c in self.cliques:
            for v in c:
                count[v] += 1
        return count

    def problems(self) -> list[str]:
        out = []
        seen: dict[tuple[int, int], int] = {}
        for k, c in enumerate(self.cliques):
            if len(c) < 2:
                out.append(f"clique {k} has fewer than 2 vertices")
            if any(not 0 <= v < self.m for v in c):
                out.append(f"clique {k} has a vertex outside 0..{self.m - 1}")
            for e in combinations(c, 2):
                if e in seen:
                    out.append(f"edge {e} lies in cliques {seen[e]} and {k}")
                seen[e] = k
        for e in combinations(range(self.m), 2):
            if e not in seen:
                out.append(f"edge {e} is not covered")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def incidence(self) -> LinearSystem:
        """Cliques as points, vertices of K_m as lines (no padding)."""
        lines: list[list[int]] = [[] for _ in range(self.m)]
        for k, c in enumerate(self.cliques):
            for v in c:
                lines[v].append(k)
        return LinearSystem(len(self.cliques), lines)

    def to_text(self) -> str:
        return "; ".join([f"m {self.m}"] + [" ".join(map(str, c)) for c in self.cliques])

    @classmethod
    def from_text(cls, text: str) -> "CliquePartition":
        rows = [r.strip() for r in text.strip().split(";")]
        head = rows[0].split()
        if len(head) != 2 or head[0] != "m":
            raise ValueError(f"expected 'm K' header, got {rows[0]!r}")
        return cls(int(head[1]), [tuple(int(x) for x in r.split()) for r in rows[1:] if r])


def to_clique_partition(sys: LinearSystem) -> CliquePartition:
    require_valid(sys)
    if sys.num_lines < 2:
        raise ValueError("need at least two lines")
    if not is_intersecting(sys):
        raise ValueError("system is not intersecting")
    cliques = []
    padding = [0] * sys.num_lines
    for p, lines in enumerate(sys.point_lines):
        ids = [i for i in range(sys.num_lines) if lines >> i & 1]
        if len(ids) >= 2:
            cliques.append(ids)
        elif len(ids) == 1:
            padding[ids[0]] += 1
    return CliquePartition(sys.num_lines, cliques, padding)


def from_clique_partition(cp: CliquePartition, r: int) -> tuple[LinearSystem, SidePartition] | None:
    """r-partite realisation of ``cp`` or None if none exists.

    Cliques become points 0..k-1 in clique order; each line then gets padding
    points for the sides it misses, in increasing side order.
    """
    counts = cp.cliques_on()
    for v, c in enumerate(counts):
        if c > r:
            raise RealizationError(v, c, r)
    k = len(cp.cliques)
    on = [[] for _ in range(cp.m)]
    for i, c in enumerate(cp.cliques):
        for v in c:
            on[v].append(i)
    nbr = [0] * k
    for ids in on:
        mk = sum(1 << i for i in ids)
        for i in ids:
            nbr[i] |= mk & ~(1 << i)
    col = color_graph(nbr, range(k), r)
    if col is None:
        return None
    sides = [col[i] + 1 for i in range(k)]
    lines = []
    for v in range(cp.m):
        pts = list(on[v])
        used = {sides[i] for i in on[v]}
        for s in range(1, r + 1):
            if s not in used:
                pts.append(len(sides))
                sides.append(s)
        lines.append(pts)
    return LinearSystem(len(sides), lines), SidePartition(r, tuple(sides))


def tau_rep(cp: CliquePartition) -> int:
    """Fewest cliques/singletons covering all m vertices (exhaustive search)."""
    cl_masks = [sum(1 << v for v in c) for c in cp.cliques]
    through = [[mk for mk in cl_masks if mk >> v & 1] for v in range(cp.m)]
    biggest = max((len(c) for c in cp.cliques), default=1)
    best = [cp.m]

    def rec(uncovered: int, used: int) -> None:
        if not uncovered:
            best[0] = min(best[0], used)
            return
        left = uncovered.bit_count()
        if used + -(-left // biggest) >= best[0]:
            return
        v = (uncovered & -uncovered).bit_length() - 1
        for mk in sorted(through[v], key=lambda x: -(x & uncovered).bit_count()):
            rec(uncovered & ~mk, used + 1)
        rec(uncovered & ~(1 << v), used + 1)

    rec((1 << cp.m) - 1, 0)
    return best[0]


def nu2_rep(cp: CliquePartition) -> int:
    """Largest vertex set meeting every clique in at most two vertices."""
    on = [[i for i, c in enumerate(cp.cliques) if v in c] for v in range(cp.m)]
    load = [0] * len(cp.cliques)
    best = [0]

    def rec(v: int, size: int) -> None:
        if size + (cp.m - v) <= best[0]:
            return
        if v == cp.m:
            best[0] = size
            return
        if all(load[i] < 2 for i in on[v]):
            for i in on[v]:
                load[i] += 1
            rec(v + 1, size + 1)
            for i in on[v]:
                load[i] -= 1
        rec(v + 1, size)

    rec(0, 0)
    return best[0]


def canonical_partition(cp: CliquePartition) -> tuple[bytes, CliquePartition]:
    """Canonical key of ``cp`` and its relabelled canonical representative."""
    inc = cp.incidence()
    cert, _, _ = canonical_labeling(inc.num_points, inc.lines)
    # cert rows are vertices in canonical order, entries are canonical clique labels
    members: dict[int, list[int]] = {}
    for v, row in enumerate(cert):
        for k in row:
            members.setdefault(k, []).append(v)
    rep = CliquePartition(cp.m, members.values())
    return _encode(inc.num_points, cert), rep


@dataclass
class Budget:
    """Limits for exhaustive enumeration; None means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None
    nodes: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self, completed_m: int, n: int = 1) -> None:
        self.nodes += n
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise EnumerationIncomplete(f"node budget {self.max_nodes} exhausted", completed_m)
        if self.max_seconds is not None and time.monotonic() - self.started > self.max_seconds:
            raise EnumerationIncomplete(f"time budget {self.max_seconds}s exhausted", completed_m)

    def describe(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}


def _extensions(cp: CliquePartition, cap: int) -> Iterator[CliquePartition]:
    """All partitions of K_{m+1} whose restriction to 0..m-1 is ``cp``.

    The new vertex m joins a set S of pairwise disjoint old cliques; every
    old vertex outside S pairs with it in a new 2-clique.
    """
    m = cp.m
    counts = cp.cliques_on()
    cl = [(c, sum(1 << v for v in c)) for c in cp.cliques]
    full = (1 << m) - 1

    def rec(i: int, covered: int, chosen: list[int]) -> Iterator[CliquePartition]:
        if i == len(cl):
            rest = full & ~covered
            new_count = len(chosen) + rest.bit_count()
            if new_count > cap:
                return
            if any(counts[v] + 1 > cap for v in range(m) if rest >> v & 1):
                return
            cliques = [c + (m,) if k in chosen else c for k, (c, _) in enumerate(cl)]
            cliques += [(v, m) for v in range(m) if rest >> v & 1]
            yield CliquePartition(m + 1, cliques)
            return
        mk = cl[i][1]
        if not mk & covered:
            chosen.append(i)
            yield from rec(i + 1, covered | mk, chosen)
            chosen.pop()
        yield from rec(i + 1, covered, chosen)

    yield from rec(0, 0, [])


def _children(job: tuple[CliquePartition, int]) -> list[tuple[bytes, CliquePartition]]:
    parent, cap = job
    return [canonical_partition(child) for child in _extensions(parent, cap)]


class PartitionEnumerator:
    """Isomorphism classes of edge-clique partitions of K_m, level by level.

    Level m is built from the stored representatives of level m-1 by adding
    one vertex in every possible way and keeping one partition per canonical
    key. Removing a vertex never raises another vertex's clique count, so
    applying the cap to every level loses nothing. Levels are sorted by key,
    making the output independent of worker count.
    """

    def __init__(self, cap: int | None = None, budget: Budget | None = None,
                 workers: Workers | None = None):
        self.cap = cap
        self.budget = budget or Budget()
        self.workers = workers
        self.levels: dict[int, list[CliquePartition]] = {1: [CliquePartition(1, [])]}

    def level(self, m: int) -> list[CliquePartition]:
        if m < 1:
            raise ValueError("m must be >= 1")
        cap = self.cap if self.cap is not None else 1 << 30
        while max(self.levels) < m:
            cur = max(self.levels)
            found: dict[bytes, CliquePartition] = {}
            parents = self.levels[cur]
            step = 1 if self.workers is None else max(1, self.workers.threads * 8)
            for start in range(0, len(parents), step):
                jobs = [(p, cap) for p in parents[start:start + step]]
                batches = (self.workers.map(_children, jobs) if self.workers is not None
                           else [_children(j) for j in jobs])
                for batch in batches:
                    self.budget.tick(cur, len(batch))
                    for key, rep in batch:
                        found.setdefault(key, rep)
            self.levels[cur + 1] = [found[k] for k in sorted(found)]
        return self.levels[m]


def enumerate_partitions(m: int, max_cliques_per_vertex: int | None = None,
                         budget: Budget | None = None) -> Iterator[CliquePartition]:
    """Yield one representative per isomorphism class of partitions of K_m
    with at most ``max_cliques_per_vertex`` cliques through any vertex.

    Raises EnumerationIncomplete when the budget runs out; nothing is
    yielded for an unfinished level.
    """
    yield from PartitionEnumerator(max_cliques_per_vertex, budget).level(m)
