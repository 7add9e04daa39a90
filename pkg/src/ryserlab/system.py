"""Linear systems: the points/lines incidence model and its structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class InvalidSystemError(ValueError):
    """Raised when an operation needs a valid linear system and gets something else."""


@dataclass(frozen=True)
class LinearSystem:
    """Points ``0..num_points-1`` and an ordered tuple of lines.

    Each line is stored as a sorted tuple of point indices. The constructor
    normalises but does not enforce linearity; use :func:`validate`.
    """

    num_points: int
    lines: tuple[tuple[int, ...], ...]

    def __init__(self, num_points: int, lines: Iterable[Iterable[int]]):
        object.__setattr__(self, "num_points", int(num_points))
        object.__setattr__(self, "lines", tuple(tuple(sorted(set(ln))) for ln in lines))

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Point bitset of every line."""
        return tuple(sum(1 << p for p in ln) for ln in self.lines)

    @cached_property
    def point_lines(self) -> tuple[int, ...]:
        """Line bitset of every point (the lines through it)."""
        out = [0] * self.num_points
        for i, ln in enumerate(self.lines):
            for p in ln:
                if 0 <= p < self.num_points:
                    out[p] |= 1 << i
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.point_lines)

    def uniformity(self) -> int | None:
        sizes = {len(ln) for ln in self.lines}
        return sizes.pop() if len(sizes) == 1 else None

    def relabel(self, point_perm: Sequence[int], line_order: Sequence[int] | None = None) -> "LinearSystem":
        """Rename point ``p`` to ``point_perm[p]`` and optionally reorder lines."""
        lines = [tuple(point_perm[p] for p in ln) for ln in self.lines]
        if line_order is not None:
            lines = [lines[i] for i in line_order]
        return LinearSystem(self.num_points, lines)


def strip_isolated(sys: LinearSystem) -> tuple[LinearSystem, list[int]]:
    """Drop degree-0 points; returns the compacted system and the kept old indices."""
    used = sorted({p for ln in sys.lines for p in ln})
    new = {old: i for i, old in enumerate(used)}
    return LinearSystem(len(used), [[new[p] for p in ln] for ln in sys.lines]), used


@dataclass(frozen=True)
class SidePartition:
    """Side index (1..r) of every point."""

    r: int
    side_of: tuple[int, ...]

    def sides(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.r)]
        for p, s in enumerate(self.side_of):
            out[s - 1].append(p)
        return out

    def check(self, sys: LinearSystem) -> bool:
        """True iff every line meets every side in exactly one point."""
        if len(self.side_of) != sys.num_points:
            return False
        if any(not 1 <= s <= self.r for s in self.side_of):
            return False
        for ln in sys.lines:
            if sorted(self.side_of[p] for p in ln) != list(range(1, self.r + 1)):
                return False
        return True


@dataclass
class ValidationReport:
    linear: bool
    uniform: int | None
    duplicate_lines: list[int] = field(default_factory=list)
    empty_lines: list[int] = field(default_factory=list)
    out_of_range: list[tuple[int, int]] = field(default_factory=list)  # (line, point)
    linearity_violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.linear and not self.duplicate_lines and not self.empty_lines
                and not self.out_of_range)

    def problems(self) -> list[str]:
        msgs = []
        for i in self.empty_lines:
            msgs.append(f"line {i} is empty")
        for i, p in self.out_of_range:
            msgs.append(f"line {i} has point {p} outside [0, num_points)")
        for i in self.duplicate_lines:
            msgs.append(f"line {i} duplicates an earlier line")
        for i, j in self.linearity_violations:
            msgs.append(f"lines {i} and {j} share more than one point (not linear)")
        return msgs


def validate(sys: LinearSystem) -> ValidationReport:
    seen: dict[tuple[int, ...], int] = {}
    rep = ValidationReport(linear=True, uniform=sys.uniformity())
    for i, ln in enumerate(sys.lines):
        if not ln:
            rep.empty_lines.append(i)
        for p in ln:
            if not 0 <= p < sys.num_points:
                rep.out_of_range.append((i, p))
        if ln in seen:
            rep.duplicate_lines.append(i)
        else:
            seen[ln] = i
    masks = sys.masks
    for i, j in combinations(range(len(masks)), 2):
        if (masks[i] & masks[j]).bit_count() > 1:
            rep.linearity_violations.append((i, j))
    rep.linear = not rep.linearity_violations
    return rep


def require_valid(sys: LinearSystem) -> None:
    rep = validate(sys)
    if not rep.ok:
        raise InvalidSystemError("; ".join(rep.problems()))


def is_intersecting(sys: LinearSystem) -> bool:
    masks = sys.masks
    return all(masks[i] & masks[j] for i, j in combinations(range(len(masks)), 2))


@dataclass(frozen=True)
class DegreeProfile:
    delta: int
    delta_prime: int
    degree_of: tuple[int, ...]


def degree_profile(sys: LinearSystem) -> DegreeProfile:
    """Max degree and max degree after removing one maximiser.

    With several points of maximum degree the second value equals the first,
    since only one of them is excluded.
    """
    degs = list(sys.degrees)
    if not degs:
        return DegreeProfile(0, 0, ())
    delta = max(degs)
    rest = list(degs)
    rest.remove(delta)
    return DegreeProfile(delta, max(rest, default=0), tuple(degs))


def collinearity(sys: LinearSystem) -> list[int]:
    """Bitset of points sharing a line with each point (excluding itself)."""
    nbr = [0] * sys.num_points
    for m, ln in zip(sys.masks, sys.lines):
        for p in ln:
            nbr[p] |= m
    return [nbr[p] & ~(1 << p) for p in range(sys.num_points)]


def color_graph(nbr: Sequence[int], vertices: Sequence[int], k: int) -> dict[int, int] | None:
    """Exact proper k-colouring of the graph on ``vertices`` (bitset adjacency).

    Backtracking, most saturated vertex first (ties: higher degree, lower
    index); a new colour is opened only as the next unused one. Returns
    vertex -> colour in 0..k-1, or None if no colouring exists.
    """
    verts = list(vertices)
    vset = 0
    for v in verts:
        vset |= 1 << v
    deg = {v: (nbr[v] & vset).bit_count() for v in verts}
    color: dict[int, int] = {}

    def pick() -> int:
        best, key = -1, None
        for v in verts:
            if v in color:
                continue
            used = {color[u] for u in _bits(nbr[v] & vset) if u in color}
            kk = (len(used), deg[v], -v)
            if key is None or kk > key:
                best, key = v, kk
        return best

    def rec(n_used: int) -> bool:
        if len(color) == len(verts):
            return True
        v = pick()
        forbidden = {color[u] for u in _bits(nbr[v] & vset) if u in color}
        for c in range(min(k, n_used + 1)):
            if c in forbidden:
                continue
            color[v] = c
            if rec(max(n_used, c + 1)):
                return True
            del color[v]
        return False

    return dict(color) if rec(0) else None


def _bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def find_partition(sys: LinearSystem, r: int) -> SidePartition | None:
    """Exact search for an r-partition of the points (sides numbered 1..r).

    Isolated points are ignored by the search and placed on side 1.
    """
    require_valid(sys)
    u = sys.uniformity()
    if sys.lines and u != r:
        raise ValueError(f"system is not {r}-uniform (uniformity: {u})")
    active = [p for p in range(sys.num_points) if sys.degrees[p] > 0]
    col = color_graph(collinearity(sys), active, r)
    if col is None:
        return None
    side = tuple(col.get(p, 0) + 1 for p in range(sys.num_points))
    part = SidePartition(r, side)
    assert part.check(sys)
    return part
