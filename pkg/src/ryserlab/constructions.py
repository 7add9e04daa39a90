"""Generators: projective planes PG(2, q), truncated planes, the triangle, random systems."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .fields import FieldTables, make_field
from .system import LinearSystem, SidePartition


class InfeasibleError(RuntimeError):
    """Random generation exhausted its rejection budget."""


@dataclass(frozen=True)
class PlaneHandle:
    sys: LinearSystem
    q: int
    point_coords: tuple[tuple[int, int, int], ...]
    line_coords: tuple[tuple[int, int, int], ...]


def normalized_vectors(q: int) -> list[tuple[int, int, int]]:
    """Nonzero vectors of GF(q)^3 whose first nonzero coordinate is 1, in lex order."""
    return [v for v in product(range(q), repeat=3) if any(v) and next(x for x in v if x) == 1]


def projective_plane(q: int) -> PlaneHandle:
    """PG(2, q): points and lines are the normalised vectors of GF(q)^3.

    Point x lies on line a iff a0*x0 + a1*x1 + a2*x2 = 0. Line i and point i
    share the same coordinate vector.
    """
    f = make_field(q)
    vecs = normalized_vectors(q)
    lines = []
    for a in vecs:
        lines.append([i for i, x in enumerate(vecs) if _dot(f, a, x) == 0])
    return PlaneHandle(LinearSystem(len(vecs), lines), q, tuple(vecs), tuple(vecs))


def _dot(f: FieldTables, a, x) -> int:
    add, mul = f.add, f.mul
    return add[add[mul[a[0]][x[0]]][mul[a[1]][x[1]]]][mul[a[2]][x[2]]]


def truncate(plane: PlaneHandle, p: int = 0) -> tuple[LinearSystem, SidePartition]:
    """Delete point ``p`` and every line through it.

    The deleted lines, minus ``p``, become the sides (numbered in line order).
    Remaining points keep their relative order.
    """
    sys = plane.sys
    if not 0 <= p < sys.num_points:
        raise ValueError(f"point {p} is not a point of the plane (0..{sys.num_points - 1})")
    through = [i for i, ln in enumerate(sys.lines) if p in ln]
    keep_pts = [x for x in range(sys.num_points) if x != p]
    new = {old: i for i, old in enumerate(keep_pts)}
    side = [0] * len(keep_pts)
    for s, li in enumerate(through, start=1):
        for x in sys.lines[li]:
            if x != p:
                side[new[x]] = s
    lines = [[new[x] for x in ln] for ln in sys.lines if p not in ln]
    return LinearSystem(len(keep_pts), lines), SidePartition(plane.q + 1, tuple(side))


def triangle() -> LinearSystem:
    """Three 3-point lines meeting pairwise in three distinct points, plus one private point each."""
    return LinearSystem(6, [[0, 1, 3], [1, 2, 4], [0, 2, 5]])


TRIANGLE_SIDES = SidePartition(3, (1, 2, 3, 3, 1, 2))


def random_linear_system(n: int, m: int, r: int, seed: int, max_rejections: int | None = None) -> LinearSystem:
    """m distinct r-subsets of n points, pairwise sharing at most one point.

    Rejection sampling from ``random.Random(seed)``; raises InfeasibleError
    once ``max_rejections`` consecutive draws fail (default 200 * m).
    """
    if not (n >= r >= 2 and m >= 1):
        raise ValueError(f"need n >= r >= 2 and m >= 1, got n={n}, m={m}, r={r}")
    budget = 200 * m if max_rejections is None else max_rejections
    rng = random.Random(seed)
    masks: list[int] = []
    lines: list[list[int]] = []
    fails = 0
    while len(lines) < m:
        ln = sorted(rng.sample(range(n), r))
        mk = sum(1 << p for p in ln)
        if all((mk & o).bit_count() <= 1 for o in masks):
            masks.append(mk)
            lines.append(ln)
            fails = 0
        else:
            fails += 1
            if fails > budget:
                raise InfeasibleError(
                    f"could not place line {len(lines) + 1} of {m} (n={n}, r={r}, seed={seed}) "
                    f"after {budget} rejections"
                )
    return LinearSystem(n, lines)
