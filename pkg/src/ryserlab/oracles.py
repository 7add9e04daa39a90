"""Exhaustive reference computations and witness checkers.

Nothing here shares code with the branch-and-bound solvers: values come from
plain subset enumeration over Python sets, and witnesses are re-checked
straight from the definitions.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterable

from .system import LinearSystem

TAU_MAX_POINTS = 20
NU_MAX_LINES = 20


class OracleCapError(ValueError):
    """Instance too large for exhaustive enumeration."""


def is_transversal(sys: LinearSystem, points: Iterable[int]) -> bool:
    t = set(points)
    return all(t & set(ln) for ln in sys.lines)


def is_matching(sys: LinearSystem, line_ids: Iterable[int]) -> bool:
    ids = list(line_ids)
    if len(set(ids)) != len(ids) or any(not 0 <= i < sys.num_lines for i in ids):
        return False
    return all(not set(sys.lines[i]) & set(sys.lines[j]) for i, j in combinations(ids, 2))


def is_two_packing(sys: LinearSystem, line_ids: Iterable[int]) -> bool:
    ids = list(line_ids)
    if len(set(ids)) != len(ids) or any(not 0 <= i < sys.num_lines for i in ids):
        return False
    load = Counter(p for i in ids for p in sys.lines[i])
    return all(c <= 2 for c in load.values())


def tau_oracle(sys: LinearSystem) -> int:
    """Smallest k such that some k-subset of points hits every line."""
    if sys.num_points > TAU_MAX_POINTS:
        raise OracleCapError(f"tau_oracle refuses {sys.num_points} points (cap {TAU_MAX_POINTS})")
    lines = [set(ln) for ln in sys.lines]
    for k in range(sys.num_points + 1):
        for t in combinations(range(sys.num_points), k):
            ts = set(t)
            if all(ts & ln for ln in lines):
                return k
    raise AssertionError("the full point set must be a transversal")


def _max_hereditary(sys: LinearSystem, ok) -> int:
    # both properties are closed under taking subsets, so stop at the first empty size
    if sys.num_lines > NU_MAX_LINES:
        raise OracleCapError(f"oracle refuses {sys.num_lines} lines (cap {NU_MAX_LINES})")
    best = 0
    for k in range(1, sys.num_lines + 1):
        if any(ok(sys, c) for c in combinations(range(sys.num_lines), k)):
            best = k
        else:
            break
    return best


def nu_oracle(sys: LinearSystem) -> int:
    return _max_hereditary(sys, is_matching)


def nu2_oracle(sys: LinearSystem) -> int:
    return _max_hereditary(sys, is_two_packing)
