from itertools import combinations

import pytest

from ryserlab.constructions import (TRIANGLE_SIDES, InfeasibleError, normalized_vectors,
                                    projective_plane, random_linear_system, triangle, truncate)
from ryserlab.oracles import nu2_oracle, tau_oracle
from ryserlab.system import find_partition, is_intersecting, validate


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_plane_counts_and_regularity(planes, q):
    sys = planes[q].sys
    n = q * q + q + 1
    assert sys.num_points == n and sys.num_lines == n
    assert all(len(ln) == q + 1 for ln in sys.lines)
    assert all(d == q + 1 for d in sys.degrees)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_plane_lines_meet_once_and_pairs_covered_once(planes, q):
    sys = planes[q].sys
    sets = [set(ln) for ln in sys.lines]
    assert all(len(a & b) == 1 for a, b in combinations(sets, 2))
    for x, y in combinations(range(sys.num_points), 2):
        assert sum(1 for s in sets if x in s and y in s) == 1


def test_normalized_vectors_count():
    for q in (2, 3, 4):
        vecs = normalized_vectors(q)
        assert len(vecs) == q * q + q + 1 and vecs == sorted(vecs)


@pytest.mark.parametrize("q, pts, lines", [(2, 6, 4), (3, 12, 9), (4, 20, 16)])
def test_truncation_counts(planes, q, pts, lines):
    sys, sides = truncate(planes[q])
    assert (sys.num_points, sys.num_lines) == (pts, lines)
    assert validate(sys).ok and is_intersecting(sys)
    assert sides.check(sys)
    assert sorted(set(sides.side_of)) == list(range(1, q + 2))
    assert find_partition(sys, q + 1) is not None


def test_truncate_rejects_bad_point(planes):
    with pytest.raises(ValueError):
        truncate(planes[2], 7)


def test_triangle():
    tri = triangle()
    assert validate(tri).ok and is_intersecting(tri)
    assert TRIANGLE_SIDES.check(tri)
    assert tau_oracle(tri) == 2
    assert nu2_oracle(tri) == 3


def test_random_is_deterministic_and_valid():
    a = random_linear_system(12, 6, 3, seed=9)
    b = random_linear_system(12, 6, 3, seed=9)
    assert a == b
    assert validate(a).ok and a.num_lines == 6 and validate(a).uniform == 3
    assert random_linear_system(12, 6, 3, seed=10) != a


def test_random_infeasible():
    # any two 3-subsets of 4 points share two points, so at most one line fits
    with pytest.raises(InfeasibleError):
        random_linear_system(4, 20, 3, seed=1)


def test_random_rejects_bad_parameters():
    with pytest.raises(ValueError):
        random_linear_system(2, 1, 3, seed=0)
