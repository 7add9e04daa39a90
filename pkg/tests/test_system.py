from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ryserlab import lsformat
from ryserlab.constructions import projective_plane, random_linear_system, truncate
from ryserlab.system import (InvalidSystemError, LinearSystem, SidePartition, degree_profile,
                             find_partition, is_intersecting, strip_isolated, validate)


def test_validate_fano(fano):
    # independent pairwise check over all 21 line pairs
    pairs = list(combinations(fano.lines, 2))
    assert len(pairs) == 21
    assert all(len(set(a) & set(b)) == 1 for a, b in pairs)
    rep = validate(fano)
    assert rep.ok and rep.linear and rep.uniform == 3


def test_validate_single_line():
    rep = validate(LinearSystem(3, [[0, 1, 2]]))
    assert rep.linear and rep.uniform == 3


def test_validate_flags_shared_pair():
    rep = validate(LinearSystem(4, [[0, 1, 2], [0, 1, 3]]))
    assert not rep.linear and rep.linearity_violations == [(0, 1)]
    assert not rep.ok


def test_validate_flags_each_invariant():
    rep = validate(LinearSystem(3, [[0, 1], [0, 1], [], [2, 5]]))
    assert rep.duplicate_lines == [1]
    assert rep.empty_lines == [2]
    assert rep.out_of_range == [(3, 5)]
    assert len(rep.problems()) == 4
    assert validate(LinearSystem(4, [[0, 1], [2, 3]])).uniform == 2
    assert validate(LinearSystem(4, [[0, 1], [1, 2, 3]])).uniform is None


def test_is_intersecting(fano):
    assert is_intersecting(fano)
    assert not is_intersecting(LinearSystem(6, [[0, 1, 2], [3, 4, 5]]))
    assert is_intersecting(LinearSystem(3, [[0, 1, 2]]))


def test_find_partition_truncated_fano():
    sys, _ = truncate(projective_plane(2))
    part = find_partition(sys, 3)
    assert part is not None and part.check(sys)


def test_find_partition_fano_none(fano):
    assert find_partition(fano, 3) is None


def test_find_partition_single_line():
    part = find_partition(LinearSystem(3, [[0, 1, 2]]), 3)
    assert sorted(part.side_of) == [1, 2, 3]


def test_find_partition_rejects_wrong_r(fano):
    with pytest.raises(ValueError):
        find_partition(fano, 4)


def test_find_partition_rejects_invalid():
    with pytest.raises(InvalidSystemError):
        find_partition(LinearSystem(4, [[0, 1, 2], [0, 1, 3]]), 3)


def test_find_partition_ignores_isolated_points():
    part = find_partition(LinearSystem(5, [[0, 1, 2]]), 3)
    assert part.side_of[3] == part.side_of[4] == 1


def test_degree_profile_examples(fano):
    p = degree_profile(fano)
    assert (p.delta, p.delta_prime) == (3, 3)
    p = degree_profile(LinearSystem(3, [[0, 1, 2]]))
    assert (p.delta, p.delta_prime) == (1, 1)
    concurrent = LinearSystem(7, [[0, 1, 2], [0, 3, 4], [0, 5, 6]])
    p = degree_profile(concurrent)
    assert (p.delta, p.delta_prime) == (3, 1)


def test_side_partition_check_detects_bad_sides():
    sys = LinearSystem(3, [[0, 1, 2]])
    assert not SidePartition(3, (1, 1, 2)).check(sys)
    assert not SidePartition(3, (1, 2)).check(sys)
    assert SidePartition(3, (3, 1, 2)).check(sys)


def test_strip_isolated():
    core, kept = strip_isolated(LinearSystem(6, [[1, 4], [4, 5]]))
    assert kept == [1, 4, 5]
    assert core.lines == ((0, 1), (1, 2))


systems = st.builds(
    lambda n, m, r, seed: (n, m, r, seed),
    st.integers(3, 12), st.integers(1, 8), st.integers(2, 3), st.integers(0, 10**6),
)


@settings(max_examples=100, deadline=None)
@given(systems)
def test_degree_sum_equals_incidences(params):
    n, m, r, seed = params
    try:
        sys = random_linear_system(max(n, r), m, r, seed, max_rejections=30)
    except Exception:
        return
    prof = degree_profile(sys)
    assert sum(prof.degree_of) == sum(len(ln) for ln in sys.lines)
    assert prof.delta >= prof.delta_prime >= 0
    assert prof.delta == max(prof.degree_of)


@settings(max_examples=60, deadline=None)
@given(systems)
def test_find_partition_output_is_checked_directly(params):
    n, m, r, seed = params
    try:
        sys = random_linear_system(max(n, r), m, r, seed, max_rejections=30)
    except Exception:
        return
    part = find_partition(sys, r)
    if part is not None:
        for ln in sys.lines:
            for side in range(1, r + 1):
                assert sum(1 for p in ln if part.side_of[p] == side) == 1


# -- .ls format ----------------------------------------------------------------

def test_ls_round_trip(fano):
    sys, sides = truncate(projective_plane(3))
    text = lsformat.dumps(sys, sides, comments=["q=3"])
    doc = lsformat.parse(text)
    assert doc.sys == sys and doc.sides == sides and doc.comments == ["q=3"]
    assert lsformat.dumps(doc.sys, doc.sides, doc.comments) == text
    assert lsformat.parse(lsformat.dumps(fano)).sides is None


@pytest.mark.parametrize("text, lineno, fragment", [
    ("points 3\nlines 1\n0 2 1\n", 3, "ascending"),
    ("points 3\nlines 1\n0 1 5\n", 3, "outside"),
    ("points 3\nlines 2\n0 1 2\n", 3, "expected 2 line rows"),
    ("point 3\nlines 1\n0 1 2\n", 1, "points"),
    ("points 3\nlines x\n", 2, "integers"),
    ("points 3\nlines 1\n0 1 2\nsides 1 2\n", 4, "expected 3"),
    ("points 3\nlines 1\n0 1 2\nsides 1 2 3\nextra\n", 5, "trailing"),
    ("points 3\nlines 1\n0 1 2\nfoo 1\n", 4, "unexpected"),
    ("", 1, "empty"),
])
def test_ls_parse_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(lsformat.ParseError, match=fragment) as exc:
        lsformat.parse(text)
    assert exc.value.lineno == lineno


def test_ls_parser_keeps_nonlinear_for_validation():
    doc = lsformat.parse("points 4\nlines 2\n0 1 2\n0 1 3\n")
    assert not validate(doc.sys).linear
