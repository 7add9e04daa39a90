import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ryserlab import kernels
from ryserlab.constructions import InfeasibleError, projective_plane, random_linear_system
from ryserlab.invariants import line_order
from ryserlab.system import LinearSystem

needs_c = pytest.mark.skipif(kernels._kernels_c is None, reason="compiled kernels not built")

params = st.tuples(st.integers(4, 30), st.integers(1, 16), st.integers(2, 4), st.integers(0, 10**6))


def _system(p):
    n, m, r, seed = p
    try:
        return random_linear_system(max(n, r + 1), m, r, seed, max_rejections=40)
    except InfeasibleError:
        return None


@needs_c
@settings(max_examples=150, deadline=None)
@given(params)
def test_backends_agree_on_hitting_set(p):
    sys = _system(p)
    if sys is None:
        return
    allowed = (1 << sys.num_points) - 1
    args = (sys.masks, sys.point_lines, 0, allowed, sys.num_lines + 1)
    assert kernels.hitting_set(*args, backend="cython") == kernels.hitting_set(*args, backend="python")


@needs_c
@settings(max_examples=150, deadline=None)
@given(params, st.sampled_from([1, 2]))
def test_backends_agree_on_packing(p, cap):
    sys = _system(p)
    if sys is None:
        return
    args = (sys.masks, line_order(sys), cap, 0, sys.num_lines + 1, sys.num_points)
    assert kernels.packing(*args, backend="cython") == kernels.packing(*args, backend="python")


@needs_c
def test_backends_agree_on_planes():
    for q in (2, 3, 4, 5):
        sys = projective_plane(q).sys
        allowed = (1 << sys.num_points) - 1
        args = (sys.masks, sys.point_lines, 0, allowed, sys.num_lines + 1)
        assert kernels.hitting_set(*args, backend="cython") == kernels.hitting_set(*args, backend="python")


def test_large_instance_falls_back_to_python():
    # 65 disjoint 2-point lines on 130 points: beyond 64-bit masks
    sys = LinearSystem(130, [[2 * i, 2 * i + 1] for i in range(65)])
    allowed = (1 << sys.num_points) - 1
    size, mask, _ = kernels.hitting_set(sys.masks, sys.point_lines, 0, allowed, 100)
    assert size == 65 and mask.bit_count() == 65
    size, _, _ = kernels.packing(sys.masks, list(range(65)), 1, 0, 66, sys.num_points)
    assert size == 65


@needs_c
def test_explicit_cython_on_large_instance_raises():
    sys = LinearSystem(130, [[2 * i, 2 * i + 1] for i in range(65)])
    with pytest.raises(ValueError):
        kernels.hitting_set(sys.masks, sys.point_lines, 0, (1 << 130) - 1, 100, backend="cython")


BACKENDS = ["python"] + (["cython"] if kernels._kernels_c is not None else [])


@pytest.mark.parametrize("backend", BACKENDS)
def test_forced_and_allowed(backend, fano):
    allowed = (1 << 7) - 1
    # forcing point 0 still leaves an optimum of 3 containing it
    size, mask, _ = kernels.hitting_set(fano.masks, fano.point_lines, 1, allowed & ~1, 8,
                                        backend=backend)
    assert size == 3 and mask & 1
    # only points {0, 1} allowed: cannot hit line [2, 3, 6]
    size, _, _ = kernels.hitting_set(fano.masks, fano.point_lines, 0, 0b11, 8, backend=backend)
    assert size == -1


@pytest.mark.parametrize("backend", BACKENDS)
def test_limit_and_first_only(backend, fano):
    allowed = (1 << 7) - 1
    size, _, _ = kernels.hitting_set(fano.masks, fano.point_lines, 0, allowed, 3, backend=backend)
    assert size == -1
    size, mask, _ = kernels.hitting_set(fano.masks, fano.point_lines, 0, allowed, 5,
                                        first_only=True, backend=backend)
    assert 3 <= size < 5 and mask.bit_count() == size


@pytest.mark.parametrize("backend", BACKENDS)
def test_packing_forced_and_target(backend, fano):
    order = list(range(7))
    # two Fano lines always meet: forcing both into a matching is infeasible
    assert kernels.packing(fano.masks, order, 1, 0b11, 8, 7, backend=backend)[0] == -1
    size, mask, _ = kernels.packing(fano.masks, order, 2, 0, 8, 7, backend=backend)
    assert size == 4 and mask.bit_count() == 4
    size, _, _ = kernels.packing(fano.masks, order, 2, 0, 2, 7, backend=backend)
    assert size >= 2
