import pytest

from ryserlab.fields import FieldError, check_axioms, make_field, supported_orders

REQUIRED = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", supported_orders())
def test_axioms_hold_exhaustively(q):
    assert check_axioms(make_field(q)) == []


def test_required_orders_supported():
    assert set(REQUIRED) <= set(supported_orders())


def test_gf2_addition_is_xor():
    f = make_field(2)
    assert f.add == ((0, 1), (1, 0))
    assert f.mul == ((0, 0), (0, 1))


def test_gf4_has_characteristic_two():
    f = make_field(4)
    assert f.add[1][1] == 0
    assert all(f.add[a][a] == 0 for a in range(4))
    # the nonzero elements form a cyclic group of order 3
    x = 2
    assert f.mul[x][f.mul[x][x]] == 1 and f.mul[x][x] != 1


@pytest.mark.parametrize("q, fragment", [(6, "not a prime power"), (12, "not a prime power"),
                                         (1, ">= 2"), (49, "no tabulated"), (37, "exceeds")])
def test_rejects_unsupported(q, fragment):
    with pytest.raises(FieldError, match=fragment):
        make_field(q)


def test_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(5).div(1, 0)
