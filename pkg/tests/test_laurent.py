import pytest

from bracketlab.laurent import LOOP_VALUE, LaurentPoly


def test_construction_drops_zeros():
    p = LaurentPoly({2: 0, 1: 3})
    assert p.items() == [(1, 3)]
    assert LaurentPoly().is_zero()


def test_arithmetic():
    a = LaurentPoly({1: 1})
    assert a + a == LaurentPoly({1: 2})
    assert a - a == LaurentPoly()
    assert a * a == LaurentPoly({2: 1})
    assert (a + 1) * (a - 1) == LaurentPoly({2: 1, 0: -1})
    assert a * 3 == LaurentPoly({1: 3})
    assert 2 + a == LaurentPoly({1: 1, 0: 2})


def test_pow():
    d = LOOP_VALUE
    assert d**0 == LaurentPoly.one()
    assert d**2 == LaurentPoly({4: 1, 0: 2, -4: 1})
    with pytest.raises(ValueError):
        d**-1


def test_invert_variable():
    p = LaurentPoly({3: -1, -1: 2})
    assert p.invert_variable() == LaurentPoly({-3: -1, 1: 2})
    assert LOOP_VALUE.invert_variable() == LOOP_VALUE


def test_substitute():
    p = LaurentPoly({2: 1, 0: 1})
    assert p.substitute(LOOP_VALUE) == LOOP_VALUE**2 + 1
    with pytest.raises(ValueError):
        LaurentPoly({-1: 1}).substitute(LOOP_VALUE)


def test_divide_exact():
    d = LOOP_VALUE
    assert (d**3).divide_exact(d) == d**2
    product = d * LaurentPoly({5: 2, -1: 7})
    assert product.divide_exact(d) == LaurentPoly({5: 2, -1: 7})
    with pytest.raises(ValueError):
        (d + 1).divide_exact(d)


def test_render():
    assert LOOP_VALUE.to_str() == "-A^2 - A^-2"
    assert LaurentPoly({0: 1}).to_str() == "1"
    assert LaurentPoly({1: -2, 0: 5}).to_str() == "-2*A + 5"
    assert LaurentPoly().to_str("δ") == "0"
    assert LaurentPoly({1: 1}).to_str("δ") == "δ"
