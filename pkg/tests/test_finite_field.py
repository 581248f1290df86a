import pytest
from hypothesis import given, strategies as st

from hyperwitt.finite_field import factor_prime_power, field, is_prime

QS = [2, 3, 4, 5, 7, 8, 9, 25, 27]


@pytest.mark.parametrize("q", QS)
def test_field_axioms_exhaustive(q):
    F = field(q)
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
    nonzero = list(F.nonzero())
    assert len({F.mul(a, b) for a in nonzero for b in nonzero}) == q - 1


@pytest.mark.parametrize("q", QS)
def test_squares_have_half_the_units_in_odd_characteristic(q):
    F = field(q)
    squares = {F.mul(a, a) for a in F.nonzero()}
    assert len(squares) == (q - 1 if q % 2 == 0 else (q - 1) // 2)
    for s in squares:
        assert F.is_square(s)
        r = F.sqrt(s)
        assert F.mul(r, r) == s


def test_minus_one_square_iff_q_is_1_mod_4():
    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        F = field(q)
        assert F.is_square(F.neg(1)) == (q % 4 == 1)


def test_least_nonsquare():
    assert field(3).least_nonsquare() == 2
    assert field(7).least_nonsquare() == 3
    assert field(4).least_nonsquare() is None


def test_prime_power_detection():
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(12) is None
    assert is_prime(47) and not is_prime(49)


@given(st.sampled_from(QS), st.data())
def test_distributivity(q, data):
    F = field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
