import itertools
import math

import pytest
from hypothesis import given, strategies as st

from hyperwitt.errors import EvenCharacteristic, InvalidDescriptor, UnsupportedDyadicExtension
from hyperwitt.finite_field import is_prime
from hyperwitt.hyperfield import find_isomorphism, level, validate_axioms
from hyperwitt.quadratic import (
    build_from_descriptor,
    group_extension,
    group_extension_build,
    hilbert_symbol,
    parse_field,
    qh_archimedean,
    qh_finite_field,
    qh_laurent,
    qh_padic,
    relevant_places,
    represented,
)
from hyperwitt.quadratic.builders import laurent_crosscheck
from hyperwitt.oracles import hilbert_oracle

ODD_PRIMES = [p for p in range(3, 51) if is_prime(p)]


# -- finite and archimedean ------------------------------------------------------------

@pytest.mark.parametrize("q,lev", [(3, 2), (5, 1), (7, 2), (9, 1), (27, 2), (49, 1)])
def test_finite_fields(q, lev):
    h = qh_finite_field(q)
    assert h.order == 3 and level(h) == lev
    assert (h.minus_one == h.one) == (q % 4 == 1)


def test_q_f5_one_plus_one_is_everything():
    h = qh_finite_field(5)
    assert h.add(h.one, h.one) == set(range(3))


def test_even_characteristic_rejected():
    with pytest.raises(EvenCharacteristic):
        qh_finite_field(4)


def test_archimedean():
    c, r = qh_archimedean("complex"), qh_archimedean("real")
    assert c.order == 2 and c.add(c.one, c.one) == {0, 1}
    assert r.order == 3 and r.add(r.one, r.one) == {r.one}
    assert level(r) == math.inf


# -- Hilbert symbols ----------------------------------------------------------------------

def test_hilbert_examples():
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(5, 5, 5) == 1
    assert hilbert_symbol(-1, -1, math.inf) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    for p in (2, 3, 5, 7, math.inf):
        assert hilbert_symbol(7, 1, p) == 1


nonzero = st.integers(-60, 60).filter(bool)


@given(nonzero, nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_hilbert_bimultiplicative_and_symmetric(a, b, c, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    assert hilbert_symbol(a * c, b, p) == hilbert_symbol(a, b, p) * hilbert_symbol(c, b, p)


@given(nonzero, nonzero)
def test_product_formula(a, b):
    assert math.prod(hilbert_symbol(a, b, v) for v in relevant_places(a, b)) == 1


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_hilbert_agrees_with_congruence_oracle(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_oracle(a, b, p)


def test_represented_matches_definition():
    # z in D<a, b> over Q_p iff (az, bz)_p = 1
    assert represented(2, 1, 1, 3)       # 2 = 1 + 1
    assert not represented(-1, 1, 1, math.inf)


# -- p-adic -------------------------------------------------------------------------------------

def test_padic_orders_and_levels():
    assert qh_padic(3).order == 5 and level(qh_padic(3)) == 2
    assert qh_padic(2).order == 9
    assert level(qh_padic(5)) == 1
    assert find_isomorphism(qh_padic(5), qh_padic(13)) is not None
    with pytest.raises(UnsupportedDyadicExtension):
        qh_padic(2, 2)


def test_padic_classification_by_residue_mod_4():
    for p, pp in itertools.combinations_with_replacement(ODD_PRIMES, 2):
        iso = find_isomorphism(qh_padic(p), qh_padic(pp)) is not None
        assert iso == (p % 4 == pp % 4), (p, pp)


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_springer_consistency(p):
    assert find_isomorphism(qh_padic(p), group_extension(qh_finite_field(p), 1)) is not None


def test_square_class_counts():
    assert len(build_from_descriptor("C").nonzero) == 1
    assert len(build_from_descriptor("R").nonzero) == 2
    assert len(build_from_descriptor("Qp:7").nonzero) == 4
    assert len(build_from_descriptor("Q2").nonzero) == 8
    assert parse_field("Qp:2:3").square_class_count == 32


# -- group extensions and Laurent fields ---------------------------------------------------------

def test_group_extension_shapes():
    for base in (qh_finite_field(3), qh_archimedean("real"), qh_padic(3)):
        for r in range(3):
            g, pres = group_extension_build(base, r)
            assert len(g.nonzero) == len(base.nonzero) << r
            assert validate_axioms(g).ok
            for x in g.nonzero:
                assert pres.built is g
                assert 0 <= pres.coset_of(x) < 1 << r


def test_rank_zero_extension_of_prime_base_is_base():
    for base in (qh_finite_field(3), qh_finite_field(5), qh_padic(3)):
        assert find_isomorphism(group_extension(base, 0), base) is not None


def test_f9_extension():
    g = group_extension(qh_finite_field(9), 1)
    assert find_isomorphism(g, qh_laurent(9)) is not None
    assert find_isomorphism(g, qh_padic(5)) is not None


def test_laurent_fields():
    assert qh_laurent(3).order == 5
    assert level(qh_laurent(5)) == 1
    report = laurent_crosscheck(3, samples=80)
    assert report["one_plus_t_class"] == 1


def test_descriptor_parsing():
    assert str(parse_field("F3((t))")) == "F3((t))"
    assert str(parse_field("F5(t)")) == "F5(t)"
    assert parse_field("Qp:3").p == 3
    with pytest.raises(InvalidDescriptor):
        parse_field("Qp:4")
    with pytest.raises(InvalidDescriptor):
        parse_field("banana")
