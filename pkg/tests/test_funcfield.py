import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from hyperwitt.errors import (
    DuplicatePlace,
    InputIsSquare,
    ParseError,
    PrecisionLoss,
    UnsupportedField,
    ZeroElement,
)
from hyperwitt.finite_field import field
from hyperwitt.funcfield import (
    Place,
    RatFunc,
    char2_dimension,
    char2_represents,
    char2_solve,
    distinct_classes_witness,
    factorize,
    first_places,
    is_irreducible,
    local_class,
    non_rigidity_witness,
    parse_ratfunc,
    poly_sqrt,
    represents,
    square_class,
    tame_symbol,
)
from hyperwitt.funcfield import composed as CP
from hyperwitt.funcfield.char2 import random_ratfunc
from hyperwitt.funcfield.poly import Poly, gcd, random_poly
from hyperwitt.funcfield.squareclass import support
from hyperwitt.oracles import represents_search, tame_symbol_oracle

F3, F5 = field(3), field(5)


def rf(F, text):
    return parse_ratfunc(F, text)


# -- polynomials -----------------------------------------------------------------------

def test_factor_examples():
    t = Poly.x(F3)
    one = Poly.const(F3, 1)
    assert is_irreducible(t * t + one)
    fac = factorize(t * t - one)
    assert [g.to_str() for g, _ in fac.factors] == ["t + 1", "t + 2"]


@given(st.sampled_from([2, 3, 4, 5, 7, 9]), st.integers(0, 10_000))
@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
def test_factorization_multiplies_back(q, seed):
    F = field(q)
    rng = random.Random(seed)
    f = Poly.const(F, 1)
    for _ in range(rng.randint(1, 4)):
        f = f * random_poly(F, rng.randint(1, 3), rng, monic=True)
    f = f.scale(rng.randrange(1, q))
    fac = factorize(f, seed)
    assert fac.expand(F) == f
    for g, _ in fac.factors:
        assert g.is_monic() and is_irreducible(g)


def test_poly_sqrt_and_gcd():
    f = rf(F5, "(t^2+3t+1)^2").num
    r = poly_sqrt(f)
    assert r is not None and r * r == f
    assert poly_sqrt(rf(F5, "t^3").num) is None
    a, b = rf(F5, "(t+1)(t+2)").num, rf(F5, "(t+1)(t+3)").num
    assert gcd(a, b) == rf(F5, "t+1").num


def test_first_places_are_distinct_irreducibles():
    ps = first_places(F3, 12)
    assert len({p.c for p in ps}) == 12
    assert all(is_irreducible(p) and p.is_monic() for p in ps)


# -- rational functions ---------------------------------------------------------------------

def test_parse_and_arithmetic():
    f = rf(F3, "(t+1)^3/t")
    assert f.to_str() == "(t^3 + 1)/(t)"
    assert rf(F3, "2t + 3") == rf(F3, "2*t")
    assert rf(F3, "t^-1") == RatFunc.t(F3).inverse()
    with pytest.raises(ParseError):
        rf(F3, "t +")
    with pytest.raises(ParseError):
        rf(F3, "x")
    with pytest.raises(ParseError):
        rf(F3, "1/(t-t)")


def test_generator_symbol_in_extension_fields():
    F9 = field(9)
    a = rf(F9, "a")
    assert (a * a - rf(F9, "a*a")).is_zero()


# -- square classes --------------------------------------------------------------------------

def test_square_class_examples():
    c = square_class(rf(F5, "2t^2"))
    assert not c.constant_square and c.odd_part == ()
    c = square_class(rf(F3, "t"))
    assert c.constant_square and len(c.odd_part) == 1
    c = square_class(rf(F5, "(t+1)^3/t"))
    assert c.describe(F5) == "(square; t, t + 1)"
    with pytest.raises(ZeroElement):
        square_class(rf(F3, "0"))


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_square_class_is_a_homomorphism(seed):
    rng = random.Random(seed)
    F = F3 if seed % 2 else F5
    f, g, u = (random_ratfunc(F, rng, 3) for _ in range(3))
    assert square_class(f * g) == square_class(f) * square_class(g)
    assert square_class(f * u * u) == square_class(f)
    assert square_class(f).representative(F) is not None
    assert square_class(square_class(f).representative(F)) == square_class(f)


# -- local classes and symbols -----------------------------------------------------------------

def test_local_class_examples():
    at_t = Place.finite(rf(F3, "t").num)
    assert local_class(rf(F3, "t"), at_t) == (1, True)
    assert local_class(rf(F3, "2(t+1)"), at_t) == (0, False)
    assert local_class(rf(F3, "t"), Place.infinite())[0] == 1


def test_place_validation():
    with pytest.raises(ValueError):
        Place.finite(rf(F3, "t^2-1").num)
    assert Place.finite(rf(F3, "t^2+1").num).residue_size(3) == 9


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_local_class_ignores_squares(seed):
    rng = random.Random(seed)
    f, u = random_ratfunc(F5, rng, 3), random_ratfunc(F5, rng, 3)
    for pi in first_places(F5, 6):
        v = Place.finite(pi)
        assert local_class(f * u * u, v) == local_class(f, v)


def test_tame_symbol_examples():
    at_t = Place.finite(rf(F3, "t").num)
    t = rf(F3, "t")
    assert tame_symbol(t, t, at_t) == -1
    assert tame_symbol(t, rf(F3, "1-t"), at_t) == 1


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_tame_symbol_reciprocity_and_oracle(seed):
    rng = random.Random(seed)
    F = F3 if seed % 2 else F5
    f, g = random_ratfunc(F, rng, 3), random_ratfunc(F, rng, 3)
    prod = 1
    for v in support(f, g):
        prod *= tame_symbol(f, g, v)
    assert prod == 1
    for c in (0, 1, None):
        v = Place.infinite() if c is None else Place.finite(Poly.of(F, [F.neg(c), 1]))
        assert tame_symbol(f, g, v) == tame_symbol_oracle(f, g, c)


# -- value sets ------------------------------------------------------------------------------------

def test_represents_examples():
    assert represents(rf(F3, "t^2+1"), rf(F3, "1"))
    rng = random.Random(3)
    for _ in range(10):
        z = random_ratfunc(F3, rng, 3)
        assert represents(z, rf(F3, "-1"))


def test_represents_agrees_with_search_on_small_instances():
    rng = random.Random(11)
    for _ in range(12):
        z, x = random_ratfunc(F3, rng, 2), random_ratfunc(F3, rng, 2)
        found = represents_search(z, x, 3)
        decided = represents(z, x)
        if found is not None:
            A, B, c = found
            assert decided
        if not decided:
            assert found is None


# -- constructions from the lemma on rational function fields ------------------------------------

def test_distinct_classes():
    at = [Place.finite(rf(F3, s).num) for s in ("t", "t+1", "t^2+1")]
    w = distinct_classes_witness(at)
    assert len(w.classes) == 8 and w.distinct and w.kronecker_ok
    one = distinct_classes_witness(at[:1])
    assert len(set(one.classes)) == 2
    with pytest.raises(DuplicatePlace):
        distinct_classes_witness([at[0], at[0]])


def test_non_rigidity_witness_examples():
    w = non_rigidity_witness(rf(F3, "-1"))
    assert w.ok
    w = non_rigidity_witness(rf(F3, "t"))
    assert w.ok
    # independent re-check of the certificates
    assert represents(w.y, w.x)
    assert not square_class(w.y).is_one
    assert square_class(w.y) != square_class(w.x)
    with pytest.raises(InputIsSquare):
        non_rigidity_witness(rf(F3, "(t+1)^2"))


# -- composed valuation -------------------------------------------------------------------------------

def composed(p, num, den=None):
    return CP.ComposedElement.from_terms(field(p), num, den)


def test_composed_examples():
    assert CP.composed_class(composed(3, {1: {0: 1}})) == ((1, 0), True)
    assert CP.composed_class(composed(3, {1: {1: 1}})) == ((1, 1), True)
    assert CP.composed_class(composed(3, {1: {0: 2, 1: 1}})) == ((1, 0), False)


def test_composed_generators_hit_eight_classes():
    for p in (3, 5, 7):
        classes = {CP.composed_class(e) for e in CP.all_generator_products(p)}
        assert len(classes) == 8


def test_composed_precision_loss():
    F = F3
    a = composed(3, {0: {0: 1, 30: 1}})
    b = composed(3, {0: {0: 2}})
    with pytest.raises(PrecisionLoss):
        CP.lex_value(a + b)


@given(st.integers(0, 10_000), st.sampled_from([3, 5]))
@settings(max_examples=40, deadline=None)
def test_tower_diagram(seed, p):
    e = CP.random_element(p, random.Random(seed))
    assert CP.tower_class(e) == CP.composed_class(e)


# -- characteristic 2 -----------------------------------------------------------------------------------

def test_char2_examples():
    F2 = field(2)
    x = rf(F2, "t^3+t+1")
    assert char2_represents(x, x)
    assert char2_represents(x + 1, x)
    a, b = char2_solve(x + 1, x)
    assert a * a + b * b * x == x + 1
    assert not char2_represents(rf(F2, "t"), rf(F2, "t^2+1"))


def test_char2_dimension():
    assert char2_dimension("F4").dimension == 1
    assert char2_dimension("F2(t)").dimension == 2
    assert char2_dimension("F4(t)").basis == ("1", "t")
    with pytest.raises(UnsupportedField):
        char2_dimension("F3(t)")
