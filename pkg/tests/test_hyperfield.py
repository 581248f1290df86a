import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from hyperwitt.errors import MalformedTable, NotAMorphism, NotASubgroup, ZeroArgument
from hyperwitt.hyperfield import (
    GROUP_EXTENSION,
    INVALID,
    QUOTIENT_MORPHISM,
    FiniteHyperfield,
    MorphismWitness,
    automorphisms,
    check_morphism_kind,
    find_isomorphism,
    forms_equivalent,
    is_exceptional,
    level,
    loads,
    dumps,
    prime,
    quotient,
    rigidity_report,
    subgroup,
    trivial_subgroup,
    validate_axioms,
    value_set,
    whole_group,
)
from hyperwitt.hyperfield.table import load, save
from hyperwitt.quadratic import (
    field_as_hyperfield,
    group_extension,
    group_extension_build,
    qh_complex,
    qh_finite_field,
    qh_padic,
    qh_real,
)


def krasner():
    return FiniteHyperfield.from_sets(
        2, 0, 1, [0, 1], [[0, 0], [0, 1]], [[[0], [1]], [[1], [0, 1]]], ["0", "1"])


def by_label(h, *names):
    return [h.element_by_label(n) for n in names]


# -- axioms -----------------------------------------------------------------------------

def test_q_f3_is_valid_and_has_expected_sums():
    h = qh_finite_field(3)
    one, m1 = by_label(h, "1", "-1")
    assert validate_axioms(h).ok
    assert h.add(one, one) == {one, m1}
    assert h.add(one, m1) == set(range(3))
    assert h.add(m1, m1) == {one, m1}


def test_overwritten_sum_is_reported_with_witness():
    h = qh_finite_field(3)
    one, m1 = by_label(h, "1", "-1")
    sums = [list(r) for r in h.sum]
    sums[one][m1] = sums[m1][one] = 1 << one
    bad = FiniteHyperfield(h.order, h.zero, h.one, h.neg, h.mul,
                           tuple(tuple(r) for r in sums), h.labels)
    report = validate_axioms(bad)
    assert not report.ok
    tags = report.axioms()
    assert "I.1" in tags or "I.2" in tags or "I.neg" in tags
    neg_violation = [v for v in report if v.axiom == "I.neg"]
    assert neg_violation and neg_violation[0].witness == (one, m1)


def test_krasner_hyperfield_is_valid():
    assert validate_axioms(krasner()).ok


def test_malformed_table_is_rejected():
    with pytest.raises(MalformedTable):
        validate_axioms(FiniteHyperfield(2, 0, 1, (0, 1), ((0, 0), (0, 5)),
                                         ((1, 2), (2, 3))))


def test_every_corpus_object_satisfies_the_axioms(built_corpus):
    assert len(built_corpus) >= 30
    for name, h in built_corpus.items():
        assert validate_axioms(h).ok, name


def test_zero_in_sum_iff_negatives(built_corpus):
    for h in built_corpus.values():
        for a, b in itertools.product(range(h.order), repeat=2):
            assert h.in_sum(h.zero, a, b) == (b == h.neg[a])


# -- prime --------------------------------------------------------------------------------

def _plain_square_quotient(q):
    f = field_as_hyperfield(q)
    squares = {f.mul[x][x] for x in f.nonzero}
    return quotient(f, squares)[0]


def test_prime_leaves_sign_hyperfield_unchanged():
    assert prime(qh_real()) == qh_real()


def test_prime_of_plain_f5_quotient():
    plain = _plain_square_quotient(5)
    one = plain.one
    assert plain.add(one, one) == {plain.zero, 2}
    assert prime(plain).add(one, one) == set(range(3))


def test_prime_of_plain_f3_quotient():
    plain = _plain_square_quotient(3)
    one, m1 = plain.one, plain.neg[plain.one]
    assert plain.add(one, one) == {m1}
    assert prime(plain).add(one, one) == {one, m1}


def test_prime_and_quotient_commute(built_corpus):
    for name in ("Qp:3", "Qp:5", "Q2", "ext(R,2)", "ext(F3,1)"):
        h = built_corpus[name]
        for t in (trivial_subgroup(h), whole_group(h), subgroup(h, {h.one, h.minus_one})):
            a, _ = quotient(prime(h), t)
            b = prime(quotient(h, t)[0])
            assert find_isomorphism(a, b) is not None or a == b, name


# -- quotient -----------------------------------------------------------------------------

def test_quotient_by_whole_group_is_krasner():
    q, proj = quotient(qh_padic(3), whole_group(qh_padic(3)))
    assert find_isomorphism(q, krasner()) is not None
    assert check_morphism_kind(proj) == QUOTIENT_MORPHISM


def test_quotient_by_trivial_subgroup_is_a_copy():
    h = qh_padic(7)
    q, _ = quotient(h, trivial_subgroup(h))
    assert find_isomorphism(q, h) is not None


def test_q_q3_mod_plus_minus_one():
    h = qh_padic(3)
    q, _ = quotient(h, {h.one, h.minus_one})
    assert q.order == 3 and validate_axioms(q).ok
    assert find_isomorphism(q, group_extension(krasner(), 1)) is not None
    assert len(rigidity_report(q).rigid) == 1


def test_not_a_subgroup():
    h = qh_padic(3)
    with pytest.raises(NotASubgroup):
        subgroup(h, {h.one, h.element_by_label("p"), h.element_by_label("u")})


# -- value sets and forms ------------------------------------------------------------------

def test_value_sets():
    f3 = qh_finite_field(3)
    one, m1 = by_label(f3, "1", "-1")
    assert value_set(f3, one, one) == {one, m1}
    r = qh_real()
    assert value_set(r, r.one, r.one) == {r.one}
    q3 = qh_padic(3)
    assert value_set(q3, q3.one, q3.minus_one) == set(q3.nonzero)
    with pytest.raises(ZeroArgument):
        value_set(q3, q3.zero, q3.one)


def test_forms_equivalent():
    f3 = qh_finite_field(3)
    one, m1 = by_label(f3, "1", "-1")
    assert forms_equivalent(f3, one, one, m1, m1)
    r = qh_real()
    assert not forms_equivalent(r, r.one, r.one, r.one, r.minus_one)


@given(st.sampled_from(["Qp:3", "Qp:5", "Q2", "ext(F3,2)"]), st.data())
@settings(max_examples=40)
def test_forms_equivalence_is_reflexive(name, data):
    from hyperwitt.quadratic.builders import corpus
    h = corpus()[name]
    a = data.draw(st.sampled_from(h.nonzero))
    b = data.draw(st.sampled_from(h.nonzero))
    assert forms_equivalent(h, a, b, a, b)


# -- rigidity --------------------------------------------------------------------------------

def test_rigidity_of_reals():
    r = qh_real()
    rep = rigidity_report(r)
    assert rep.basic == {r.one, r.minus_one}
    assert r.one in rep.rigid and r.minus_one not in rep.rigid
    assert is_exceptional(r)


def test_rigidity_of_q3():
    h = qh_padic(3)
    rep = rigidity_report(h)
    assert rep.rigid == set(by_label(h, "p", "up"))
    assert rep.basic == {h.one, h.minus_one}
    assert not is_exceptional(h)
    assert not is_exceptional(qh_finite_field(3))
    assert rigidity_report(qh_finite_field(3)).basic == set(qh_finite_field(3).nonzero)


def test_basic_part_is_union_of_cosets_containing_plus_minus_one(built_corpus):
    for name in ("Qp:3", "Q2", "ext(R,2)", "ext(F5,2)"):
        h = built_corpus[name]
        for t in (trivial_subgroup(h), subgroup(h, {h.one, h.minus_one})):
            b = rigidity_report(h, t).basic
            assert {h.one, h.minus_one} <= b
            for x in b:
                assert all(h.mul[x][s] in b for s in t.members)


def test_extension_basic_part_is_image_of_base_basic_part():
    for base in (qh_finite_field(3), qh_real(), qh_finite_field(5)):
        for r in (1, 2):
            g, pres = group_extension_build(base, r)
            image = pres.embedding.image(rigidity_report(base).basic)
            assert rigidity_report(g).basic == image
            q, _ = quotient(g, pres.embedding.image(base.nonzero))
            assert len(q.nonzero) == 1 << r


# -- levels ------------------------------------------------------------------------------------

def test_levels():
    assert level(qh_complex()) == 1
    assert level(qh_finite_field(3)) == 2
    assert level(qh_real()) == float("inf")
    assert level(qh_padic(2)) == 4


# -- morphisms and isomorphisms ---------------------------------------------------------------

def test_isomorphisms_between_finite_fields():
    assert find_isomorphism(qh_finite_field(3), qh_finite_field(7)) is not None
    assert find_isomorphism(qh_finite_field(3), qh_finite_field(5)) is None
    assert find_isomorphism(qh_padic(3), qh_padic(5)) is None


def test_find_isomorphism_is_symmetric(built_corpus):
    names = ["Qp:3", "Qp:5", "Qp:7", "F3((t))", "ext(C,2)", "ext(R,1)", "ext(F3,1)"]
    for a, b in itertools.combinations(names, 2):
        h1, h2 = built_corpus[a], built_corpus[b]
        assert (find_isomorphism(h1, h2) is None) == (find_isomorphism(h2, h1) is None)


def test_unit_embedding_is_group_extension():
    g, pres = group_extension_build(qh_finite_field(3), 1)
    iso = find_isomorphism(g, qh_padic(3))
    emb = pres.embedding.compose(iso)
    assert check_morphism_kind(emb) == GROUP_EXTENSION


def test_constant_map_is_invalid():
    h = qh_finite_field(3)
    const = MorphismWitness(h, h, tuple(0 if x == h.zero else h.one for x in range(h.order)))
    assert check_morphism_kind(const) == INVALID


def test_partial_map_raises():
    h = qh_finite_field(3)
    with pytest.raises(NotAMorphism):
        check_morphism_kind(MorphismWitness(h, h, (0, 1)))


def test_automorphisms_of_q5_swap_uniformizers():
    h = qh_padic(5)
    autos = automorphisms(h)
    assert len(autos) == 6   # GL(2, 2)
    p, up = by_label(h, "p", "up")
    assert any(a.map[p] == up for a in autos)


# -- serialization -------------------------------------------------------------------------------

def test_json_round_trip_is_exact(built_corpus, tmp_path):
    for name, h in built_corpus.items():
        text = dumps(h)
        back = loads(text)
        assert back == h and back.labels == h.labels
        assert json.loads(dumps(back)) == json.loads(text)
    path = tmp_path / "h.json"
    save(built_corpus["Q2"], path)
    assert load(path) == built_corpus["Q2"]


def test_bad_json_rejected():
    with pytest.raises(MalformedTable):
        loads("{\"order\": 2}")
    with pytest.raises(MalformedTable):
        loads("not json")
