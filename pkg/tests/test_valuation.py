import itertools
import math

import pytest

from hyperwitt import valuation as V
from hyperwitt.errors import InvalidDescriptor, NoCaseMatched, NotIso
from hyperwitt.hyperfield import MorphismWitness, automorphisms, find_isomorphism
from hyperwitt.quadratic import descriptors as D
from hyperwitt.quadratic import parse_field, qh_laurent, qh_padic

INF = math.inf
Q3, Q5, Q2, R, C = (parse_field(s) for s in ("Qp:3", "Qp:5", "Q2", "R", "C"))
ALG = D.alg_closed(0)


def vd(gamma, residue, restriction, constants, **kw):
    if isinstance(residue, str):
        residue = parse_field(residue)
    return V.ValuationDescriptor(gamma, residue, restriction, constants, **kw)


# one descriptor per sub-case of the local classification
ZOO = {
    "1": vd(V.TRIVIAL, "Qp:3(t)", V.TRIVIAL, Q3),
    "2a": vd(V.Z, "R", V.TRIVIAL, R),
    "2b": vd(V.Z, "Qp:3", V.TRIVIAL, Q3),
    "2c": vd(V.Z, "Q2", V.TRIVIAL, Q2),
    "3a": vd(V.Z, "F3(t)", V.V0, Q3),
    "3b": vd(V.ZXZ, "F3", V.V0, Q3),
    "4a": vd(V.DIVISIBLE_X_Z, ALG, V.EXOTIC, Q3),
    "4b": vd(V.DIVISIBLE, D.rational_function(ALG), V.EXOTIC, Q3),
    "5": vd(V.QSUB, "F3", V.V0, Q3),
    "6": vd(V.DIVISIBLE, ALG, V.EXOTIC, Q3),
}

TABLE = {
    "1": (1, INF, {"K*", "U"}),
    "2a": (2, None, {"±T", "U"}),
    "2b": (2, 4, {"±T"}),
    "2c": (2, 8, {"U"}),
    "3a": (2, INF, {"U"}),
    "3b": (4, 2, {"±T"}),
    "4a": (2, None, {"T", "U"}),
    "4b": (1, INF, {"K*", "U"}),
    "5": ({1, 2}, {1, 2}, {"±T"}),
    "6": (1, 1, {"K*", "U", "T"}),
}


@pytest.mark.parametrize("case", list(ZOO))
def test_local_zoo_rows(case):
    v = ZOO[case]
    got, asserted = V.classify_case(v)
    assert got == case
    iv, iu, tags = TABLE[case]
    assert asserted.idx_value == (frozenset(iv) if isinstance(iv, set) else iv)
    assert asserted.idx_unit == (frozenset(iu) if isinstance(iu, set) else iu)
    assert asserted.basic == frozenset(tags)
    assert V.profile_matches(asserted, V.local_indices(v))


def test_local_indices_examples():
    assert V.local_indices(ZOO["2b"]).idx_value == 2
    assert V.local_indices(ZOO["2b"]).idx_unit == 4
    assert "±T" in V.local_indices(ZOO["3b"]).basic
    assert V.local_indices(ZOO["1"]).idx_unit == INF


def test_cases_are_exclusive_on_the_generator():
    for k in (R, C, Q3, Q5, Q2, parse_field("F3((s))")):
        for v in V.descriptor_generator(k):
            try:
                case, asserted = V.classify_case(v)
            except NoCaseMatched:
                continue
            assert case in V.CASES
            assert V.profile_matches(asserted, V.local_indices(v)), v.to_dict()


def test_residue_basic_parts_are_checked_against_rigidity():
    assert V.residue_basic_part(parse_field("F3")) == "U"
    # Q(R) has B = {1, -1} = all of R*, so U and ±T coincide there
    assert V.residue_basic_part(parse_field("R")) == "U"
    assert {"±T", "U"} <= V.local_indices(ZOO["2a"]).basic
    assert V.residue_basic_part(parse_field("Qp:3")) == "±T"


def test_invalid_descriptors():
    with pytest.raises(InvalidDescriptor):
        vd(V.Z, "F3", V.V0, R)
    with pytest.raises(InvalidDescriptor):
        vd(V.Z, "F5", V.V0, Q3)
    with pytest.raises(InvalidDescriptor):
        V.descriptor_from_dict({"gamma": "Z"})
    with pytest.raises(NoCaseMatched):
        V.classify_case(vd(V.ZXZ, "F3", V.TRIVIAL, Q3))


# -- mu sets --------------------------------------------------------------------------------

def test_mu_examples():
    assert V.mu_membership(ZOO["2c"]) == "μ0"
    assert V.mu_membership(ZOO["3a"]) == "μ1"
    assert V.mu_membership(vd(V.Z, "R", V.TRIVIAL, R)) is None
    assert V.mu_nonempty(Q2) == {"μ0", "μ1"}
    assert V.mu_nonempty(Q3) == {"μ1", "μ2", "μ3"}
    assert V.mu_nonempty(R) == set()


@pytest.mark.parametrize("k", ["R", "C", "Qp:3", "Qp:5", "Q2", "F3((s))", "Qp:7", "F5((s))"])
def test_mu_generator_reproduces_nonemptiness(k):
    k = parse_field(k)
    assert V.mu_from_generator(k) == V.mu_nonempty(k)
    cond = V.mu_nonempty_union_conditions(k)
    got = V.mu_nonempty(k)
    assert ("μ0" in got) == cond["μ0"]
    assert ("μ1" in got) == cond["μ1"]
    assert bool(got & {"μ2", "μ3"}) == cond["μ2∪μ3"]


# -- Abhyankar -----------------------------------------------------------------------------------

def test_abhyankar():
    assert V.abhyankar_status(ZOO["2b"]) == V.ABHYANKAR
    assert V.abhyankar_status(ZOO["5"]) == V.STRICT
    assert V.ntd(parse_field("F3(t)")) == 0


# -- transport -------------------------------------------------------------------------------------

def test_identity_transport_on_q3():
    h = qh_padic(3)
    units = frozenset({h.one, h.minus_one})
    ident = MorphismWitness(h, h, tuple(range(h.order)))
    rep = V.transport_check(ident, frozenset({h.one}), units)
    assert rep.ok


def test_q5_automorphisms():
    h = qh_padic(5)
    t, u = V.canonical_subgroups("Qp:5", h)
    p, up = h.element_by_label("p"), h.element_by_label("up")
    swap = [a for a in automorphisms(h) if a.map[p] == up and a.map[up] == p]
    assert swap
    rep = V.transport_check(swap[0], t, u)
    assert rep.ok and rep.u2 == u


def test_laurent_to_padic_transport():
    h1, h2 = qh_laurent(3), qh_padic(3)
    iso = find_isomorphism(h1, h2)
    t, u = V.canonical_subgroups("F3((t))", h1)
    assert V.transport_check(iso, t, u).ok


def test_transport_rejects_non_isomorphisms():
    h = qh_padic(3)
    const = MorphismWitness(h, h, tuple(0 if x == 0 else h.one for x in range(h.order)))
    with pytest.raises(NotIso):
        V.transport_check(const, frozenset({h.one}))


def test_transport_over_corpus(built_corpus):
    names = [n for n in built_corpus if V.canonical_subgroups(n, built_corpus[n])]
    checked = 0
    for a, b in itertools.product(names, repeat=2):
        h1, h2 = built_corpus[a], built_corpus[b]
        if h1.order != h2.order:
            continue
        iso = find_isomorphism(h1, h2)
        if iso is None:
            continue
        t, u = V.canonical_subgroups(a, h1)
        rep = V.transport_check(iso, t, u)
        assert rep.ok, (a, b, rep.to_dict())
        checked += 1
    assert checked > 20
