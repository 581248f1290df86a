"""Symbolic valuations on a function field in one variable over a local field.

A :class:`ValuationDescriptor` records the value group as a tag, the residue
field K_v, the restriction v|k to the constants and the constants k.  From
that the module derives the index profile of T = (1+M_v)K*^2, decides which
case of the local classification applies, evaluates the four index patterns
mu_0..mu_3, and checks the transport diagrams for isomorphisms of finite
quadratic hyperfields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidDescriptor, NoCaseMatched, NotExtensionStructured, NotIso, \
    UnsupportedResidue
from .hyperfield.constructions import MorphismWitness, SubgroupWitness, quotient, \
    rigidity_report, subgroup
from .hyperfield.morphisms import GROUP_EXTENSION, check_morphism_kind, is_isomorphism
from .hyperfield.table import FiniteHyperfield, bits
from .quadratic import descriptors as D
from .quadratic.builders import build_from_descriptor

INF = math.inf

# value group tags
TRIVIAL = "trivial"
Z = "Z"
ZXZ = "ZxZ"
QSUB = "QSub"          # Z <= Gamma <= Q, not finitely generated
DIVISIBLE = "divisible"
DIVISIBLE_X_Z = "divisiblexZ"
VALUE_GROUPS = (TRIVIAL, Z, ZXZ, QSUB, DIVISIBLE, DIVISIBLE_X_Z)

# restriction tags
V0 = "v0"
EXOTIC = "exotic"      # divisible value group, algebraically closed residue field on k
RESTRICTIONS = (TRIVIAL, V0, EXOTIC)

# basic-part tags, nested T <= +-T <= U_vK*^2 <= K*
TAG_T = "T"
TAG_PM_T = "±T"
TAG_U = "U"
TAG_K = "K*"
CHAIN = (TAG_T, TAG_PM_T, TAG_U, TAG_K)

CASES = ("1", "2a", "2b", "2c", "3a", "3b", "4a", "4b", "5", "6")
MU_TAGS = ("μ0", "μ1", "μ2", "μ3")


@dataclass(frozen=True)
class ValuationDescriptor:
    value_group: str
    residue: D.FieldDescriptor
    restriction: str
    constants: D.FieldDescriptor
    two_divisible: bool | None = None   # QSub only: is Gamma = 2 Gamma?

    def __post_init__(self):
        if self.value_group not in VALUE_GROUPS:
            raise InvalidDescriptor(f"unknown value group {self.value_group!r}")
        if self.restriction not in RESTRICTIONS:
            raise InvalidDescriptor(f"unknown restriction {self.restriction!r}")
        k = self.constants
        if self.restriction == V0 and not k.is_nonarchimedean_local:
            raise InvalidDescriptor("restriction v0 needs non-archimedean constants")
        if self.restriction == V0:
            rc = self.residue.characteristic
            if rc != k.residue_characteristic:
                raise InvalidDescriptor("residue characteristic differs from that of k_{v0}")
        if self.restriction == EXOTIC and self.residue.kind not in (D.ALG_CLOSED, D.RATIONAL_FUNCTION):
            raise InvalidDescriptor("an exotic restriction has algebraically closed residue data")

    @property
    def residue_trdeg(self) -> int:
        """trdeg(K_v : k_{v|k}): the number of transcendental layers of the residue field."""
        return self.residue.rational_depth

    @property
    def rational_rank_over_constants(self) -> int:
        """rk_Q(Gamma_v / Gamma_{v|k}) read off from the tags."""
        g, r = self.value_group, self.restriction
        if r == TRIVIAL:
            return {TRIVIAL: 0, Z: 1, ZXZ: 2, QSUB: 1, DIVISIBLE: 1, DIVISIBLE_X_Z: 2}[g]
        if r == V0:
            return {TRIVIAL: 0, Z: 0, ZXZ: 1, QSUB: 0, DIVISIBLE: 0, DIVISIBLE_X_Z: 1}[g]
        return {TRIVIAL: 0, Z: 1, ZXZ: 2, QSUB: 1, DIVISIBLE: 0, DIVISIBLE_X_Z: 1}[g]

    def to_dict(self) -> dict:
        d = {"gamma": self.value_group, "residue": str(self.residue),
             "restriction": self.restriction, "constants": str(self.constants)}
        if self.two_divisible is not None:
            d["two_divisible"] = self.two_divisible
        return d


def descriptor_from_dict(d: dict) -> ValuationDescriptor:
    try:
        return ValuationDescriptor(
            value_group=d["gamma"],
            residue=D.parse_field(d["residue"]),
            restriction=d.get("restriction", TRIVIAL),
            constants=D.parse_field(d["constants"]),
            two_divisible=d.get("two_divisible"),
        )
    except KeyError as exc:
        raise InvalidDescriptor(f"valuation descriptor misses {exc}") from None


@dataclass(frozen=True)
class IndexProfile:
    idx_value: int | float | frozenset      # (K* : U_vK*^2); a set when ambiguous
    idx_unit: int | float | frozenset | None  # (U_vK*^2 : T); None = not asserted
    basic: frozenset = field(default_factory=frozenset)   # tags equal to B(T)

    def to_dict(self) -> dict:
        def enc(x):
            if isinstance(x, frozenset):
                return sorted(enc(y) for y in x)
            if x == INF:
                return "inf"
            return x
        return {"idx_value": enc(self.idx_value), "idx_unit": enc(self.idx_unit),
                "basic": sorted(self.basic, key=CHAIN.index)}


# -- index computations -----------------------------------------------------------------

def value_index(v: ValuationDescriptor):
    """|Gamma_v / 2 Gamma_v|."""
    g = v.value_group
    if g == QSUB:
        if v.two_divisible is None:
            return frozenset({1, 2})
        return 1 if v.two_divisible else 2
    return {TRIVIAL: 1, Z: 2, ZXZ: 4, DIVISIBLE: 1, DIVISIBLE_X_Z: 2}[g]


def _residue_minus_one_square(residue: D.FieldDescriptor) -> bool:
    if residue.kind == D.RATIONAL_FUNCTION:
        return _residue_minus_one_square(residue.base)
    m = residue.minus_one_is_square
    if m is None:
        raise UnsupportedResidue(f"cannot decide whether -1 is a square in {residue}")
    return m


_BUILDABLE = (D.FINITE, D.REAL, D.COMPLEX, D.PADIC, D.LAURENT)


def residue_basic_part(residue: D.FieldDescriptor) -> str:
    """Which lift B(T) is, from the basic part of Q(K_v).

    ``U`` when the residue basic part is all of K_v*, ``±T`` when it is
    {1, -1}.  Whenever Q(K_v) can be tabulated the answer is read off its
    rigidity report; rational function fields, dyadic extensions and
    algebraically closed fields use the table entries.
    """
    kind = residue.kind
    if kind in (D.RATIONAL_FUNCTION, D.ALG_CLOSED):
        return TAG_U
    if kind == D.PADIC and residue.degree > 1:
        if residue.p == 2:
            return TAG_U
        return TAG_PM_T
    if kind == D.LAURENT and residue.base.characteristic == 2:
        raise UnsupportedResidue(f"{residue} has characteristic 2")
    if kind in _BUILDABLE:
        h = build_from_descriptor(residue)
        basic = rigidity_report(h).basic
        if basic == frozenset(h.nonzero):
            return TAG_U
        if basic == frozenset({h.one, h.minus_one}):
            return TAG_PM_T
        raise UnsupportedResidue(f"basic part of Q({residue}) is neither K_v* nor ±1")
    raise UnsupportedResidue(f"unsupported residue field {residue}")


def _equal_tags(base_tag: str, idx_value, idx_unit, minus_one_square: bool | None) -> frozenset:
    """Tags in the chain T <= ±T <= U <= K* naming the same subgroup as ``base_tag``."""
    size = {TAG_T: 1, TAG_PM_T: 1 if minus_one_square else 2, TAG_U: idx_unit}
    eq_links = {
        (TAG_T, TAG_PM_T): bool(minus_one_square),
        (TAG_PM_T, TAG_U): size[TAG_PM_T] == idx_unit,
        (TAG_U, TAG_K): idx_value == 1,
    }
    i = CHAIN.index(base_tag)
    lo = hi = i
    while lo > 0 and eq_links[(CHAIN[lo - 1], CHAIN[lo])]:
        lo -= 1
    while hi < 3 and eq_links[(CHAIN[hi], CHAIN[hi + 1])]:
        hi += 1
    return frozenset(CHAIN[lo:hi + 1])


def local_indices(v: ValuationDescriptor) -> IndexProfile:
    """Index profile of T = (1+M_v)K*^2 computed from the descriptor."""
    idx_value = value_index(v)
    idx_unit = v.residue.square_class_count
    tag = residue_basic_part(v.residue)
    try:
        m1 = _residue_minus_one_square(v.residue)
    except UnsupportedResidue:
        if idx_unit in (1, 2):
            raise
        m1 = None   # irrelevant: ±T is a proper subgroup of U either way
    iv = idx_value if not isinstance(idx_value, frozenset) else 2   # U = K* undecided
    basic = _equal_tags(tag, iv, idx_unit, m1)
    return IndexProfile(idx_value, idx_unit, basic)


# -- classification ----------------------------------------------------------------------

def _asserted(case: str, v: ValuationDescriptor) -> IndexProfile:
    """The profile stated for each case of the local classification."""
    if case == "1":
        return IndexProfile(1, INF, frozenset({TAG_K, TAG_U}))
    if case == "2a":
        return IndexProfile(2, None, frozenset({TAG_PM_T, TAG_U}))
    if case == "2b":
        return IndexProfile(2, 4, frozenset({TAG_PM_T}))
    if case == "2c":
        return IndexProfile(2, 2 ** (v.residue.degree + 2), frozenset({TAG_U}))
    if case == "3a":
        return IndexProfile(2, INF, frozenset({TAG_U}))
    if case == "3b":
        p = v.constants.residue_characteristic
        return IndexProfile(4, 2 if p != 2 else 1, frozenset({TAG_PM_T}))
    if case == "4a":
        return IndexProfile(2, None, frozenset({TAG_T, TAG_U}))
    if case == "4b":
        return IndexProfile(1, INF, frozenset({TAG_K, TAG_U}))
    if case == "5":
        return IndexProfile(frozenset({1, 2}), frozenset({1, 2}), frozenset({TAG_PM_T}))
    if case == "6":
        return IndexProfile(1, 1, frozenset({TAG_K, TAG_U, TAG_T}))
    raise NoCaseMatched(case)


def _is_padic_like(k: D.FieldDescriptor) -> bool:
    return k.is_nonarchimedean_local and k.characteristic != 2


def classify_case(v: ValuationDescriptor) -> tuple[str, IndexProfile]:
    """Case tag of the local classification and the profile asserted for it."""
    k = v.constants
    if not k.is_local or k.characteristic == 2:
        raise NoCaseMatched(f"constants {k} are not a local field of characteristic != 2")
    g, r, td = v.value_group, v.restriction, v.residue_trdeg
    case = None
    if g == TRIVIAL:
        if r == TRIVIAL and td == 1:
            case = "1"
    elif r == TRIVIAL:
        if g == Z and td == 0:
            if k.kind in (D.REAL, D.COMPLEX):
                case = "2a"
            elif _is_padic_like(k):
                case = "2c" if k.is_dyadic else "2b"
    elif r == V0 and _is_padic_like(k):
        if g == Z and td == 1:
            case = "3a"
        elif g == ZXZ and td == 0:
            case = "3b"
        elif g in (QSUB, Z) and td == 0:
            case = "5"
    elif r == EXOTIC:
        if g == DIVISIBLE_X_Z and td == 0:
            case = "4a"
        elif g == DIVISIBLE and td == 1:
            case = "4b"
        elif g == DIVISIBLE and td == 0:
            case = "6"
    if case is None:
        raise NoCaseMatched(f"no case covers {v.to_dict()}")
    return case, _asserted(case, v)


def _value_fits(asserted, computed) -> bool:
    if asserted is None:
        return True
    if isinstance(asserted, frozenset):
        comp = computed if isinstance(computed, frozenset) else frozenset({computed})
        return comp <= asserted
    return asserted == computed


def profile_matches(asserted: IndexProfile, computed: IndexProfile) -> bool:
    """Computed indices agree with the asserted ones and include every asserted tag."""
    return (_value_fits(asserted.idx_value, computed.idx_value)
            and _value_fits(asserted.idx_unit, computed.idx_unit)
            and asserted.basic <= computed.basic)


# -- mu sets -----------------------------------------------------------------------------

def mu_membership(v: ValuationDescriptor) -> str | None:
    """The mu_i whose defining index conditions v satisfies, or None."""
    prof = local_indices(v)
    iv, iu, basic = prof.idx_value, prof.idx_unit, prof.basic
    if isinstance(iv, frozenset):
        return None
    if iv == 2 and isinstance(iu, (int, float)) and 8 <= iu < INF and TAG_U in basic:
        return "μ0"
    if iv == 2 and iu == INF and TAG_U in basic:
        return "μ1"
    if iv == 4 and iu == 2 and TAG_U in basic:
        return "μ2"
    if iv == 4 and iu == 2 and TAG_T in basic:
        return "μ3"
    return None


def residue_field_of(k: D.FieldDescriptor) -> D.FieldDescriptor:
    """k_{v0} for a non-archimedean local k (p-adic extensions taken unramified)."""
    if k.kind == D.PADIC:
        return D.finite(k.p ** k.degree)
    if k.kind == D.LAURENT and k.base.kind == D.FINITE:
        return k.base
    raise UnsupportedResidue(f"{k} has no finite residue field")


def mu_nonempty(k: D.FieldDescriptor) -> set[str]:
    """Indices i with mu_{K,i} nonempty for K a function field in one variable over k.

    mu_0 needs a dyadic k, mu_1 any non-archimedean k.  Both mu_2 and mu_3 come
    from composed valuations whose residue field is a finite extension F of
    k_{v0}: mu_3 needs -1 to be a square in F (always available), mu_2 needs
    -1 to be a nonsquare in F, which happens iff |k_{v0}| = 3 mod 4.
    """
    out: set[str] = set()
    if not k.is_nonarchimedean_local or k.characteristic == 2:
        return out
    out.add("μ1")
    if k.is_dyadic:
        out.add("μ0")
        return out
    q = residue_field_of(k).q
    out.add("μ3")
    if q % 4 == 3:
        out.add("μ2")
    return out


def mu_nonempty_union_conditions(k: D.FieldDescriptor) -> dict[str, bool]:
    """The three iff-statements at the level of the unions, evaluated for k."""
    padic = k.is_nonarchimedean_local and k.characteristic != 2
    return {"μ0": k.is_dyadic, "μ1": padic, "μ2∪μ3": padic and not k.is_dyadic}


def descriptor_generator(k: D.FieldDescriptor):
    """Representative valuation descriptors of every supported shape over k."""
    out = [ValuationDescriptor(TRIVIAL, D.rational_function(k), TRIVIAL, k)]
    if k.kind == D.REAL:
        finite_exts = [D.REALS, D.COMPLEXES]
    elif k.kind == D.COMPLEX:
        finite_exts = [D.COMPLEXES]
    elif k.kind == D.PADIC:
        finite_exts = [D.padic(k.p, d) for d in (1, 2, 3)]
    elif k.kind == D.LAURENT:
        q = k.base.q
        finite_exts = [k] + ([D.laurent(D.finite(q * q))] if q * q <= 1024 else [])
    else:
        finite_exts = []
    out += [ValuationDescriptor(Z, e, TRIVIAL, k) for e in finite_exts]
    if k.is_nonarchimedean_local:
        q = residue_field_of(k).q
        residues = [D.finite(q)] + ([D.finite(q * q)] if q * q <= 1024 else [])
        for f in residues:
            out.append(ValuationDescriptor(Z, D.rational_function(f), V0, k))
            out.append(ValuationDescriptor(ZXZ, f, V0, k))
            out.append(ValuationDescriptor(Z, f, V0, k))
            for two_div in (None, True, False):
                out.append(ValuationDescriptor(QSUB, f, V0, k, two_divisible=two_div))
    alg = D.alg_closed(0)
    out.append(ValuationDescriptor(DIVISIBLE_X_Z, alg, EXOTIC, k))
    out.append(ValuationDescriptor(DIVISIBLE, D.rational_function(alg), EXOTIC, k))
    out.append(ValuationDescriptor(DIVISIBLE, alg, EXOTIC, k))
    return out


def mu_from_generator(k: D.FieldDescriptor) -> set[str]:
    return {m for v in descriptor_generator(k) if (m := mu_membership(v)) is not None}


# -- Abhyankar ---------------------------------------------------------------------------

ABHYANKAR = "abhyankar"
STRICT = "strict_inequality"


def abhyankar_status(v: ValuationDescriptor, trdeg_K_over_k: int = 1) -> str:
    lhs = v.rational_rank_over_constants + v.residue_trdeg
    if lhs > trdeg_K_over_k:
        raise InvalidDescriptor(f"rk + trdeg = {lhs} exceeds trdeg(K:k) = {trdeg_K_over_k}")
    return ABHYANKAR if lhs == trdeg_K_over_k else STRICT


def ntd(k: D.FieldDescriptor) -> int | float:
    """trdeg over Q in characteristic 0, trdeg over F_p minus one in characteristic p."""
    t = k.trdeg_over_prime_field
    if k.characteristic == 0:
        return t
    return t - 1


# -- transport on finite models --------------------------------------------------------

@dataclass(frozen=True)
class TransportReport:
    d1: bool
    d2: bool
    d3: bool
    index_inequality: bool
    t2: frozenset
    u2: frozenset
    idx1: int
    idx2: int
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.d1 and self.d2 and self.d3 and self.index_inequality

    def to_dict(self) -> dict:
        return {"d1": self.d1, "d2": self.d2, "d3": self.d3,
                "index_inequality": self.index_inequality,
                "t2": sorted(self.t2), "u2": sorted(self.u2),
                "idx1": self.idx1, "idx2": self.idx2, "notes": list(self.notes)}


def restrict(h: FiniteHyperfield, members) -> tuple[FiniteHyperfield, MorphismWitness]:
    """Sub-hyperfield on a subgroup S of h* plus 0, sums intersected with S + 0."""
    keep = [h.zero] + sorted(x for x in members if x != h.zero)
    pos = {x: i for i, x in enumerate(keep)}
    n = len(keep)
    try:
        neg = [pos[h.neg[x]] for x in keep]
        mul = [[pos[h.mul[x][y]] for y in keep] for x in keep]
    except KeyError:
        raise NotExtensionStructured("subset is not closed under the operations") from None
    sums = [[[pos[z] for z in bits(h.sum[x][y]) if z in pos] for y in keep] for x in keep]
    labels = [h.label(x) for x in keep]
    sub = FiniteHyperfield.from_sets(n, 0, pos[h.one], neg, mul, sums, labels)
    return sub, MorphismWitness(sub, h, tuple(keep))


def _coset_map(q: FiniteHyperfield, u: frozenset):
    """Class id of each nonzero element of q modulo the subgroup u."""
    cls = {}
    reps = []
    for x in q.nonzero:
        if x in cls:
            continue
        reps.append(x)
        for s in u:
            cls[q.mul[x][s]] = len(reps) - 1
    return cls, len(reps)


def transport_check(alpha: MorphismWitness, t1, u1=None, u2=None) -> TransportReport:
    """Verify diagrams (d1)-(d3) for an isomorphism alpha: H1 -> H2 and T1 <= H1*.

    ``u1`` is the unit subgroup U1 >= T1 (defaults to the lift of the basic
    part of H1/T1); the residue hyperfield is U1/T1 plus 0 inside H1/T1 and
    H1/T1 must be a group extension of it.
    """
    if not is_isomorphism(alpha):
        raise NotIso("alpha is not a hyperfield isomorphism")
    h1, h2, f = alpha.source, alpha.target, alpha.map
    t1 = t1 if isinstance(t1, SubgroupWitness) else subgroup(h1, t1)
    q1, p1 = quotient(h1, t1)
    if u1 is None:
        u1 = rigidity_report(h1, t1).basic
    u1 = frozenset(u1)
    if not t1.members <= u1:
        raise NotExtensionStructured("U1 must contain T1")
    subgroup(h1, u1)
    ub1 = frozenset(p1.map[x] for x in u1)
    r1, e1 = restrict(q1, ub1)
    if check_morphism_kind(e1) != GROUP_EXTENSION:
        raise NotExtensionStructured("H1/T1 is not a group extension of U1/T1")
    notes = []

    # (d1)
    t2 = frozenset(f[x] for x in t1.members)
    q2, p2 = quotient(h2, subgroup(h2, t2))
    seen: dict[int, int] = {}
    consistent = True
    for x in range(h1.order):
        y = p2.map[f[x]]
        if seen.setdefault(p1.map[x], y) != y:
            consistent = False
    induced = [seen[c] for c in range(q1.order)]
    bar = MorphismWitness(q1, q2, tuple(induced))
    d1 = consistent and is_isomorphism(bar)
    if not d1:
        notes.append("induced map on H/T is not an isomorphism")

    # (d2)
    image_u = frozenset(f[x] for x in u1)
    d2 = True
    if u2 is not None and frozenset(u2) != image_u:
        d2 = False
        notes.append("alpha(U1) differs from the given U2")
    ub2 = frozenset(p2.map[y] for y in image_u)
    if d1:
        r2, e2 = restrict(q2, ub2)
        if check_morphism_kind(e2) != GROUP_EXTENSION:
            d2 = False
            notes.append("H2/T2 is not a group extension of U2/T2")
        else:
            pos2 = {x: i for i, x in enumerate(e2.map)}
            res_map = tuple(pos2.get(induced[x], -1) for x in e1.map)
            if -1 in res_map:
                d2 = False
            else:
                d2 = d2 and is_isomorphism(MorphismWitness(r1, r2, res_map))
        if u1 == rigidity_report(h1, t1).basic:
            if image_u != rigidity_report(h2, subgroup(h2, t2)).basic:
                d2 = False
                notes.append("basic part not transported")
    else:
        d2 = False

    # (d3)
    c1, n1 = _coset_map(q1, ub1)
    c2, n2 = _coset_map(q2, ub2)
    d3 = d1 and n1 == n2
    if d3:
        gmap: dict[int, int] = {}
        for x in q1.nonzero:
            g2 = c2[induced[x]]
            if gmap.setdefault(c1[x], g2) != g2:
                d3 = False
                break
        if d3 and len(set(gmap.values())) != n1:
            d3 = False
        if d3:
            # homomorphism and commutation H1* -> G1 -> G2 == H1* -> H2* -> G2
            for x in h1.nonzero:
                if gmap[c1[p1.map[x]]] != c2[p2.map[f[x]]]:
                    d3 = False
                    break
    return TransportReport(d1, d2, d3, n2 >= n1, t2, image_u, n1, n2, tuple(notes))


# -- canonical subgroups of built hyperfields -------------------------------------------

def canonical_subgroups(name: str, h: FiniteHyperfield) -> tuple[frozenset, frozenset] | None:
    """(T, U) = ((1+M)K*^2, U K*^2) modulo squares for the canonical valuation.

    Returns None for fields without a non-trivial canonical valuation.
    """
    if name == "Q2":
        units = frozenset(h.element_by_label(s) for s in ("1", "-1", "5", "-5"))
        return units, units
    if name.startswith("Qp:") or name.endswith("((t))"):
        return frozenset({h.one}), frozenset({h.one, 2})
    if name.startswith("ext(") and not name.endswith(",0)"):
        base = build_from_descriptor(name[4:name.rindex(",")])
        m = len(base.nonzero)
        return frozenset({h.one}), frozenset(range(1, m + 1))
    return None
