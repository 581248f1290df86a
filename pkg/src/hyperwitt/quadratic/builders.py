"""Constructors of quadratic hyperfields Q(K) for concrete fields."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from ..errors import AxiomFailure, EvenCharacteristic, InvalidDescriptor, PrecisionLoss, \
    UnsupportedDyadicExtension
from ..finite_field import factor_prime_power, field, is_prime
from ..hyperfield.constructions import MorphismWitness, prime, quotient, subgroup
from ..hyperfield.morphisms import GROUP_EXTENSION, check_morphism_kind
from ..hyperfield.table import FiniteHyperfield, bits, validate_axioms
from ..laurent import DEFAULT_PRECISION, LaurentSeries
from . import descriptors as D
from .hilbert import hilbert_symbol, legendre, valuation


@dataclass(frozen=True)
class QuotientPresentation:
    """A hyperfield built as a group extension of ``base`` by (C2)^rank."""
    base: FiniteHyperfield
    rank: int
    embedding: MorphismWitness

    @property
    def built(self) -> FiniteHyperfield:
        return self.embedding.target

    def coset_of(self, x: int) -> int:
        """The (C2)^rank coordinate of a nonzero element, as a bit vector."""
        m = len(self.base.nonzero)
        return (x - 1) // m

    def base_part(self, x: int) -> int:
        order = _base_order(self.base)
        return order[(x - 1) % len(order)]


def _base_order(base: FiniteHyperfield) -> list[int]:
    # 1 first among the base elements, so that element 1 of the extension is its identity
    return [base.one] + [x for x in base.nonzero if x != base.one]


# -- finite and archimedean fields ---------------------------------------------

def field_as_hyperfield(q: int) -> FiniteHyperfield:
    """F_q as a hyperfield with singleton sums."""
    F = field(q)
    n = q
    sums = [[[F.add(a, b)] for b in range(n)] for a in range(n)]
    mul = [[F.mul(a, b) for b in range(n)] for a in range(n)]
    neg = [F.neg(a) for a in range(n)]
    return FiniteHyperfield.from_sets(n, 0, 1, neg, mul, sums, [F.label(x) for x in range(n)])


@functools.lru_cache(maxsize=None)
def qh_finite_field(q: int) -> FiniteHyperfield:
    """Q(F_q), q odd: order 3 with elements 0, 1 and the nonsquare class."""
    pk = factor_prime_power(q)
    if pk is None:
        raise InvalidDescriptor(f"{q} is not a prime power")
    if pk[0] == 2:
        raise EvenCharacteristic("Q(F_q) is built for odd q only")
    F = field(q)
    K = field_as_hyperfield(q)
    plain, _ = quotient(K, subgroup(K, F.squares))
    h = prime(plain)
    minus_one_square = F.is_square(F.neg(1))
    labels = ("0", "1", "u") if minus_one_square else ("0", "1", "-1")
    return FiniteHyperfield(h.order, h.zero, h.one, h.neg, h.mul, h.sum, labels)


@functools.lru_cache(maxsize=None)
def qh_archimedean(kind: str) -> FiniteHyperfield:
    """Q(C) (Krasner, order 2) or Q(R) (sign hyperfield, order 3)."""
    if kind == "complex":
        return FiniteHyperfield.from_sets(2, 0, 1, [0, 1], [[0, 0], [0, 1]],
                                          [[[0], [1]], [[1], [0, 1]]], ["0", "1"])
    if kind == "real":
        return FiniteHyperfield.from_sets(
            3, 0, 1, [0, 2, 1], [[0, 0, 0], [0, 1, 2], [0, 2, 1]],
            [[[0], [1], [2]], [[1], [1], [0, 1, 2]], [[2], [0, 1, 2], [2]]],
            ["0", "1", "-1"])
    raise InvalidDescriptor(f"archimedean kind must be 'real' or 'complex', got {kind!r}")


def qh_real() -> FiniteHyperfield:
    return qh_archimedean("real")


def qh_complex() -> FiniteHyperfield:
    return qh_archimedean("complex")


# -- p-adic fields ----------------------------------------------------------------

def least_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


DYADIC_REPS = (1, -1, 2, -2, 5, -5, 10, -10)


def padic_representatives(p: int) -> list[int]:
    """Integer representatives of Q_p*/Q_p*^2 in canonical order."""
    if p == 2:
        return list(DYADIC_REPS)
    u = least_nonresidue(p)
    return [1, u, p, u * p]


def padic_class_index(n: int, p: int) -> int:
    """Position of the square class of the nonzero integer n among the representatives."""
    v = valuation(n, p)
    unit = n // p ** v
    if p == 2:
        key = (v % 2, unit % 8)
        table = {(0, 1): 0, (0, 7): 1, (1, 1): 2, (1, 7): 3,
                 (0, 5): 4, (0, 3): 5, (1, 5): 6, (1, 3): 7}
        return table[key]
    return (legendre(unit, p) == -1) + 2 * (v % 2)


@functools.lru_cache(maxsize=None)
def qh_padic(p: int, degree: int = 1) -> FiniteHyperfield:
    """Q(Q_p) with sums decided by the Hilbert symbol, then primed."""
    if not is_prime(p):
        raise InvalidDescriptor(f"{p} is not prime")
    if degree != 1:
        raise UnsupportedDyadicExtension(
            "element-level tables exist only for Q_p itself; use descriptors for extensions")
    reps = padic_representatives(p)
    m = len(reps)
    n = m + 1
    cls = lambda x: 1 + padic_class_index(x, p)   # noqa: E731
    neg = [0] + [cls(-r) for r in reps]
    mul = [[0] * n] + [[0] + [cls(a * b) for b in reps] for a in reps]
    sums = [[None] * n for _ in range(n)]
    for i in range(n):
        sums[0][i] = [i]
        sums[i][0] = [i]
    for i, a in enumerate(reps, start=1):
        for j, b in enumerate(reps, start=1):
            s = [0] if neg[i] == j else []
            s += [k for k, z in enumerate(reps, start=1) if hilbert_symbol(a * z, b * z, p) == 1]
            sums[i][j] = s
    labels = ["0"] + ([str(r) for r in reps] if p == 2 else ["1", "u", "p", "up"])
    return prime(FiniteHyperfield.from_sets(n, 0, 1, neg, mul, sums, labels))


# -- group extensions ---------------------------------------------------------------

def _coset_name(g: int, r: int) -> str:
    if g == 0:
        return ""
    if r == 1:
        return "t"
    return "".join(f"t{i + 1}" for i in range(r) if g >> i & 1)


@functools.lru_cache(maxsize=None)
def group_extension_build(base: FiniteHyperfield, rank: int
                          ) -> tuple[FiniteHyperfield, QuotientPresentation]:
    """The group extension of ``base`` by (C2)^rank.

    Element ``1 + g*m + i`` is the pair (base.nonzero[i], g) with m = |base*|;
    0 stays 0.  Same-coset pairs add inside the base, with any sum
    containing 0 promoted to the whole carrier; pairs from distinct cosets
    x, y add to {x, y}.
    """
    if rank < 0:
        raise InvalidDescriptor("rank must be non-negative")
    bz = base.nonzero
    m = len(bz)
    order_base = _base_order(base)
    pos = {x: i for i, x in enumerate(order_base)}
    G = 1 << rank
    n = 1 + m * G

    def idx(x, g):
        return 1 + g * m + pos[x]

    elems = [(x, g) for g in range(G) for x in order_base]
    full = (1 << n) - 1
    neg = [0] + [idx(base.neg[x], g) for x, g in elems]
    mul = [[0] * n] + [[0] + [idx(base.mul[x][y], g ^ k) for y, k in elems] for x, g in elems]
    sums = [[0] * n for _ in range(n)]
    for i in range(n):
        sums[0][i] = sums[i][0] = 1 << i
    for i, (x, g) in enumerate(elems, start=1):
        for j, (y, k) in enumerate(elems, start=1):
            if g == k:
                s = base.sum[x][y]
                if s & (1 << base.zero):
                    sums[i][j] = full
                else:
                    sums[i][j] = sum(1 << idx(z, g) for z in bits(s))
            else:
                sums[i][j] = (1 << i) | (1 << j)
    labels = ["0"]
    for x, g in elems:
        name = _coset_name(g, rank)
        bl = base.label(x)
        if name and bl in ("1", "-1"):
            bl = bl[:-1]
        labels.append(bl + name if name else bl)
    h = FiniteHyperfield(n, 0, 1, tuple(neg), tuple(tuple(r) for r in mul),
                         tuple(tuple(r) for r in sums), tuple(labels))
    bad = validate_axioms(h)
    if bad:
        raise AxiomFailure(f"group extension violates {bad.axioms()}")
    emb = [0] * base.order
    for x in bz:
        emb[x] = idx(x, 0)
    emb[base.zero] = 0
    embedding = MorphismWitness(base, h, tuple(emb))
    if check_morphism_kind(embedding) != GROUP_EXTENSION:
        raise AxiomFailure("embedding of the base is not a group extension")
    return h, QuotientPresentation(base, rank, embedding)


def group_extension(base: FiniteHyperfield, rank: int) -> FiniteHyperfield:
    return group_extension_build(base, rank)[0]


# -- Laurent series fields -------------------------------------------------------------

def _laurent_class_index(s: LaurentSeries, u: int) -> int:
    """Index in the (1, u, t, ut) ordering of the built extension Q(F_q) x C2."""
    parity, square = s.square_class()
    return 1 + (0 if square else 1) + 2 * parity


def laurent_crosscheck(q: int, precision: int = DEFAULT_PRECISION, samples: int = 200,
                       seed: int = 0) -> dict:
    """Compare sums in the built Q(F_q((t))) with sampled sums of truncated series.

    For random series a, b of each square class, the class of a + b must lie
    in the corresponding table sum.  Raises PrecisionLoss when a sampled sum
    cannot be classified at ``precision``.
    """
    h = qh_laurent(q, verify=False)
    F = field(q)
    u = F.least_nonsquare()
    rng = random.Random(seed)
    unit_lead = {0: 1, 1: u}
    checked = 0
    hits: set[tuple[int, int, int]] = set()
    for _ in range(samples):
        ca, cb = rng.randrange(4), rng.randrange(4)
        series = []
        for c in (ca, cb):
            parity, nonsq = c >> 1, c & 1
            v = parity + 2 * rng.randrange(-1, 2)
            lead = F.mul(unit_lead[nonsq], F.pow(rng.randrange(1, q), 2))
            coeffs = {v: lead}
            for e in range(v + 1, precision):
                coeffs[e] = rng.randrange(q)
            series.append(LaurentSeries.make(F, coeffs, precision))
        a, b = series
        if rng.random() < 0.3:
            b = -(a * LaurentSeries.constant(F, F.pow(rng.randrange(1, q), 2), None))
            b = b + LaurentSeries.monomial(F, rng.randrange(1, q), precision - 2, None)
            b = LaurentSeries.make(F, dict(b.terms), precision)
        s = a + b
        if not s.terms:
            raise PrecisionLoss(f"sampled sum vanishes to precision {precision}")
        ia, ib, iz = (_laurent_class_index(x, u) for x in (a, b, s))
        if not h.in_sum(iz, ia, ib):
            raise AssertionError(f"sum of classes {ia},{ib} hit {iz} outside the table")
        hits.add((ia, ib, iz))
        checked += 1
    one_plus_t = LaurentSeries.make(F, {0: 1, 1: 1}, None)
    root = one_plus_t.sqrt(precision)
    if root is None or (root * root - one_plus_t).terms:
        raise AssertionError("Hensel square root of 1 + t failed")
    return {"samples": checked, "distinct_triples": len(hits),
            "one_plus_t_class": _laurent_class_index(one_plus_t, u)}


@functools.lru_cache(maxsize=None)
def qh_laurent(q: int, verify: bool = True, precision: int = DEFAULT_PRECISION) -> FiniteHyperfield:
    """Q(F_q((t))) = group extension of Q(F_q) by C2, cross-checked on truncated series."""
    if q % 2 == 0:
        raise EvenCharacteristic("Laurent series tables are built for odd q only")
    h, _ = group_extension_build(qh_finite_field(q), 1)
    if verify:
        laurent_crosscheck(q, precision)
    return h


# -- dispatch ---------------------------------------------------------------------------

def build_from_descriptor(desc: "D.FieldDescriptor | str") -> FiniteHyperfield:
    """Q(K) for a descriptor with a finite square-class group."""
    if isinstance(desc, str):
        desc = D.parse_field(desc)
    k = desc.kind
    if k == D.FINITE:
        if desc.q % 2 == 0:
            return qh_archimedean("complex")   # every element of F_{2^k} is a square
        return qh_finite_field(desc.q)
    if k == D.REAL:
        return qh_archimedean("real")
    if k in (D.COMPLEX, D.ALG_CLOSED):
        return qh_archimedean("complex")
    if k == D.PADIC:
        return qh_padic(desc.p, desc.degree)
    if k == D.LAURENT:
        base = desc.base
        if base.kind == D.FINITE and base.q % 2:
            return qh_laurent(base.q)
        if base.characteristic != 2 and base.square_class_count != float("inf"):
            depth_base = build_from_descriptor(base)
            return group_extension(depth_base, 1)
    raise InvalidDescriptor(f"no finite quadratic hyperfield for {desc}")


def corpus() -> dict[str, FiniteHyperfield]:
    """Named constructed hyperfields used by the axiom and transport suites."""
    out: dict[str, FiniteHyperfield] = {"C": qh_complex(), "R": qh_real()}
    for q in range(3, 50, 2):
        if factor_prime_power(q):
            out[f"F{q}"] = qh_finite_field(q)
    for p in range(2, 51):
        if is_prime(p):
            out["Q2" if p == 2 else f"Qp:{p}"] = qh_padic(p)
    for q in (3, 5, 7, 9):
        out[f"F{q}((t))"] = qh_laurent(q)
    bases = {"C": qh_complex(), "R": qh_real(), "F3": qh_finite_field(3),
             "F5": qh_finite_field(5), "Qp:3": qh_padic(3)}
    for name, b in bases.items():
        for r in range(3):
            out[f"ext({name},{r})"] = group_extension(b, r)
    return out
