"""Square classes, places and local symbols of F_q(t) for odd q."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import ConstructionFailed, DuplicatePlace, EvenResidue, InputIsSquare, \
    ZeroElement
from ..finite_field import GF
from .poly import Poly, factorize, first_places, is_irreducible, pow_mod
from .ratfunc import RatFunc

INFINITE = "infinite"
FINITE = "finite"


@dataclass(frozen=True, order=True)
class SquareClassElement:
    """Class of f in K*/K*^2: the square class of the leading coefficient
    and the sorted monic irreducibles occurring to an odd power."""
    constant_square: bool
    odd_part: tuple[tuple[int, ...], ...]   # coefficient tuples of monic irreducibles
    q: int = field(default=0, compare=False)

    def __mul__(self, other: "SquareClassElement") -> "SquareClassElement":
        odd = tuple(sorted(set(self.odd_part) ^ set(other.odd_part),
                           key=lambda c: (len(c), c[::-1])))
        return SquareClassElement(self.constant_square == other.constant_square, odd, self.q)

    @property
    def is_one(self) -> bool:
        return self.constant_square and not self.odd_part

    def representative(self, F: GF) -> RatFunc:
        r = Poly.const(F, 1 if self.constant_square else F.least_nonsquare())
        for c in self.odd_part:
            r = r * Poly(F, c)
        return RatFunc.poly(r)

    def describe(self, F: GF) -> str:
        const = "square" if self.constant_square else "nonsquare"
        odd = ", ".join(Poly(F, c).to_str() for c in self.odd_part) or "-"
        return f"({const}; {odd})"


def _require_odd(F: GF) -> None:
    if F.p == 2:
        raise EvenResidue("square classes of F_q(t) are handled for odd q only")


def square_class(f: RatFunc, seed: int = 0) -> SquareClassElement:
    if f.is_zero():
        raise ZeroElement("zero has no square class")
    F = f.F
    _require_odd(F)
    odd: set[tuple[int, ...]] = set()
    for part in (f.num, f.den):
        for g, e in factorize(part, seed).factors:
            if e % 2:
                odd ^= {g.c}
    lead = F.div(f.num.lead, f.den.lead)
    key = lambda c: (len(c), c[::-1])   # noqa: E731
    return SquareClassElement(F.is_square(lead), tuple(sorted(odd, key=key)), F.q)


# -- places ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    kind: str
    pi: Poly | None = None   # monic irreducible for finite places

    def __post_init__(self):
        if self.kind == FINITE:
            if self.pi is None or not self.pi.is_monic() or not is_irreducible(self.pi):
                raise ValueError("finite places need a monic irreducible polynomial")
        elif self.kind != INFINITE:
            raise ValueError(f"unknown place kind {self.kind!r}")

    @classmethod
    def finite(cls, pi: Poly) -> "Place":
        return cls(FINITE, pi)

    @classmethod
    def infinite(cls) -> "Place":
        return cls(INFINITE)

    @property
    def degree(self) -> int:
        return 1 if self.kind == INFINITE else self.pi.deg

    def residue_size(self, q: int) -> int:
        return q ** self.degree

    def __str__(self) -> str:
        return "inf" if self.kind == INFINITE else f"({self.pi.to_str()})"


def _poly_order(f: Poly, pi: Poly) -> int:
    n = 0
    while True:
        qt, r = f.divmod(pi)
        if r.c:
            return n
        f = qt
        n += 1


def valuation(f: RatFunc, v: Place) -> int:
    if f.is_zero():
        raise ZeroElement("valuation of zero")
    if v.kind == INFINITE:
        return f.den.deg - f.num.deg
    return _poly_order(f.num, v.pi) - _poly_order(f.den, v.pi)


def _strip(f: RatFunc, v: Place) -> tuple[Poly, Poly]:
    """(num, den) of f / pi^v(f) with the factor pi removed from both parts."""
    num, den = f.num, f.den
    pi = v.pi
    while not (num % pi).c:
        num = num // pi
    while not (den % pi).c:
        den = den // pi
    return num, den


def _residue_is_square(r: Poly, v: Place, q: int) -> bool:
    """Euler criterion in F_q[t]/(pi) for a residue r not divisible by pi."""
    Q = v.residue_size(q)
    return pow_mod(r, (Q - 1) // 2, v.pi).c == (1,)


def local_class(f: RatFunc, v: Place) -> tuple[int, bool]:
    """(v(f) mod 2, residue of f / pi^v(f) is a square)."""
    if f.is_zero():
        raise ZeroElement("zero has no local class")
    F = f.F
    _require_odd(F)
    parity = valuation(f, v) % 2
    if v.kind == INFINITE:
        return parity, F.is_square(F.mul(f.num.lead, f.den.lead))
    num, den = _strip(f, v)
    return parity, _residue_is_square((num * den) % v.pi, v, F.q)


def is_local_square(f: RatFunc, v: Place) -> bool:
    parity, sq = local_class(f, v)
    return parity == 0 and sq


def tame_symbol(f: RatFunc, g: RatFunc, v: Place) -> int:
    """(f, g)_v = (-1)^(v(f)v(g)eps) times the residue class of f^v(g) / g^v(f)."""
    if f.is_zero() or g.is_zero():
        raise ZeroElement("symbols need nonzero arguments")
    F = f.F
    if F.p == 2:
        raise EvenResidue("tame symbols need odd residue characteristic")
    a, b = valuation(f, v), valuation(g, v)
    Q = v.residue_size(F.q)
    eps = ((Q - 1) // 2) % 2
    sign = -1 if (a * b * eps) % 2 else 1
    h = f ** b / g ** a
    _, sq = local_class(h, v)   # h is a unit at v
    return sign * (1 if sq else -1)


def support(*fs: RatFunc, seed: int = 0) -> list[Place]:
    """Finite places dividing some numerator or denominator, then infinity."""
    seen: dict[tuple, Poly] = {}
    for f in fs:
        for part in (f.num, f.den):
            if part.deg > 0:
                for g, _ in factorize(part, seed).factors:
                    seen[g.c] = g
    places = [Place.finite(seen[c]) for c in sorted(seen, key=lambda c: (len(c), c[::-1]))]
    return places + [Place.infinite()]


def represents(z: RatFunc, x: RatFunc, seed: int = 0) -> bool:
    """Decide whether z is a value of <1, x> over F_q(t).

    By the local-global principle this holds iff (z, xz)_v = 1 at every place;
    only places dividing x, z or at infinity can contribute.
    """
    return certify_represents(z, x, seed)[0]


def certify_represents(z: RatFunc, x: RatFunc, seed: int = 0) -> tuple[bool, Place | None]:
    """(decision, an obstructing place when the decision is False)."""
    if z.is_zero() or x.is_zero():
        raise ZeroElement("value sets are defined for nonzero entries")
    _require_odd(z.F)
    xz = x * z
    for v in support(z, x, seed=seed):
        if tame_symbol(z, xz, v) != 1:
            return False, v
    return True, None


# -- lemma constructions ------------------------------------------------------------------

@dataclass(frozen=True)
class DistinctClasses:
    places: tuple[Place, ...]
    elements: tuple[RatFunc, ...]
    classes: tuple[SquareClassElement, ...]
    kronecker_ok: bool
    distinct: bool


def distinct_classes_witness(places, seed: int = 0) -> DistinctClasses:
    """The 2^n products pi_1^e_1 ... pi_n^e_n and proof that their classes differ."""
    places = list(places)
    keys = [p.pi.c if p.kind == FINITE else None for p in places]
    if any(k is None for k in keys):
        raise ValueError("distinct_classes_witness takes finite places")
    if len(set(keys)) != len(keys):
        raise DuplicatePlace("places must be pairwise distinct")
    n = len(places)
    pis = [RatFunc.poly(p.pi) for p in places]
    kron = all(valuation(pis[j], places[i]) == (1 if i == j else 0)
               for i in range(n) for j in range(n))
    F = places[0].pi.F if places else None
    elements, classes = [], []
    for mask in range(1 << n):
        f = RatFunc.const(F, 1) if F else None
        for i in range(n):
            if mask >> i & 1:
                f = f * pis[i]
        elements.append(f)
        classes.append(square_class(f, seed))
    return DistinctClasses(tuple(places), tuple(elements), tuple(classes), kron,
                           len(set(classes)) == len(classes))


@dataclass(frozen=True)
class NonRigidityWitness:
    x: RatFunc
    y: RatFunc
    a: RatFunc | None
    places: tuple[Place, ...]
    represented: bool
    not_square: bool
    not_x_class: bool

    @property
    def ok(self) -> bool:
        return self.represented and self.not_square and self.not_x_class


def _candidate_places(x: RatFunc, seed: int, extra: int = 40) -> list[Place]:
    F = x.F
    out = support(x, seed=seed)
    seen = {p.pi.c for p in out if p.kind == FINITE}
    for pi in first_places(F, extra):
        if pi.c not in seen:
            out.append(Place.finite(pi))
    return out


def _uniformizer(v: Place, F: GF) -> RatFunc:
    return RatFunc.t(F).inverse() if v.kind == INFINITE else RatFunc.poly(v.pi)


def non_rigidity_witness(x: RatFunc, seed: int = 0, max_tries: int = 64) -> NonRigidityWitness:
    """y in D<1, x> outside K*^2 and x K*^2, following y = a^2 + x.

    Pick places v != w at which x is not a local square and a with
    v(a^2) > v(x), w(a^2) < w(x).  Then y/x is a square at v and y is a square
    at w, so y lies in neither class.
    """
    F = x.F
    _require_odd(F)
    cx = square_class(x, seed)
    if cx.is_one:
        raise InputIsSquare("x is a square")
    one = RatFunc.const(F, 1)
    minus_one = RatFunc.const(F, F.neg(1))
    if cx == square_class(minus_one, seed):
        # <1, -1> is universal; any class outside {1, -1} will do
        for y in (RatFunc.t(F), RatFunc.t(F) + one, RatFunc.t(F) * F.least_nonsquare()):
            cy = square_class(y, seed)
            if not cy.is_one and cy != cx:
                return NonRigidityWitness(x, y, None, (), represents(y, x, seed), True, True)
    nonsquare_at = [v for v in _candidate_places(x, seed) if not is_local_square(x, v)]
    rng = random.Random(seed)
    tries = 0
    pairs = [(v, w) for v in nonsquare_at for w in nonsquare_at if v != w]
    rng.shuffle(pairs)
    pairs.sort(key=lambda vw: vw[0].degree + vw[1].degree)
    for v, w in pairs:
        if tries >= max_tries:
            break
        tries += 1
        pv, pw = _uniformizer(v, F), _uniformizer(w, F)
        xv, xw = valuation(x, v), valuation(x, w)
        for k in range(0, abs(xv) + 3):
            for l in range(0, abs(xw) + 3 + abs(xv)):
                a = pv ** k / pw ** l
                if 2 * valuation(a, v) > xv and 2 * valuation(a, w) < xw:
                    y = a * a + x
                    if y.is_zero():
                        continue
                    cy = square_class(y, seed)
                    return NonRigidityWitness(
                        x, y, a, (v, w), represents(y, x, seed),
                        not cy.is_one, cy != cx)
    raise ConstructionFailed("no pair of places produced a witness; retry with other places")
