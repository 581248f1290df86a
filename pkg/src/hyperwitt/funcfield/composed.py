"""The composed valuation on F_p((s))(t): t-adic first, then s-adic on the residue.

An element is a fraction of polynomials in t whose coefficients are
truncated Laurent series in s.  Its value is the lexicographic pair
(t-adic valuation, s-adic valuation of the leading t-coefficient), in
Gamma = Z x Z, and its class modulo (1+M)K*^2 is that pair mod 2 together
with the square class in F_p of the final leading coefficient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import EvenResidue, PrecisionLoss
from ..finite_field import GF, field
from ..laurent import DEFAULT_PRECISION, LaurentSeries


@dataclass(frozen=True)
class LexValue:
    t_component: int
    s_component: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be positive")

    def key(self) -> tuple[int, int]:
        return self.t_component, self.s_component

    def mod2(self) -> tuple[int, int]:
        return self.t_component % 2, self.s_component % 2


@dataclass(frozen=True)
class ComposedElement:
    """num / den with num, den lists of s-series indexed by the power of t."""
    F: GF
    num: tuple[LaurentSeries, ...]
    den: tuple[LaurentSeries, ...]

    @classmethod
    def from_terms(cls, F: GF, num: dict, den: dict | None = None,
                   precision: int = DEFAULT_PRECISION) -> "ComposedElement":
        """``num``/``den`` map a power of t to {power of s: coefficient}."""
        def series_list(d):
            if not d:
                return (LaurentSeries.constant(F, 1, None),)
            top = max(d)
            low = min(0, min(d))
            if low < 0:
                raise ValueError("use den for negative powers of t")
            zero = LaurentSeries(F, (), None)
            return tuple(LaurentSeries.make(F, d[i], precision) if i in d else zero
                         for i in range(top + 1))
        return cls(F, series_list(num), series_list(den or {}))

    def __mul__(self, other: "ComposedElement") -> "ComposedElement":
        return ComposedElement(self.F, _pmul(self.num, other.num), _pmul(self.den, other.den))

    def __add__(self, other: "ComposedElement") -> "ComposedElement":
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return ComposedElement(self.F, num, _pmul(self.den, other.den))


def _pmul(a, b):
    F = a[0].field
    out = [LaurentSeries(F, (), None)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def _padd(a, b):
    F = a[0].field
    n = max(len(a), len(b))
    zero = LaurentSeries(F, (), None)
    return tuple((a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero)
                 for i in range(n))


def _lowest_t(coeffs) -> tuple[int, LaurentSeries]:
    """Lowest power of t with a coefficient known to be nonzero."""
    for i, c in enumerate(coeffs):
        if c.terms:
            return i, c
        if c.prec is not None:
            raise PrecisionLoss(f"t^{i} coefficient indistinguishable from 0 at s-precision {c.prec}")
    raise PrecisionLoss("element is zero")


def lex_value(f: ComposedElement, precision: int = DEFAULT_PRECISION) -> tuple[LexValue, int]:
    """Lexicographic value and the leading F_p coefficient (num over den)."""
    F = f.F
    best = []
    for part in (f.num, f.den):
        # minimum over monomials s^j t^i in lexicographic order (i first)
        lead = None
        for i, c in enumerate(part):
            for j, a in c.terms:
                lead = (i, j, a)
                break
            if lead:
                break
            if c.prec is not None:
                raise PrecisionLoss(f"t^{i} coefficient vanishes to s-precision {c.prec}")
        if lead is None:
            raise PrecisionLoss("element is zero")
        best.append(lead)
    (i1, j1, a1), (i2, j2, a2) = best
    return LexValue(i1 - i2, j1 - j2, precision), F.div(a1, a2)


def composed_class(f: ComposedElement, precision: int = DEFAULT_PRECISION):
    """((t-value mod 2, s-value mod 2), leading F_p coefficient is a square)."""
    if f.F.p == 2:
        raise EvenResidue("odd p only")
    val, lead = lex_value(f, precision)
    return val.mod2(), f.F.is_square(lead)


def tower_class(f: ComposedElement):
    """Same class computed in two steps: the t-adic local class (parity and the
    residue in F_p((s))), then the s-adic class of that residue."""
    i1, c1 = _lowest_t(f.num)
    i2, c2 = _lowest_t(f.den)
    residue = c1 / c2   # an element of F_p((s)) = residue field of the t-adic valuation
    s_parity, sq = residue.square_class()
    return ((i1 - i2) % 2, s_parity), sq


def class_index(cls) -> int:
    """Encode a composed class as 0..7."""
    (tp, sp), sq = cls
    return tp * 4 + sp * 2 + (0 if sq else 1)


def generators(p: int, precision: int = DEFAULT_PRECISION) -> dict[str, ComposedElement]:
    F = field(p)
    u = F.least_nonsquare()
    mk = ComposedElement.from_terms
    return {"t": mk(F, {1: {0: 1}}, precision=precision),
            "s": mk(F, {0: {1: 1}}, precision=precision),
            "u": mk(F, {0: {0: u}}, precision=precision)}


def all_generator_products(p: int, precision: int = DEFAULT_PRECISION) -> list[ComposedElement]:
    gens = generators(p, precision)
    one = ComposedElement.from_terms(field(p), {0: {0: 1}}, precision=precision)
    out = []
    for mask in range(8):
        e = one
        for bit, name in enumerate(("u", "s", "t")):
            if mask >> bit & 1:
                e = e * gens[name]
        out.append(e)
    return out


def random_element(p: int, rng: random.Random, precision: int = DEFAULT_PRECISION,
                   t_degree: int = 3) -> ComposedElement:
    """Random fraction with nonzero coefficients; s-powers in [-2, precision)."""
    F = field(p)

    def rand_series():
        v = rng.randrange(-2, 4)
        d = {v: rng.randrange(1, p)}
        for e in range(v + 1, precision):
            if rng.random() < 0.5:
                d[e] = rng.randrange(p)
        return d

    def rand_poly():
        low = rng.randrange(0, 3)
        return {i: rand_series() for i in range(low, low + rng.randrange(1, t_degree + 1))}

    return ComposedElement.from_terms(F, rand_poly(), rand_poly(), precision)
