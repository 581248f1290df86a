"""Binary value sets over F_{2^s}(t), decided with coordinates over K^2.

Squaring is an injective field map, so K^2 is a subfield and {1, t} is a
basis of K over K^2.  Writing P = N*D for f = N/D gives
f = (A/D)^2 + t (B/D)^2 where A, B collect square roots of the even and odd
coefficients of P.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import UnsupportedField, ZeroElement
from ..finite_field import GF, factor_prime_power, field
from ..quadratic import descriptors as D
from .poly import Poly
from .ratfunc import RatFunc


def _sqrt_coeff(F: GF, c: int) -> int:
    return F.pow(c, 2 ** (F.k - 1))


def coordinates(f: RatFunc) -> tuple[RatFunc, RatFunc]:
    """(alpha, beta) with f = alpha^2 + t beta^2."""
    F = f.F
    if F.p != 2:
        raise UnsupportedField("coordinates over K^2 need characteristic 2")
    P = f.num * f.den
    even = [_sqrt_coeff(F, c) for c in P.c[0::2]]
    odd = [_sqrt_coeff(F, c) for c in P.c[1::2]]
    den = RatFunc.poly(f.den)
    return RatFunc.poly(Poly.of(F, even)) / den, RatFunc.poly(Poly.of(F, odd)) / den


def char2_solve(z: RatFunc, x: RatFunc) -> tuple[RatFunc, RatFunc] | None:
    """(a, b) with z = a^2 + b^2 x, or None when no solution exists."""
    if z.is_zero() or x.is_zero():
        raise ZeroElement("value sets are defined for nonzero entries")
    z0, z1 = coordinates(z)
    x0, x1 = coordinates(x)
    # a^2 + b^2 (x0^2 + t x1^2) = z0^2 + t z1^2, compare coordinates
    if not x1.is_zero():
        b = z1 / x1
        a = z0 + b * x0
    elif z1.is_zero():
        a, b = z0, RatFunc.const(z.F, 0)
    else:
        return None
    return a, b


def char2_represents(z: RatFunc, x: RatFunc) -> bool:
    sol = char2_solve(z, x)
    if sol is None:
        return False
    a, b = sol
    if a * a + b * b * x != z:
        raise AssertionError("coordinate solution failed to verify")
    return True


def is_square_char2(f: RatFunc) -> bool:
    return coordinates(f)[1].is_zero()


@dataclass(frozen=True)
class Char2Dimension:
    dimension: int
    basis: tuple[str, ...]
    samples_checked: int


def char2_dimension(desc, samples: int = 50, seed: int = 0) -> Char2Dimension:
    """[K : K^2] for K = F_{2^s} or F_{2^s}(t), with a sampled certificate."""
    if isinstance(desc, str):
        desc = D.parse_field(desc)
    rng = random.Random(seed)
    if desc.kind == D.FINITE and desc.characteristic == 2:
        F = field(desc.q)
        # Frobenius is a bijection of a finite field: every element is a square
        for a in F.nonzero():
            if F.mul(_sqrt_coeff(F, a), _sqrt_coeff(F, a)) != a:
                raise AssertionError("Frobenius inverse failed")
        return Char2Dimension(1, ("1",), F.q - 1)
    if (desc.kind == D.RATIONAL_FUNCTION and desc.base.kind == D.FINITE
            and desc.base.characteristic == 2 and desc.rational_depth == 1):
        F = field(desc.base.q)
        t = RatFunc.t(F)
        if is_square_char2(t):
            raise AssertionError("t must not be a square")
        for _ in range(samples):
            f = random_ratfunc(F, rng, 4)
            a, b = coordinates(f)
            if a * a + t * b * b != f:
                raise AssertionError("basis {1, t} failed to span a sample")
        return Char2Dimension(2, ("1", "t"), samples)
    raise UnsupportedField(f"[K:K^2] is computed for F_2^s and F_2^s(t), not {desc}")


def random_ratfunc(F: GF, rng: random.Random, max_deg: int = 3, nonzero: bool = True) -> RatFunc:
    while True:
        n = Poly.of(F, [rng.randrange(F.q) for _ in range(rng.randrange(1, max_deg + 2))])
        d = Poly.of(F, [rng.randrange(F.q) for _ in range(rng.randrange(0, max_deg))] + [1])
        if n.c or not nonzero:
            return RatFunc.make(n, d)


def is_char2_prime_power(q: int) -> bool:
    pk = factor_prime_power(q)
    return pk is not None and pk[0] == 2
