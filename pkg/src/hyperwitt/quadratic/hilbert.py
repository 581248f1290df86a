"""Local Hilbert symbols over Q_p and R for rational arguments."""

from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p, as 0 or +-1."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def as_integer_class(a) -> int:
    """An integer in the same square class as the nonzero rational a."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no square class")
    return a.numerator * a.denominator


def hilbert_symbol(a, b, p) -> int:
    """(a, b)_p in {1, -1}; p a prime or ``math.inf``.

    Tame formula for odd p, the unit-class formula at 2, signs at infinity.
    """
    a, b = as_integer_class(a), as_integer_class(b)
    if p == INF or p == "inf":
        return -1 if a < 0 and b < 0 else 1
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p ** alpha, b // p ** beta
    if p != 2:
        eps = (p - 1) // 2
        s = (-1) ** (alpha * beta * eps % 2)
        if beta % 2:
            s *= legendre(u, p)
        if alpha % 2:
            s *= legendre(v, p)
        return s

    def e(x):
        return ((x - 1) // 2) % 2

    def w(x):
        return ((x * x - 1) // 8) % 2

    exponent = e(u) * e(v) + alpha * w(v) + beta * w(u)
    return -1 if exponent % 2 else 1


def represented(z, a, b, p) -> bool:
    """True iff z is a value of <a, b> over Q_p (all arguments nonzero)."""
    z = as_integer_class(z)
    return hilbert_symbol(as_integer_class(a) * z, as_integer_class(b) * z, p) == 1


def relevant_places(a, b) -> list:
    """Primes dividing 2ab, then infinity."""
    n = abs(as_integer_class(a) * as_integer_class(b)) * 2
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out + [INF]
