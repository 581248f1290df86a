"""Finite fields GF(p^k) as precomputed tables.

An element of GF(p^k) is an int in ``range(q)`` whose base-p digits are the
coefficients (little-endian) of a polynomial in the generator ``a`` modulo a
fixed monic irreducible of degree k.  For prime fields this is ordinary
arithmetic mod p.  Tables are cheap for the field sizes used here (q <= 256).
"""

from __future__ import annotations

import functools
from itertools import product

MAX_TABLE_ORDER = 1024


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _polymulmod_p(a, b, mod, p):
    # a, b: digit lists of length k; mod: monic degree-k list of length k+1
    k = len(mod) - 1
    prod = [0] * (2 * k - 1 if k else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    return prod[:k]


def _find_irreducible(p: int, k: int) -> list[int]:
    # monic degree-k polynomial over F_p with no monic factor of degree <= k/2
    def divides(f, g):
        r = list(g)
        df = len(f) - 1
        for d in range(len(r) - 1, df - 1, -1):
            c = r[d]
            if c:
                for j in range(df + 1):
                    r[d - df + j] = (r[d - df + j] - c * f[j]) % p
        return not any(r[:df])

    for tail in product(range(p), repeat=k):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        ok = True
        for d in range(1, k // 2 + 1):
            for low in product(range(p), repeat=d):
                if divides(list(low) + [1], f):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The finite field with q elements, backed by lookup tables."""

    def __init__(self, q: int):
        pk = factor_prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        if q > MAX_TABLE_ORDER:
            raise ValueError(f"GF({q}) exceeds the table size limit")
        self.q = q
        self.p, self.k = pk
        p, k = self.p, self.k
        self.modulus = _find_irreducible(p, k) if k > 1 else [0, 1]
        digits = [self._digits(x) for x in range(q)]
        self.add_t = [[self._undigits([(x + y) % p for x, y in zip(dx, dy)])
                       for dy in digits] for dx in digits]
        if k == 1:
            self.mul_t = [[(x * y) % p for y in range(q)] for x in range(q)]
        else:
            self.mul_t = [[self._undigits(_polymulmod_p(dx, dy, self.modulus, p))
                           for dy in digits] for dx in digits]
        self.neg_t = [self._undigits([(-x) % p for x in dx]) for dx in digits]
        self.inv_t = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self.mul_t[x][y] == 1:
                    self.inv_t[x] = y
                    break
        self.squares = frozenset(self.mul_t[x][x] for x in range(1, q))
        self.sqrt_t = {}
        for x in range(q):
            self.sqrt_t.setdefault(self.mul_t[x][x], x)

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _undigits(self, ds) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    # arithmetic
    def add(self, x: int, y: int) -> int:
        return self.add_t[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_t[x][self.neg_t[y]]

    def mul(self, x: int, y: int) -> int:
        return self.mul_t[x][y]

    def neg(self, x: int) -> int:
        return self.neg_t[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self.inv_t[x]

    def div(self, x: int, y: int) -> int:
        return self.mul_t[x][self.inv(y)]

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul_t[r][x]
            x = self.mul_t[x][x]
            e >>= 1
        return r

    def from_int(self, n: int) -> int:
        return n % self.p

    def is_square(self, x: int) -> bool:
        return x == 0 or x in self.squares

    def sqrt(self, x: int) -> int | None:
        return self.sqrt_t.get(x)

    def least_nonsquare(self) -> int | None:
        for x in range(1, self.q):
            if x not in self.squares:
                return x
        return None

    @property
    def generator_symbol(self) -> int:
        """The element ``a`` (the class of the indeterminate); p for k > 1."""
        return self.p if self.k > 1 else 1

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def label(self, x: int) -> str:
        if self.k == 1:
            return str(x)
        terms = []
        for i, d in enumerate(self._digits(x)):
            if d == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else f"{d}{mono}")
        return "+".join(reversed(terms)) or "0"

    def __repr__(self) -> str:
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def field(q: int) -> GF:
    """Cached field constructor; GF objects are never mutated after init."""
    return GF(q)
