"""Brute-force reference computations used to cross-check the fast paths.

Nothing in the library proper imports this module; it exists for tests and
the acceptance suite.  Each oracle searches for explicit solutions instead of
applying a closed formula.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .finite_field import GF
from .funcfield.poly import Poly, poly_sqrt
from .funcfield.ratfunc import RatFunc


def _strip(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _reduce(n: int, p: int) -> int:
    """n with its p-valuation reduced to 0 or 1 (same square class)."""
    v, u = _strip(n, p)
    return u * (p if v % 2 else 1)


@lru_cache(maxsize=None)
def _square_flags(p: int, k: int) -> np.ndarray:
    """flags[r] for r mod p^k: r is 0 mod p^k, or r = p^(2m) u with u a unit square."""
    mod = p ** k
    flags = np.zeros(mod, dtype=bool)
    flags[0] = True
    unit_sq = set()
    umod = 8 if p == 2 else p
    for x in range(1, umod):
        if x % p:
            unit_sq.add(x * x % umod)
    for r in range(1, mod):
        v, u = _strip(r, p)
        if v % 2:
            continue
        # the unit part must be visible to the precision that decides squares
        need = 3 if p == 2 else 1
        if v + need > k:
            continue
        flags[r] = (u % umod) in unit_sq
    return flags


def hilbert_oracle(a: int, b: int, p: int) -> int:
    """(a, b)_p by searching a*x^2 + b*y^2 = z^2 over primitive (x, y) mod p^k.

    With valuations reduced to {0, 1}, a primitive pair whose value is 0 mod
    p^k (k = 2 for odd p, 6 for p = 2) already forces isotropy, and otherwise
    the value's square class is visible at that precision.
    """
    if a == 0 or b == 0:
        raise ValueError("nonzero arguments only")
    a, b = _reduce(a, p), _reduce(b, p)
    k = 6 if p == 2 else 2
    mod = p ** k
    xs = np.arange(mod, dtype=np.int64)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    primitive = (X % p != 0) | (Y % p != 0)
    N = (a % mod * (X * X % mod) + b % mod * (Y * Y % mod)) % mod
    ok = _square_flags(p, k)[N] & primitive
    return 1 if ok.any() else -1


def hilbert_oracle_real(a: int, b: int) -> int:
    return -1 if a < 0 and b < 0 else 1


def sums_of_squares_level(mod: int = 64, max_terms: int = 8) -> int:
    """Least n with -1 a sum of n squares modulo ``mod`` (a power of 2 >= 16),
    which equals the level of Q_2."""
    squares = {x * x % mod for x in range(mod)}
    reach = {0}
    for n in range(1, max_terms + 1):
        reach = {(r + s) % mod for r in reach for s in squares}
        if (mod - 1) in reach:
            return n
    raise ValueError("level exceeds the search bound")


# -- function fields ------------------------------------------------------------------

def _reverse(f: Poly, n: int) -> Poly:
    """t^n f(1/t) for n >= deg f."""
    c = list(f.c) + [0] * (n + 1 - len(f.c))
    return Poly.of(f.F, c[::-1])


def _at_infinity(f: RatFunc) -> RatFunc:
    """f(1/u) as a rational function of u, so that infinity becomes u = 0."""
    n = max(f.num.deg, f.den.deg, 0)
    return RatFunc.make(_reverse(f.num, n), _reverse(f.den, n))


def _series_at(f: RatFunc, c: int | None, prec: int) -> tuple[int, list[int]]:
    """(valuation, first ``prec`` coefficients of the unit part) at t = c (or infinity)."""
    if c is None:
        f = _at_infinity(f)
        c = 0
    F = f.F
    num, den = f.num.compose_shift(c), f.den.compose_shift(c)
    v = 0
    while num.c and num.c[0] == 0:
        num = Poly.of(F, num.c[1:])
        v += 1
    while den.c and den.c[0] == 0:
        den = Poly.of(F, den.c[1:])
        v -= 1
    a = list(num.c) + [0] * prec
    d = list(den.c) + [0] * prec
    inv0 = F.inv(d[0])
    out = []
    for n in range(prec):
        s = a[n]
        for i in range(1, n + 1):
            s = F.sub(s, F.mul(d[i], out[n - i]))
        out.append(F.mul(s, inv0))
    return v, out


def tame_symbol_oracle(f: RatFunc, g: RatFunc, c: int | None, prec: int = 8) -> int:
    """(f, g) at the degree-one place t = c (None for infinity) by searching
    f X^2 + g Y^2 = Z^2 over primitive (X, Y) modulo u^2 in the completion."""
    F = f.F
    vf, sf = _series_at(f, c, prec)
    vg, sg = _series_at(g, c, prec)
    # multiply by an even power of the uniformizer: valuations become 0 or 1
    A = [0] * (vf % 2) + sf
    B = [0] * (vg % 2) + sg
    q = F.q
    found = False
    for x0, x1, y0, y1 in itertools.product(range(q), repeat=4):
        if x0 == 0 and y0 == 0:
            continue
        # N = A X^2 + B Y^2 modulo u^2 with X = x0 + x1 u, Y = y0 + y1 u
        X2 = (F.mul(x0, x0), F.mul(2 % F.p, F.mul(x0, x1)))
        Y2 = (F.mul(y0, y0), F.mul(2 % F.p, F.mul(y0, y1)))
        n0 = F.add(F.mul(A[0], X2[0]), F.mul(B[0], Y2[0]))
        n1 = F.add(F.add(F.mul(A[0], X2[1]), F.mul(A[1], X2[0])),
                   F.add(F.mul(B[0], Y2[1]), F.mul(B[1], Y2[0])))
        if n0 != 0:
            if F.is_square(n0):
                found = True
                break
        elif n1 == 0:
            found = True
            break
    return 1 if found else -1


def _monic_polys(F: GF, max_deg: int):
    for d in range(max_deg + 1):
        for tail in itertools.product(range(F.q), repeat=d):
            yield Poly.of(F, list(tail) + [1])


def _all_polys(F: GF, max_deg: int):
    for coeffs in itertools.product(range(F.q), repeat=max_deg + 1):
        yield Poly.of(F, coeffs)


def represents_search(z: RatFunc, x: RatFunc, max_deg: int = 3):
    """Search a^2 + x b^2 = z with polynomial numerators of bounded degree.

    Works with the polynomial representatives z' = num*den, x' = num*den and
    looks for monic c, any B with z' c^2 - x' B^2 a square polynomial.  Returns
    (A, B, c) on success and None when the bounded search finds nothing.
    """
    F = z.F
    zp = z.num * z.den
    xp = x.num * x.den
    for c in _monic_polys(F, max_deg):
        zc = zp * c * c
        for B in _all_polys(F, max_deg):
            r = zc - xp * B * B
            if not r.c:
                return Poly.const(F, 0), B, c
            A = poly_sqrt(r)
            if A is not None and A * A == r:
                return A, B, c
    return None
