"""Dense polynomials over a finite field, with factorization.

Coefficients are stored little-endian as a tuple of GF element codes with no
trailing zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import ZeroPolynomial
from ..finite_field import GF, field


@dataclass(frozen=True)
class Poly:
    F: GF
    c: tuple[int, ...]

    # -- construction -----------------------------------------------------------
    @staticmethod
    def _trim(c) -> tuple[int, ...]:
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    @classmethod
    def of(cls, F: GF, coeffs) -> "Poly":
        return cls(F, cls._trim(coeffs))

    @classmethod
    def const(cls, F: GF, a: int) -> "Poly":
        return cls(F, (a,) if a else ())

    @classmethod
    def x(cls, F: GF) -> "Poly":
        return cls(F, (0, 1))

    @classmethod
    def monomial(cls, F: GF, a: int, n: int) -> "Poly":
        return cls(F, (0,) * n + (a,)) if a else cls(F, ())

    # -- inspection -------------------------------------------------------------
    @property
    def q(self) -> int:
        return self.F.q

    @property
    def deg(self) -> int:
        return len(self.c) - 1   # -1 for zero

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __call__(self, a: int) -> int:
        F = self.F
        r = 0
        for coef in reversed(self.c):
            r = F.add(F.mul(r, a), coef)
        return r

    def __lt__(self, other: "Poly") -> bool:
        return (self.deg, self.c[::-1]) < (other.deg, other.c[::-1])

    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"

    def to_str(self, var: str = "t") -> str:
        F = self.F
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            coef = F.label(a)
            if F.k > 1 and "+" in coef and i:
                coef = f"({coef})"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                parts.append(coef)
            elif a == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)

    # -- ring operations ----------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        F = self.F
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
        return Poly(F, self._trim(out))

    def __neg__(self) -> "Poly":
        return Poly(self.F, tuple(self.F.neg(a) for a in self.c))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.F
        a, b = self.c, other.c
        if not a or not b:
            return Poly(F, ())
        mul_t, add_t = F.mul_t, F.add_t
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            row = mul_t[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add_t[out[i + j]][row[y]]
        return Poly(F, self._trim(out))

    def scale(self, a: int) -> "Poly":
        F = self.F
        if not a:
            return Poly(F, ())
        return Poly(F, tuple(F.mul(x, a) for x in self.c))

    def monic(self) -> "Poly":
        if not self.c:
            raise ZeroPolynomial("zero polynomial has no monic associate")
        return self.scale(self.F.inv(self.lead))

    def __pow__(self, n: int) -> "Poly":
        r = Poly(self.F, (1,))
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        F = self.F
        if not d.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dd = len(d.c) - 1
        if len(r) - 1 < dd:
            return Poly(F, ()), self
        inv_lead = F.inv(d.c[-1])
        qc = [0] * (len(r) - dd)
        mul_t, sub = F.mul_t, F.sub
        for i in range(len(r) - 1, dd - 1, -1):
            coef = r[i]
            if not coef:
                continue
            f = mul_t[coef][inv_lead]
            qc[i - dd] = f
            for j, y in enumerate(d.c):
                if y:
                    r[i - dd + j] = sub(r[i - dd + j], mul_t[f][y])
        return Poly(F, self._trim(qc)), Poly(F, self._trim(r[:dd]))

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def __mod__(self, d):
        return self.divmod(d)[1]

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, self._trim([F.mul(F.from_int(i), a) for i, a in enumerate(self.c)][1:]))

    def compose_shift(self, a: int) -> "Poly":
        """f(t + a)."""
        r = Poly(self.F, ())
        lin = Poly(self.F, (a, 1) if a else (0, 1))
        for coef in reversed(self.c):
            r = r * lin + Poly.const(self.F, coef)
        return r


def gcd(a: Poly, b: Poly) -> Poly:
    while b.c:
        a, b = b, a % b
    return a.monic() if a.c else a


def pow_mod(base: Poly, e: int, m: Poly) -> Poly:
    r = Poly(base.F, (1,)) % m
    b = base % m
    while e:
        if e & 1:
            r = (r * b) % m
        b = (b * b) % m
        e >>= 1
    return r


def pth_root(f: Poly) -> Poly:
    """g with g^p = f, for f with only exponents divisible by p."""
    F = f.F
    p, k = F.p, F.k
    out = []
    for i in range(0, len(f.c), p):
        out.append(F.pow(f.c[i], p ** (k - 1)))
    return Poly.of(F, out)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities; the product of s_i^i is monic(f)."""
    if not f.c:
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    f = f.monic()
    if f.deg == 0:
        return []
    p = f.F.p
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if not df.c:
        return [(g, e * p) for g, e in squarefree_decomposition(pth_root(f))]
    c = gcd(f, df)
    w = f // c
    i = 1
    while w.deg > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.deg > 0:
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if c.deg > 0:
        out += [(g, e * p) for g, e in squarefree_decomposition(pth_root(c.monic()))]
    return out


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    F = f.F
    q = F.q
    out = []
    x = Poly.x(F)
    h = x % f
    d = 0
    rest = f
    while rest.deg >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, q, rest)
        g = gcd(rest, h - x)
        if g.deg > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.deg > 0:
        out.append((rest.monic(), rest.deg))
    return out


def _split_candidate(f: Poly, d: int, rng: random.Random) -> Poly:
    F = f.F
    q = F.q
    a = Poly.of(F, [rng.randrange(q) for _ in range(f.deg)])
    if a.deg <= 0:
        return Poly(F, ())
    if F.p == 2:
        # trace map a + a^2 + ... + a^(2^(k d - 1))
        t = a % f
        acc = t
        for _ in range(F.k * d - 1):
            t = (t * t) % f
            acc = acc + t
        return gcd(f, acc)
    e = (q ** d - 1) // 2
    return gcd(f, pow_mod(a, e, f) - Poly(F, (1,)))


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Irreducible factors of a monic squarefree f whose factors all have degree d."""
    if f.deg == d:
        return [f]
    if f.deg == 0:
        return []
    while True:
        g = _split_candidate(f, d, rng)
        if 0 < g.deg < f.deg:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple[tuple[Poly, int], ...]   # monic irreducibles, sorted

    def expand(self, F: GF) -> Poly:
        r = Poly.const(F, self.unit)
        for g, e in self.factors:
            r = r * g ** e
        return r


def factorize(f: Poly, seed: int = 0) -> Factorization:
    """f = unit * prod g_i^e_i with distinct monic irreducible g_i."""
    if not f.c:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    acc: dict[tuple, int] = {}
    for s, e in squarefree_decomposition(f):
        for g, d in distinct_degree(s):
            for h in equal_degree(g, d, rng):
                acc[h.c] = acc.get(h.c, 0) + e
    factors = sorted(((Poly(f.F, c), e) for c, e in acc.items()), key=lambda t: t[0])
    return Factorization(f.lead, tuple(factors))


def is_irreducible(f: Poly) -> bool:
    if f.deg <= 0:
        return False
    if f.deg == 1:
        return True
    g = f.monic()
    if gcd(g, g.derivative()).deg > 0:
        return False
    parts = distinct_degree(g)
    return len(parts) == 1 and parts[0][1] == g.deg


def monic_irreducibles(F: GF, d: int):
    """All monic irreducibles of degree d, in increasing order."""
    q = F.q
    for n in range(q ** d):
        digits = []
        for _ in range(d):
            digits.append(n % q)
            n //= q
        f = Poly(F, tuple(digits) + (1,))
        if is_irreducible(f):
            yield f


def first_places(F: GF, count: int) -> list[Poly]:
    """The first ``count`` monic irreducibles ordered by degree."""
    out = []
    d = 1
    while len(out) < count:
        for f in monic_irreducibles(F, d):
            out.append(f)
            if len(out) == count:
                break
        d += 1
    return out


def poly_sqrt(f: Poly) -> Poly | None:
    """g with g^2 = f, or None (odd characteristic)."""
    F = f.F
    if not f.c:
        return f
    if f.deg % 2 or not F.is_square(f.lead):
        return None
    n = f.deg // 2
    g = [0] * (n + 1)
    g[n] = F.sqrt(f.lead)
    inv2 = F.inv(F.add(g[n], g[n]))
    # top-down: the coefficient of t^(n+k) determines g[k]
    for k in range(n - 1, -1, -1):
        s = f.c[n + k]
        for i in range(k + 1, n + 1):
            j = n + k - i
            if k < j <= n:
                s = F.sub(s, F.mul(g[i], g[j]))
        g[k] = F.mul(s, inv2)
    root = Poly.of(F, g)
    return root if root * root == f else None


def random_poly(F: GF, deg: int, rng: random.Random, monic: bool = False) -> Poly:
    c = [rng.randrange(F.q) for _ in range(deg)]
    top = 1 if monic else rng.randrange(1, F.q)
    return Poly(F, tuple(c) + (top,))


def poly_field(q: int) -> GF:
    return field(q)
