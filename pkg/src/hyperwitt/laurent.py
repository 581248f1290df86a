"""Truncated Laurent series over a finite field with absolute-precision tracking.

A series is known modulo x^prec; ``prec=None`` marks an exact element (a
Laurent polynomial).  Any operation whose answer would depend on unknown
coefficients raises PrecisionLoss.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvenResidue, PrecisionLoss, ZeroElement
from .finite_field import GF

DEFAULT_PRECISION = 24


def _min_prec(*ps):
    known = [p for p in ps if p is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class LaurentSeries:
    field: GF
    terms: tuple[tuple[int, int], ...]   # sorted (exponent, nonzero coefficient)
    prec: int | None = None

    @classmethod
    def make(cls, F: GF, coeffs: dict, prec: int | None = None) -> "LaurentSeries":
        items = sorted((e, c % F.q if F.k == 1 else c) for e, c in coeffs.items())
        terms = tuple((e, c) for e, c in items if c != 0 and (prec is None or e < prec))
        return cls(F, terms, prec)

    @classmethod
    def constant(cls, F: GF, c: int, prec: int | None = None) -> "LaurentSeries":
        return cls.make(F, {0: c}, prec)

    @classmethod
    def monomial(cls, F: GF, c: int, e: int, prec: int | None = None) -> "LaurentSeries":
        return cls.make(F, {e: c}, prec)

    # -- inspection -----------------------------------------------------------
    def coeff(self, e: int) -> int:
        if self.prec is not None and e >= self.prec:
            raise PrecisionLoss(f"coefficient of x^{e} unknown at precision {self.prec}")
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.prec is None

    def valuation(self) -> int:
        if self.terms:
            return self.terms[0][0]
        if self.prec is None:
            raise ZeroElement("valuation of zero")
        raise PrecisionLoss(f"series is zero to precision {self.prec}")

    def lead(self) -> int:
        self.valuation()
        return self.terms[0][1]

    def relative_precision(self) -> int | None:
        return None if self.prec is None else self.prec - self.valuation()

    # -- arithmetic -----------------------------------------------------------
    def _combine(self, other, sign):
        F = self.field
        prec = _min_prec(self.prec, other.prec)
        acc: dict[int, int] = {}
        for e, c in self.terms:
            acc[e] = F.add(acc.get(e, 0), c)
        for e, c in other.terms:
            c = F.neg(c) if sign < 0 else c
            acc[e] = F.add(acc.get(e, 0), c)
        return LaurentSeries.make(F, acc, prec)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, tuple((e, F.neg(c)) for e, c in self.terms), self.prec)

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        if c == 0:
            return LaurentSeries(F, (), None)
        return LaurentSeries(F, tuple((e, F.mul(a, c)) for e, a in self.terms), self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by x^k."""
        p = None if self.prec is None else self.prec + k
        return LaurentSeries(self.field, tuple((e + k, c) for e, c in self.terms), p)

    def __mul__(self, other):
        F = self.field
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentSeries(F, (), None)
        if not self.terms or not other.terms:
            # one factor is an inexact zero: product known only to a bound
            va = self.terms[0][0] if self.terms else self.prec
            vb = other.terms[0][0] if other.terms else other.prec
            bound = _min_prec(
                None if self.prec is None else self.prec + vb,
                None if other.prec is None else other.prec + va,
            )
            return LaurentSeries(F, (), bound)
        va, vb = self.valuation(), other.valuation()
        prec = _min_prec(
            None if self.prec is None else self.prec + vb,
            None if other.prec is None else other.prec + va,
        )
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                acc[e] = F.add(acc.get(e, 0), F.mul(c1, c2))
        return LaurentSeries.make(F, acc, prec)

    def inverse(self, precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        """1/self, to the relative precision of self (or ``precision`` if exact)."""
        F = self.field
        v = self.valuation()
        rp = self.relative_precision()
        rp = precision if rp is None else rp
        a = [self.coeff(v + i) if (self.prec is None or v + i < self.prec) else 0
             for i in range(rp)]
        inv0 = F.inv(a[0])
        b = [inv0] + [0] * (rp - 1)
        for n in range(1, rp):
            s = 0
            for i in range(1, n + 1):
                s = F.add(s, F.mul(a[i], b[n - i]))
            b[n] = F.neg(F.mul(s, inv0))
        return LaurentSeries.make(F, {i - v: c for i, c in enumerate(b)}, rp - v)

    def __truediv__(self, other):
        return self * other.inverse()

    def sqrt(self, precision: int = DEFAULT_PRECISION) -> "LaurentSeries | None":
        """A square root by Hensel lifting, or None when self is not a square."""
        F = self.field
        if F.p == 2:
            raise EvenResidue("square roots need odd characteristic")
        v = self.valuation()
        if v % 2 or not F.is_square(self.lead()):
            return None
        rp = self.relative_precision()
        rp = precision if rp is None else rp
        a = [self.coeff(v + i) if (self.prec is None or v + i < self.prec) else 0
             for i in range(rp)]
        b = [F.sqrt(a[0])] + [0] * (rp - 1)
        two_b0_inv = F.inv(F.add(b[0], b[0]))
        for n in range(1, rp):
            s = a[n]
            for i in range(1, n):
                s = F.sub(s, F.mul(b[i], b[n - i]))
            b[n] = F.mul(s, two_b0_inv)
        half = v // 2
        return LaurentSeries.make(F, {i + half: c for i, c in enumerate(b)}, rp + half)

    def square_class(self) -> tuple[int, bool]:
        """(valuation mod 2, leading coefficient is a square)."""
        return self.valuation() % 2, self.field.is_square(self.lead())

    def __repr__(self) -> str:
        F = self.field
        parts = [f"{F.label(c)}@{e}" for e, c in self.terms] or ["0"]
        tail = "" if self.prec is None else f" + O(x^{self.prec})"
        return " + ".join(parts) + tail


def parse_terms(F: GF, text: str, prec: int | None = None) -> LaurentSeries:
    """Parse ``"1@0, 2@3"`` (coefficient@power) into a series."""
    coeffs: dict[int, int] = {}
    for chunk in text.replace(";", ",").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        c, _, e = chunk.partition("@")
        e = int(e) if e else 0
        coeffs[e] = F.add(coeffs.get(e, 0), F.from_int(int(c)))
    return LaurentSeries.make(F, coeffs, prec)
