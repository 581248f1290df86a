"""Symbolic field tags such as ``F9``, ``R``, ``Qp:3``, ``F3((t))``, ``F3(t)``.

Descriptors carry only what the classification needs: characteristic,
square-class counts, whether -1 is a square, transcendence data.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from ..errors import InvalidDescriptor
from ..finite_field import factor_prime_power, is_prime

FINITE = "finite"
REAL = "real"
COMPLEX = "complex"
PADIC = "padic"
LAURENT = "laurent"
RATIONAL_FUNCTION = "rational_function"
ALG_CLOSED = "alg_closed"

KINDS = (FINITE, REAL, COMPLEX, PADIC, LAURENT, RATIONAL_FUNCTION, ALG_CLOSED)


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    q: int | None = None            # finite fields
    p: int | None = None            # p-adic prime, or characteristic of alg_closed
    degree: int = 1                 # [k : Q_p] for p-adic fields
    base: "FieldDescriptor | None" = None
    sqrt_minus_one: bool | None = None   # override for p-adic extensions
    var: str = field(default="t", compare=False)

    def __post_init__(self):
        k = self.kind
        if k not in KINDS:
            raise InvalidDescriptor(f"unknown field kind {k!r}")
        if k == FINITE and (self.q is None or factor_prime_power(self.q) is None):
            raise InvalidDescriptor(f"finite({self.q}) needs a prime power")
        if k == PADIC:
            if self.p is None or not is_prime(self.p):
                raise InvalidDescriptor(f"padic({self.p}) needs a prime")
            if self.degree < 1:
                raise InvalidDescriptor("p-adic degree must be positive")
        if k == ALG_CLOSED and self.p not in (None, 0) and not is_prime(self.p):
            raise InvalidDescriptor("algebraically closed field of non-prime characteristic")
        if k in (LAURENT, RATIONAL_FUNCTION) and self.base is None:
            raise InvalidDescriptor(f"{k} needs a base field")

    # -- derived data -------------------------------------------------------
    @property
    def characteristic(self) -> int:
        if self.kind == FINITE:
            return factor_prime_power(self.q)[0]
        if self.kind == ALG_CLOSED:
            return self.p or 0
        if self.kind in (LAURENT, RATIONAL_FUNCTION):
            return self.base.characteristic
        return 0

    @property
    def is_nonarchimedean_local(self) -> bool:
        return self.kind == PADIC or (self.kind == LAURENT and self.base.kind == FINITE)

    @property
    def is_local(self) -> bool:
        return self.kind in (REAL, COMPLEX) or self.is_nonarchimedean_local

    @property
    def residue_characteristic(self) -> int | None:
        if self.kind == PADIC:
            return self.p
        if self.is_nonarchimedean_local:
            return self.base.characteristic
        return None

    @property
    def is_dyadic(self) -> bool:
        return self.kind == PADIC and self.p == 2

    @property
    def is_nondyadic_local(self) -> bool:
        """Non-archimedean local with odd residue characteristic (incl. F_q((x)), q odd)."""
        return self.is_nonarchimedean_local and self.residue_characteristic != 2

    @property
    def minus_one_is_square(self) -> bool | None:
        k = self.kind
        if k in (COMPLEX, ALG_CLOSED):
            return True
        if k == REAL:
            return False
        if k == FINITE:
            return self.q % 4 == 1 or self.q % 2 == 0
        if k == PADIC:
            if self.sqrt_minus_one is not None:
                return self.sqrt_minus_one
            if self.p == 2:
                return False if self.degree == 1 else None
            # residue field assumed of degree [k:Q_p] (unramified) unless overridden
            return pow(self.p, self.degree, 4) == 1
        return self.base.minus_one_is_square

    @property
    def square_class_count(self) -> int | float:
        """|k*/k*^2| (``math.inf`` when infinite)."""
        k = self.kind
        char = self.characteristic
        if k in (COMPLEX, ALG_CLOSED):
            return 1
        if k == REAL:
            return 2
        if k == FINITE:
            return 1 if char == 2 else 2
        if k == PADIC:
            return 4 if self.p != 2 else 2 ** (self.degree + 2)
        if k == LAURENT:
            return math.inf if char == 2 else 2 * self.base.square_class_count
        return math.inf   # rational function fields

    @property
    def rational_depth(self) -> int:
        """Number of purely transcendental layers on top (F3(t) -> 1)."""
        return 1 + self.base.rational_depth if self.kind == RATIONAL_FUNCTION else 0

    @property
    def trdeg_over_prime_field(self) -> int | float:
        k = self.kind
        if k == FINITE:
            return 0
        if k == RATIONAL_FUNCTION:
            return 1 + self.base.trdeg_over_prime_field
        return math.inf   # R, C, Q_p, F_q((x)) and algebraically closed fields here

    def __str__(self) -> str:
        k = self.kind
        if k == FINITE:
            return f"F{self.q}"
        if k == REAL:
            return "R"
        if k == COMPLEX:
            return "C"
        if k == PADIC:
            head = "Q2" if self.p == 2 else f"Qp:{self.p}"
            return head if self.degree == 1 else f"Qp:{self.p}:{self.degree}"
        if k == ALG_CLOSED:
            return "Alg" if not self.p else f"Alg:{self.p}"
        if k == LAURENT:
            return f"{self.base}(({self.var}))"
        return f"{self.base}({self.var})"


def finite(q: int) -> FieldDescriptor:
    return FieldDescriptor(FINITE, q=q)


def padic(p: int, degree: int = 1, sqrt_minus_one: bool | None = None) -> FieldDescriptor:
    return FieldDescriptor(PADIC, p=p, degree=degree, sqrt_minus_one=sqrt_minus_one)


def laurent(base: FieldDescriptor, var: str = "t") -> FieldDescriptor:
    return FieldDescriptor(LAURENT, base=base, var=var)


def rational_function(base: FieldDescriptor, var: str = "t") -> FieldDescriptor:
    return FieldDescriptor(RATIONAL_FUNCTION, base=base, var=var)


REALS = FieldDescriptor(REAL)
COMPLEXES = FieldDescriptor(COMPLEX)


def alg_closed(char: int = 0) -> FieldDescriptor:
    return FieldDescriptor(ALG_CLOSED, p=char)


_LAURENT_RE = re.compile(r"^(.*)\(\(([A-Za-z])\)\)$")
_RATFUNC_RE = re.compile(r"^(.*)\(([A-Za-z])\)$")


def parse_field(text: str) -> FieldDescriptor:
    """Parse a descriptor string, e.g. ``F9``, ``Qp:3``, ``Q2``, ``F3((t))``, ``F5(t)``."""
    s = text.strip()
    m = _LAURENT_RE.match(s)
    if m:
        return laurent(parse_field(m.group(1)), m.group(2))
    m = _RATFUNC_RE.match(s)
    if m:
        return rational_function(parse_field(m.group(1)), m.group(2))
    if s in ("R", "RR"):
        return REALS
    if s in ("C", "CC"):
        return COMPLEXES
    if s == "Q2":
        return padic(2)
    m = re.fullmatch(r"Q(?:p:)?(\d+)(?::(\d+))?", s)
    if m:
        return padic(int(m.group(1)), int(m.group(2) or 1))
    m = re.fullmatch(r"F(\d+)", s)
    if m:
        return finite(int(m.group(1)))
    m = re.fullmatch(r"Alg(?::(\d+))?", s)
    if m:
        return alg_closed(int(m.group(1) or 0))
    raise InvalidDescriptor(f"cannot parse field descriptor {text!r}")
