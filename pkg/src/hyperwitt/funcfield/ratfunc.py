"""Rational functions over F_q as reduced fractions with monic denominator."""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass

from ..errors import ParseError, ZeroElement
from ..finite_field import GF
from .poly import Poly, gcd


@dataclass(frozen=True)
class RatFunc:
    num: Poly
    den: Poly   # monic, coprime to num

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RatFunc":
        if not den.c:
            raise ZeroDivisionError("zero denominator")
        if not num.c:
            return cls(num, Poly(num.F, (1,)))
        g = gcd(num, den)
        if g.deg > 0:
            num, den = num // g, den // g
        lc = den.lead
        if lc != 1:
            inv = num.F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return cls(num, den)

    @classmethod
    def poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly(p.F, (1,)))

    @classmethod
    def const(cls, F: GF, a: int) -> "RatFunc":
        return cls.poly(Poly.const(F, a))

    @classmethod
    def t(cls, F: GF) -> "RatFunc":
        return cls.poly(Poly.x(F))

    @property
    def F(self) -> GF:
        return self.num.F

    def is_zero(self) -> bool:
        return not self.num.c

    def __add__(self, o):
        o = _coerce(self.F, o)
        return RatFunc.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-_coerce(self.F, o))

    def __rsub__(self, o):
        return _coerce(self.F, o) - self

    def __mul__(self, o):
        o = _coerce(self.F, o)
        return RatFunc.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        return RatFunc.make(self.den, self.num)

    def __truediv__(self, o):
        return self * _coerce(self.F, o).inverse()

    def __rtruediv__(self, o):
        return _coerce(self.F, o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __repr__(self) -> str:
        return f"RatFunc({self.to_str()})"

    def to_str(self, var: str = "t") -> str:
        n = self.num.to_str(var)
        if self.den.is_one():
            return n
        return f"({n})/({self.den.to_str(var)})"


def _coerce(F: GF, x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc.poly(x)
    if isinstance(x, int):
        return RatFunc.const(F, F.from_int(x))
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


_IMPLICIT = re.compile(r"(?<=[0-9)])\s*(?=[A-Za-z(])")


def parse_ratfunc(F: GF, text: str, var: str = "t") -> RatFunc:
    """Parse an expression in ``t`` (and the field generator ``a`` when q is not prime).

    Supports + - * / ^ (or **), integer literals, parentheses and implicit
    multiplication such as ``2t`` or ``3(t+1)``.
    """
    src = _IMPLICIT.sub("*", text.strip()).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    gen = RatFunc.const(F, F.generator_symbol) if F.k > 1 else None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RatFunc.const(F, F.from_int(node.value))
        if isinstance(node, ast.Name):
            if node.id == var:
                return RatFunc.t(F)
            if node.id == "a" and gen is not None:
                return gen
            raise ParseError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ParseError("exponents must be integer literals")
                return ev(node.left) ** (sign * exp.value)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.is_zero():
                    raise ParseError("division by zero")
                return left / right
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)
