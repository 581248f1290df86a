"""Finite hyperfields stored as explicit tables.

Elements are the dense indices ``0..order-1``.  Multi-valued sums are kept as
int bitmasks (bit ``z`` set iff ``z`` is in the sum), which makes membership
O(1) and lets tables hash cheaply.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import MalformedTable


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class FiniteHyperfield:
    order: int
    zero: int
    one: int
    neg: tuple[int, ...]
    mul: tuple[tuple[int, ...], ...]
    sum: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_sets(cls, order, zero, one, neg, mul, sums, labels=None) -> "FiniteHyperfield":
        """Build from nested sequences; ``sums[a][b]`` is any iterable of elements."""
        return cls(
            order=order,
            zero=zero,
            one=one,
            neg=tuple(neg),
            mul=tuple(tuple(row) for row in mul),
            sum=tuple(tuple(mask_of(s) for s in row) for row in sums),
            labels=tuple(labels) if labels is not None else None,
        )

    # -- element access -------------------------------------------------
    def add(self, a: int, b: int) -> frozenset[int]:
        return frozenset(bits(self.sum[a][b]))

    def in_sum(self, c: int, a: int, b: int) -> bool:
        return bool(self.sum[a][b] >> c & 1)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.order) if x != self.zero)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [self.zero] * self.order
        for x in self.nonzero:
            for y in self.nonzero:
                if self.mul[x][y] == self.one:
                    inv[x] = y
                    break
        return tuple(inv)

    @property
    def minus_one(self) -> int:
        return self.neg[self.one]

    def mult_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.one:
            y = self.mul[y][x]
            k += 1
            if k > self.order:
                raise MalformedTable(f"element {x} has no finite multiplicative order")
        return k

    def element_by_label(self, name: str) -> int:
        if self.labels and name in self.labels:
            return self.labels.index(name)
        try:
            i = int(name)
        except ValueError:
            raise KeyError(name) from None
        if not 0 <= i < self.order:
            raise KeyError(name)
        return i

    def sum_array(self) -> np.ndarray:
        """Boolean array S with S[a, b, z] true iff z is in a + b."""
        n = self.order
        s = np.zeros((n, n, n), dtype=bool)
        for a in range(n):
            for b in range(n):
                for z in bits(self.sum[a][b]):
                    s[a, b, z] = True
        return s

    def relabel(self, perm: Sequence[int], labels=None) -> "FiniteHyperfield":
        """Copy with element ``x`` renamed to ``perm[x]``."""
        n = self.order
        inv = [0] * n
        for x, y in enumerate(perm):
            inv[y] = x
        neg = [perm[self.neg[inv[y]]] for y in range(n)]
        mul = [[perm[self.mul[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        sums = [[[perm[z] for z in bits(self.sum[inv[a]][inv[b]])] for b in range(n)]
                for a in range(n)]
        if labels is None and self.labels:
            labels = [self.labels[inv[y]] for y in range(n)]
        return FiniteHyperfield.from_sets(n, perm[self.zero], perm[self.one], neg, mul,
                                          sums, labels)

    def __repr__(self) -> str:
        return f"FiniteHyperfield(order={self.order})"


# -- structural validation ----------------------------------------------

def check_well_formed(h: FiniteHyperfield) -> None:
    """Raise MalformedTable unless every map is total and in range."""
    n = h.order
    if not isinstance(n, int) or n < 1:
        raise MalformedTable(f"order must be a positive integer, got {n!r}")
    for name, v in (("zero", h.zero), ("one", h.one)):
        if not (isinstance(v, int) and 0 <= v < n):
            raise MalformedTable(f"{name} id {v!r} out of range")
    if len(h.neg) != n or any(not (isinstance(x, int) and 0 <= x < n) for x in h.neg):
        raise MalformedTable("neg must be a total map on 0..order-1")
    if len(h.mul) != n or any(len(row) != n for row in h.mul):
        raise MalformedTable("mul must be an order x order table")
    if any(not (isinstance(x, int) and 0 <= x < n) for row in h.mul for x in row):
        raise MalformedTable("mul entry out of range")
    if len(h.sum) != n or any(len(row) != n for row in h.sum):
        raise MalformedTable("sum must be an order x order table")
    for a, row in enumerate(h.sum):
        for b, m in enumerate(row):
            if m <= 0 or m >> n:
                raise MalformedTable(f"sum({a},{b}) is empty or out of range")
    if h.labels is not None and len(h.labels) != n:
        raise MalformedTable("labels length differs from order")


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self) -> str:
        return f"({self.axiom}) witness {self.witness}"


class ValidationReport(list):
    """List of :class:`Violation`; empty means every axiom holds."""

    @property
    def ok(self) -> bool:
        return not self

    def axioms(self) -> list[str]:
        return [v.axiom for v in self]


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def validate_axioms(h: FiniteHyperfield) -> ValidationReport:
    """Check hyperfield axioms (I)(1)-(4), (II)-(V) on the full tables.

    One violation is reported per failing axiom, with the lexicographically
    first witnessing tuple.  Derived facts about ``neg`` are reported under
    the tag ``I.neg``; they cannot fail unless (I) fails too.
    """
    check_well_formed(h)
    n = h.order
    report = ValidationReport()
    S = h.sum_array()
    neg = np.array(h.neg)
    M = np.array(h.mul)
    zero, one = h.zero, h.one

    def flag(axiom, witness):
        if witness is not None:
            report.append(Violation(axiom, witness))

    # (I)(1) c in a+b  =>  a in c + (-b)
    T = S[:, neg, :].transpose(2, 1, 0)
    flag("I.1", _first(S & ~T))
    # (I)(2) a in b + 0 iff a == b
    flag("I.2", _first(S[:, zero, :] != np.eye(n, dtype=bool)))
    # (I)(3) associativity, one slice per left operand to bound memory
    Sf = S.astype(np.float32)
    flat_right = Sf.reshape(n, n * n)
    flat_left = Sf.reshape(n * n, n)
    wit = None
    for a in range(n):
        left = (Sf[a] @ flat_right).reshape(n, n, n) > 0   # ((a+b)+c)[b, c, z]
        right = (flat_left @ Sf[a]).reshape(n, n, n) > 0   # (a+(b+c))[b, c, z]
        w = _first(left != right)
        if w is not None:
            wit = (a, w[0], w[1])
            break
    flag("I.3", wit)
    # (I)(4)
    w = _first(S != S.transpose(1, 0, 2))
    flag("I.4", w[:2] if w else None)
    # derived: neg involutive, 0 in a+b iff b = -a
    inv_bad = [x for x in range(n) if h.neg[h.neg[x]] != x]
    if h.neg[zero] != zero:
        flag("I.neg", (zero,))
    elif inv_bad:
        flag("I.neg", (inv_bad[0],))
    else:
        expect = np.zeros((n, n), dtype=bool)
        expect[np.arange(n), neg] = True
        flag("I.neg", _first(S[:, :, zero] != expect))
    # (II) commutative monoid
    flag("II.1", _first(M[M, :] != M[:, M]))
    flag("II.2", _first(M != M.T))
    flag("II.3", _first(M[:, one] != np.arange(n)))
    # (III)
    flag("III", _first(M[:, zero] != zero))
    # (IV) a(b+c) subset of ab + ac
    wit = None
    flatS = S.reshape(n * n, n).astype(np.float32)
    for a in range(n):
        P = np.zeros((n, n), dtype=np.float32)
        P[np.arange(n), M[a]] = 1.0
        image = (flatS @ P).reshape(n, n, n) > 0
        target = S[M[a][:, None], M[a][None, :], :]
        w = _first(image & ~target)
        if w is not None:
            wit = (a, w[0], w[1])
            break
    flag("IV", wit)
    # (V)
    if one == zero:
        flag("V", (one,))
    else:
        for x in range(n):
            if x != zero and not any(h.mul[x][y] == one for y in range(n)):
                flag("V", (x,))
                break
    return report


# -- JSON ----------------------------------------------------------------

def to_dict(h: FiniteHyperfield) -> dict:
    d = {
        "order": h.order,
        "zero": h.zero,
        "one": h.one,
        "neg": list(h.neg),
        "mul": [list(r) for r in h.mul],
        "sum": [[bits(m) for m in r] for r in h.sum],
    }
    if h.labels is not None:
        d["labels"] = list(h.labels)
    return d


def from_dict(d: dict) -> FiniteHyperfield:
    try:
        n = d["order"]
        raw_sums = d["sum"]
        sums = []
        for row in raw_sums:
            out_row = []
            for s in row:
                if any((not isinstance(z, int)) or z < 0 or z >= n for z in s):
                    raise MalformedTable("sum entry out of range")
                out_row.append(s)
            sums.append(out_row)
        h = FiniteHyperfield.from_sets(n, d["zero"], d["one"], d["neg"], d["mul"], sums,
                                       d.get("labels"))
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"bad hyperfield JSON: {exc}") from None
    check_well_formed(h)
    return h


def dumps(h: FiniteHyperfield) -> str:
    return json.dumps(to_dict(h), ensure_ascii=False)


def loads(text: str) -> FiniteHyperfield:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"invalid JSON: {exc}") from None
    return from_dict(d)


def save(h: FiniteHyperfield, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(h))


def load(path) -> FiniteHyperfield:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
