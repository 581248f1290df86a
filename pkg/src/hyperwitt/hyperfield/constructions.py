"""Prime addition, quotients by multiplicative subgroups, value sets, rigidity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from ..errors import NotASubgroup, ZeroArgument
from .table import FiniteHyperfield, bits, mask_of


@dataclass(frozen=True)
class SubgroupWitness:
    parent: FiniteHyperfield
    members: frozenset[int]

    @property
    def symmetric(self) -> bool:
        """True iff the subgroup is closed under ``neg`` (i.e. contains -1)."""
        return all(self.parent.neg[x] in self.members for x in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))


@dataclass(frozen=True)
class MorphismWitness:
    source: FiniteHyperfield
    target: FiniteHyperfield
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self, xs: Iterable[int]) -> frozenset[int]:
        return frozenset(self.map[x] for x in xs)

    def compose(self, other: "MorphismWitness") -> "MorphismWitness":
        """``other`` after ``self``."""
        return MorphismWitness(self.source, other.target,
                               tuple(other.map[y] for y in self.map))

    def inverse(self) -> "MorphismWitness":
        inv = [0] * self.target.order
        for x, y in enumerate(self.map):
            inv[y] = x
        return MorphismWitness(self.target, self.source, tuple(inv))


def subgroup(h: FiniteHyperfield, members: Iterable[int]) -> SubgroupWitness:
    """Validate ``members`` as a subgroup of h* and wrap it."""
    ms = frozenset(members)
    if h.one not in ms:
        raise NotASubgroup("subgroup must contain 1")
    if h.zero in ms:
        raise NotASubgroup("subgroup of H* cannot contain 0")
    for x in ms:
        if not 0 <= x < h.order:
            raise NotASubgroup(f"element {x} out of range")
    for x in ms:
        if h.inverse[x] not in ms:
            raise NotASubgroup(f"not closed under inverse at {x}")
        for y in ms:
            if h.mul[x][y] not in ms:
                raise NotASubgroup(f"not closed under multiplication at ({x},{y})")
    return SubgroupWitness(h, ms)


def generated_subgroup(h: FiniteHyperfield, gens: Iterable[int]) -> SubgroupWitness:
    members = {h.one}
    frontier = [h.one]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = h.mul[x][g]
            if y not in members:
                members.add(y)
                frontier.append(y)
    return subgroup(h, members)


def trivial_subgroup(h: FiniteHyperfield) -> SubgroupWitness:
    return SubgroupWitness(h, frozenset({h.one}))


def whole_group(h: FiniteHyperfield) -> SubgroupWitness:
    return SubgroupWitness(h, frozenset(h.nonzero))


# -- prime -----------------------------------------------------------------

def prime(h: FiniteHyperfield) -> FiniteHyperfield:
    """Return H' (prime addition): add {a, b} to a+b, and all of H when b = -a."""
    n = h.order
    sums = []
    for a in range(n):
        row = []
        for b in range(n):
            m = h.sum[a][b]
            if a != h.zero and b != h.zero:
                m = h.full_mask if b == h.neg[a] else m | (1 << a) | (1 << b)
            row.append(m)
        sums.append(tuple(row))
    return FiniteHyperfield(n, h.zero, h.one, h.neg, h.mul, tuple(sums), h.labels)


def is_prime_type(h: FiniteHyperfield) -> bool:
    return prime(h) == h


# -- quotient --------------------------------------------------------------

def quotient(h: FiniteHyperfield, t) -> tuple[FiniteHyperfield, MorphismWitness]:
    """Quotient H/_m T and the projection H -> H/_m T.

    Class ids: 0 is the zero class, 1 the class of 1, the rest ordered by least
    representative.  The sum relation is found by running over all
    representatives of both summand classes.
    """
    if not isinstance(t, SubgroupWitness):
        t = subgroup(h, t)
    elif t.parent != h:
        t = subgroup(h, t.members)
    tm = sorted(t.members)
    cls = [-1] * h.order
    reps: list[int] = []
    for x in [h.zero, h.one] + [y for y in range(h.order) if y not in (h.zero, h.one)]:
        if cls[x] != -1:
            continue
        cid = len(reps)
        reps.append(x)
        if x == h.zero:
            cls[x] = cid
        else:
            for s in tm:
                cls[h.mul[x][s]] = cid
    k = len(reps)
    members = [[] for _ in range(k)]
    for x in range(h.order):
        members[cls[x]].append(x)

    def project(mask):
        return mask_of(cls[z] for z in bits(mask))

    sums = []
    for i in range(k):
        row = []
        for j in range(k):
            m = 0
            for a in members[i]:
                for b in members[j]:
                    m |= h.sum[a][b]
            row.append(project(m))
        sums.append(row)
    neg = [cls[h.neg[r]] for r in reps]
    mul = [[cls[h.mul[r][s]] for s in reps] for r in reps]
    labels = [h.label(r) for r in reps]
    q = FiniteHyperfield.from_sets(k, 0, 1 if k > 1 else 0, neg, mul,
                                   [[bits(m) for m in row] for row in sums], labels)
    return q, MorphismWitness(h, q, tuple(cls))


# -- binary forms ------------------------------------------------------------

def value_set(h: FiniteHyperfield, a: int, b: int) -> frozenset[int]:
    """D<a, b>: the nonzero part of a + b."""
    if a == h.zero or b == h.zero:
        raise ZeroArgument("value sets are defined for nonzero entries")
    return frozenset(z for z in bits(h.sum[a][b]) if z != h.zero)


def forms_equivalent(h: FiniteHyperfield, a: int, b: int, c: int, d: int) -> bool:
    """<a, b> ~ <c, d>  iff  c in D<a, b> and ab = cd."""
    if h.zero in (a, b, c, d):
        raise ZeroArgument("binary forms have nonzero entries")
    return c in value_set(h, a, b) and h.mul[a][b] == h.mul[c][d]


# -- rigidity ----------------------------------------------------------------

@dataclass(frozen=True)
class RigidityReport:
    rigid: frozenset[int]
    basic: frozenset[int]
    exactly_rigid: frozenset[int]   # 1 + x == {1, x}, recorded separately from the subset test


def _rigidity_in(h: FiniteHyperfield):
    rigid, exact = set(), set()
    for x in h.nonzero:
        allowed = (1 << h.one) | (1 << x)
        s = h.sum[h.one][x]
        if s & ~allowed == 0:
            rigid.add(x)
            if s == allowed:
                exact.add(x)
    basic = {x for x in h.nonzero if x not in rigid or h.neg[x] not in rigid}
    return rigid, basic, exact


def rigidity_report(h: FiniteHyperfield, t=None) -> RigidityReport:
    """Rigid elements and basic part, computed in h or in h/_m t.

    With ``t`` given the sets are returned as unions of T-cosets inside h:
    x is T-rigid iff its class is rigid in the quotient.
    """
    if t is None:
        r, b, e = _rigidity_in(h)
        return RigidityReport(frozenset(r), frozenset(b), frozenset(e))
    q, proj = quotient(h, t)
    r, b, e = _rigidity_in(q)
    lift = lambda s: frozenset(x for x in h.nonzero if proj.map[x] in s)  # noqa: E731
    return RigidityReport(lift(r), lift(b), lift(e))


def is_exceptional(h: FiniteHyperfield) -> bool:
    """T = {1} in h is exceptional: B = {1, -1} and (-1 = 1 or 1 + 1 = {1})."""
    basic = rigidity_report(h).basic
    one, m1 = h.one, h.minus_one
    if basic != {one, m1}:
        return False
    return m1 == one or h.sum[one][one] == 1 << one


# -- level -------------------------------------------------------------------

def level(h: FiniteHyperfield) -> int | float:
    """Least n with -1 in the n-fold sum 1 + ... + 1; ``math.inf`` if none.

    Iteration is capped at order**2 sums.
    """
    target = h.minus_one
    cur = 1 << h.one
    seen = set()
    for n in range(1, h.order ** 2 + 1):
        if cur >> target & 1:
            return n
        if cur in seen:
            break
        seen.add(cur)
        nxt = 0
        for x in bits(cur):
            nxt |= h.sum[x][h.one]
        cur = nxt
    return math.inf
