"""Census of abstract prime-type hyperfields with small multiplicative group.

The multiplicative group is taken to be elementary abelian of order q = 2^r,
as it is for every quadratic hyperfield.  Group elements are bit vectors
0..q-1 under xor, and the addition is determined by the value sets
D(x) = 1 + x for x != -1; everything else follows from a + b = a(1 + b/a).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .hyperfield.table import FiniteHyperfield, validate_axioms

KNOWN_COUNTS = {1: 1, 2: 3, 4: 6, 8: 17}
DEFAULT_BUDGET = 2_000_000


def _rank(q: int) -> int:
    r = q.bit_length() - 1
    if q < 1 or 1 << r != q:
        raise ValueError(f"group order {q} is not a power of 2")
    return r


def build(q: int, minus_one: int, D: dict[int, int]) -> FiniteHyperfield:
    """Table with element 0 = zero and element g+1 = group element g."""
    n = q + 1
    full = (1 << n) - 1
    mul = [[0] * n for _ in range(n)]
    sums = [[0] * n for _ in range(n)]
    neg = [0] * n
    for a in range(n):
        for b in range(n):
            mul[a][b] = 0 if a == 0 or b == 0 else ((a - 1) ^ (b - 1)) + 1
    for g in range(q):
        neg[g + 1] = (g ^ minus_one) + 1
    for a in range(n):
        for b in range(n):
            if a == 0:
                sums[a][b] = 1 << b
            elif b == 0:
                sums[a][b] = 1 << a
            else:
                ga, gb = a - 1, b - 1
                x = ga ^ gb
                if x == minus_one:
                    sums[a][b] = full
                else:
                    m = 0
                    for z in range(q):
                        if D[x] >> z & 1:
                            m |= 1 << ((z ^ ga) + 1)
                    sums[a][b] = m
    return FiniteHyperfield(n, 0, 1, tuple(neg), tuple(map(tuple, mul)),
                            tuple(map(tuple, sums)))


def _gl2(r: int):
    """All invertible r x r matrices over F_2, as images of the basis vectors."""
    q = 1 << r
    for images in itertools.product(range(1, q), repeat=r):
        span = {0}
        for v in images:
            if v in span:
                break
            span |= {s ^ v for s in span}
        else:
            yield images


def _apply(images, g: int) -> int:
    out = 0
    i = 0
    while g:
        if g & 1:
            out ^= images[i]
        g >>= 1
        i += 1
    return out


@dataclass
class CanonicalForm:
    key: tuple
    minus_one: int
    D: dict[int, int]


def canonical_key(q: int, minus_one: int, D: dict[int, int], gl=None) -> tuple:
    """Lexicographically least (minus_one, D-table) over all automorphisms of the group."""
    r = _rank(q)
    best = None
    for images in gl if gl is not None else _gl2(r):
        perm = [_apply(images, g) for g in range(q)]
        inv = [0] * q
        for g, h in enumerate(perm):
            inv[h] = g
        m = perm[minus_one]
        rows = []
        for x in range(q):
            if x == m:
                rows.append(-1)
                continue
            old = D[inv[x]]
            rows.append(sum(1 << perm[z] for z in range(q) if old >> z & 1))
        key = (m, tuple(rows))
        if best is None or key < best:
            best = key
    return best


def value_sets_are_subgroups(h: FiniteHyperfield) -> bool:
    """Whether every 1 + x with x != -1 is closed under multiplication.

    Value sets of binary forms over a field are norm groups, so this holds for
    every quadratic hyperfield but is not implied by the hyperfield axioms.
    """
    m1 = h.minus_one
    for x in h.nonzero:
        if x == m1:
            continue
        d = [z for z in h.nonzero if h.in_sum(z, h.one, x)]
        ds = set(d)
        if any(h.mul[a][b] not in ds for a in d for b in d):
            return False
    return True


@dataclass
class CensusRow:
    q: int
    count: int
    expected: int | None
    tables: list[FiniteHyperfield] = field(default_factory=list)
    nodes: int = 0

    @property
    def matches(self) -> bool | None:
        return None if self.expected is None else self.count == self.expected

    @property
    def subgroup_tables(self) -> list[FiniteHyperfield]:
        return [h for h in self.tables if value_sets_are_subgroups(h)]

    @property
    def divergent_tables(self) -> list[FiniteHyperfield]:
        """Tables whose value sets are not all subgroups, hence not of the form Q(K)."""
        return [h for h in self.tables if not value_sets_are_subgroups(h)]

    def to_dict(self, with_tables: bool = False) -> dict:
        from .hyperfield.table import to_dict
        d = {"q": self.q, "count": self.count, "expected": self.expected,
             "matches": self.matches, "subgroup_count": len(self.subgroup_tables),
             "nodes": self.nodes}
        if with_tables or self.matches is False:
            d["divergent_tables"] = [to_dict(h) for h in self.divergent_tables]
        if with_tables:
            d["tables"] = [to_dict(h) for h in self.tables]
        return d


def _search(q: int, minus_one: int, budget: list[int]):
    """Yield value-set assignments D satisfying the local constraints."""
    xs = [x for x in range(q) if x != minus_one]
    D: dict[int, int] = {}

    def consistent(x: int, mask: int) -> bool:
        for z in range(q):
            inside = mask >> z & 1
            # D(x) = x D(x): z in D(x) iff xz in D(x)
            if inside != (mask >> (x ^ z) & 1):
                return False
            if inside:
                # z in 1 + x implies z in 1 + (-xz)
                y = minus_one ^ x ^ z
                if y == minus_one:
                    continue
                if y == x:
                    continue
                if y in D and not D[y] >> z & 1:
                    return False
            # converse direction for already assigned y with x = -yz
        for y, my in D.items():
            for z in range(q):
                if my >> z & 1 and (minus_one ^ y ^ z) == x and not mask >> z & 1:
                    return False
        return True

    def rec(i: int):
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded(f"enumeration for q={q} exceeded its node budget")
        if i == len(xs):
            yield dict(D)
            return
        x = xs[i]
        base = 1 << 0 | 1 << x
        rest = [z for z in range(q) if z not in (0, x)]
        for extra in range(1 << len(rest)):
            mask = base
            for j, z in enumerate(rest):
                if extra >> j & 1:
                    mask |= 1 << z
            if consistent(x, mask):
                D[x] = mask
                yield from rec(i + 1)
                del D[x]

    yield from rec(0)


def census_for(q: int, budget: int = DEFAULT_BUDGET) -> CensusRow:
    r = _rank(q)
    gl = list(_gl2(r))
    seen: dict[tuple, FiniteHyperfield] = {}
    rejected: set[tuple] = set()
    left = [budget]
    # -1 is either 1 or a non-identity element; all non-identity choices are conjugate
    for minus_one in ((0,) if q == 1 else (0, 1)):
        for D in _search(q, minus_one, left):
            key = canonical_key(q, minus_one, D, gl)
            if key in seen or key in rejected:
                continue
            h = build(q, minus_one, D)
            if validate_axioms(h).ok:
                seen[key] = h
            else:
                rejected.add(key)
    tables = [seen[k] for k in sorted(seen)]
    return CensusRow(q, len(tables), KNOWN_COUNTS.get(q), tables, budget - left[0])


def enumerate_census(max_nonzero: int = 4, budget: int = DEFAULT_BUDGET) -> list[CensusRow]:
    """Counts of isomorphism classes for q = 1, 2, 4, ... up to ``max_nonzero``."""
    if max_nonzero > 8:
        raise BudgetExceeded("max_nonzero is capped at 8")
    rows = []
    q = 1
    while q <= max_nonzero:
        rows.append(census_for(q, budget))
        q *= 2
    return rows
