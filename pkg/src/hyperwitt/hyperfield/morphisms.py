"""Morphism checks and isomorphism search between finite hyperfields."""

from __future__ import annotations

from collections import Counter
from typing import Iterator

from ..errors import NotAMorphism
from .constructions import (
    MorphismWitness,
    level,
    quotient,
    rigidity_report,
    subgroup,
)
from .table import FiniteHyperfield, bits

QUOTIENT_MORPHISM = "quotient_morphism"
GROUP_EXTENSION = "group_extension"
PLAIN = "plain"
INVALID = "invalid"


def morphism_violation(m: MorphismWitness):
    """First failed morphism law as ``(law, witness)``, or None."""
    s, t, f = m.source, m.target, m.map
    if len(f) != s.order or any(not (isinstance(y, int) and 0 <= y < t.order) for y in f):
        raise NotAMorphism("map is not a total function into the target", witness=None)
    if f[s.zero] != t.zero:
        return ("zero", (s.zero,))
    if f[s.one] != t.one:
        return ("one", (s.one,))
    for a in range(s.order):
        if f[s.neg[a]] != t.neg[f[a]]:
            return ("neg", (a,))
    for a in range(s.order):
        for b in range(s.order):
            if f[s.mul[a][b]] != t.mul[f[a]][f[b]]:
                return ("mul", (a, b))
    for a in range(s.order):
        for b in range(s.order):
            target = t.sum[f[a]][f[b]]
            for c in bits(s.sum[a][b]):
                if not target >> f[c] & 1:
                    return ("sum", (a, b, c))
    return None


def is_morphism(m: MorphismWitness) -> bool:
    return morphism_violation(m) is None


def require_morphism(m: MorphismWitness) -> None:
    v = morphism_violation(m)
    if v is not None:
        raise NotAMorphism(f"morphism law '{v[0]}' fails", witness=v)


def is_quotient_morphism(m: MorphismWitness) -> bool:
    """Surjective, and c' in a'+b' iff cs in at + bu for s,t,u in the kernel."""
    if not is_morphism(m):
        return False
    s, t, f = m.source, m.target, m.map
    if set(f) != set(range(t.order)):
        return False
    kernel = [x for x in s.nonzero if f[x] == t.one]
    q, proj = quotient(s, subgroup(s, kernel))
    induced = [0] * q.order
    for x in range(s.order):
        induced[proj.map[x]] = f[x]
    if len(set(induced)) != q.order:
        return False
    return all(t.sum[induced[a]][induced[b]] == _image_mask(q.sum[a][b], induced)
               for a in range(q.order) for b in range(q.order))


def _image_mask(mask, f):
    out = 0
    for z in bits(mask):
        out |= 1 << f[z]
    return out


def is_group_extension(m: MorphismWitness) -> bool:
    """Injective, every x outside the image rigid, and f(1+y) = 1+f(y) for y != -1."""
    if not is_morphism(m):
        return False
    s, t, f = m.source, m.target, m.map
    if len(set(f)) != s.order:
        return False
    image = set(f)
    rigid = rigidity_report(t).rigid
    if any(x not in rigid for x in t.nonzero if x not in image):
        return False
    for y in range(s.order):
        if y == s.minus_one:
            continue
        if _image_mask(s.sum[s.one][y], f) != t.sum[t.one][f[y]]:
            return False
    return True


def check_morphism_kind(m: MorphismWitness) -> str:
    """Classify as group_extension, quotient_morphism, plain or invalid.

    An isomorphism satisfies both definitions; it is reported as a group
    extension.  Maps that break a morphism law are ``invalid``; maps that are
    not even total functions raise NotAMorphism.
    """
    if morphism_violation(m) is not None:
        return INVALID
    if is_group_extension(m):
        return GROUP_EXTENSION
    if is_quotient_morphism(m):
        return QUOTIENT_MORPHISM
    return PLAIN


def is_isomorphism(m: MorphismWitness) -> bool:
    s, t, f = m.source, m.target, m.map
    if s.order != t.order or len(set(f)) != s.order:
        return False
    return is_morphism(m) and is_morphism(m.inverse())


# -- fingerprints --------------------------------------------------------------

def element_fingerprint(h: FiniteHyperfield, x: int, rigid=None) -> tuple:
    if rigid is None:
        rigid = rigidity_report(h).rigid
    one = h.one
    return (
        h.mult_order(x),
        x == h.minus_one,
        bin(h.sum[one][x]).count("1"),
        bin(h.sum[x][x]).count("1"),
        bool(h.sum[one][x] >> h.zero & 1),
        x in rigid,
        h.neg[x] == x,
    )


def fingerprint(h: FiniteHyperfield) -> dict:
    """Isomorphism invariants; equal for isomorphic hyperfields."""
    rigid = rigidity_report(h).rigid
    vs_sizes = Counter(bin(h.sum[a][b] & ~(1 << h.zero)).count("1")
                       for a in h.nonzero for b in h.nonzero)
    return {
        "order": h.order,
        "level": level(h),
        "minus_one_is_one": h.minus_one == h.one,
        "rigid_count": len(rigid),
        "value_set_sizes": sorted(vs_sizes.items()),
        "element_orders": sorted(Counter(h.mult_order(x) for x in h.nonzero).items()),
        "element_fingerprints": sorted(Counter(element_fingerprint(h, x, rigid)
                                               for x in h.nonzero).items()),
    }


def fingerprint_diff(h1: FiniteHyperfield, h2: FiniteHyperfield) -> dict:
    f1, f2 = fingerprint(h1), fingerprint(h2)
    return {k: (f1[k], f2[k]) for k in f1 if f1[k] != f2[k]}


# -- isomorphism search ----------------------------------------------------------

def _generators(h: FiniteHyperfield) -> list[int]:
    """Greedy generating set of h*, preferring high-order elements, index order on ties."""
    gens: list[int] = []
    members = {h.one}
    candidates = sorted(h.nonzero, key=lambda x: (-h.mult_order(x), x))
    for g in candidates:
        if g in members:
            continue
        gens.append(g)
        frontier = list(members)
        while frontier:
            x = frontier.pop()
            for y in (h.mul[x][g] for g in gens):
                if y not in members:
                    members.add(y)
                    frontier.append(y)
    return gens


def _partial_ok(h1, h2, phi: dict, inv: dict) -> bool:
    one1, one2 = h1.one, h2.one
    for x, fx in phi.items():
        nx = h1.neg[x]
        if nx in phi and phi[nx] != h2.neg[fx]:
            return False
        s1, s2 = h1.sum[one1][x], h2.sum[one2][fx]
        if (s1 >> h1.zero & 1) != (s2 >> h2.zero & 1):
            return False
        for c in bits(s1):
            if c != h1.zero and c in phi and not s2 >> phi[c] & 1:
                return False
        for c in bits(s2):
            if c != h2.zero and c in inv and not s1 >> inv[c] & 1:
                return False
    return True


def isomorphisms(h1: FiniteHyperfield, h2: FiniteHyperfield) -> Iterator[MorphismWitness]:
    """All isomorphisms h1 -> h2 in a deterministic order.

    Backtracks over images of a generating set of h1*, extending each partial
    assignment multiplicatively and pruning on element fingerprints, the sign
    map and the sums 1 + x.
    """
    if h1.order != h2.order:
        return
    r1, r2 = rigidity_report(h1).rigid, rigidity_report(h2).rigid
    fp1 = {x: element_fingerprint(h1, x, r1) for x in h1.nonzero}
    fp2 = {x: element_fingerprint(h2, x, r2) for x in h2.nonzero}
    if sorted(fp1.values()) != sorted(fp2.values()):
        return
    gens = _generators(h1)
    start = {h1.one: h2.one}

    def rec(i, phi, used):
        if i == len(gens):
            if len(phi) != len(h1.nonzero):
                return
            full = [0] * h1.order
            full[h1.zero] = h2.zero
            for x, fx in phi.items():
                full[x] = fx
            m = MorphismWitness(h1, h2, tuple(full))
            if is_isomorphism(m):
                yield m
            return
        g = gens[i]
        for y in h2.nonzero:
            if fp2[y] != fp1[g]:
                continue
            ext = _extend_all(h1, h2, phi, used, gens[: i + 1], g, y)
            if ext is None:
                continue
            nphi, nused = ext
            inv = {v: k for k, v in nphi.items()}
            if not _partial_ok(h1, h2, nphi, inv):
                continue
            yield from rec(i + 1, nphi, nused)

    yield from rec(0, start, {h2.one})


def _extend_all(h1, h2, phi, used, gens_so_far, g, y):
    if g in phi:
        return (phi, used) if phi[g] == y else None
    if y in used:
        return None
    phi = dict(phi)
    used = set(used)
    phi[g] = y
    used.add(y)
    pairs = [(a, phi[a]) for a in gens_so_far]
    frontier = list(phi.items())
    while frontier:
        x, fx = frontier.pop()
        for a, b in pairs:
            nx, nfx = h1.mul[x][a], h2.mul[fx][b]
            if nx in phi:
                if phi[nx] != nfx:
                    return None
            else:
                if nfx in used:
                    return None
                phi[nx] = nfx
                used.add(nfx)
                frontier.append((nx, nfx))
    return phi, used


def find_isomorphism(h1: FiniteHyperfield, h2: FiniteHyperfield) -> MorphismWitness | None:
    """First isomorphism h1 -> h2, or None when fingerprints or search rule it out."""
    if fingerprint(h1) != fingerprint(h2):
        return None
    return next(isomorphisms(h1, h2), None)


def automorphisms(h: FiniteHyperfield) -> list[MorphismWitness]:
    return list(isomorphisms(h, h))
