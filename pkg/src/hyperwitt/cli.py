"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (reported as an error object),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import functools
import json
import math
import sys

from . import valuation as V
from .enumerate import enumerate_census
from .errors import HyperWittError, NotExtensionStructured, NotIso, ParseError, UnsupportedField
from .finite_field import factor_prime_power, field
from .funcfield import char2, composed
from .funcfield import squareclass as SC
from .funcfield.poly import Poly, factorize
from .funcfield.ratfunc import parse_ratfunc
from .hyperfield import (
    find_isomorphism,
    fingerprint_diff,
    is_exceptional,
    level,
    rigidity_report,
    validate_axioms,
)
from .hyperfield.table import FiniteHyperfield, load, to_dict
from .laurent import DEFAULT_PRECISION, parse_terms
from .quadratic import build_from_descriptor, parse_field
from .quadratic.builders import corpus

DEFAULT_SEED = 20240601


class DomainFailure(HyperWittError):
    code = "invalid_hyperfield"


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(y) for y in x), key=str)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def emit_hyperfield(h: FiniteHyperfield) -> dict:
    """JSON form of h, refusing anything that fails the axioms."""
    report = validate_axioms(h)
    if not report.ok:
        raise DomainFailure(f"refusing to emit a table failing {report.axioms()}")
    return to_dict(h)


@functools.lru_cache(maxsize=1)
def _corpus():
    return corpus()


def _hyperfield_named(name: str) -> FiniteHyperfield:
    built = _corpus()
    if name in built:
        return built[name]
    return build_from_descriptor(name)


def _table_text(h: FiniteHyperfield) -> str:
    names = [h.label(x) for x in range(h.order)]
    width = max(len(n) for n in names)
    lines = []
    for a in h.nonzero:
        for b in h.nonzero:
            if b < a:
                continue
            s = "{" + ", ".join(h.label(z) for z in sorted(h.add(a, b))) + "}"
            lines.append(f"  {names[a]:>{width}} + {names[b]:<{width}} = {s}")
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------------------

def cmd_qh(args) -> tuple[dict, str]:
    h = _hyperfield_named(args.field)
    rig = rigidity_report(h)
    data = {"field": args.field, "order": h.order, "nonzero": len(h.nonzero),
            "level": level(h), "exceptional": is_exceptional(h),
            "rigid": [h.label(x) for x in sorted(rig.rigid)],
            "basic": [h.label(x) for x in sorted(rig.basic)],
            "hyperfield": emit_hyperfield(h)}
    text = (f"Q({args.field}): {len(h.nonzero)} nonzero classes, level {data['level']}\n"
            f"rigid: {data['rigid']}  basic: {data['basic']}\n" + _table_text(h))
    return data, text


def cmd_axioms(args) -> tuple[dict, str]:
    h = load(args.file) if args.file else _hyperfield_named(args.field)
    report = validate_axioms(h)
    data = {"ok": report.ok, "failed": report.axioms(),
            "violations": [str(v) for v in report]}
    text = "all axioms hold" if report.ok else "\n".join(data["violations"])
    return data, text


def cmd_witteq(args) -> tuple[dict, str]:
    h1, h2 = _hyperfield_named(args.first), _hyperfield_named(args.second)
    for h in (h1, h2):
        emit_hyperfield(h)
    iso = find_isomorphism(h1, h2)
    if iso is not None:
        wmap = {h1.label(x): h2.label(iso.map[x]) for x in range(h1.order)}
        data = {"verdict": "equivalent", "witness": wmap}
        text = "equivalent\n" + "\n".join(f"  {a} -> {b}" for a, b in wmap.items())
    else:
        diff = fingerprint_diff(h1, h2)
        data = {"verdict": "not equivalent", "fingerprint_diff": diff}
        text = "not equivalent\n" + "\n".join(f"  {k}: {a} vs {b}" for k, (a, b) in diff.items())
    return data, text


def cmd_classify(args) -> tuple[dict, str]:
    v = V.descriptor_from_dict({"gamma": args.gamma, "residue": args.residue,
                                "restriction": args.restriction, "constants": args.constants,
                                "two_divisible": args.two_divisible})
    case, asserted = V.classify_case(v)
    computed = V.local_indices(v)
    mu = V.mu_membership(v)
    data = {"descriptor": v.to_dict(), "case": case, "tag": f"case {case}",
            "asserted": asserted.to_dict(), "computed": computed.to_dict(),
            "consistent": V.profile_matches(asserted, computed), "mu": mu,
            "abhyankar": V.abhyankar_status(v)}
    text = (f"case {case}: indices {computed.to_dict()['idx_value']}, "
            f"{computed.to_dict()['idx_unit']}; basic part {computed.to_dict()['basic']}; "
            f"mu: {mu or '-'}; {data['abhyankar']}")
    return data, text


def cmd_mu(args) -> tuple[dict, str]:
    k = parse_field(args.field)
    expected = V.mu_nonempty(k)
    found = V.mu_from_generator(k)
    data = {"field": str(k), "nonempty": sorted(expected), "from_generator": sorted(found),
            "agree": expected == found, "conditions": V.mu_nonempty_union_conditions(k)}
    text = f"{k}: nonempty {sorted(expected) or '-'} (generator agrees: {expected == found})"
    return data, text


def cmd_transport(args) -> tuple[dict, str]:
    h1, h2 = _hyperfield_named(args.first), _hyperfield_named(args.second)
    sub = V.canonical_subgroups(args.first, h1)
    if sub is None:
        raise NotExtensionStructured(f"{args.first} has no canonical unit subgroup here")
    t1, u1 = sub
    iso = find_isomorphism(h1, h2)
    if iso is None:
        raise NotIso(f"{args.first} and {args.second} are not isomorphic")
    report = V.transport_check(iso, t1, u1)
    data = {"first": args.first, "second": args.second, **report.to_dict(), "ok": report.ok}
    text = (f"d1={report.d1} d2={report.d2} d3={report.d3} "
            f"index {report.idx1} <= {report.idx2}: {report.index_inequality}")
    return data, text


def _finite_field_arg(text: str):
    name = text[1:] if text.upper().startswith("F") else text
    try:
        q = int(name)
    except ValueError:
        raise ParseError(f"expected a finite field such as F3, got {text!r}") from None
    if factor_prime_power(q) is None:
        raise UnsupportedField(f"{q} is not a prime power")
    return field(q)


def _place(F, text: str) -> SC.Place:
    if text.strip().lower() in ("inf", "infinity"):
        return SC.Place.infinite()
    f = parse_ratfunc(F, text)
    if not f.den.is_one():
        raise ParseError("a place is given by a monic irreducible polynomial")
    return SC.Place.finite(f.num)


def _composed_arg(F, text: str, precision: int):
    """'k: c@e, c@e; k: ...' -> {t power: {s power: coefficient}}."""
    out: dict[int, dict[int, int]] = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        k, sep, body = chunk.partition(":")
        if not sep:
            raise ParseError(f"expected 'power: coefficients', got {chunk!r}")
        series = parse_terms(F, body, precision)
        out[int(k)] = dict((e, c) for e, c in series.terms)
    return out


def cmd_ff(args) -> tuple[dict, str]:
    op = args.ff_op
    if op == "char2-dimension":
        dim = char2.char2_dimension(args.field, seed=args.seed)
        data = {"field": args.field, "dimension": dim.dimension, "basis": list(dim.basis),
                "samples_checked": dim.samples_checked}
        return data, f"[K:K^2] = {dim.dimension}, basis {{{', '.join(dim.basis)}}}"
    if op == "composed":
        F = field(args.p)
        num = _composed_arg(F, args.num, args.precision)
        den = _composed_arg(F, args.den, args.precision) if args.den else None
        f = composed.ComposedElement.from_terms(F, num, den, args.precision)
        val, lead = composed.lex_value(f, args.precision)
        cls = composed.composed_class(f, args.precision)
        data = {"value": [val.t_component, val.s_component], "class": [list(cls[0]), cls[1]],
                "tower_agrees": composed.tower_class(f) == cls, "precision": args.precision}
        return data, f"value {val.key()}, class {cls[0]}, residue {'square' if cls[1] else 'nonsquare'}"
    F = _finite_field_arg(args.field)
    if op == "represents":
        z, x = parse_ratfunc(F, args.z), parse_ratfunc(F, args.x)
        if F.p == 2:
            sol = char2.char2_solve(z, x)
            ok = char2.char2_represents(z, x)
            data = {"represents": ok, "a": sol and sol[0].to_str(), "b": sol and sol[1].to_str()}
            return data, f"{'yes' if ok else 'no'}"
        ok, where = SC.certify_represents(z, x, args.seed)
        data = {"represents": ok, "obstruction": None if where is None else str(where)}
        return data, "yes" if ok else f"no (obstructed at {where})"
    if op == "square-class":
        f = parse_ratfunc(F, args.f)
        c = SC.square_class(f, args.seed)
        data = {"constant_square": c.constant_square,
                "odd_part": [Poly(F, p).to_str() for p in c.odd_part]}
        return data, c.describe(F)
    if op == "factor":
        f = parse_ratfunc(F, args.f)
        if not f.den.is_one():
            raise ParseError("factor takes a polynomial")
        fac = factorize(f.num, args.seed)
        data = {"unit": F.label(fac.unit),
                "factors": [[g.to_str(), e] for g, e in fac.factors]}
        text = " * ".join([F.label(fac.unit)] + [f"({g.to_str()})^{e}" for g, e in fac.factors])
        return data, text
    if op == "local-class":
        f = parse_ratfunc(F, args.f)
        v = _place(F, args.place)
        parity, sq = SC.local_class(f, v)
        data = {"place": str(v), "parity": parity, "residue_square": sq}
        return data, f"at {v}: parity {parity}, residue {'square' if sq else 'nonsquare'}"
    if op == "witness":
        x = parse_ratfunc(F, args.x)
        w = SC.non_rigidity_witness(x, args.seed)
        data = {"x": w.x.to_str(), "y": w.y.to_str(), "a": w.a and w.a.to_str(),
                "places": [str(p) for p in w.places], "represented": w.represented,
                "not_square": w.not_square, "not_x_class": w.not_x_class, "ok": w.ok}
        return data, f"y = {data['y']} (certificates {'pass' if w.ok else 'FAIL'})"
    raise ParseError(f"unknown ff operation {op!r}")


def cmd_enumerate(args) -> tuple[dict, str]:
    rows = enumerate_census(args.max_nonzero, args.budget)
    for row in rows:
        for h in row.tables:
            emit_hyperfield(h)
    data = {"label": "abstract count", "rows": [r.to_dict(args.tables) for r in rows]}
    lines = []
    for r in rows:
        status = {True: "matches", False: "MISMATCH (reported)", None: "no reference"}[r.matches]
        lines.append(f"q={r.q}: {r.count} abstract classes, {len(r.subgroup_tables)} with "
                     f"subgroup value sets; reference {r.expected}: {status}")
    return data, "\n".join(lines)


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="also write the JSON report here")

    p = argparse.ArgumentParser(prog="hyperwitt", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("qh", parents=[common], help="build and print Q(K)")
    s.add_argument("field")
    s.set_defaults(func=cmd_qh)

    s = sub.add_parser("axioms", parents=[common], help="validate a hyperfield")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("field", nargs="?")
    g.add_argument("--file")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("witteq", parents=[common], help="decide Witt equivalence")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_witteq)

    s = sub.add_parser("classify", parents=[common], help="classify a valuation descriptor")
    s.add_argument("--gamma", required=True, choices=V.VALUE_GROUPS)
    s.add_argument("--residue", required=True)
    s.add_argument("--restriction", default=V.TRIVIAL, choices=V.RESTRICTIONS)
    s.add_argument("--constants", required=True)
    s.add_argument("--two-divisible", dest="two_divisible", default=None,
                   type=lambda t: t.lower() in ("1", "true", "yes"))
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("mu", parents=[common], help="which mu sets are nonempty over k")
    s.add_argument("field")
    s.set_defaults(func=cmd_mu)

    s = sub.add_parser("transport", parents=[common], help="check transport diagrams")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_transport)

    s = sub.add_parser("ff", parents=[common], help="function field computations")
    ff = s.add_subparsers(dest="ff_op", required=True)
    o = ff.add_parser("represents", parents=[common])
    o.add_argument("--field", required=True)
    o.add_argument("--z", required=True)
    o.add_argument("--x", required=True)
    for name in ("square-class", "factor"):
        o = ff.add_parser(name, parents=[common])
        o.add_argument("--field", required=True)
        o.add_argument("--f", required=True)
    o = ff.add_parser("local-class", parents=[common])
    o.add_argument("--field", required=True)
    o.add_argument("--f", required=True)
    o.add_argument("--place", required=True, help="monic irreducible polynomial or 'inf'")
    o = ff.add_parser("witness", parents=[common])
    o.add_argument("--field", required=True)
    o.add_argument("--x", required=True)
    o = ff.add_parser("composed", parents=[common])
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--num", required=True, help="'k: c@e, ...; k: ...' with k a power of t")
    o.add_argument("--den", default=None)
    o.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    o = ff.add_parser("char2-dimension", parents=[common])
    o.add_argument("--field", required=True)
    s.set_defaults(func=cmd_ff)

    s = sub.add_parser("enumerate", parents=[common], help="census of small hyperfields")
    s.add_argument("--max-nonzero", dest="max_nonzero", type=int, default=4)
    s.add_argument("--budget", type=int, default=2_000_000)
    s.add_argument("--tables", action="store_true", help="attach every canonical table")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data, text = args.func(args)
    except (HyperWittError, ValueError, ZeroDivisionError) as exc:
        err = exc.to_dict() if isinstance(exc, HyperWittError) else \
            {"error": "invalid_input", "message": str(exc)}
        if args.format == "json":
            print(json.dumps(_jsonable(err)))
        else:
            print(f"error [{err['error']}]: {err['message']}", file=sys.stderr)
        return 1
    payload = _jsonable({"command": args.command, "seed": args.seed, **data})
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    print(json.dumps(payload, indent=2) if args.format == "json" else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
