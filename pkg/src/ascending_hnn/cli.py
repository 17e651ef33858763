"""Command line interface.

Every subcommand takes ``--group thm21|br|matrix:a,b,c,d`` and ``--json``.
Exit status: 0 on success, 2 for parse/usage errors, 1 when the computation
itself refuses (bad modulus, non-strict input, ...).  Arguments that name
words accept ``@file`` to read one word per line.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import bsdetect, hnn, quotients, rep, subgroups
from .exactalg import IntMatrix, laurent_degree, parse_laurent, format_laurent
from .hnn import HNNGroup
from .words import WordParseError, element_json, eval_word, format_element, parse_word

SCHEMA = 1

# operation -> (name the call goes through, subcommand reaching it)
COVERAGE = {
    "exactalg.laurent_degree": ("cli.laurent_degree", "degree"),
    "exactalg.laurent_div_1px": ("bases.laurent_div_1px", "normalize"),
    "exactalg.int_eigen": ("bsdetect.int_eigen", "bs-certify"),
    "bases.base_mul": ("bases.FreeAbelianBase.mul", "mul"),
    "bases.theta_apply": ("bases.FreeAbelianBase.theta", "mul"),
    "bases.theta_preimage": ("bases.FreeAbelianBase.theta_preimage", "normalize"),
    "hnn.normalize": ("hnn.normalize", "normalize"),
    "hnn.mul": ("hnn.mul", "mul"),
    "hnn.inv": ("hnn.inv", "eq"),
    "hnn.chi": ("hnn.chi", "chi"),
    "hnn.s_exponent": ("hnn.s_exponent", "sexp"),
    "hnn.conj_by_t": ("hnn.conj_by_t", "normalize"),
    "rep.embed": ("rep.embed", "eq"),
    "subgroups.conj_lattice": ("subgroups.conj_lattice", "ascension"),
    "subgroups.lattice_compare": ("subgroups.lattice_compare", "ascension"),
    "subgroups.degree_extremes": ("subgroups.degree_extremes", "degree"),
    "subgroups.intersect_kernel": ("subgroups.intersect_kernel", "prop22"),
    "subgroups.ascension_type": ("subgroups.ascension_type", "ascension"),
    "subgroups.self_embedding_search": ("subgroups.self_embedding_search", "ascension"),
    "bsdetect.bs_brute_search": ("bsdetect.bs_brute_search", "bs-search"),
    "bsdetect.bs_certificate": ("bsdetect.bs_certificate", "bs-certify"),
    "bsdetect.bs_relation_check": ("bsdetect.bs_relation_check", "bs-check"),
    "quotients.make_quotient": ("quotients.make_quotient", "quotient"),
    "quotients.project": ("quotients.project", "quotient"),
    "quotients.image_subgroup": ("quotients.image_subgroup", "quotient"),
    "quotients.blass_neumann_check": ("quotients.blass_neumann_check", "separate"),
    "words.parse_word": ("cli.parse_word", "normalize"),
    "words.eval_word": ("cli.eval_word", "normalize"),
}


class UsageError(Exception):
    pass


def parse_group(spec: str) -> HNNGroup:
    if spec == "thm21":
        return HNNGroup.thm21()
    if spec == "br":
        return HNNGroup.br()
    if spec.startswith("matrix:"):
        try:
            a, b, c, d = (int(x) for x in spec[7:].split(","))
        except ValueError:
            raise UsageError(f"bad matrix spec {spec!r}; expected matrix:a,b,c,d") from None
        try:
            return HNNGroup.from_matrix([[a, b], [c, d]])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown group {spec!r}; use thm21, br or matrix:a,b,c,d")


def expand(args) -> list:
    out = []
    for a in args:
        if a.startswith("@"):
            try:
                with open(a[1:]) as fh:
                    out.extend(line.strip() for line in fh if line.strip())
            except OSError as exc:
                raise UsageError(f"cannot read {a[1:]}: {exc}") from None
        else:
            out.append(a)
    return out


def element(text: str, group: HNNGroup):
    try:
        return eval_word(parse_word(text, group), group)
    except WordParseError as exc:
        raise UsageError(f"parse error in {text!r}: {exc}") from None


_VEC = re.compile(r"\(([^()]*)\)")


def parse_lattice(text: str, group: HNNGroup, denom: int = 0):
    try:
        if group.is_wreath:
            vals = [parse_laurent(p) for p in text.split(";") if p.strip()]
        else:
            vals = [tuple(int(x) for x in m.split(",")) for m in _VEC.findall(text)]
            if not vals and text.strip():
                raise ValueError(f"no vectors found in {text!r}")
            if any(len(v) != group.base.rank for v in vals):
                raise ValueError(f"vectors must have {group.base.rank} entries")
    except ValueError as exc:
        raise UsageError(f"bad lattice: {exc}") from None
    return subgroups.make_lattice(group, vals, denom)


def parse_functional(text: str, group: HNNGroup):
    if text == "chi":
        return subgroups.Functional.chi()
    if text == "sexp":
        return subgroups.Functional.s_exponent()
    m = re.fullmatch(r"linear:([-\d,\s]+)(?:/(\d+))?", text)
    if not m:
        raise UsageError(f"bad functional {text!r}; use chi, sexp or linear:c1,c2[/q]")
    cov = [int(x) for x in m.group(1).split(",")]
    return subgroups.Functional.linear(group, cov, int(m.group(2) or 0))


def parse_range(text: str) -> tuple:
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected lo:hi")
    return int(m.group(1)), int(m.group(2))


def _subgroup(args, group):
    if args.full_base:
        return subgroups.full_base(group)
    if args.lattice is None:
        raise UsageError("give --lattice or --full-base")
    return parse_lattice(args.lattice, group, args.denom)


def _lattice_json(B) -> dict:
    if isinstance(B, subgroups.FullBase):
        return {"full_base": True, "generators": [format_element(g) for g in B.generators]}
    d = {"denom_exp": B.denom_exp,
         "basis": [format_laurent(v) if B.group.is_wreath else list(v) for v in B.values()]}
    if B.group.is_wreath:
        d["window"] = [B.lo, B.hi]
    return d


def _verdict_json(v) -> dict:
    return {"kind": v.kind, "element": element_json(v.element) if v.element else None}


# subcommand handlers: (args, group) -> (json payload, text lines)

def cmd_normalize(args, group):
    out = []
    for w in expand(args.words):
        g = element(w, group)
        if args.conj_t:
            g = hnn.conj_by_t(g, args.conj_t)
        out.append(g)
    return ({"elements": [element_json(g) for g in out]},
            [format_element(g) for g in out])


def cmd_mul(args, group):
    g = group.identity()
    for w in expand(args.words):
        g = hnn.mul(g, element(w, group))
    return {"element": element_json(g)}, [format_element(g)]


def cmd_eq(args, group):
    words = expand(args.words)
    if len(words) != 2:
        raise UsageError("eq needs exactly two words")
    g, h = (element(w, group) for w in words)
    equal = hnn.mul(g, hnn.inv(h)).is_identity()
    oracle = rep.rep_eq(rep.embed(g), rep.embed(h))
    return {"equal": equal, "oracle_equal": oracle}, ["true" if equal else "false"]


def cmd_chi(args, group):
    vals = [hnn.chi(element(w, group)) for w in expand(args.words)]
    return {"values": vals}, [str(v) for v in vals]


def cmd_sexp(args, group):
    vals = [hnn.s_exponent(element(w, group)) for w in expand(args.words)]
    return {"values": vals}, [str(v) for v in vals]


def cmd_degree(args, group):
    if args.lattice is not None:
        if not group.is_wreath:
            raise UsageError("degree --lattice needs --group br")
        B = parse_lattice(args.lattice, group, args.denom)
        ext = subgroups.degree_extremes(B, args.bound)
        payload = {
            "max_degree": ext.max_degree, "max_witness": format_laurent(ext.max_witness),
            "min_degree": ext.min_degree, "min_witness": format_laurent(ext.min_witness),
            "search_bound": ext.search_bound, "min_bound_limited": ext.min_bound_limited,
        }
        return payload, [f"max {ext.max_degree} ({format_laurent(ext.max_witness)})",
                         f"min {ext.min_degree} ({format_laurent(ext.min_witness)})"
                         + (f" [bound {ext.search_bound}]" if ext.min_bound_limited else "")]
    if args.poly is None:
        raise UsageError("give a polynomial or --lattice")
    try:
        p = parse_laurent(args.poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = laurent_degree(p)
    return {"poly": format_laurent(p), "degree": d}, [str(d)]


def _matrix(group) -> IntMatrix:
    if group.is_wreath:
        raise UsageError("this command needs a matrix group (thm21 or matrix:a,b,c,d)")
    return group.base.matrix


def cmd_bs_search(args, group):
    w = bsdetect.bs_brute_search(_matrix(group), args.n_max, args.m_max)
    if w is None:
        return {"witness": None, "n_max": args.n_max, "m_max": args.m_max}, ["none"]
    x, y = bsdetect.witness_pair(group, w)
    ok = bsdetect.bs_relation_check(x, y, w.m)
    return ({"witness": {"n": w.n, "m": w.m, "a": list(w.a)}, "relation_holds": ok,
             "n_max": args.n_max, "m_max": args.m_max},
            [f"n={w.n} m={w.m} a={w.a}"])


def cmd_bs_certify(args, group):
    cert = bsdetect.bs_certificate(_matrix(group))
    payload = cert.to_json()
    line = payload["verdict"]
    if payload["verdict"] == "inapplicable":
        line += f": {payload['reason']}"
    else:
        line += f": T={cert.T} D={cert.D} disc={cert.disc} {cert.bound_lhs} > {cert.bound_rhs}"
    return payload, [line]


def cmd_bs_check(args, group):
    x, y = element(args.x, group), element(args.y, group)
    ok = bsdetect.bs_relation_check(x, y, args.m)
    payload = {"holds": ok}
    if x.is_identity():
        payload["note"] = "x must have infinite order"
    return payload, ["true" if ok else "false"]


def cmd_ascension(args, group):
    if args.search:
        if not group.is_wreath:
            raise UsageError("--search needs --group br")
        B = _subgroup(args, group)
        i_range, j_range = parse_range(args.i_range), parse_range(args.j_range)
        found = subgroups.self_embedding_search(B, i_range, j_range, args.bound)
        payload = {"lattice": _lattice_json(B), "i_range": list(i_range),
                   "j_range": list(j_range), "witness": list(found) if found else None}
        if B.is_zero():
            payload["note"] = "no strict containment possible"
        return payload, ["none" if found is None else f"i={found[0]} j={found[1]}"]
    tau = element(args.tau, group)
    B = _subgroup(args, group)
    v = subgroups.ascension_type(tau, B)
    payload = {"tau": element_json(tau), "lattice": _lattice_json(B), "verdict": _verdict_json(v)}
    if isinstance(B, subgroups.WindowLattice):
        C = subgroups.conj_lattice(tau, B)
        payload["conjugate"] = _lattice_json(C)
    line = v.kind + (f" {format_element(v.element)}" if v.element else "")
    return payload, [line]


def cmd_prop22(args, group):
    phi = parse_functional(args.functional, group)
    B = _subgroup(args, group)
    tau = element(args.tau, group)
    before = subgroups.ascension_type(tau, B)
    C = subgroups.intersect_kernel(B, phi)
    zero = isinstance(C, subgroups.WindowLattice) and C.is_zero()
    after = subgroups.ascension_type(tau, C)
    payload = {"functional": str(phi), "lattice": _lattice_json(B), "before": _verdict_json(before),
               "kernel": _lattice_json(C), "after": _verdict_json(after), "kernel_is_zero": zero}
    return payload, [f"kernel {C}", f"{before.kind} -> {after.kind}"]


def _quotient(args, group):
    return quotients.make_quotient(group, args.q, args.r)


def cmd_quotient(args, group):
    Q = _quotient(args, group)
    payload = {"quotient": Q.report()}
    lines = [f"order {Q.order} t_order {Q.t_order}"]
    if args.lattice is not None or args.full_base:
        img = quotients.image_subgroup(_subgroup(args, group), Q)
        payload["image_order"] = img.order
        payload["image_generators"] = [list(r) for r in img.fiber_basis]
        lines.append(f"image order {img.order}")
    if args.project:
        projs = [quotients.project(element(w, group), Q) for w in expand(args.project)]
        payload["projections"] = [{"fiber": list(p.fiber), "s": p.s, "t": p.t} for p in projs]
        lines.extend(f"{list(p.fiber)} s={p.s} t={p.t}" for p in projs)
    return payload, lines


def cmd_separate(args, group):
    Q = _quotient(args, group)
    B = _subgroup(args, group)
    rep_ = quotients.blass_neumann_check(element(args.tau, group), B, Q)
    payload = {"quotient": rep_.quotient, "subgroup_orders": list(rep_.orders),
               "separated": rep_.separated}
    return payload, [f"separated={str(rep_.separated).lower()} orders={rep_.orders[0]},{rep_.orders[1]}"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="thm21", help="thm21 | br | matrix:a,b,c,d")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    lat = argparse.ArgumentParser(add_help=False)
    lat.add_argument("--lattice", help="vectors '(2,0),(0,1)' or polynomials '1; 1*x^2'")
    lat.add_argument("--denom", type=int, default=0, help="lattice is theta^-denom of the span")
    lat.add_argument("--full-base", action="store_true", help="use the whole base group B")

    p = argparse.ArgumentParser(prog="ascending-hnn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="canonical form t^-k w t^l")
    s.add_argument("words", nargs="+")
    s.add_argument("--conj-t", type=int, default=0, metavar="J", help="conjugate by t^J first")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("eq", parents=[common], help="decide equality of two words")
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("mul", parents=[common], help="product of words")
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("chi", parents=[common], help="associated homomorphism to Z")
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("sexp", parents=[common], help="exponent sum of s (br only)")
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_sexp)

    s = sub.add_parser("degree", parents=[common], help="Laurent degree or lattice degree extremes")
    s.add_argument("poly", nargs="?")
    s.add_argument("--lattice")
    s.add_argument("--denom", type=int, default=0)
    s.add_argument("--bound", type=int, default=5)
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("bs-search", parents=[common], help="search for BS(1,m) witnesses")
    s.add_argument("--n-max", type=int, default=8)
    s.add_argument("--m-max", type=int, default=64)
    s.set_defaults(func=cmd_bs_search)

    s = sub.add_parser("bs-certify", parents=[common], help="impossibility certificate (2x2)")
    s.set_defaults(func=cmd_bs_certify)

    s = sub.add_parser("bs-check", parents=[common], help="test y x y^-1 = x^m")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_bs_check)

    s = sub.add_parser("ascension", parents=[common, lat], help="classify tau B tau^-1 against B")
    s.add_argument("--tau", default="t")
    s.add_argument("--search", action="store_true", help="search s^i t^j self-embeddings (br)")
    s.add_argument("--i-range", default="-3:3")
    s.add_argument("--j-range", default="-3:3")
    s.add_argument("--bound", type=int, default=5)
    s.set_defaults(func=cmd_ascension)

    s = sub.add_parser("prop22", parents=[common, lat], help="intersect B with a kernel and recheck")
    s.add_argument("--functional", required=True, help="chi | sexp | linear:c1,c2[/q]")
    s.add_argument("--tau", default="t")
    s.set_defaults(func=cmd_prop22)

    s = sub.add_parser("quotient", parents=[common, lat], help="congruence quotient report")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--r", type=int)
    s.add_argument("--project", nargs="+", metavar="WORD")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("separate", parents=[common, lat], help="Blass-Neumann image comparison")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--r", type=int)
    s.add_argument("--tau", default="t")
    s.set_defaults(func=cmd_separate)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        group = parse_group(args.group)
        payload, lines = args.func(args, group)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.json:
        out = {"schema": SCHEMA, "command": args.command, "group": group.name}
        out.update(payload)
        print(json.dumps(out, sort_keys=True), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
