"""Command-line front end.

Exit codes: 0 success (every corpus check passed), 1 a corpus check failed
or a computation reported failure, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import catalog as cat
from .algebra import present
from .corpus import corpus_files, run_corpus
from .derivation import INDETERMINATE, NEG_INFINITY, Derivation, apply, certify_lnd, deg_d
from .errors import LndLabError, WellDefinednessError
from .grading import Grading, deg_g, format_degree, induced_derivation, top_summand
from .ideal import groebner, normal_form
from .invariants import kernel_basis_bounded, lnd_search, ml_bounded
from .lattice import Lattice, lattice_conditions, lattice_proper_in, lattice_span
from .poly import GREVLEX, LEX, RingDesc


class UsageError(Exception):
    pass


def _split(text) -> list[str]:
    if not text:
        return []
    if isinstance(text, list):
        return [p for t in text for p in _split(t)]
    return [p.strip() for p in re.split(r"[;,]", text) if p.strip()]


def _ring(args) -> RingDesc:
    if not args.vars:
        raise UsageError("--vars is required without --catalog")
    return RingDesc(tuple(_split(args.vars)), invertible=frozenset(_split(args.invertible)), order=args.order)


def _algebra(args):
    """(algebra, catalog entry or None) from --catalog or --vars/--ideal."""
    if args.catalog:
        entry = cat.resolve(args.catalog)
        return entry.algebra, entry
    ring = _ring(args)
    return present(ring, [ring.parse(r) for r in _split(args.ideal)]), None


def _table(text: str) -> dict[str, str]:
    out = {}
    for part in text.split(";"):
        if part.strip():
            if "=" not in part:
                raise UsageError(f"image {part!r} is not of the form var=poly")
            k, v = part.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _derivations(args, A, entry) -> list[Derivation]:
    if args.images:
        return [Derivation(A, _table(args.images), label="D")]
    if not args.derivation:
        raise UsageError("give --derivation NAME or --images 'x=...;y=...'")
    out = []
    for name in _split(args.derivation):
        if entry is None or name not in entry.derivations:
            known = sorted(entry.derivations) if entry else []
            raise UsageError(f"unknown derivation {name!r}; known: {known}")
        out.append(entry.derivations[name])
    return out


def _vector_list(text: str) -> list[tuple[int, ...]]:
    out = []
    for part in text.split(";"):
        part = part.strip().strip("()")
        if part:
            out.append(tuple(int(x) for x in part.split(",")))
    return out


def _lattice(text: str, dim: int | None = None) -> Lattice:
    t = text.strip()
    if re.fullmatch(r"[Zz]\d+", t):
        return Lattice.full(int(t[1:]))
    return lattice_span(_vector_list(t), dim)


def _grading(args, A):
    if args.preset:
        name, pos, kw = cat.parse_call(args.preset)
        if name != "kr":
            raise UsageError(f"unknown grading preset {args.preset!r}")
        vals = dict(zip(("d", "u", "v"), pos))
        vals.update(kw)
        return cat.kr_grading(cat.KorasRussellSpec(int(vals["d"]), int(vals["u"]), int(vals["v"])))
    if not args.degrees:
        raise UsageError("give --degrees 'x=(1);y=(1)' or --preset")
    ring = A.ring if A is not None else _ring(args)
    table = {}
    for part in args.degrees.split(";"):
        if part.strip():
            k, v = part.split("=", 1)
            table[k.strip()] = tuple(int(x) for x in v.strip().strip("()").split(","))
    return Grading(ring, table)


def _special(v):
    return str(v) if v in (NEG_INFINITY, INDETERMINATE) else v


# commands return (text, json payload, exit code)

def cmd_gb(args):
    ring = _ring(args)
    gb = groebner([ring.parse(r) for r in _split(args.ideal)])
    gens = [str(g) for g in gb]
    return "\n".join(gens), {"basis": gens}, 0


def cmd_nf(args):
    A, _ = _algebra(args)
    if not args.poly:
        raise UsageError("--poly is required")
    r = str(normal_form(A.ring.parse(args.poly), A.gb))
    return r, {"normal_form": r}, 0


def cmd_derive(args):
    A, entry = _algebra(args)
    if args.action == "check":
        try:
            D = _derivations(args, A, entry)[0]
        except WellDefinednessError as exc:
            payload = {"well_defined": False, "relation": str(exc.relation), "residue": str(exc.residue)}
            return f"well-definedness-error: relation {exc.relation}, residue {exc.residue}", payload, 1
        return f"ok: {D.table()}", {"well_defined": True, "table": D.table()}, 0
    if args.action == "lnd" and args.search:
        coeffs = [Fraction(c) for c in _split(args.coeffs)] if args.coeffs else list(range(-2, 3))
        found = lnd_search(A, args.degree if args.degree is not None else 2, coeffs, args.bound or 32)
        tables = [D.table() for D in found]
        text = "\n".join(tables) if tables else "no LND in the declared grid"
        return text, {"found": tables, "count": len(tables)}, 0
    D = _derivations(args, A, entry)[0]
    bound = args.bound or 64
    if args.action == "apply":
        if args.elem is None:
            raise UsageError("--elem is required")
        a = A.elem(args.elem)
        for _ in range(args.times):
            a = apply(D, a)
        return str(a), {"result": str(a)}, 0
    if args.action == "deg":
        if args.elem is None:
            raise UsageError("--elem is required")
        v = _special(deg_d(D, args.elem, bound))
        return str(v), {"deg": v}, 0
    cert = certify_lnd(D, bound)
    if cert is INDETERMINATE:
        return "indeterminate", {"certificate": "indeterminate"}, 0
    chains = {v: [str(e) for e in c] for v, c in cert.chains.items()}
    lines = ["certified"] + [f"{v}: " + " -> ".join([v] + c) for v, c in chains.items()]
    return "\n".join(lines), {"certificate": "certified", "chains": chains, "bound": cert.bound_used}, 0


def _slice_output(sl):
    basis = sl.strings()
    return "{" + ", ".join(basis) + "}", {"basis": basis, "N": sl.N, "dim": sl.dim()}, 0


def cmd_kernel(args):
    A, entry = _algebra(args)
    D = _derivations(args, A, entry)[0]
    return _slice_output(kernel_basis_bounded(D, args.degree if args.degree is not None else 2))


def cmd_ml(args):
    A, entry = _algebra(args)
    Ds = _derivations(args, A, entry)
    return _slice_output(ml_bounded(Ds, args.degree if args.degree is not None else 2, args.bound or 64))


def cmd_grade(args):
    if args.action == "lattice":
        if not args.vectors:
            raise UsageError("--vectors is required")
        vecs = _vector_list(args.vectors)
        if args.conditions:
            idx = lattice_conditions(vecs)
            return str(idx), {"conditions": idx}, 0
        L = lattice_span(vecs)
        if args.proper_in:
            ok = lattice_proper_in(L, _lattice(args.proper_in, L.dim))
            return str(ok).lower(), {"proper": ok, "hnf": [list(r) for r in L.basis]}, 0
        return str(L), {"hnf": [list(r) for r in L.basis]}, 0
    A = entry = None
    if args.catalog or (args.vars and not args.preset):
        A, entry = _algebra(args)
    gr = _grading(args, A)
    if args.action == "dbar":
        D = _derivations(args, A, entry)[0]
        bar = induced_derivation(D, gr)
        deg = format_degree(bar.degree)
        return f"{bar.table()}\ndegree {deg}", {"table": bar.table(), "degree": deg}, 0
    if not args.poly:
        raise UsageError("--poly is required")
    f = gr.ring.parse(args.poly)
    if args.action == "deg":
        d = deg_g(f, gr)
        s = format_degree(d)
        return s, {"deg": s}, 0
    t = str(top_summand(f, gr))
    return t, {"top": t}, 0


def cmd_catalog(args):
    entry = cat.resolve(args.name)
    A = entry.algebra
    lines = [f"algebra: {A}", "relations: " + "; ".join(str(r) for r in A.relations)]
    payload = {"name": args.name, "relations": [str(r) for r in A.relations], "derivations": {}, "gradings": {}}
    for name, D in entry.derivations.items():
        lines.append(f"{name}: {D.table()}")
        payload["derivations"][name] = D.table()
    for name, table in entry.tables.items():
        text = "; ".join(f"{v} -> {p}" for v, p in table.items())
        lines.append(f"{name} (printed, not well defined): {text}")
    for name, gr in entry.gradings.items():
        text = ", ".join(f"{v}: {format_degree(d)}" for v, d in gr.table().items())
        lines.append(f"grading {name}: {text}")
        payload["gradings"][name] = {v: list(d) for v, d in gr.table().items()}
    return "\n".join(lines), payload, 0


def cmd_corpus(args):
    files = corpus_files(args.corpus)
    reports = [run_corpus(f) for f in files]
    lines = []
    for r in reports:
        c = r.counts()
        lines.append(f"{r.name}: {c['pass']} pass, {c['fail']} fail, {c['error']} error ({r.wall_time:.2f}s)")
        for res in r.results:
            if res.status != "pass":
                lines.append(f"  [{res.index}] {res.op} {res.status}: expected {res.expected}, got {res.actual}")
    total = {k: sum(r.counts()[k] for r in reports) for k in ("pass", "fail", "error")}
    lines.append(f"total: {total['pass']} pass, {total['fail']} fail, {total['error']} error")
    docs = []
    for f, r in zip(files, reports):
        d = r.as_dict()
        d["path"] = f.name
        docs.append(d)
    code = 0 if all(r.ok for r in reports) else 1
    return "\n".join(lines), {"files": docs, "summary": total}, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", help="comma-separated variables")
    common.add_argument("--invertible", help="variables allowed negative exponents")
    common.add_argument("--order", choices=(LEX, GREVLEX), default=LEX)
    common.add_argument("--ideal", action="append", help="relations separated by ';' or ','; may repeat")
    common.add_argument("--catalog", help='catalog entry, e.g. "danielewski(n=1,p=y^2+1)"')
    common.add_argument("--derivation", help="derivation name(s) from the catalog entry")
    common.add_argument("--images", help="generator images 'x=0;y=x;z=2*y'")
    common.add_argument("--poly")
    common.add_argument("--elem")
    common.add_argument("--bound", type=int)
    common.add_argument("--degree", type=int, help="slice degree N, or image degree for searches")
    common.add_argument("--json", action="store_true", help="print one JSON document")

    p = argparse.ArgumentParser(prog="lnd-lab", description="Exact computations with locally nilpotent derivations.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("gb", parents=[common], help="reduced Groebner basis").set_defaults(func=cmd_gb)
    sub.add_parser("nf", parents=[common], help="normal form modulo the ideal").set_defaults(func=cmd_nf)
    d = sub.add_parser("derive", parents=[common], help="derivation checks")
    d.add_argument("action", choices=("check", "apply", "deg", "lnd"))
    d.add_argument("--times", type=int, default=1)
    d.add_argument("--search", action="store_true", help="with 'lnd': grid search instead of certification")
    d.add_argument("--coeffs", help="coefficient set for --search, e.g. '-1,0,1'")
    d.set_defaults(func=cmd_derive)
    sub.add_parser("kernel", parents=[common], help="kernel slice of degree <= N").set_defaults(func=cmd_kernel)
    sub.add_parser("ml", parents=[common], help="common kernel of a family").set_defaults(func=cmd_ml)
    g = sub.add_parser("grade", parents=[common], help="gradings and lattices")
    g.add_argument("action", choices=("deg", "top", "dbar", "lattice"))
    g.add_argument("--degrees", help="'x=(1);y=(1)'")
    g.add_argument("--preset", help='grading preset, e.g. "kr(2,2,3)"')
    g.add_argument("--vectors", help="'(2,-6,0);(0,-3,0)'")
    g.add_argument("--proper-in", dest="proper_in", help="'Z3' or a vector list")
    g.add_argument("--conditions", action="store_true", help="indices whose complement span is proper")
    g.set_defaults(func=cmd_grade)
    c = sub.add_parser("catalog", parents=[common], help="show a catalog entry")
    c.add_argument("name")
    c.set_defaults(func=cmd_catalog)
    r = sub.add_parser("corpus", parents=[common], help="replay corpus files")
    r.add_argument("--corpus", help="file or directory (default: bundled corpus)")
    r.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, payload, code = args.func(args)
    except (UsageError, LndLabError, KeyError, ValueError, OSError) as exc:
        if isinstance(exc, WellDefinednessError):
            print(f"well-definedness-error: {exc}", file=sys.stderr)
            return 1
        print(f"lnd-lab: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
