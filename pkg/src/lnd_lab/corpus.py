"""Corpus files: YAML transcriptions of worked examples, replayed as checks.

The file layout is documented in docs/corpus_schema.md and enforced with
the JSON schema below.  Checks run in order; a failing or erroring check
never stops the run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema
import yaml

from . import catalog as cat
from .algebra import present
from .derivation import (
    INDETERMINATE,
    NEG_INFINITY,
    Derivation,
    apply,
    certify_lnd,
    deg_d,
    in_kernel,
    stability_residues,
)
from .errors import LndLabError, SchemaError, WellDefinednessError
from .grading import (
    Grading,
    deg_g,
    deg_g_derivation,
    format_degree,
    induced_derivation,
    is_homogeneous,
    top_summand,
)
from .ideal import in_ideal, irreducible_q, normal_form
from .invariants import KernelSlice, adjoin_variable, extend_derivation, kernel_basis_bounded, lnd_search, ml_bounded
from .lattice import Lattice, lattice_conditions, lattice_equal, lattice_proper_in, lattice_span
from .poly import LEX, ORDERS, RingDesc, univariate_ext_gcd

_RING = {
    "type": "object",
    "required": ["vars"],
    "additionalProperties": False,
    "properties": {
        "vars": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "order": {"enum": list(ORDERS)},
        "invertible": {"type": "array", "items": {"type": "string"}},
        "relations": {"type": "array", "items": {"type": "string"}},
    },
}

_TABLE = {"type": "object", "additionalProperties": {"type": ["string", "integer"]}}

SCHEMA = {
    "type": "object",
    "required": ["name", "checks"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "algebra": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["catalog"],
                    "additionalProperties": False,
                    "properties": {"catalog": {"type": "string"}},
                },
                _RING,
            ]
        },
        "derivations": {"type": "object", "additionalProperties": _TABLE},
        "gradings": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "preset": {"type": "string"},
                    "ring": _RING,
                    "degrees": {
                        "type": "object",
                        "additionalProperties": {"type": "array", "items": {"type": "integer"}},
                    },
                },
            },
        },
        "annotations": {"type": "array", "items": {"type": "string"}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op", "expect"],
                "properties": {
                    "op": {"type": "string"},
                    "expect": {"type": ["string", "boolean", "integer"]},
                    "note": {"type": "string"},
                },
            },
        },
    },
}

KEYWORDS = ("certified", "indeterminate", "well-definedness-error", "true", "false", "neg-infinity")


def _natural(n: int) -> int:
    if n < 0:
        raise ValueError(f"nat expects a natural number, got {n}")
    return n


def parse_expect(raw) -> tuple[str, object]:
    """Split an expected outcome into (kind, payload)."""
    if isinstance(raw, bool):
        return ("true" if raw else "false"), None
    if isinstance(raw, int):
        return "nat", _natural(raw)
    text = str(raw).strip()
    if text in KEYWORDS:
        return text, None
    if text.startswith("nat:"):
        return "nat", _natural(int(text[4:]))
    if text.startswith("equals:"):
        return "equals", text[7:].strip()
    if text.startswith("basis:"):
        body = text[6:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"basis must be a bracketed list, got {body!r}")
        inner = body[1:-1].strip()
        return "basis", [s.strip() for s in inner.split(",")] if inner else []
    raise ValueError(f"unknown expected outcome {text!r}")


def _ring_from(spec: dict) -> RingDesc:
    return RingDesc(tuple(spec["vars"]), invertible=frozenset(spec.get("invertible", ())), order=spec.get("order", LEX))


@dataclass
class Context:
    """Names a corpus file brings into scope."""

    algebra: object = None
    entry: object = None
    tables: dict = field(default_factory=dict)
    gradings: dict = field(default_factory=dict)
    _built: dict = field(default_factory=dict)
    _searches: dict = field(default_factory=dict)

    def derivation(self, name: str) -> Derivation:
        if name in self._built:
            return self._built[name]
        if name in self.tables:
            D = Derivation(self.algebra, self.tables[name], label=name)
        elif self.entry is not None and name in self.entry.derivations:
            D = self.entry.derivations[name]
        else:
            raise KeyError(f"no derivation named {name!r}")
        self._built[name] = D
        return D

    def table(self, name: str) -> dict:
        if name in self.tables:
            return self.tables[name]
        if self.entry is not None and name in self.entry.tables:
            return self.entry.tables[name]
        return {v: e.rep for v, e in self.derivation(name).images.items()}

    def grading(self, name: str) -> Grading:
        if name not in self.gradings:
            raise KeyError(f"no grading named {name!r}")
        return self.gradings[name]

    def poly(self, text, ring: RingDesc | None = None):
        return (ring or self.algebra.ring).parse(str(text))


def _grading_from(spec: dict, ctx: Context) -> Grading:
    if "preset" in spec:
        name, pos, kw = cat.parse_call(spec["preset"])
        if name != "kr":
            raise ValueError(f"unknown grading preset {spec['preset']!r}")
        args = dict(zip(("d", "u", "v"), pos))
        args.update(kw)
        return cat.kr_grading(cat.KorasRussellSpec(int(args["d"]), int(args["u"]), int(args["v"])))
    ring = _ring_from(spec["ring"]) if "ring" in spec else ctx.algebra.ring
    return Grading(ring, {k: tuple(v) for k, v in spec["degrees"].items()})


def build_context(doc: dict) -> Context:
    ctx = Context()
    alg = doc.get("algebra")
    if alg is not None:
        if "catalog" in alg:
            ctx.entry = cat.resolve(alg["catalog"])
            ctx.algebra = ctx.entry.algebra
            ctx.gradings.update(ctx.entry.gradings)
        else:
            ctx.algebra = present(_ring_from(alg), alg.get("relations", ()))
    for name, table in (doc.get("derivations") or {}).items():
        ctx.tables[name] = {k: str(v) for k, v in table.items()}
    for name, spec in (doc.get("gradings") or {}).items():
        ctx.gradings[name] = _grading_from(spec, ctx)
    return ctx


# check handlers return their actual outcome as (kind, payload)

def _fmt_special(v):
    if v is NEG_INFINITY:
        return "neg-infinity", None
    if v is INDETERMINATE:
        return "indeterminate", None
    return "nat", v


def _bool(b: bool):
    return ("true" if b else "false"), None


def _vectors(text) -> list[tuple[int, ...]]:
    if isinstance(text, list):
        return [tuple(v) for v in text]
    out = []
    for part in str(text).split(";"):
        part = part.strip().strip("()")
        if part:
            out.append(tuple(int(x) for x in part.split(",")))
    return out


def _lattice(spec, dim=None) -> Lattice:
    if isinstance(spec, str) and spec.strip().upper().startswith("Z") and spec.strip()[1:].isdigit():
        return Lattice.full(int(spec.strip()[1:]))
    return lattice_span(_vectors(spec), dim)


def _op_nf(ctx, c):
    return "equals", str(normal_form(ctx.poly(c["poly"]), ctx.algebra.gb))


def _op_in_ideal(ctx, c):
    return _bool(in_ideal(ctx.poly(c["poly"]), ctx.algebra.gb))


def _op_gb(ctx, c):
    return "equals", str(ctx.algebra.gb)


def _op_relation(ctx, c):
    return "equals", "; ".join(str(r) for r in ctx.algebra.relations)


def _op_define(ctx, c):
    try:
        Derivation(ctx.algebra, ctx.table(c["derivation"]), label=c["derivation"])
    except WellDefinednessError:
        return "well-definedness-error", None
    return "true", None


def _op_residue(ctx, c):
    table = {v: (ctx.poly(s) if isinstance(s, str) else s) for v, s in ctx.table(c["derivation"]).items()}
    res = [str(r) for _, r in stability_residues(ctx.algebra, table)]
    return "equals", "; ".join(res)


def _op_apply(ctx, c):
    D = ctx.derivation(c["derivation"])
    a = ctx.algebra.elem(str(c["elem"]))
    for _ in range(int(c.get("times", 1))):
        a = apply(D, a)
    return "equals", str(a)


def _op_chain(ctx, c):
    D = ctx.derivation(c["derivation"])
    cert = certify_lnd(D, int(c.get("bound", 64)))
    if cert is INDETERMINATE:
        return "indeterminate", None
    return "equals", ", ".join(str(e) for e in cert.chains[c["var"]])


def _op_deg(ctx, c):
    D = ctx.derivation(c["derivation"])
    return _fmt_special(deg_d(D, str(c["elem"]), int(c.get("bound", 64))))


def _op_certify(ctx, c):
    names = c["derivations"] if "derivations" in c else [c["derivation"]]
    bound = int(c.get("bound", 64))
    for n in names:
        cert = certify_lnd(ctx.derivation(n), bound)
        if cert is INDETERMINATE:
            return "indeterminate", None
        if "max_chain" in c and cert.max_length() > int(c["max_chain"]):
            return "equals", f"max chain {cert.max_length()}"
    return "certified", None


def _op_in_kernel(ctx, c):
    return _bool(in_kernel(ctx.derivation(c["derivation"]), str(c["elem"])))


def _op_kernel(ctx, c):
    return "slice", kernel_basis_bounded(ctx.derivation(c["derivation"]), int(c["N"]))


def _op_ml(ctx, c):
    Ds = [ctx.derivation(n) for n in c["derivations"]]
    return "slice", ml_bounded(Ds, int(c["N"]), int(c.get("bound", 64)))


def _op_lnd_search(ctx, c):
    grid = (
        int(c.get("image_degree", 2)),
        tuple(sorted({Fraction(x) for x in c.get("coeffs", range(-2, 3))})),
        int(c.get("bound", 32)),
    )
    if grid not in ctx._searches:
        ctx._searches[grid] = lnd_search(ctx.algebra, *grid)
    found = ctx._searches[grid]
    if "kills" in c:
        return _bool(all(in_kernel(D, str(c["kills"])) for D in found))
    return "nat", len(found)


def _op_extend_certify(ctx, c):
    B = adjoin_variable(ctx.algebra, c.get("var", "t"))
    for n in c["derivations"]:
        if certify_lnd(extend_derivation(ctx.derivation(n), B), int(c.get("bound", 64))) is INDETERMINATE:
            return "indeterminate", None
    return "certified", None


def _graded_poly(ctx, c):
    gr = ctx.grading(c["grading"])
    return gr, ctx.poly(c["poly"], gr.ring)


def _op_deg_g(ctx, c):
    gr, f = _graded_poly(ctx, c)
    d = deg_g(f, gr)
    return ("neg-infinity", None) if d is NEG_INFINITY else ("equals", format_degree(d))


def _op_homogeneous(ctx, c):
    gr, f = _graded_poly(ctx, c)
    return _bool(is_homogeneous(f, gr))


def _op_top(ctx, c):
    gr, f = _graded_poly(ctx, c)
    return "equals", str(top_summand(f, gr))


def _op_grading_table(ctx, c):
    gr = ctx.grading(c["grading"])
    return "equals", "(" + ",".join(format_degree(d) for d in gr.degrees) + ")"


def _op_deg_g_derivation(ctx, c):
    return "equals", format_degree(deg_g_derivation(ctx.derivation(c["derivation"]), ctx.grading(c["grading"])))


def _op_dbar(ctx, c):
    return "equals", induced_derivation(ctx.derivation(c["derivation"]), ctx.grading(c["grading"])).table()


def _op_lattice(ctx, c):
    sub = _lattice(c["vectors"])
    if "proper_in" in c:
        return _bool(lattice_proper_in(sub, _lattice(c["proper_in"], sub.dim)))
    if "equal" in c:
        return _bool(lattice_equal(sub, _lattice(c["equal"], sub.dim)))
    return "equals", str(sub)


def _op_lattice_conditions(ctx, c):
    return "equals", "[" + ", ".join(map(str, lattice_conditions(_vectors(c["vectors"])))) + "]"


def _univariate_ring(c) -> RingDesc:
    return RingDesc((c.get("var", "y"),), order=LEX)


def _op_irreducible(ctx, c):
    return "equals", irreducible_q(_univariate_ring(c).parse(c["poly"])).kind


def _op_ext_gcd(ctx, c):
    R = _univariate_ring(c)
    g, u, v = univariate_ext_gcd(R.parse(c["a"]), R.parse(c["b"]))
    return "equals", f"{g}; {u}; {v}"


def _op_normalize(ctx, c):
    spec = ctx.entry.spec
    new, record = cat.danielewski_normalize(spec)
    if c.get("transport"):
        return _bool(cat.transport_relation(spec.relation(), record) == new.relation())
    return "equals", f"{new.p}; [" + ", ".join(str(s) for s in record) + "]"


def _op_coprime(ctx, c):
    g, _, _ = cat.danielewski_linear_certificate(ctx.entry.spec)
    return _bool(g == 1)


def _op_catalog(ctx, c):
    try:
        cat.resolve(c["name"])
    except LndLabError as exc:
        return "equals", type(exc).__name__
    return "true", None


def _op_kr_identity(ctx, c):
    return _bool(cat.kr_identity_residue(ctx.entry.spec).is_zero())


def _op_kr_generation(ctx, c):
    res = cat.kr_graded_generation_check(ctx.entry.spec, int(c.get("N", 3)), int(c.get("samples", 40)))
    return _bool(res["all_in_generated"] and res["ybar_outside_A"])


OPS = {
    "nf": _op_nf,
    "in_ideal": _op_in_ideal,
    "gb": _op_gb,
    "relation": _op_relation,
    "define": _op_define,
    "residue": _op_residue,
    "apply": _op_apply,
    "chain": _op_chain,
    "deg": _op_deg,
    "certify": _op_certify,
    "in_kernel": _op_in_kernel,
    "kernel": _op_kernel,
    "ml": _op_ml,
    "lnd_search": _op_lnd_search,
    "extend_certify": _op_extend_certify,
    "deg_g": _op_deg_g,
    "homogeneous": _op_homogeneous,
    "top": _op_top,
    "grading_table": _op_grading_table,
    "deg_g_derivation": _op_deg_g_derivation,
    "dbar": _op_dbar,
    "lattice": _op_lattice,
    "lattice_conditions": _op_lattice_conditions,
    "irreducible": _op_irreducible,
    "ext_gcd": _op_ext_gcd,
    "normalize": _op_normalize,
    "coprime": _op_coprime,
    "catalog": _op_catalog,
    "kr_identity": _op_kr_identity,
    "kr_generation": _op_kr_generation,
}


def _compare(expected, actual, ctx) -> tuple[bool, str]:
    kind, payload = expected
    akind, apayload = actual
    if akind == "slice":
        shown = "basis:[" + ", ".join(apayload.strings()) + "]"
        if kind != "basis":
            return False, shown
        want = KernelSlice(apayload.derivations, apayload.N, [ctx.algebra.elem(s) for s in payload])
        return apayload.same_span(want) and apayload.dim() == len(payload), shown
    shown = akind if apayload is None else f"{akind}:{apayload}"
    if kind != akind:
        return False, shown
    if kind in ("equals", "nat"):
        return payload == apayload, shown
    return True, shown


def _show_expected(raw) -> str:
    kind, payload = parse_expect(raw)
    if kind == "basis":
        return "basis:[" + ", ".join(payload) + "]"
    return kind if payload is None else f"{kind}:{payload}"


@dataclass
class CheckResult:
    index: int
    op: str
    status: str
    expected: str
    actual: str
    note: str = ""

    def as_dict(self) -> dict:
        d = {"index": self.index, "op": self.op, "status": self.status, "expected": self.expected, "actual": self.actual}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    path: str
    name: str
    results: list
    annotations: list
    wall_time: float = 0.0

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "error": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def as_dict(self) -> dict:
        return {
            "path": self.path,
            "name": self.name,
            "annotations": list(self.annotations),
            "checks": [r.as_dict() for r in self.results],
            "summary": self.counts(),
        }


def load(path) -> dict:
    """Read and schema-check a corpus file."""
    path = str(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise SchemaError(path, "<document>", f"not valid YAML: {exc}") from None
    validate(doc, path)
    return doc


def validate(doc, path: str = "<memory>") -> None:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<document>"
        raise SchemaError(path, where, exc.message) from None
    for i, check in enumerate(doc["checks"]):
        if check["op"] not in OPS:
            raise SchemaError(path, f"checks/{i}/op", f"unknown op {check['op']!r}")
        try:
            parse_expect(check["expect"])
        except ValueError as exc:
            raise SchemaError(path, f"checks/{i}/expect", str(exc)) from None


def run_document(doc: dict, path: str = "<memory>") -> CheckReport:
    validate(doc, path)
    start = time.perf_counter()
    results = []
    try:
        ctx = build_context(doc)
        setup_error = None
    except (LndLabError, KeyError, ValueError) as exc:
        ctx, setup_error = None, f"{type(exc).__name__}: {exc}"
    for i, check in enumerate(doc["checks"]):
        expected = parse_expect(check["expect"])
        shown_expected = _show_expected(check["expect"])
        note = check.get("note", "")
        if setup_error:
            results.append(CheckResult(i, check["op"], "error", shown_expected, setup_error, note))
            continue
        try:
            actual = OPS[check["op"]](ctx, check)
            ok, shown = _compare(expected, actual, ctx)
            results.append(CheckResult(i, check["op"], "pass" if ok else "fail", shown_expected, shown, note))
        except (LndLabError, KeyError, ValueError, TypeError) as exc:
            results.append(CheckResult(i, check["op"], "error", shown_expected, f"{type(exc).__name__}: {exc}", note))
    return CheckReport(path, doc["name"], results, list(doc.get("annotations", ())), time.perf_counter() - start)


def run_corpus(path) -> CheckReport:
    """Run one corpus file."""
    return run_document(load(path), str(path))


def corpus_files(path=None) -> list[Path]:
    """The file itself, every *.yaml under a directory, or the bundled corpus."""
    if path is None:
        root = Path(str(resources.files("lnd_lab") / "corpus_data"))
    else:
        root = Path(path)
    if root.is_dir():
        return sorted(root.glob("*.yaml"))
    return [root]
