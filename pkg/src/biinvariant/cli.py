"""Command line front end: JSON algebra specs in, analysis reports and tables out."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable

from .catalog import ALIASES, CatalogError, catalog, names
from .extensions import ExtensionData, InvalidExtension, double_extend, validate_extension
from .field import Scalar
from .geometry import classify, prop2_blocks
from .holonomy import holonomy_algebra
from .lie import MetricLieAlgebra, center, derived_subalgebra, killing_form, validate
from .linalg import Matrix, UnsupportedMetric
from .spin import (
    HypothesisError,
    clifford_generators,
    clifford_relation_holds,
    parallel_spinor_dim,
    su2_weight_count,
    theorem2_bound,
)

EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 1, 2


class SpecError(ValueError):
    """Malformed input; maps to exit code 2."""


class ValidationFailure(ValueError):
    """Well-formed input describing an invalid algebra; maps to exit code 1."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class AlgebraSpec:
    raw: dict
    catalog_name: str | None = None
    params: dict | None = None


# -- parsing -----------------------------------------------------------------


def _scalar(value, where: str) -> Scalar:
    try:
        return Scalar.from_literal(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: bad scalar literal {value!r} ({exc})") from None


def _index(value, n: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < n:
        raise SpecError(f"{where}: index {value!r} out of range 0..{n - 1}")
    return value


def _explicit(obj: Any, where: str, degenerate: bool = False) -> MetricLieAlgebra:
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object")
    n = obj.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SpecError(f"{where}.dim: expected a non-negative integer")
    labels = obj.get("labels", [f"e{i + 1}" for i in range(n)])
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
        raise SpecError(f"{where}.labels: expected {n} strings")
    brackets: dict = {}
    for t, item in enumerate(obj.get("brackets", [])):
        w = f"{where}.brackets[{t}]"
        if not isinstance(item, list) or len(item) != 4:
            raise SpecError(f"{w}: expected [i, j, k, scalar]")
        i, j, k = (_index(item[s], n, w) for s in range(3))
        if i >= j:
            raise SpecError(f"{w}: brackets are listed only for i < j")
        brackets.setdefault((i, j), {})
        brackets[(i, j)][k] = _scalar(item[3], w)
    entries: dict = {}
    explicit = set()
    for t, item in enumerate(obj.get("metric", [])):
        w = f"{where}.metric[{t}]"
        if not isinstance(item, list) or len(item) != 3:
            raise SpecError(f"{w}: expected [i, j, scalar]")
        i, j = _index(item[0], n, w), _index(item[1], n, w)
        v = _scalar(item[2], w)
        entries[(i, j)] = v
        explicit.add((i, j))
        if (j, i) not in explicit:
            entries[(j, i)] = v
    metric = Matrix.from_entries(n, n, entries)
    name = obj.get("name", "")
    return MetricLieAlgebra.from_brackets(labels, brackets, metric, name=str(name),
                                          allow_degenerate=degenerate)


def _matrix(obj: Any, n: int, where: str) -> Matrix:
    if not isinstance(obj, list) or len(obj) != n or not all(isinstance(r, list) and len(r) == n for r in obj):
        raise SpecError(f"{where}: expected a {n}x{n} matrix")
    return Matrix.from_rows([[_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)]
                             for i, row in enumerate(obj)])


def parse_spec(text: str) -> AlgebraSpec:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise SpecError("top level: expected a JSON object")
    if "catalog" in raw:
        name = raw["catalog"]
        if not isinstance(name, str) or ALIASES.get(name, name) not in names():
            raise SpecError(f"catalog: unknown name {name!r}")
        params = raw.get("params", {})
        if not isinstance(params, dict):
            raise SpecError("params: expected an object")
        return AlgebraSpec(raw, name, params)
    if "extension" in raw:
        ext = raw["extension"]
        if not isinstance(ext, dict) or "g" not in ext or "h" not in ext:
            raise SpecError("extension: expected an object with 'g', 'h' and 'pi'")
        g = _explicit(ext["g"], "extension.g")
        h = _explicit(ext["h"], "extension.h", degenerate=True)
        pi = ext.get("pi", [])
        if not isinstance(pi, list) or len(pi) != h.dim:
            raise SpecError(f"extension.pi: expected {h.dim} matrices")
        [_matrix(P, g.dim, f"extension.pi[{a}]") for a, P in enumerate(pi)]
        return AlgebraSpec(raw)
    _explicit(raw, "spec")
    return AlgebraSpec(raw)


def build(spec: AlgebraSpec) -> tuple[MetricLieAlgebra, ExtensionData | None, dict]:
    raw = spec.raw
    if spec.catalog_name is not None:
        try:
            entry = catalog(spec.catalog_name, spec.params)
        except CatalogError as exc:
            raise ValidationFailure([str(exc)]) from None
        ident = {"catalog": entry.name, "params": _jsonable(entry.params)}
        return entry.algebra, entry.extension, ident
    ident = {"sha256": hashlib.sha256(canonical_json(raw).encode()).hexdigest()}
    if "extension" in raw:
        ext = raw["extension"]
        g = _explicit(ext["g"], "extension.g")
        h = _explicit(ext["h"], "extension.h", degenerate=True)
        pi = tuple(_matrix(P, g.dim, f"extension.pi[{a}]") for a, P in enumerate(ext["pi"]))
        e = ExtensionData(g, h, pi)
        problems = validate_extension(e)
        if problems:
            raise ValidationFailure(problems)
        try:
            return double_extend(e, name=str(raw.get("name", ""))), e, ident
        except InvalidExtension as exc:
            raise ValidationFailure(exc.problems) from None
    a = _explicit(raw, "spec")
    problems = validate(a)
    if problems:
        raise ValidationFailure(problems)
    return a, None, ident


def spec_from_algebra(a: MetricLieAlgebra) -> dict:
    """Explicit-structure-constant spec of an algebra."""
    brackets = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            for k, v in enumerate(a.ad_basis[i].column(j)):
                if v:
                    brackets.append([i, j, k, v.to_literal()])
    metric = [[i, j, v.to_literal()] for i, j, v in a.metric.nonzero()]
    return {"dim": a.dim, "labels": list(a.labels), "brackets": brackets, "metric": metric}


# -- reports -----------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, Matrix):
        return [[str(v) for v in row] for row in x.to_lists()]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def algebra_report(a: MetricLieAlgebra) -> dict:
    neg, pos, _ = a.signature()
    rep = classify(a)
    hol = holonomy_algebra(a)
    out = {
        "dim": a.dim,
        "labels": list(a.labels),
        "signature": [neg, pos],
        "valid": True,
        "center_dim": len(center(a)),
        "derived_dim": len(derived_subalgebra(a)),
        "killing": _jsonable(killing_form(a)),
        "ricci": _jsonable(rep.ricci),
        "scalar_curvature": str(rep.scalar),
        "flags": rep.flags(),
        "einstein_constant": None if rep.einstein_constant is None else str(rep.einstein_constant),
        "holonomy": {"dim": hol.dimension, "abelian": hol.is_abelian},
    }
    try:
        out["parallel_spinor_dim"] = parallel_spinor_dim(a)
    except UnsupportedMetric as exc:
        out["parallel_spinor_dim"] = None
        out["spinor_error"] = f"unsupported metric: {exc}"
    return out


def extension_report(e: ExtensionData) -> dict:
    blocks = prop2_blocks(e)
    out = {
        "n": e.n,
        "r": e.r,
        "killing_blocks": {
            "gg": _jsonable(blocks.gg_killing),
            "hh": _jsonable(blocks.hh_killing),
            "gh": _jsonable(blocks.gh_killing),
            "consistent": blocks.consistent(),
        },
    }
    try:
        t2 = theorem2_bound(e)
        out["theorem2"] = {"bound": t2.bound, "exact": t2.exact}
    except HypothesisError as exc:
        out["theorem2"] = {"skipped": str(exc)}
    except UnsupportedMetric as exc:
        out["theorem2"] = {"skipped": f"unsupported metric: {exc}"}
    return out


def analyze(spec: AlgebraSpec) -> dict:
    a, e, ident = build(spec)
    return {
        "identity": ident,
        "name": a.name,
        "algebra": algebra_report(a),
        "extension": extension_report(e) if e is not None else None,
    }


def _geometry_text(alg: dict) -> str:
    f = alg["flags"]
    bits = []
    if f["flat"]:
        bits.append("flat")
    elif f["ricci_flat"]:
        bits.append("Ric=0, non-flat")
    elif f["ricci_2step_nilpotent"]:
        bits.append("Ric^2=0, Ric!=0")
    if f["einstein"] and not f["ricci_flat"]:
        bits.append(f"Einstein, const {alg['einstein_constant']}")
    bits.append(f"R={alg['scalar_curvature']}")
    h = alg["holonomy"]
    bits.append(f"holonomy dim {h['dim']}" + (" abelian" if h["abelian"] and h["dim"] else ""))
    return "; ".join(bits)


def report_markdown(report: dict) -> str:
    alg = report["algebra"]
    p, q = alg["signature"]
    lines = [
        f"### {report['name'] or 'algebra'}",
        "",
        "| dim | signature | center | derived | dim P | geometry |",
        "|---|---|---|---|---|---|",
        f"| {alg['dim']} | ({p},{q}) | {alg['center_dim']} | {alg['derived_dim']} "
        f"| {alg['parallel_spinor_dim']} | {_geometry_text(alg)} |",
    ]
    ext = report["extension"]
    if ext is not None:
        t2 = ext["theorem2"]
        lines += ["", f"Killing blocks consistent: {ext['killing_blocks']['consistent']}"]
        if "bound" in t2:
            lines.append(f"Spinor lower bound {t2['bound']} (exact {t2['exact']})")
        else:
            lines.append(f"Spinor lower bound skipped: {t2['skipped']}")
    return "\n".join(lines) + "\n"


# -- tables ------------------------------------------------------------------


def _pow2(f: Callable[[int], int]) -> Callable[[int], int]:
    return lambda d: 2 ** f(d)


_N_ROWS = [(f"N{k}(2,2)", f"N{k}", {"sign": "+"} if k == 3 else {}, 4) for k in range(2, 7)]

TABLES: dict[int, list[tuple[str, str, dict, Any]]] = {
    1: [("(SL(2,R), cB)", "simple_sl2", {}, 0)]
    + [(f"Osc({', '.join(['1'] * m)})", "osc", {"lambda": ["1"] * m}, _pow2(lambda d: (d - 2) // 2))
       for m in (1, 2, 3)],
    2: [
        ("(SL(2,R), -cB)", "simple_sl2", {"sign": "-"}, 0),
        ("L2(1,1)", "L2", {}, 2),
        ("L3(1,2)", "L3", {}, 3),
        ("L2,λ(1,3)", "L2λ", {"lambda": ["1"]}, _pow2(lambda d: d // 2 - 1)),
        ("L3,λ(1,4)", "L3λ", {"lambda": ["1"]}, _pow2(lambda d: d // 2 - 1)),
        ("Osc(A0,U1)", "OscA0U1", {}, _pow2(lambda d: (d - 4) // 2)),
        ("D(A0,U1)", "D_A0U1", {}, _pow2(lambda d: (d - 5) // 2)),
    ],
    3: [
        ("(SU(2), -cB)", "simple_su2", {}, 0),
        ("(SL(2,R), -cB)", "simple_sl2", {"sign": "-"}, 0),
    ],
    4: [("Osc(1)", "osc", {"lambda": ["1"]}, 2), ("L2(1,1)", "L2", {}, 2)],
    5: [("L3(1,2)", "L3", {}, 3)],
    6: [
        ("Osc(1,λ)", "osc", {"lambda": ["1", "1"]}, 4),
        ("L2,λ(1,3)", "L2λ", {"lambda": ["1"]}, 4),
        ("(Spin(1,3), -cB)", "simple_so13", {}, 0),
        ("T*SU(2)_c", "T*su2", {"c": "1"}, 1),
        ("T*SL(2,R)_c", "T*sl2R", {"c": "1"}, 1),
        ("N1(2,2)", "N1", {}, 8),
    ] + _N_ROWS,
}


def reproduce_table(n: int, params: dict | None = None) -> dict:
    if n not in TABLES:
        raise SpecError(f"table must be one of {sorted(TABLES)}")
    overrides = params or {}
    rows = []
    for label, name, defaults, expected in TABLES[n]:
        p = dict(defaults)
        p.update(overrides.get(name, {}))
        entry = catalog(name, p)
        alg = algebra_report(entry.algebra)
        exp = expected(alg["dim"]) if callable(expected) else expected
        got = alg["parallel_spinor_dim"]
        if alg["einstein_constant"] not in (None, "0"):
            # nonzero Einstein constant: the computed kernel must be trivial
            assert got == 0, f"{label}: Einstein metric with {got} parallel spinors"
        rows.append({
            "group": label,
            "catalog": entry.name,
            "params": _jsonable(entry.params),
            "dim": alg["dim"],
            "signature": alg["signature"],
            "parallel_spinor_dim": got,
            "expected": exp,
            "match": got == exp,
            "geometry": _geometry_text(alg),
        })
    return {"table": n, "rows": rows}


def table_markdown(doc: dict) -> str:
    lines = [f"### Table {doc['table']}", "",
             "| G | dim | signature | dim P | expected | geometry |", "|---|---|---|---|---|---|"]
    for r in doc["rows"]:
        p, q = r["signature"]
        lines.append(f"| {r['group']} | {r['dim']} | ({p},{q}) | {r['parallel_spinor_dim']} "
                     f"| {r['expected']} | {r['geometry']} |")
    return "\n".join(lines) + "\n"


SU2_LIMITS = {"rho": 24, "sigma": 12}


def su2_table(kind: str, k_max: int) -> dict:
    if kind not in SU2_LIMITS:
        raise SpecError(f"rep must be one of {sorted(SU2_LIMITS)}")
    if not 1 <= k_max <= SU2_LIMITS[kind]:
        raise SpecError(f"kmax must be in 1..{SU2_LIMITS[kind]} for {kind}")
    return {"rep": kind, "rows": [{"k": k, "value": su2_weight_count(kind, k)} for k in range(1, k_max + 1)]}


# -- entry point -------------------------------------------------------------


def _emit(doc: dict, args, markdown: Callable[[dict], str], text: Callable[[dict], str] | None = None):
    if getattr(args, "markdown", False):
        sys.stdout.write(markdown(doc))
    elif getattr(args, "json", False) or text is None:
        sys.stdout.write(canonical_json(doc) + "\n")
    else:
        sys.stdout.write(text(doc))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise SpecError(f"{path} is not UTF-8") from None


def _params(text: str | None) -> dict:
    if not text:
        return {}
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"--params: {exc.msg}") from None
    if not isinstance(value, dict):
        raise SpecError("--params: expected a JSON object")
    return value


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="biinvariant", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a JSON algebra spec")
    p.add_argument("file")

    p = sub.add_parser("analyze", help="full analysis of one algebra")
    p.add_argument("file", nargs="?")
    p.add_argument("--catalog")
    p.add_argument("--params")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--markdown", action="store_true")

    p = sub.add_parser("table", help="recompute one of the classification tables")
    p.add_argument("n", type=int)
    p.add_argument("--params")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--markdown", action="store_true")

    p = sub.add_parser("su2", help="weight counts for the real su(2) representations")
    p.add_argument("--rep", required=True, choices=sorted(SU2_LIMITS))
    p.add_argument("--kmax", required=True, type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("clifford", help="build Clifford generators for a signature")
    p.add_argument("--neg", type=int, required=True)
    p.add_argument("--pos", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return _run(args)
    except SpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationFailure as exc:
        for prob in exc.problems:
            print(f"invalid: {prob}", file=sys.stderr)
        return EXIT_INVALID
    except CatalogError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _run(args) -> int:
    if args.command == "validate":
        spec = parse_spec(_read(args.file))
        a, _, _ = build(spec)
        print(f"valid: dim {a.dim}, signature {a.signature()[:2]}")
        return EXIT_OK
    if args.command == "analyze":
        if args.catalog:
            if args.file:
                raise SpecError("give either a file or --catalog, not both")
            text = json.dumps({"catalog": args.catalog, "params": _params(args.params)})
        elif args.file:
            text = _read(args.file)
        else:
            raise SpecError("analyze needs a file or --catalog")
        report = analyze(parse_spec(text))
        _emit(report, args, report_markdown)
        return EXIT_OK
    if args.command == "table":
        doc = reproduce_table(args.n, _params(args.params))
        _emit(doc, args, table_markdown)
        return EXIT_OK
    if args.command == "su2":
        doc = su2_table(args.rep, args.kmax)
        _emit(doc, args, lambda d: "", lambda d: "".join(f"{r['k']} -> {r['value']}\n" for r in d["rows"]))
        return EXIT_OK
    if args.command == "clifford":
        if args.neg < 0 or args.pos < 0:
            raise SpecError("signature entries must be non-negative")
        rep = clifford_generators(args.neg, args.pos)
        doc = {"signature": [args.neg, args.pos], "generators": rep.n, "spinor_dim": rep.dim}
        if args.check:
            doc["clifford_relation"] = clifford_relation_holds(rep)
        else:
            doc["gammas"] = [_jsonable(g) for g in rep.gammas]
        _emit(doc, args, lambda d: "", lambda d: _clifford_text(d))
        return EXIT_OK if doc.get("clifford_relation", True) else EXIT_INVALID
    raise SpecError(f"unknown command {args.command}")


def _clifford_text(doc: dict) -> str:
    r, s = doc["signature"]
    out = [f"signature ({r},{s}): {doc['generators']} generators on C^{doc['spinor_dim']}"]
    if "clifford_relation" in doc:
        out.append("anticommutator table: " + ("ok" if doc["clifford_relation"] else "FAILED"))
    else:
        for j, g in enumerate(doc["gammas"], 1):
            out.append(f"gamma_{j}:")
            out += ["  [" + ", ".join(row) + "]" for row in g]
    return "\n".join(out) + "\n"


if __name__ == "__main__":
    sys.exit(main())
