"""Command-line front end.

Exit codes: 0 success, 1 refutation or failed check, 2 usage/parse/field
error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import report
from .algebra import BUILDER_KINDS, algebra_from_json, build_example, direct_product, validate_algebra
from .certificates import Certificate
from .errors import PimsimError, SearchBudgetExceeded
from .field import FieldDesc

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_builder(text: str, field: FieldDesc):
    """``kind:n`` or ``kind:n*kind:n`` (direct product)."""
    parts = text.split("*")
    algs = []
    for part in parts:
        kind, _, n = part.partition(":")
        if kind not in BUILDER_KINDS or not n.isdigit():
            raise UsageError(f"bad builder spec {part!r}")
        algs.append(build_example(kind, field, int(n)))
    out = algs[0]
    for b in algs[1:]:
        out = direct_product(out, b)
    return out


def load_input(path: str, field: FieldDesc | None):
    """Return (algebra, raw input bytes) from a file or a builder spec."""
    if os.path.exists(path):
        with open(path, "rb") as fh:
            data = fh.read()
        try:
            obj = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise UsageError(f"{path}: not valid JSON ({exc})") from exc
        return algebra_from_json(obj, field), data
    if ":" in path and path.split(":")[0] in BUILDER_KINDS:
        if field is None:
            raise UsageError("builder specs need --field")
        alg = parse_builder(path, field)
        return alg, alg.dumps().encode()
    raise UsageError(f"no such file: {path}")


def _emit(args, obj, lines):
    if args.format == "json":
        sys.stdout.write(report.dumps(obj))
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def cmd_validate(args, alg, data):
    rep = validate_algebra(alg)
    obj = report.envelope("validate", alg, args.seed, data)
    obj.update(rep.to_json())
    lines = [f"valid: {rep.ok}"] + [f"  violation: {v}" for v in rep.violations]
    _emit(args, obj, lines)
    return EXIT_OK if rep.ok else EXIT_REFUTED


def cmd_info(args, alg, data):
    obj = report.envelope("info", alg, args.seed, data)
    obj.update(report.info_json(alg))
    lines = [f"field: {alg.field}", f"dim: {alg.dim}", f"labels: {' '.join(alg.labels)}",
             f"valid: {obj['valid']}", f"commutative: {obj['commutative']}"]
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_radical(args, alg, data):
    obj = report.envelope("radical", alg, args.seed, data)
    obj.update(report.radical_json(alg, args.seed))
    lines = []
    if "radical" in obj:
        r = obj["radical"]
        lines += [f"radical dim: {r['dim']}", f"nilpotency index: {r['nilpotency_index']}",
                  f"simple dims: {r['simple_dims']}"]
        for row in r["basis"]:
            lines.append("  " + " ".join(row))
    if "dickson" in obj:
        dk = obj["dickson"]
        lines.append(f"trace-form radical dim: {dk['dim']}" + (f" (agrees: {dk['agrees']})" if "agrees" in dk else ""))
    _emit(args, obj, lines)
    if "radical" in obj and "dickson" in obj and not obj["dickson"].get("agrees", True):
        return EXIT_REFUTED
    return EXIT_OK


def _target_module(args, alg):
    from .module import load_module, regular_module

    if args.module:
        m = load_module(args.module, args.field)
        if m.algebra != alg:
            raise UsageError("module file is over a different algebra")
        return m
    return regular_module(alg)


def cmd_decompose(args, alg, data):
    from .decomp import indecomposable_decomposition

    dec = indecomposable_decomposition(_target_module(args, alg), args.seed, args.budget)
    obj = report.envelope("decompose", alg, args.seed, data)
    obj.update(report.decomposition_json(dec))
    lines = [f"{len(dec.summands)} indecomposable summands"]
    for (m, _), cid, cert in zip(dec.summands, dec.class_ids, dec.certificates):
        lines.append(f"  dim {m.dim:3d}  class {cid}  {cert.kind}")
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_comp_series(args, alg, data):
    from .decomp import composition_series

    cs = composition_series(_target_module(args, alg), args.seed)
    obj = report.envelope("comp-series", alg, args.seed, data)
    obj.update(report.comp_series_json(cs))
    lines = [f"length {cs.length}, chain dims {[s.dim for s in cs.chain]}"]
    for fac, cid, cert in zip(cs.factors, cs.factor_class_ids, cs.certificates):
        lines.append(f"  factor dim {fac.dim}  class {cid}  {cert.kind}")
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_simples(args, alg, data):
    from .correspondence import simples_of

    recs = simples_of(alg, args.seed)
    obj = report.envelope("simples", alg, args.seed, data)
    obj["simples"] = report.simples_json(recs)
    lines = [f"{len(recs)} simple classes"] + [
        f"  class {s.class_id}: dim {s.dim}, End = F_{alg.field.p}^{s.end_field_degree}" for s in recs
    ]
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_pims(args, alg, data):
    from .correspondence import pims

    recs = pims(alg, args.seed)
    obj = report.envelope("pims", alg, args.seed, data)
    obj["pims"] = report.pims_json(recs)
    lines = [f"{len(recs)} PIM classes"] + [
        f"  class {p.class_id}: dim {p.dim}, multiplicity {p.multiplicity_in_regular}, top class {p.top_class_id}"
        for p in recs
    ]
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_bijection(args, alg, data):
    from .correspondence import bijection

    table = bijection(alg, args.seed)
    obj = report.envelope("bijection", alg, args.seed, data)
    obj.update(report.bijection_json(table))
    lines = ["PIM (dim, mult)  <->  simple (dim, End degree)   dim Hom"]
    for pair in obj["pairs"]:
        p, s = pair["pim"], pair["simple"]
        lines.append(f"  P{p['class_id']} ({p['dim']}, {p['multiplicity']})  <->  S{s['class_id']} ({s['dim']}, {s['end_degree']})   {pair['hom_dim']}")
    lines.append(f"radical dim {obj['radical_dim']}, nilpotency index {obj['nilpotency_index']}")
    _emit(args, obj, lines)
    return EXIT_OK


def _check_one(path, field, seed):
    from .correspondence import bijection, verify_table

    alg, data = load_input(path, field)
    table = bijection(alg, seed)
    checks = verify_table(table, seed)
    obj = report.envelope("check", alg, seed, data)
    obj["input"] = path
    obj["claims"] = report.checks_json(checks)
    obj["passed"] = all(c.passed for c in checks.values())
    return obj


def cmd_check(args):
    paths = args.inputs
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_check_one, paths, [args.field] * len(paths), [args.seed] * len(paths)))
    else:
        results = [_check_one(p, args.field, args.seed) for p in paths]
    lines = []
    for r in results:
        lines.append(f"{r['input']}: {'PASS' if r['passed'] else 'FAIL'}")
        for name, c in r["claims"].items():
            lines.append(f"  {'ok  ' if c['passed'] else 'FAIL'} {name}" + (f"  {c['witness']}" if c["witness"] else ""))
    _emit(args, results[0] if len(results) == 1 else {"results": results}, lines)
    return EXIT_OK if all(r["passed"] for r in results) else EXIT_REFUTED


def iter_certified_modules(obj):
    """Yield (label, module json, certificate json) from any report carrying certificates."""
    if "factors" in obj:
        for i, fac in enumerate(obj["factors"]):
            yield f"factor {i}", fac["module"], fac["certificate"]
    if "summands" in obj:
        for i, s in enumerate(obj["summands"]):
            yield f"summand {i}", s["module"], s["certificate"]
    for s in obj.get("simples", []):
        yield f"simple {s['class_id']}", s["module"], s["certificate"]
    for p in obj.get("pims", []):
        for name, cert in p["certificates"].items():
            target = p["top_module"] if name == "top_simple" else p["module"]
            yield f"pim {p['class_id']} {name}", target, cert


def cmd_verify_cert(args):
    from .module import ModuleRep, module_from_json
    from .replay import replay

    path = args.inputs[0]
    try:
        with open(path, "rb") as fh:
            data = fh.read()
        obj = json.loads(data.decode("utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if "algebra" not in obj:
        raise UsageError("report has no embedded algebra")
    alg = algebra_from_json(obj["algebra"])
    results = []
    for label, mjson, cjson in iter_certified_modules(obj):
        parsed = module_from_json({"algebra": obj["algebra"], "dim": mjson["dim"], "action": mjson["action"]})
        m = ModuleRep(alg, parsed.actions)
        cert = Certificate.from_json(alg.field, cjson)
        results.append({"item": label, "kind": cert.kind, "verified": replay(m, cert)})
    if not results:
        raise UsageError("report carries no certificates")
    ok = all(r["verified"] for r in results)
    out = report.envelope("verify-cert", alg, obj.get("seed", 0), data)
    out.update({"certificates": results, "all_verified": ok})
    lines = [f"{r['item']}: {r['kind']} {'verified' if r['verified'] else 'FAILED'}" for r in results]
    _emit(args, out, lines)
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_gen(args):
    if args.field is None:
        raise UsageError("gen needs --field")
    kind = args.inputs[0]
    if kind == "direct-product":
        if not args.factors:
            raise UsageError("direct-product needs --factors kind:n,kind:n")
        alg = parse_builder("*".join(args.factors.split(",")), args.field)
    else:
        if args.n is None:
            raise UsageError(f"{kind} needs --n")
        alg = build_example(kind, args.field, args.n)
    text = json.dumps(alg.to_json()) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


ALGEBRA_COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "radical": cmd_radical,
    "decompose": cmd_decompose,
    "comp-series": cmd_comp_series,
    "simples": cmd_simples,
    "pims": cmd_pims,
    "bijection": cmd_bijection,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="pimsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", type=_field_arg, default=None, help="fp:<p> or q; overrides the file's field")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--budget", type=int, default=64, help="candidate budget for randomized searches")

    for name in ALGEBRA_COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("inputs", nargs=1, metavar="ALGEBRA", help="algebra JSON file or builder spec kind:n")
        if name in ("decompose", "comp-series"):
            p.add_argument("--module", default=None, help="module JSON file (default: regular module)")
        common(p)
    p = sub.add_parser("check")
    p.add_argument("inputs", nargs="+", metavar="ALGEBRA")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p = sub.add_parser("verify-cert")
    p.add_argument("inputs", nargs=1, metavar="REPORT")
    common(p)
    p = sub.add_parser("gen")
    p.add_argument("inputs", nargs=1, metavar="KIND", choices=BUILDER_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--factors", help="comma-separated kind:n factors for direct-product")
    p.add_argument("-o", "--output")
    common(p)
    return parser


def _field_arg(text):
    try:
        return FieldDesc.parse(text)
    except PimsimError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "verify-cert":
            return cmd_verify_cert(args)
        if args.command == "gen":
            return cmd_gen(args)
        alg, data = load_input(args.inputs[0], args.field)
        return ALGEBRA_COMMANDS[args.command](args, alg, data)
    except SearchBudgetExceeded as exc:
        return _fail(args, exc, EXIT_BUDGET)
    except (UsageError, PimsimError) as exc:
        return _fail(args, exc, EXIT_USAGE)


def _fail(args, exc, code):
    if getattr(args, "format", "table") == "json":
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    else:
        sys.stderr.write(f"error ({type(exc).__name__}): {exc}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
