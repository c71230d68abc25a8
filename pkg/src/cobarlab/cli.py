"""Command line front end: load presentations, compute, report.

Subcommands: validate, ext, compare, resolve, demo.  Input paths name JSON
presentation files; the prefix "bundled:" selects a file shipped inside the
package (bundled:c2.json, bundled:c3.json, bundled:sym2_d4.json,
bundled:broken_counit.json).  Text summaries go to standard output; the full
JSON report is written to the --out path when given, with sorted keys so that
identical invocations produce byte-identical payloads apart from the
wall_time_s field.

Exit codes: 0 when every computed verdict holds, 1 when a mathematical
verdict is false, 2 for unreadable or schema-invalid input and violated
preconditions.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from importlib import resources

from .coalg import (
    Coalgebra,
    Comodule,
    GradedCoalgebra,
    flatten,
    opposite,
    regular_comodule,
    trivial_comodule,
    validate,
    validate_comodule,
    validate_graded,
)
from .cobar import build_cobar, ext_table
from .dualalg import (
    Algebra,
    bar_ext_table,
    compare_theorem1,
    dual_algebra,
    graded_dual,
    validate_algebra,
)
from .presentation import SCHEMA_TAG, SchemaError, loads_presentation
from .resolve import betti_dims, minimal_coresolution, verify_coresolution
from .witness import contra_report, nonrational_report

BUNDLED_PREFIX = "bundled:"


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


def _read_input(path):
    """Resolve a path or bundled: name to (display name, file text)."""
    if path.startswith(BUNDLED_PREFIX):
        name = path[len(BUNDLED_PREFIX):]
        if "/" in name or "\\" in name or not name:
            raise CliError(2, "bad bundled name %r" % name)
        record = resources.files("cobarlab").joinpath("data", name)
        try:
            return path, record.read_text(encoding="utf-8")
        except (FileNotFoundError, OSError):
            raise CliError(2, "no bundled file %r" % name)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return path, handle.read()
    except OSError as exc:
        raise CliError(2, "cannot read %s (%s)" % (path, exc))


def _load(path, inputs):
    name, text = _read_input(path)
    inputs[name] = "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
    try:
        return loads_presentation(text)
    except SchemaError as exc:
        raise CliError(2, "%s: %s" % (name, exc))


def _report(command, inputs, result, started, seed=None):
    out = {
        "schema": SCHEMA_TAG,
        "command": command,
        "inputs": dict(sorted(inputs.items())),
        "result": result,
        "wall_time_s": round(time.time() - started, 6),
    }
    if seed is not None:
        out["seed"] = seed
    return out


def _emit(args, report, lines):
    for line in lines:
        print(line)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(report, handle, indent=2, sort_keys=True)
            handle.write("\n")


def _threads(args):
    if args.threads is not None:
        value = args.threads
    else:
        value = int(os.environ.get("COBARLAB_THREADS", "1"))
    if value < 1:
        raise CliError(2, "--threads must be >= 1")
    return value


def _maybe_flatten(obj, args):
    if isinstance(obj, GradedCoalgebra) and getattr(args, "flatten", False):
        return flatten(obj)
    return obj


def _table_lines(table):
    if table.kind == "finite":
        return ["ext dims for i <= %d: %s" % (table.imax, " ".join(str(d) for d in table.dims()))]
    lines = []
    for i in range(table.imax + 1):
        cells = ["j=%d:%d" % (j, v) for (ii, j), v in sorted(table.entries.items()) if ii == i]
        lines.append("i=%d  %s" % (i, "  ".join(cells) if cells else "-"))
    return lines


def cmd_validate(args):
    started = time.time()
    inputs = {}
    obj = _load(args.path, inputs)
    if isinstance(obj, Coalgebra):
        rep = validate(obj).to_json()
    elif isinstance(obj, GradedCoalgebra):
        rep = validate_graded(obj).to_json()
    elif isinstance(obj, Algebra):
        ok = validate_algebra(obj)
        rep = {"flags": {"algebra_valid": ok}, "notes": {}, "ok": ok}
    elif isinstance(obj, Comodule):
        base = validate(obj.base)
        com = validate_comodule(obj)
        rep = {
            "flags": dict(base.flags, comodule_valid=com),
            "notes": dict(base.notes),
            "ok": base.ok and com,
        }
    else:
        raise CliError(2, "nothing to validate in %s" % args.path)
    lines = []
    for flag, value in sorted(rep["flags"].items()):
        lines.append("%s: %s" % (flag, "true" if value else "false"))
    lines.append("validate %s: %s" % (args.path, "ok" if rep["ok"] else "FAILED"))
    _emit(args, _report("validate", inputs, rep, started), lines)
    return 0 if rep["ok"] else 1


def _ext_algebra_side(obj, args):
    if isinstance(obj, Algebra):
        return bar_ext_table(obj, args.imax, args.jmax)
    if isinstance(obj, GradedCoalgebra):
        return bar_ext_table(graded_dual(obj), args.imax, args.jmax)
    if args.jmax is not None:
        raise CliError(2, "--jmax needs a graded presentation")
    return bar_ext_table(dual_algebra(obj), args.imax)


def cmd_ext(args):
    started = time.time()
    inputs = {}
    obj = _load(args.path, inputs)
    if isinstance(obj, Comodule):
        raise CliError(2, "ext expects a coalgebra or algebra presentation")
    if isinstance(obj, Algebra) and args.side != "algebra":
        raise CliError(2, "algebra presentations support only --side algebra")
    obj = _maybe_flatten(obj, args)
    threads = _threads(args)
    if args.side == "algebra":
        table = _ext_algebra_side(obj, args)
        result = {"side": "algebra", "table": table.to_json()}
        lines = _table_lines(table)
        code = 0
    elif args.side == "co":
        table = ext_table(build_cobar(obj, args.imax, args.jmax), threads=threads)
        result = {"side": "co", "table": table.to_json()}
        lines = _table_lines(table)
        code = 0
    else:
        if isinstance(obj, GradedCoalgebra):
            raise CliError(2, "--side op needs a finite presentation; pass --flatten")
        table = ext_table(build_cobar(obj, args.imax, args.jmax), threads=threads)
        other = ext_table(build_cobar(opposite(obj), args.imax, args.jmax), threads=threads)
        symmetric = table == other
        result = {
            "side": "op",
            "table": table.to_json(),
            "opposite_table": other.to_json(),
            "symmetry": symmetric,
        }
        lines = _table_lines(table)
        lines.append("opposite agrees: %s" % ("true" if symmetric else "FALSE"))
        code = 0 if symmetric else 1
    _emit(args, _report("ext", inputs, result, started), lines)
    return code


def _comodule_argument(token, c, inputs):
    if token == "k":
        return trivial_comodule(c)
    if token == "regular":
        return regular_comodule(c)
    obj = _load(token, inputs)
    if not isinstance(obj, Comodule):
        raise CliError(2, "%s: expected a comodule presentation" % token)
    if obj.base != c:
        raise CliError(2, "%s: comodule base differs from the main input" % token)
    return obj


def cmd_compare(args):
    started = time.time()
    inputs = {}
    obj = _load(args.path, inputs)
    obj = _maybe_flatten(obj, args)
    if isinstance(obj, GradedCoalgebra):
        raise CliError(2, "compare needs a finite presentation; pass --flatten")
    if not isinstance(obj, Coalgebra):
        raise CliError(2, "compare expects a coalgebra presentation")
    left = _comodule_argument(args.left, obj, inputs)
    right = _comodule_argument(args.right, obj, inputs)
    report = compare_theorem1(obj, left, right, args.n)
    result = {k: v for k, v in report.to_json().items() if k != "seconds"}
    lines = [
        "comodule side: %s" % " ".join(str(d) for d in report.comodule_dims),
        "module side:   %s" % " ".join(str(d) for d in report.module_dims),
        "agree through degree %d: %s" % (args.n, "true" if report.ok else "FALSE"),
    ]
    _emit(args, _report("compare", inputs, result, started), lines)
    return 0 if report.ok else 1


def cmd_resolve(args):
    started = time.time()
    inputs = {}
    obj = _load(args.path, inputs)
    obj = _maybe_flatten(obj, args)
    if isinstance(obj, GradedCoalgebra):
        raise CliError(2, "resolve needs a finite presentation; pass --flatten")
    if isinstance(obj, Coalgebra):
        target = trivial_comodule(obj)
    elif isinstance(obj, Comodule):
        target = obj
    else:
        raise CliError(2, "resolve expects a coalgebra or comodule presentation")
    rng = random.Random(args.seed) if args.seed is not None else None
    res = minimal_coresolution(target, args.length, rng)
    verified = verify_coresolution(res)
    dims = betti_dims(res)
    result = {
        "target_dim": target.dim,
        "length": args.length,
        "cogenerator_dims": list(dims),
        "step_dims": [target.base.dim * v for v in dims],
        "minimal": res.minimal,
        "verified": verified,
    }
    lines = [
        "cogenerator dims: %s" % " ".join(str(d) for d in dims),
        "verified: %s" % ("true" if verified else "FALSE"),
    ]
    _emit(args, _report("resolve", inputs, result, started, seed=args.seed), lines)
    return 0 if verified and res.minimal else 1


def cmd_demo(args):
    started = time.time()
    if args.which == "nonrational":
        samples = 200 if args.samples is None else args.samples
        rep = nonrational_report(samples=samples, seed=args.seed)
        ok = (
            rep["module_axioms_verified"]
            and not rep["is_rational"]
            and rep["max_rational_submodule"] == [[1, 0]]
        )
        lines = [
            "module axioms verified on %d samples: %s" % (samples, rep["module_axioms_verified"]),
            "is_rational: %s" % rep["is_rational"],
            "max rational submodule: span%s" % rep["max_rational_submodule"],
        ]
    else:
        samples = 10 if args.samples is None else args.samples
        rep = contra_report(samples=samples, seed=args.seed)
        ok = rep["module_trivial"] and rep["contra_nontrivial"] and rep["splitting_not_contra_linear"]
        lines = [
            "module_trivial: %s" % rep["module_trivial"],
            "contra_nontrivial: %s" % rep["contra_nontrivial"],
            "splitting_not_contra_linear: %s" % rep["splitting_not_contra_linear"],
        ]
    lines.append("demo %s: %s" % (args.which, "ok" if ok else "FAILED"))
    _emit(args, _report("demo", {}, rep, started, seed=args.seed), lines)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cobarlab",
        description="Exact homological invariants of conilpotent coalgebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the axioms of a presentation")
    p.add_argument("path")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ext", help="Ext table of the trivial comodule")
    p.add_argument("path")
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--jmax", type=int, default=None)
    p.add_argument("--side", choices=("co", "op", "algebra"), default="co")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--flatten", action="store_true", help="flatten a graded presentation first")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("compare", help="comodule-side vs module-side Ext dims")
    p.add_argument("path")
    p.add_argument("--left", default="k", help="comodule file, or k, or regular")
    p.add_argument("--right", default="k", help="comodule file, or k, or regular")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--flatten", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("resolve", help="minimal cofree coresolution")
    p.add_argument("path")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help="randomize the retraction choices")
    p.add_argument("--flatten", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("demo", help="finite models of the two infinite witnesses")
    p.add_argument("which", choices=("nonrational", "contra"))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=20260816)
    p.add_argument("--out")
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc.message, file=sys.stderr)
        return exc.code
    except ValueError as exc:
        # computations signal violated preconditions with ValueError
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
