"""Command line entry point: every operation plus the example census runner.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse errors.
All randomness is seeded; the seed is echoed in every JSON report.
"""

import argparse
import json
import sys

from .parser import parse_source, parse_polynomial, ParseError
from .ring import RingError
from .gb import (
    Ideal,
    GBError,
    syzygy_matrix,
    ideal_sum,
    ideal_product,
    ideal_intersect,
    ideal_quotient,
    ideal_saturate,
    ideal_eliminate,
    ideal_specialize,
    saturate_irrelevant,
)
from .hilbert import hilbert_polynomial, affine_hilbert_polynomial, HilbertError
from .localgeom import PointedIdeal, local_min_gens, blowup_fiber, detachability_criterion, LocalGeomError
from . import structures as structures_mod
from . import families as families_mod
from . import tangent as tangent_mod
from . import census as census_mod
from . import report as report_mod

DEFAULT_SEED = families_mod.DEFAULT_SEED


class CliError(Exception):
    pass


def _load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")
    return parse_source(text)


def _pick_ideal(doc, name=None):
    if name:
        if name not in doc.ideals:
            raise CliError(f"no ideal named {name!r} in the input")
        return doc.ideals[name]
    if not doc.ideals:
        raise CliError("the input declares no ideals")
    return next(iter(doc.ideals.values()))


def _pick_point(doc, spec):
    if spec in doc.points:
        return doc.points[spec]
    try:
        return tuple(int(c) for c in spec.strip("() ").split(","))
    except ValueError:
        raise CliError(f"cannot parse point {spec!r}")


def _emit(args, payload, text):
    if args.json:
        payload = dict(payload)
        payload.setdefault("seed", args.seed)
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def cmd_gb(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    basis = I.groebner()
    _emit(args, {"groebner_basis": [str(g) for g in basis]},
          "\n".join(str(g) for g in basis))
    return 0


def cmd_nf(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    f = parse_polynomial(args.poly, I.ring)
    r = I.normal_form(f)
    _emit(args, {"normal_form": str(r), "member": r.is_zero()}, str(r))
    return 0


def cmd_hilbert(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    if args.affine:
        hd = affine_hilbert_polynomial(I)
    else:
        hd = hilbert_polynomial(I)
    _emit(args, hd.to_json(), hd.polynomial_str())
    return 0


def cmd_syz(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    rows = syzygy_matrix(list(I.gens))
    text = "\n".join("(" + ", ".join(str(c) for c in row) + ")" for row in rows)
    _emit(args, {"syzygies": [[str(c) for c in row] for row in rows]}, text)
    return 0


def cmd_ideal_op(args):
    doc = _load(args.file)
    A = _pick_ideal(doc, args.a)
    kind = args.kind
    if kind in ("sum", "product", "intersect", "quotient", "saturate"):
        B = _pick_ideal(doc, args.b)
        op = {
            "sum": ideal_sum,
            "product": ideal_product,
            "intersect": ideal_intersect,
            "quotient": ideal_quotient,
            "saturate": ideal_saturate,
        }[kind]
        out = op(A, B)
    elif kind == "eliminate":
        if not args.vars:
            raise CliError("eliminate needs --vars")
        out = ideal_eliminate(A, args.vars.split(","))
    elif kind == "specialize":
        if not args.assign:
            raise CliError("specialize needs --assign var=value,...")
        assignments = {}
        for item in args.assign.split(","):
            k, v = item.split("=")
            assignments[k.strip()] = int(v)
        out = ideal_specialize(A, assignments)
    else:
        raise CliError(f"unknown ideal operation {kind!r}")
    basis = out.groebner()
    _emit(args, {"result": [str(g) for g in basis]}, "\n".join(str(g) for g in basis))
    return 0


def cmd_local(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    pt = _pick_point(doc, args.point)
    PI = PointedIdeal.at(I, pt, chart=args.chart)
    r = local_min_gens(PI)
    _emit(args, {"local_min_gens": r, "point": list(map(str, pt))}, str(r))
    return 0


def cmd_blowup(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    pt = _pick_point(doc, args.point)
    PI = PointedIdeal.at(I, pt, chart=args.chart, require_on_scheme=not args.off_scheme)
    rep = detachability_criterion(PI, args.ambient)
    _emit(args, rep.to_json(),
          f"r = {rep.r}, fiber = {rep.fiber.label}, detachable = {rep.detachable}")
    return 0


def cmd_structure(args):
    doc = _load(args.file)
    if args.name not in doc.structures:
        raise CliError(f"no structure named {args.name!r}")
    ctx = census_mod._Context(doc, seed=args.seed)
    spec = ctx.structure(census_mod.Name(args.name))
    IY = structures_mod.kernel_ideal(spec)
    out = {
        "kernel_ideal": [str(g) for g in IY.groebner()],
        "module_length": spec.module.length,
        "case": structures_mod.classify_module(spec.module)
        if spec.module.length <= 3
        else "unclassified",
    }
    decl = doc.structures[args.name]
    if decl.case != "custom":
        CF = ctx.closed_form(census_mod.Name(args.name))
        out["closed_form"] = [str(g) for g in CF.groebner()]
        out["closed_equals_kernel"] = CF.equals(IY)
    _emit(args, out, "\n".join(out["kernel_ideal"]))
    return 0 if out.get("closed_equals_kernel", True) else 1


def cmd_detach(args):
    doc = _load(args.file)
    ctx = census_mod._Context(doc, seed=args.seed)
    fam = ctx.family(census_mod.Name(args.name))
    basis = fam.total_ideal.groebner()
    _emit(args, {"family": [str(g) for g in basis], "kind": fam.provenance.get("kind")},
          "\n".join(str(g) for g in basis))
    return 0


def cmd_flat_limit(args):
    doc = _load(args.file)
    if args.name and args.name in doc.families:
        ctx = census_mod._Context(doc, seed=args.seed)
        fam = ctx.family(census_mod.Name(args.name))
    else:
        I = _pick_ideal(doc, args.name)
        fam = families_mod.family_from_ideal(I, parameter=args.param or I.ring.parameter)
    limit = families_mod.flat_limit(fam)
    basis = limit.groebner()
    _emit(args, {"flat_limit": [str(g) for g in basis]}, "\n".join(str(g) for g in basis))
    return 0


def cmd_verify(args):
    doc = _load(args.file)
    ctx = census_mod._Context(doc, seed=args.seed)
    fam = ctx.family(census_mod.Name(args.family))
    target = doc.ideals.get(args.target)
    if target is None:
        raise CliError(f"no ideal named {args.target!r}")
    rep = families_mod.verify_detachment(
        fam, target, expected_points=args.points, samples=args.samples, seed=args.seed
    )
    _emit(args, rep.to_json(), "PASS" if rep.verdict else "FAIL")
    return 0 if rep.verdict else 1


def cmd_tangent(args):
    doc = _load(args.file)
    I = _pick_ideal(doc, args.name)
    sat, changed = saturate_irrelevant(I)
    hom = tangent_mod.hom_dim(sat)
    payload = hom.to_json()
    payload["saturation_changed_input"] = changed
    _emit(args, payload, str(hom.dimension))
    return 0


def cmd_end(args):
    doc = _load(args.file)
    ctx = census_mod._Context(doc, seed=args.seed)
    M = ctx.module(census_mod.Name(args.name))
    e = tangent_mod.end_dim(M, seed=args.seed)
    _emit(args, e.to_json(), str(e.dimension))
    return 0


def cmd_example(args):
    if args.action == "list":
        names = census_mod.list_examples()
        if args.json:
            print(json.dumps({"examples": names}, indent=2))
        else:
            for n in names:
                print(n)
        return 0
    if args.action == "lint":
        problems = census_mod.lint_registry()
        for p in problems:
            print(p, file=sys.stderr)
        return 0 if not problems else 1
    # run
    if args.all:
        names = census_mod.list_examples()
    elif args.name:
        names = [args.name]
    else:
        raise CliError("example run needs a name or --all")
    reports = []
    for n in names:
        reports.append(census_mod.run_example(n, seed=args.seed, field_override=args.field))
    ok = all(r.passed for r in reports)
    if args.report_dir:
        files = report_mod.write_reports(reports, args.report_dir, seed=args.seed)
        print("\n".join(files), file=sys.stderr)
    if args.json:
        print(json.dumps({
            "seed": args.seed,
            "passed": ok,
            "examples": [r.to_json() for r in reports],
        }, indent=2))
    else:
        print(report_mod.summary_table(reports))
    return 0 if ok else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed for sampling")
    common.add_argument("--field", default=None, help="coefficient field override (QQ or FF:p)")
    common.add_argument("--samples", type=int, default=3, help="generic fiber sample count")
    ap = argparse.ArgumentParser(
        prog="detachlab",
        description="Exact computer algebra for embedded point structures and flat limits.",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("gb", cmd_gb, help="reduced Groebner basis of an ideal")
    sp.add_argument("file")
    sp.add_argument("--name")

    sp = add("nf", cmd_nf, help="normal form of a polynomial")
    sp.add_argument("file")
    sp.add_argument("--name")
    sp.add_argument("--poly", required=True)

    sp = add("hilbert", cmd_hilbert, help="Hilbert polynomial and invariants")
    sp.add_argument("file")
    sp.add_argument("--name")
    sp.add_argument("--affine", action="store_true", help="use the degree filtration")

    sp = add("syz", cmd_syz, help="syzygies of the generators")
    sp.add_argument("file")
    sp.add_argument("--name")

    sp = add("ideal-op", cmd_ideal_op, help="sum/product/intersect/quotient/saturate/eliminate/specialize")
    sp.add_argument("kind")
    sp.add_argument("file")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--vars")
    sp.add_argument("--assign")

    sp = add("local", cmd_local, help="minimal local generator count at a point")
    sp.add_argument("file")
    sp.add_argument("--name")
    sp.add_argument("--point", required=True)
    sp.add_argument("--chart")

    sp = add("blowup", cmd_blowup, help="blow-up fiber and detachability at a point")
    sp.add_argument("file")
    sp.add_argument("--name")
    sp.add_argument("--point", required=True)
    sp.add_argument("--chart")
    sp.add_argument("--ambient", type=int, default=None)
    sp.add_argument("--off-scheme", action="store_true")

    sp = add("structure", cmd_structure, help="kernel and closed form of a structure")
    sp.add_argument("file")
    sp.add_argument("--name", required=True)

    sp = add("detach", cmd_detach, help="construct a detachment family")
    sp.add_argument("file")
    sp.add_argument("--name", required=True)

    sp = add("flat-limit", cmd_flat_limit, help="flat limit of a family at parameter zero")
    sp.add_argument("file")
    sp.add_argument("--name")
    sp.add_argument("--param")

    sp = add("verify", cmd_verify, help="verify a detachment family against its target")
    sp.add_argument("file")
    sp.add_argument("--family", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--points", type=int, default=None)

    sp = add("tangent", cmd_tangent, help="degree-zero Hom(I, S/I) dimension")
    sp.add_argument("file")
    sp.add_argument("--name")

    sp = add("end", cmd_end, help="endomorphism algebra of a finite module")
    sp.add_argument("file")
    sp.add_argument("--name", required=True)

    sp = add("example", cmd_example, help="census runner")
    sp.add_argument("action", choices=["list", "run", "lint"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--report-dir", default=None)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, CliError, RingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (GBError, HilbertError, LocalGeomError, structures_mod.StructureError,
            families_mod.FamilyError, tangent_mod.TangentError, census_mod.CensusError) as e:
        print(f"computation failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
