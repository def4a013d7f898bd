"""Command-line front end.

Subcommands:
  classify      full pipeline for one equation: invariants, fibration kind,
                Kodaira fibers (elliptic case), singular points, RDP classes
  check-config  Theorem-1.1 decision for an RDP configuration string
  verify-tables re-verify the shipped classification tables
  lattice       E8 embedding classes, quotient invariants, condition flags
  tjurina       deformation-space dimension of a 3-variable singularity

Output is human-readable text by default; --json emits the structured
report (stable field names).  Exit code 0 on success / all-pass, 1 on
verification failure, 2 on input error.  Diagnostics go to stderr.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from . import catalog as catalog_mod
from .expr import EquationShapeError, ParseError, eval_local, parse_expression, parse_weierstrass
from .fibers import fiber_configuration
from .gf import ExtensionBudgetError, FieldTower
from .lattice import (check_conditions, classes_of_type, decide_occurrence,
                      enumerate_subsystems)
from .poly import PositiveDimensionalError
from .rdp import (InvalidConfigError, parse_configuration, parse_dynkin,
                  render_configuration, render_dynkin)
from .singularity import (NotRdpError, TjurinaUncertifiedError, classify_rdp,
                          surface_configuration, tjurina_dimension)
from .weierstrass import compute_invariants, fibration_kind


class InputError(ValueError):
    pass


@dataclass
class EquationSource:
    """A parsed equation together with its source text; printing the parsed
    equation and re-parsing yields an identical value."""
    char: int
    text: str
    equation: object

    @staticmethod
    def parse(text, K):
        eq = parse_weierstrass(text, K)
        src = EquationSource(K.p, text, eq)
        if parse_weierstrass(eq.format(), K) != eq:
            raise AssertionError("equation print/parse round trip failed")
        return src


def _field(p):
    try:
        return FieldTower.prime(p)
    except ValueError as exc:
        raise InputError(str(exc))


def _require_char(args):
    if args.char is None:
        raise InputError("--char is mandatory")
    return args.char


def cmd_classify(args):
    p = _require_char(args)
    K = _field(p)
    try:
        eq = EquationSource.parse(args.eq, K).equation
    except (ParseError, EquationShapeError) as exc:
        raise InputError(str(exc))
    inv = compute_invariants(eq)
    report = {"command": "classify", "char": p, "equation": eq.format(),
              "delta": inv.delta.format()}
    red = inv.j_reduced()
    if red is None:
        report["j"] = "undefined"
    else:
        num, den = red
        ns, ds = num.format(), den.format()
        if " + " in ns:
            ns = "(%s)" % ns
        if " + " in ds:
            ds = "(%s)" % ds
        report["j"] = ns if ds == "1" else "%s / %s" % (ns, ds)
    kind = fibration_kind(eq)
    report["kind"] = kind
    report["fibers"] = []
    report["singular_points"] = []
    if kind == "invalid":
        report["configuration"] = None
        return report, 0
    fib = None
    if kind == "elliptic":
        fib = fiber_configuration(eq)
        for pl, kt, comps, vd in fib.places:
            r = kt.rdp()
            report["fibers"].append({
                "place": pl.form.format(), "degree": pl.degree,
                "kodaira": kt.render(), "components": comps, "v_delta": vd,
                "rdp": None if r is None else "%s%d" % r})
    from .rdp import is_taut
    classes, pts = surface_configuration(eq, fib)
    for pt, cls in zip(pts, _point_classes(pts, fib)):
        res = tjurina_dimension(pt.local)
        always = not is_taut(p, cls.letter, cls.rank)
        report["singular_points"].append({
            "chart": pt.chart,
            "coords": [pt.level.format(c) for c in pt.coords],
            "residue_degree": pt.residue_degree,
            "rdp": cls.render(always_coindex=always), "tjurina": res.dimension})
    report["configuration"] = render_configuration(classes, p)
    return report, 0


def _point_classes(pts, fib):
    from .singularity import _fiber_hint_for
    out = []
    for pt in pts:
        hint = _fiber_hint_for(pt, fib) if fib is not None else None
        out.append(classify_rdp(pt, fiber_hint=hint))
    return out


def cmd_check_config(args):
    p = args.char if args.char is not None else 0
    try:
        cfg = parse_configuration(args.config)
        verdict = decide_occurrence(cfg, p)
    except InvalidConfigError as exc:
        raise InputError(str(exc))
    report = {"command": "check-config", "char": p,
              "configuration": render_configuration(cfg, p)}
    report.update(verdict.as_dict())
    return report, 0


def cmd_verify_tables(args):
    verdicts, consistency = catalog_mod.verify_all(char=args.char,
                                                   table=args.table)
    ok = all(v.passed for v in verdicts) and consistency["pass"]
    report = {"command": "verify-tables",
              "verdicts": [v.as_dict() for v in verdicts],
              "consistency": consistency,
              "all_pass": ok}
    return report, 0 if ok else 1


def cmd_lattice(args):
    if args.type is None and not args.all:
        raise InputError("give --type or --all")
    report = {"command": "lattice", "classes": []}
    if args.all:
        for cls in enumerate_subsystems():
            report["classes"].append(cls.record())
        return report, 0
    try:
        t = parse_dynkin(args.type)
    except InvalidConfigError as exc:
        raise InputError(str(exc))
    report["type"] = render_dynkin(t)
    for cls in classes_of_type(t):
        report["classes"].append(cls.record())
    report["conditions"] = {
        "E8": check_conditions(t, 0)["E8"],
        "E8+T[l=2]": check_conditions(t, 0)["T2"],
        "E8+T[p]": {str(q): check_conditions(t, q)["Tp"] for q in (2, 3, 5, 7)},
    }
    return report, 0


def cmd_tjurina(args):
    p = _require_char(args)
    K = _field(p)
    try:
        ast = parse_expression(args.poly)
        f = eval_local(ast, K, {}, ("x", "y", "z"))
    except ParseError as exc:
        raise InputError(str(exc))
    try:
        res = tjurina_dimension(f)
    except TjurinaUncertifiedError as exc:
        raise InputError("non-isolated or too degenerate: %s" % exc)
    report = {"command": "tjurina", "char": p, "poly": f.format(),
              "dimension": res.dimension, "certified": res.certified,
              "truncation_degree": res.truncation_degree}
    return report, 0


def _emit_human(report, out):
    cmd = report["command"]
    if cmd == "classify":
        print("equation: %s  (char %d)" % (report["equation"], report["char"]),
              file=out)
        print("delta = %s" % report["delta"], file=out)
        print("j = %s" % report["j"], file=out)
        print("kind: %s" % report["kind"], file=out)
        if report["kind"] == "invalid":
            print("not an RDP del Pezzo surface "
                  "(non-isolated singular locus)", file=out)
            return
        if report["fibers"]:
            print("fibers:", file=out)
            for f in report["fibers"]:
                rdp = f["rdp"] if f["rdp"] else "smooth image"
                deg = " (degree %d place)" % f["degree"] if f["degree"] > 1 else ""
                print("  [%s]%s: %s, %d component%s, v(delta) = %d -> %s"
                      % (f["place"], deg, f["kodaira"], f["components"],
                         "" if f["components"] == 1 else "s",
                         f["v_delta"], rdp), file=out)
        if report["singular_points"]:
            print("singular points:", file=out)
            for s in report["singular_points"]:
                print("  chart %s=1, coords (%s): %s  (tjurina m = %d)"
                      % (s["chart"], ", ".join(s["coords"]), s["rdp"],
                         s["tjurina"]), file=out)
        else:
            print("singular points: none (smooth surface)", file=out)
        print("configuration: %s" % report["configuration"], file=out)
    elif cmd == "check-config":
        suffix = {"yes": "", "no": "", "only-degree-2": " (degree 2 only)"}
        print("configuration %s in characteristic %d" %
              (report["configuration"], report["char"]), file=out)
        print("occurs: %s%s" % ("yes" if report["occurs"] else "no",
                                suffix[report["degree1_witness"]]), file=out)
        print("rationale: %s" % report["rationale"], file=out)
    elif cmd == "verify-tables":
        for v in report["verdicts"]:
            if v["degree2_only"]:
                print("%-12s ----  (degree-2 only, no equation)" % v["id"],
                      file=out)
                continue
            status = "PASS" if v["pass"] else "FAIL"
            print("%-12s %s  (%d instantiations)"
                  % (v["id"], status, len(v["instantiations"])), file=out)
            for rec in v["instantiations"]:
                if not rec["pass"]:
                    print("    %s %s: %s" % (rec["subrow"], rec["assignment"],
                                             rec.get("error")), file=out)
            for w in v["warnings"]:
                print("    warning: %s" % w, file=out)
        cons = report["consistency"]
        print("theorem consistency: %s (%d checks)"
              % ("PASS" if cons["pass"] else "FAIL", cons["checks"]), file=out)
        for prob in cons["problems"]:
            print("  problem: %s" % prob, file=out)
        print("verify-tables: %s" % ("PASS" if report["all_pass"] else "FAIL"),
              file=out)
    elif cmd == "lattice":
        if "type" in report:
            print("type %s: %d embedding class(es)"
                  % (report["type"], len(report["classes"])), file=out)
        for cls in report["classes"]:
            inv = cls["invariant_factors"]
            tors = " x ".join("Z/%d" % d for d in inv) if inv else "trivial"
            print("%-14s free rank %d, torsion %s"
                  % (cls["type"], cls["free_rank"], tors), file=out)
            print("    basis: %s" % cls["basis"], file=out)
        if "conditions" in report:
            c = report["conditions"]
            print("(E8): %s, (E8+T[l=2]): %s, (E8+T[p]): %s"
                  % (c["E8"], c["E8+T[l=2]"], c["E8+T[p]"]), file=out)
    elif cmd == "tjurina":
        print("dim T_f = %d  (truncation %d, certified %s)"
              % (report["dimension"], report["truncation_degree"],
                 report["certified"]), file=out)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="delpezzo",
        description="Exact classification of rational double points on "
                    "del Pezzo surfaces")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", help="classify one Weierstrass sextic")
    c.add_argument("--char", type=int, required=True)
    c.add_argument("--eq", required=True)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("check-config",
                       help="does a configuration occur on an RDP del Pezzo?")
    c.add_argument("config", help='e.g. "E8^1", "D4^0+3A1", "2A3+2A1"')
    c.add_argument("--char", type=int, required=True)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("verify-tables", help="re-verify the shipped tables")
    c.add_argument("--table", type=int, default=None)
    c.add_argument("--char", type=int, default=None)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("lattice", help="E8 subsystem data for an ADE type")
    c.add_argument("--type", default=None, help='e.g. "D4+4A1"')
    c.add_argument("--all", action="store_true")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("tjurina", help="Tjurina-algebra dimension")
    c.add_argument("--char", type=int, required=True)
    c.add_argument("--poly", required=True,
                   help='3-variable polynomial in x, y, z')
    c.add_argument("--json", action="store_true")
    return ap


_HANDLERS = {
    "classify": cmd_classify,
    "check-config": cmd_check_config,
    "verify-tables": cmd_verify_tables,
    "lattice": cmd_lattice,
    "tjurina": cmd_tjurina,
}


def run(argv, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        report, code = _HANDLERS[args.cmd](args)
    except InputError as exc:
        print("error: %s" % exc, file=err)
        return 2
    except (ParseError, EquationShapeError, InvalidConfigError,
            ExtensionBudgetError) as exc:
        print("error: %s" % exc, file=err)
        return 2
    except (PositiveDimensionalError, NotRdpError) as exc:
        print("error: %s" % exc, file=err)
        return 1
    if getattr(args, "json", False):
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        _emit_human(report, out)
    return code


def main():
    try:
        sys.exit(run(sys.argv[1:]))
    except BrokenPipeError:
        sys.exit(0)


if __name__ == "__main__":
    main()
