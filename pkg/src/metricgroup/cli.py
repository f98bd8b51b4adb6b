"""``metricgroup`` command line: JSON reports on stdout.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 a resource bound was hit.
"""
import argparse
import sys
import time
from math import lcm
from pathlib import Path

from . import checks as bundles
from . import config
from .catalog import by_name
from .cocycles import (Cocycle3, abelian_cocycle_from_form, cocycle_defect, cocycle_from_triple,
                       fsexp_terms, standard_cyclic_cocycle, z2cube_volume)
from .errors import MetricGroupError, RealizationNotFound, TooLarge
from .gluetriples import enumerate_Q, equivalent, inverse, product, realize_triple, validate
from .groups import FinAbGroup
from .lattices import discriminant_form, realize
from .quadforms import is_nondegenerate, signature
from .serialize import (cocycle_from_json, disc_report, dumps, form_from_json, form_table,
                        form_to_json, group_to_json, lattice_from_json, lattice_to_json, load,
                        qtable_to_json, triple_from_json, triple_to_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Report:
    def __init__(self, argv):
        self.command = list(argv)
        self.inputs = {}
        self.results = {}
        self.checks = []

    def check(self, name, passed, detail=""):
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def extend(self, bundle):
        self.checks.extend(c.to_json() for c in bundle.checks)
        self.results.update(bundle.results)

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def to_json(self):
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "checks": self.checks, "passed": self.passed}


def _group(text):
    try:
        return FinAbGroup.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad group literal {text!r}: {exc}") from exc


def _lattice(spec):
    """A catalog name or a JSON lattice (file path or literal)."""
    if Path(spec).is_file() or spec.lstrip().startswith("{"):
        return lattice_from_json(load(spec))
    try:
        return by_name(spec)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


# -- subcommands -------------------------------------------------------------
def cmd_discform(args, report):
    lattice = _lattice(args.lattice)
    report.inputs["lattice"] = lattice_to_json(lattice)
    disc = discriminant_form(lattice)
    out = disc_report(disc)
    del out["lattice"]
    report.results.update(out)
    report.check("discriminant form is nondegenerate", is_nondegenerate(disc.form))
    report.check("signature = rank mod 8", out["signature"] == lattice.rank % 8)


def cmd_qgroup(args, report):
    G = _group(args.group)
    report.inputs["G"] = group_to_json(G)
    table = enumerate_Q(G, args.max_group_order)
    report.results.update(qtable_to_json(table, with_table=args.table))
    report.check("Q(G) is an abelian group", table.check_group_axioms())
    if args.realize:
        realized = []
        for k, t in enumerate(table.classes):
            r = realize_triple(t)
            sigma = signature(t.q)
            realized.append({"class": k, "L": lattice_to_json(r.L), "rank": r.L.rank,
                             "signature": sigma, "sign": r.sign})
            report.check(f"class {k}: E is even unimodular",
                         r.E.is_even() and r.E.is_unimodular())
            report.check(f"class {k}: recovered triple matches up to sign", r.round_trip_ok)
            report.check(f"class {k}: rank(L) = signature mod 8", r.L.rank % 8 == sigma)
        report.results["realizations"] = realized


def cmd_verify(args, report):
    if args.example not in bundles.BUNDLES:
        raise UsageError(f"unknown example {args.example!r}; "
                         f"choose from {', '.join(bundles.BUNDLES)}")
    if args.n is not None and args.example != "niemeier":
        raise UsageError("--n only applies to the niemeier example")
    kwargs = {"n": 2 if args.n is None else args.n} if args.example == "niemeier" else {}
    if kwargs and kwargs["n"] < 2:
        raise UsageError("--n must be at least 2")
    report.inputs = {"example": args.example, **kwargs}
    report.extend(bundles.run(args.example, **kwargs))


def _cocycle(G, spec):
    """Parse ``zero``, ``z2cube-volume``, ``cyclic:K``, ``from-form:F``, ``from-triple:F`` or a file."""
    if spec == "zero":
        return Cocycle3.zero(G)
    if spec == "z2cube-volume":
        omega = z2cube_volume()
        if G.factors != omega.group.factors:
            raise UsageError("z2cube-volume lives on 2,2,2")
        return omega
    kind, _, arg = spec.partition(":")
    if kind == "cyclic" and arg:
        if G.rank != 1:
            raise UsageError("cyclic:K needs a cyclic group")
        return standard_cyclic_cocycle(G.factors[0], int(arg))
    if kind == "from-form" and arg:
        q = form_from_json(load(arg))
        if q.group.factors != G.factors:
            raise UsageError(f"form lives on {q.group}, not {G}")
        return abelian_cocycle_from_form(q).omega
    if kind == "from-triple" and arg:
        t = triple_from_json(load(arg))
        if t.G.factors != G.factors:
            raise UsageError(f"triple is for {t.G}, not {G}")
        return cocycle_from_triple(t)
    omega = cocycle_from_json(load(spec))
    if omega.group.factors != G.factors:
        raise UsageError(f"cocycle lives on {omega.group}, not {G}")
    return omega


def cmd_fsexp(args, report):
    G = _group(args.group)
    report.inputs = {"G": group_to_json(G), "cocycle": args.cocycle}
    omega = _cocycle(G, args.cocycle)
    bad = cocycle_defect(omega)
    if bad is not None:
        raise UsageError("cocycle identity fails at (x, y, z, w) = "
                         f"{tuple(list(v) for v in bad)}")
    terms = fsexp_terms(omega)
    report.results["terms"] = [{"generator": list(t.generator), "order": t.order,
                                "class_order": t.class_order,
                                "contribution": t.contribution} for t in terms]
    report.results["fsexp"] = lcm(1, *(t.contribution for t in terms))
    report.check("omega is a 3-cocycle", True)


def cmd_realize(args, report):
    q = form_from_json(load(args.form))
    report.inputs["form"] = form_to_json(q)
    if args.sig is not None:
        report.inputs["sig"] = args.sig
    lattice, disc, iso = realize(q, args.sig, max_blocks=args.max_blocks, max_pads=args.max_pads,
                                 min_rank=args.min_rank, max_glue=args.max_glue)
    report.results.update({"lattice": lattice_to_json(lattice), "rank": lattice.rank,
                           "det": lattice.det, "signature": signature(q),
                           "isometry": [list(y) for y in iso.hom.images]})
    report.check("lattice is even", lattice.is_even())
    report.check("discriminant form is equivalent to the input",
                 all(disc.form(iso(x)) == q(x) for x in q.group.elements()))
    report.check("rank = signature mod 8", lattice.rank % 8 == signature(q))


def _diagnostics(diag):
    return [{"name": n, "passed": ok, "detail": d} for n, ok, d in diag.checks]


def cmd_triple(args, report):
    files = args.files
    need = {"validate": 1, "invert": 1, "product": 2, "equiv": 2}[args.action]
    if len(files) != need:
        raise UsageError(f"triple {args.action} takes {need} file(s)")
    triples = [triple_from_json(load(f)) for f in files]
    report.inputs["triples"] = [triple_to_json(t) for t in triples]
    for k, t in enumerate(triples):
        diag = validate(t)
        if not diag.valid and args.action != "validate":
            name, detail = diag.first_failure
            raise UsageError(f"triple {k} is invalid: {name} {detail}".rstrip())
    if args.action == "validate":
        diag = validate(triples[0])
        report.checks.extend(_diagnostics(diag))
        report.results["valid"] = diag.valid
    elif args.action == "invert":
        out = inverse(triples[0])
        report.results["triple"] = triple_to_json(out)
        report.check("inverse is a valid triple", validate(out).valid)
    elif args.action == "product":
        out = product(*triples)
        report.results["triple"] = triple_to_json(out)
        report.results["q_table"] = form_table(out.q)
        report.check("product is a valid triple", validate(out).valid)
    else:
        iso = equivalent(*triples)
        report.results["equivalent"] = iso is not None
        if iso is not None:
            report.results["isometry"] = [list(y) for y in iso.hom.images]


COMMANDS = {"discform": cmd_discform, "qgroup": cmd_qgroup, "verify": cmd_verify,
            "fsexp": cmd_fsexp, "realize": cmd_realize, "triple": cmd_triple}


def build_parser():
    p = argparse.ArgumentParser(prog="metricgroup",
                                description="Discriminant forms, glue triples and cocycles.")
    p.add_argument("--pretty", action="store_true", help="indent the JSON report")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    # the same flags after the subcommand; SUPPRESS keeps them from resetting the global ones
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("discform", parents=[common], help="discriminant form of a lattice")
    s.add_argument("lattice", help="catalog name (A1, E7, E8, D16, Gamma16, NiemeierA1_24, "
                                   "A<n>, D<n>, E6, <2k>) or a JSON lattice file")

    s = sub.add_parser("qgroup", parents=[common], help="enumerate the group Q(G) of glue-triple classes")
    s.add_argument("group", help="group literal such as 2,2")
    s.add_argument("--table", action="store_true", help="include the Cayley table")
    s.add_argument("--realize", action="store_true", help="realize every class by lattices")
    s.add_argument("--max-group-order", type=int, default=config.DEFAULT_Q_ORDER)

    s = sub.add_parser("verify", parents=[common], help="run a verification bundle")
    s.add_argument("example", help=", ".join(bundles.BUNDLES))
    s.add_argument("--n", type=int, default=None)

    s = sub.add_parser("fsexp", parents=[common], help="Frobenius-Schur exponent of a 3-cocycle")
    s.add_argument("group")
    s.add_argument("cocycle", help="zero | z2cube-volume | cyclic:K | from-form:FILE | "
                                   "from-triple:FILE | FILE")

    s = sub.add_parser("realize", parents=[common], help="even lattice with a given discriminant form")
    s.add_argument("form", help="JSON form file")
    s.add_argument("--sig", type=int, default=None)
    s.add_argument("--max-blocks", type=int, default=3)
    s.add_argument("--max-pads", type=int, default=2)
    s.add_argument("--max-glue", type=int, default=4)
    s.add_argument("--min-rank", type=int, default=0)

    s = sub.add_parser("triple", parents=[common], help="glue-triple operations")
    s.add_argument("action", choices=["validate", "product", "invert", "equiv"])
    s.add_argument("files", nargs="+")
    return p


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    report = Report(argv)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        COMMANDS[args.command](args, report)
        code = EXIT_OK if report.passed else EXIT_FAIL
    except (TooLarge, RealizationNotFound) as exc:
        code = EXIT_BOUND
        error = {"kind": type(exc).__name__, "message": str(exc),
                 "max_order": config.max_order(),
                 "note": "bounds are flags (--max-group-order, --max-blocks, --max-glue, "
                         "--max-pads) or METRICGROUP_MAX_ORDER"}
    except (UsageError, MetricGroupError, ValueError, KeyError, OSError) as exc:
        code = EXIT_USAGE
        error = {"kind": type(exc).__name__, "message": str(exc)}
    out = report.to_json()
    if code in (EXIT_BOUND, EXIT_USAGE):
        out["error"] = error
        out["passed"] = False
        print(f"metricgroup: {error['message']}", file=sys.stderr)
    if args.timing:
        out["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    print(dumps(out, pretty=args.pretty), file=stdout)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
