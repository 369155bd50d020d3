"""Command line front end: run verification suites and dump computed
tables as json or csv."""

import argparse
import json
import sys


class UnknownSuite(Exception):
    pass


class BadParams(Exception):
    pass


SUITE_NAMES = (
    "klr-relations", "klr-basis", "phi-iso", "phi-intertwiners",
    "ideal-almost-ordered", "hecke-relations", "hecke-dictionary",
    "hecke-specialize", "fock-bracket", "weyl-upsilon",
    "center-resind", "koszul-dual",
)

DUMP_NAMES = ("graded-dims", "coset-reps", "structure-basis", "quad-dual")


def _parse_ints(text, flag):
    try:
        return tuple(int(x) for x in str(text).split(","))
    except ValueError:
        raise BadParams("%s expects comma-separated integers" % flag)


def _pairs_from(args):
    if args.e is None:
        return None
    if args.e < 2:
        raise BadParams("e must be at least 2")
    k = 0 if args.k is None else args.k
    if not 0 <= k < args.e:
        raise BadParams("k must satisfy 0 <= k < e")
    return ((args.e, k),)


def run_suite(name, args):
    """Dispatch a suite by name, translating command-line flags into
    suite parameters; flags that were not given keep the suite's
    defaults."""
    from . import suites

    if name not in SUITE_NAMES:
        raise UnknownSuite(name)
    kw = {}

    def put(key, value):
        if value is not None:
            kw[key] = value

    if name == "klr-relations":
        put("es", (args.e,) if args.e else None)
        put("max_height", args.max_height)
        put("degree_bound", args.degree_bound)
        put("seed", args.seed)
        fn = suites.suite_klr_relations
    elif name == "klr-basis":
        put("es", (args.e,) if args.e else None)
        put("max_height", args.max_height)
        put("degree_bound", args.degree_bound)
        fn = suites.suite_klr_basis
    elif name == "phi-iso":
        put("pairs", _pairs_from(args))
        put("max_height", args.max_height)
        put("degree_bound", args.degree_bound)
        fn = suites.suite_phi_iso
    elif name == "phi-intertwiners":
        put("pairs", _pairs_from(args))
        put("max_height", args.max_height)
        fn = suites.suite_phi_intertwiners
    elif name == "ideal-almost-ordered":
        put("pairs", _pairs_from(args))
        put("max_bar_height", args.max_height)
        put("degree_bound", args.degree_bound)
        fn = suites.suite_ideal_almost_ordered
    elif name == "hecke-relations":
        put("dmax", args.max_height)
        put("degree_bound", args.degree_bound)
        put("seed", args.seed)
        fn = suites.suite_hecke_relations
    elif name == "hecke-dictionary":
        if args.window is not None:
            win = _parse_ints(args.window, "--window")
            if len(win) != 2 or win[0] >= win[1]:
                raise BadParams("window must be lo,hi with lo < hi")
            kw["window"] = win
        fn = suites.suite_hecke_dictionary
    elif name == "hecke-specialize":
        if args.e is not None:
            if args.e < 2:
                raise BadParams("e must be at least 2")
            kw["es"] = (args.e,)
        fn = suites.suite_hecke_specialize
    elif name == "fock-bracket":
        if args.e is not None:
            if args.e < 2:
                raise BadParams("e must be at least 2")
            kw["es"] = (args.e,)
        if args.k is not None:
            es = kw.get("es", (2, 3))
            if any(args.k >= e for e in es) or args.k < 0:
                raise BadParams("k must satisfy 0 <= k < e")
            kw["ks"] = (args.k,)
        if args.window is not None:
            win = _parse_ints(args.window, "--window")
            if len(win) != 2 or win[0] >= win[1]:
                raise BadParams("window must be lo,hi with lo < hi")
            kw["window"] = win
        fn = suites.suite_fock_bracket
    elif name == "weyl-upsilon":
        put("es", (args.e,) if args.e else None)
        put("seed", args.seed)
        fn = suites.suite_weyl_upsilon
    elif name == "center-resind":
        put("D", args.degree_bound)
        put("seed", args.seed)
        fn = suites.suite_center_resind
    else:
        put("D", args.degree_bound)
        put("seed", args.seed)
        fn = suites.suite_koszul_dual
    try:
        return fn(**kw)
    except ValueError as exc:
        raise BadParams(str(exc))


# -- dumps


def _dump_graded_dims(args):
    from .klr import KLRContext
    from .quiver import DimVec, Quiver

    if args.e is None or args.nu is None:
        raise BadParams("graded-dims needs --e and --nu "
                        "(vertex multiplicities)")
    if args.e < 2:
        raise BadParams("e must be at least 2")
    mult = _parse_ints(args.nu, "--nu")
    if len(mult) > args.e or any(m < 0 for m in mult) or sum(mult) == 0:
        raise BadParams("--nu lists nonnegative multiplicities of the "
                        "residues 0..e-1, not all zero")
    quiver = Quiver.cyclic(args.e)
    verts = sorted(quiver.vertices, key=repr)
    alpha = DimVec({verts[i]: m for i, m in enumerate(mult) if m})
    D = 4 if args.degree_bound is None else args.degree_bound
    ctx = KLRContext(quiver, alpha)
    from .scalars import all_perms

    dmin = min((ctx.word_degree(w, i) for i in ctx.seqs
                for w in all_perms(ctx.d)), default=0)
    rows = [{"degree": m, "dim": len(ctx.basis_in_degree(m))}
            for m in range(dmin, D + 1)]
    return rows, ("degree", "dim")


def _dump_coset_reps(args):
    from .weyl import AffPerm, coset_reps, one_mu

    if args.nu is None or args.window is None:
        raise BadParams("coset-reps needs --nu (composition) and "
                        "--window (truncation point)")
    mu = _parse_ints(args.nu, "--nu")
    if any(m < 0 for m in mu) or sum(mu) == 0:
        raise BadParams("composition parts must be nonnegative, "
                        "not all zero")
    win = _parse_ints(args.window, "--window")
    if len(win) != sum(mu):
        raise BadParams("window length must match the composition size")
    try:
        v = AffPerm(win)
    except ValueError as exc:
        raise BadParams(str(exc))
    reps = coset_reps(one_mu(mu), v)
    rows = [{"length": w.length(), "window": list(w.win)} for w in reps]
    return rows, ("length", "window")


def _dump_structure_basis(args):
    from .center import structure_basis
    from .weyl import AffPerm, coset_reps, one_mu

    if args.nu is None or args.window is None:
        raise BadParams("structure-basis needs --nu and --window")
    mu = _parse_ints(args.nu, "--nu")
    win = _parse_ints(args.window, "--window")
    if len(win) != sum(mu) or sum(mu) == 0:
        raise BadParams("window length must match the composition size")
    try:
        v = AffPerm(win)
    except ValueError as exc:
        raise BadParams(str(exc))
    D = 4 if args.degree_bound is None else args.degree_bound
    elements = coset_reps(one_mu(mu), v)
    table = structure_basis(elements, D)
    rows = []
    for d in sorted(table):
        for c, comp in enumerate(table[d]):
            for i, mono in sorted(comp):
                rows.append({"degree": d, "component": c,
                             "element": i, "monomial": list(mono)})
    return rows, ("degree", "component", "element", "monomial")


def _dump_quad_dual(args):
    from .koszul import QuadPresentation, quadratic_dual

    if not args.input:
        raise BadParams("quad-dual needs an input presentation file")
    try:
        with open(args.input) as fh:
            data = json.load(fh)
        P = QuadPresentation.from_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise BadParams("unreadable presentation: %s" % exc)
    dual = quadratic_dual(P).to_dict()
    rows = [{"field": "idempotents", "value": dual["idempotents"]},
            {"field": "arrows", "value": dual["arrows"]},
            {"field": "relations", "value": dual["relations"]}]
    return dual, rows


def run_dump(name, args):
    if name not in DUMP_NAMES:
        raise BadParams("unknown dump object: %s" % name)
    fmt = args.format or "json"
    if fmt not in ("json", "csv"):
        raise BadParams("format must be json or csv")
    if name == "quad-dual":
        obj, rows = _dump_quad_dual(args)
        if fmt == "json":
            return json.dumps(obj, indent=2, sort_keys=False)
        return _csv(rows, ("field", "value"))
    fn = {"graded-dims": _dump_graded_dims,
          "coset-reps": _dump_coset_reps,
          "structure-basis": _dump_structure_basis}[name]
    rows, fields = fn(args)
    if fmt == "json":
        return json.dumps(rows, indent=2)
    return _csv(rows, fields)


def _csv(rows, fields):
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(fields)
    for row in rows:
        writer.writerow([json.dumps(row[f])
                         if isinstance(row[f], (list, dict)) else row[f]
                         for f in fields])
    return buf.getvalue().rstrip("\n")


# -- entry point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quiverhecke",
        description="Verification suites and tables for graded algebras "
                    "attached to cyclic quivers.")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--e", type=int, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--nu", type=str, default=None)
        p.add_argument("--max-height", type=int, default=None,
                       dest="max_height")
        p.add_argument("--degree-bound", type=int, default=None,
                       dest="degree_bound")
        p.add_argument("--window", type=str, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", type=str, default=None,
                       choices=("json", "csv"))

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", help="one of: %s" % ", ".join(SUITE_NAMES))
    common(pv)

    pd = sub.add_parser("dump", help="emit a computed table")
    pd.add_argument("object", help="one of: %s" % ", ".join(DUMP_NAMES))
    pd.add_argument("input", nargs="?", default=None,
                    help="input file for quad-dual")
    common(pd)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        try:
            report = run_suite(args.suite, args)
        except UnknownSuite as exc:
            print("UnknownSuite: %s" % exc, file=sys.stderr)
            return 2
        except BadParams as exc:
            print("BadParams: %s" % exc, file=sys.stderr)
            return 2
        print(json.dumps(report, indent=2, default=str))
        ok = all(c["status"] == "pass" for c in report["checks"])
        return 0 if ok else 1
    if args.command == "dump":
        try:
            print(run_dump(args.object, args))
        except BadParams as exc:
            print("BadParams: %s" % exc, file=sys.stderr)
            return 2
        return 0
    parser.print_help()
    return 2


if __name__ == "__main__":
    sys.exit(main())
