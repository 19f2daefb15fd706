"""Command-line front end.

Subcommands: enumerate, table, render, validate, normal-forms and
bifurcations.  Exit codes: 0 success, 2 usage error, 3 enumeration cap
exceeded, 4 parse or validation failure, 5 normal-form catalog mismatch.
The environment variable GRADFLOW_CAP raises or lowers the point cap.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from .bifurcation import saddle_node_sites, site_profile, sn_census
from .canon import canonical_code, diagram_from_code
from .diagram import Surface, validate
from .enumerator import CapExceeded, census, enumerate_connections, enumerate_morse
from .normal_forms import (
    FAMILY_IDS,
    SWEEP,
    CatalogMismatch,
    catalog,
    family,
    verify_family,
)
from .reconcile import reconcile, report_text, write_csv
from .reference import TABLE_COLUMNS
from .render import diagram_to_dot, diagram_to_svg
from .sdg import SdgParseError, parse_diagram, print_diagram

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_VALIDATION = 4
EXIT_MISMATCH = 5

#: rows of the published summary table, in its order
TABLE_ROWS = (
    (Surface.DISK, 3), (Surface.DISK, 4), (Surface.DISK, 5),
    (Surface.DISK, 6),
    (Surface.ANNULUS, 4), (Surface.ANNULUS, 5), (Surface.ANNULUS, 6),
    (Surface.PANTS, 6),
)


def _surface(name: str) -> Surface:
    return Surface(name)


def cmd_enumerate(args) -> int:
    if args.points < 2:
        print("error: --points must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        fn = enumerate_morse if args.codim == 0 else enumerate_connections
        diagrams = fn(_surface(args.surface), args.points)
    except CapExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    blocks = []
    for d in diagrams:
        blocks.append("# code %s\n%s" % (canonical_code(d).hex(),
                                         print_diagram(d)))
    text = "\n".join(blocks)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(len(diagrams))
    return EXIT_OK


def cmd_table(args) -> int:
    rows = []
    for surface, n in TABLE_ROWS:
        row = census(surface, n)
        rows.append({"surface": surface.value, "nBefore": n,
                     **{c: row.get(c, 0) for c in TABLE_COLUMNS}})
    header = ("surface", "nBefore") + TABLE_COLUMNS
    widths = [8, 7] + [6] * len(TABLE_COLUMNS)
    fmt = " ".join("%%-%ds" % w for w in widths)
    print(fmt % header)
    for r in rows:
        print(fmt % tuple(r[k] for k in header))
    print()
    report = reconcile()
    print(report_text(report))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "census.csv"), "w",
                  newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=header)
            w.writeheader()
            w.writerows(rows)
        write_csv(report, os.path.join(args.out, "reconciliation.csv"))
        from .figures import census_figure

        census_figure(report, os.path.join(args.out, "census.png"))
        print("wrote census.csv, reconciliation.csv, census.png to %s"
              % args.out)
    return EXIT_OK


def _load_diagram(ref: str):
    """A diagram from an .sdg path or a hex canonical code."""
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            return parse_diagram(fh.read())
    try:
        return diagram_from_code(bytes.fromhex(ref))
    except ValueError as exc:
        raise SdgParseError("input is neither a readable file nor a hex "
                            "canonical code (%s)" % exc) from exc


def cmd_render(args) -> int:
    try:
        d = _load_diagram(args.input)
    except Exception as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION
    codim = 1 if d.connection_edges() else 0
    report = validate(d, codim=codim)
    if not report.ok:
        for rule, msg in report.violations:
            print("error: %s %s" % (rule, msg), file=sys.stderr)
        return EXIT_VALIDATION
    text = diagram_to_dot(d) if args.format == "dot" else diagram_to_svg(d)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        d = _load_diagram(args.input)
    except Exception as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION
    codim = 1 if d.connection_edges() else 0
    report = validate(d, codim=codim)
    if report.ok:
        print("ok (codim %d, %d points)" % (codim, d.n_vertices))
        return EXIT_OK
    for rule, msg in report.violations:
        print("%s %s" % (rule, msg))
    return EXIT_VALIDATION


def cmd_normal_forms(args) -> int:
    fids = args.family or list(FAMILY_IDS)
    sweep = tuple(args.a) if args.a else SWEEP
    rows = []
    code = EXIT_OK
    for fid in fids:
        fam = family(fid)
        for a in sweep:
            for z in catalog(fam, a):
                rows.append((fid, a, z.x, z.y, z.on_boundary, z.regular,
                             z.index))
                print("%-10s a=%+g zero (%+.6f, %+.6f) boundary=%s "
                      "regular=%s index=%+d"
                      % (fid, a, z.x, z.y, z.on_boundary, z.regular, z.index))
        if sweep == SWEEP:
            try:
                verify_family(fid)
                print("%-10s catalog verified" % fid)
            except CatalogMismatch as exc:
                print("%-10s MISMATCH: %s" % (fid, exc))
                code = EXIT_MISMATCH
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "normal_forms.csv"), "w",
                  newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("family", "a", "x", "y", "onBoundary", "regular",
                        "index"))
            w.writerows(rows)
        from .figures import family_figure

        for fid in fids:
            family_figure(fid, os.path.join(args.out, "%s.png" % fid))
        print("wrote normal_forms.csv and %d figures to %s"
              % (len(fids), args.out))
    return code


def cmd_bifurcations(args) -> int:
    try:
        diagrams = enumerate_morse(_surface(args.surface), args.points)
        if args.group_by == "kind":
            for kind, count in sn_census(_surface(args.surface),
                                         args.points).items():
                print("%-4s %d" % (kind, count))
            return EXIT_OK
        for i, d in enumerate(diagrams):
            profile = site_profile(d)
            print("diagram %d: %s" % (i, profile or "no sites"))
            for s in saddle_node_sites(d):
                print("  %s orbit=%s polarity=%s"
                      % (s.kind.name, list(s.edge_orbit), s.polarity))
    except CapExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gradflow",
        description="Census of Morse flows and their generic one-parameter "
                    "bifurcations on the sphere with holes.")
    sub = p.add_subparsers(dest="command", required=True)

    surfaces = [s.value for s in Surface]

    e = sub.add_parser("enumerate", help="list all classes as .sdg blocks")
    e.add_argument("--surface", choices=surfaces, required=True)
    e.add_argument("--points", type=int, required=True)
    e.add_argument("--codim", type=int, choices=(0, 1), default=0)
    e.add_argument("--out")
    e.set_defaults(fn=cmd_enumerate)

    t = sub.add_parser("table", help="full census plus reconciliation")
    t.add_argument("--out", help="directory for CSVs and the figure")
    t.set_defaults(fn=cmd_table)

    r = sub.add_parser("render", help="draw a diagram as dot or svg")
    r.add_argument("input", help=".sdg file or hex canonical code")
    r.add_argument("--format", choices=("dot", "svg"), default="dot")
    r.add_argument("--out")
    r.set_defaults(fn=cmd_render)

    v = sub.add_parser("validate", help="check a diagram against the rules")
    v.add_argument("input", help=".sdg file or hex canonical code")
    v.set_defaults(fn=cmd_validate)

    nf = sub.add_parser("normal-forms", help="verify the planar families")
    nf.add_argument("--family", action="append", choices=FAMILY_IDS)
    nf.add_argument("--a", type=int, action="append",
                    help="parameter values (default -1 0 1)")
    nf.add_argument("--out", help="directory for the CSV and figures")
    nf.set_defaults(fn=cmd_normal_forms)

    b = sub.add_parser("bifurcations", help="saddle-node sites per diagram")
    b.add_argument("--surface", choices=surfaces, required=True)
    b.add_argument("--points", type=int, required=True)
    b.add_argument("--group-by", choices=("kind",))
    b.set_defaults(fn=cmd_bifurcations)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
