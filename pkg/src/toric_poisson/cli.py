"""Command-line entry point: ``toric-poisson validate|atlas|poisson|modular|verify``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .charts import atlas, chart_to_record, to_real
from .documents import DocumentError, PolytopeDocument, load_document, to_csv, to_json
from .moment import (
    ZeroLocusError,
    figure_data,
    figure_rows,
    probe_centroid_condition,
    solve_zero_locus,
)
from .poisson import QuadraticBivector, bivector_at
from .polytope import PolytopeError, centered_simplex, check_delzant, format_labels, recenter_at_centroid
from .verify import SuiteConfig, run_suite, sample_annulus

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2

EXPERIMENTAL_BANNER = (
    "WARNING: experimental mode. The centroid property of the modular zero locus is only\n"
    "established for CP^n; rows below are exploratory and report the discrepancy."
)


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("TORIC_POISSON_SEED")
    return int(env) if env else 0


def _load(args) -> PolytopeDocument:
    return load_document(args.file)


def _require_delzant(doc: PolytopeDocument, err) -> bool:
    report = check_delzant(doc.polytope)
    for v in report.failures:
        print(f"not Delzant at vertex {format_labels(v.labels)}: |det| = {abs(v.determinant)}", file=err)
    return report.passed


def cmd_validate(args, out=sys.stdout, err=sys.stderr) -> int:
    doc = _load(args)
    report = check_delzant(doc.polytope)
    for v in report.verdicts:
        point = "(" + ", ".join(str(x) for x in v.vertex) + ")"
        gens = " ".join("(" + ",".join(map(str, g)) + ")" for g in v.edge_generators)
        verdict = "ok" if v.passed else "FAIL"
        print(f"vertex {point} labels {format_labels(v.labels)} edges {gens} |det| = {abs(v.determinant)} {verdict}", file=out)
    print(f"{doc.name}: {'Delzant' if report.passed else 'not Delzant'}", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_atlas(args, out=sys.stdout, err=sys.stderr) -> int:
    doc = _load(args)
    if not _require_delzant(doc, err):
        return EXIT_FAIL
    records = [chart_to_record(c) for c in atlas(doc.polytope)]
    print(to_json({"polytope": doc.name, "charts": records}), file=out)
    return EXIT_OK


def cmd_poisson(args, out=sys.stdout, err=sys.stderr) -> int:
    """Coefficient matrices B_V and the real bivector matrix at seeded sample points."""
    doc = _load(args)
    if not _require_delzant(doc, err):
        return EXIT_FAIL
    rng = np.random.default_rng(resolve_seed(args.seed))
    scale_note = "kappa" if doc.kappa_factor else "1"
    charts = []
    for chart in atlas(doc.polytope):
        pi = QuadraticBivector.from_chart(chart, doc.kappa_factor)
        w = sample_annulus(rng, args.samples, chart.n)
        charts.append({
            "labels": list(chart.labels),
            "B": [list(r) for r in chart.B],
            "detB": chart.det_b,
            "samples": [
                {"x": to_real(wi), "P": bivector_at(pi, wi)} for wi in w
            ],
        })
    print(to_json({"polytope": doc.name, "scale": scale_note, "charts": charts}), file=out)
    return EXIT_OK


def cmd_modular(args, out=sys.stdout, err=sys.stderr) -> int:
    if args.cpn is not None:
        if args.cpn < 1:
            print("--cpn needs n >= 1", file=err)
            return EXIT_PARSE
        p, name = centered_simplex(args.cpn), f"cp{args.cpn}"
    elif args.file is not None:
        doc = _load(args)
        if not _require_delzant(doc, err):
            return EXIT_FAIL
        p, name = doc.polytope, doc.name
    else:
        print("modular needs a document or --cpn n", file=err)
        return EXIT_PARSE
    centered = recenter_at_centroid(p)
    faces = sorted(centered.face_lattice, key=lambda f: (len(f), sorted(f)))
    simplex = p.facet_count == p.dim + 1
    if args.experimental:
        print(EXPERIMENTAL_BANNER, file=err)
        header = ["labels", "centroid", "image", "discrepancy"]
        rows = []
        for labels in faces:
            probe = probe_centroid_condition(centered, labels)
            rows.append((format_labels(labels), _exact(probe.centroid), _floats(probe.image),
                         _floats(probe.discrepancy)))
    else:
        if not simplex:
            print(f"{name}: modular zero locus needs a simplex; use --experimental to explore", file=err)
            return EXIT_FAIL
        header = ["labels", "centroid", "image", "residual"]
        rows = []
        for labels in faces:
            try:
                z = solve_zero_locus(centered, labels)
            except ZeroLocusError as exc:
                print(str(exc), file=err)
                return EXIT_FAIL
            rows.append((format_labels(labels), _exact(z.centroid), _floats(z.image), z.residual))
    out.write(to_csv(header, rows))
    if args.figure is not None:
        _write_figure(args, p, err)
    return EXIT_OK


def _write_figure(args, p, err) -> None:
    n = p.dim
    if n not in (1, 2) or p.facet_count != n + 1:
        print("figure output is available for CP^1 and CP^2 only", file=err)
        return
    directory = Path(args.figure)
    directory.mkdir(parents=True, exist_ok=True)
    data = figure_data(n)
    (directory / f"modular-cp{n}.csv").write_text(to_csv(["kind", "label", "x", "y"], figure_rows(data)))
    try:
        from .plotting import render_figure

        render_figure(data, directory / f"modular-cp{n}.png")
    except RuntimeError as exc:
        print(str(exc), file=err)


def _exact(v) -> str:
    return " ".join(str(x) for x in v)


def _floats(v) -> str:
    return " ".join(format(float(x), ".17g") for x in v)


def cmd_verify(args, out=sys.stdout, err=sys.stderr) -> int:
    doc = _load(args)
    config = SuiteConfig(
        seed=resolve_seed(args.seed),
        samples=args.samples,
        tolerance_scale=args.tolerance_scale,
        kappa_factor=doc.kappa_factor,
        h=float(doc.h),
    )
    try:
        reports = run_suite(doc.polytope, config)
    except PolytopeError as exc:
        print(f"refusing to verify: {exc}", file=err)
        return EXIT_FAIL
    print(to_json([r.to_record() for r in reports]), file=out)
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.name}: residual {r.max_residual:.3e} > {r.tolerance:.1e}", file=err)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-poisson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, file_required=True):
        p = sub.add_parser(name, help=help)
        if file_required:
            p.add_argument("file", help="polytope document path or bundled name (e.g. cp2, square)")
        else:
            p.add_argument("file", nargs="?", help="polytope document path or bundled name")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the Delzant condition vertex by vertex")
    add("atlas", cmd_atlas, "emit the vertex chart atlas as JSON")
    p = add("poisson", cmd_poisson, "emit B_V and sampled bivector matrices as JSON")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=2)
    p = add("modular", cmd_modular, "emit the modular zero-locus table as CSV", file_required=False)
    p.add_argument("--cpn", type=int, help="use the CP^n simplex instead of a document")
    p.add_argument("--experimental", action="store_true", help="run the centroid solve on any polytope")
    p.add_argument("--figure", metavar="DIR", help="also write plot CSV and PNG to DIR (n = 1, 2)")
    p = add("verify", cmd_verify, "run the numerical check suite, JSON reports")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tolerance-scale", type=float, default=1.0)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out=out, err=err)
    except DocumentError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
