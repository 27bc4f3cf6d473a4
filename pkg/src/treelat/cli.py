"""Command-line front end.

Subcommands: validate, analyze, generate, verify, export.  Reports are
canonical JSON with --json (fixed key order, integers only, no timestamps;
the provenance digest is derived from the input bytes alone), so identical
input files produce byte-identical reports.

Exit codes: 0 success (warnings allowed), 1 on I/O or parse failures,
2 on validation errors or bad parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass

import treelat
from treelat import matio
from treelat._threads import worker_count
from treelat.complex_model import (
    ComplexFormatError,
    SquareComplex,
    ValidationReport,
    expand_directed_squares,
    load_complex,
    validate_vht,
)
from treelat.homology import ChainMaps, HomologyReport, TheoremVerdict, chain_maps, homology_report, verify_main_theorem
from treelat.mozes import MozesParameterError, generate_mozes_complex
from treelat.tiling_system import (
    ConnectivityReport,
    K0Result,
    TilingSystem,
    build_tiling,
    connectivity,
    k0_rank,
    stacked_matrix,
)

EXPORTABLE = ("m1", "m2", "stacked", "d1", "d2", "phi1", "phi2")


@dataclass
class Analysis:
    complex: SquareComplex
    validation: ValidationReport
    expanded: tuple
    tiling: TilingSystem
    maps: ChainMaps
    homology: HomologyReport
    connectivity: ConnectivityReport
    k0: K0Result
    theorem: TheoremVerdict


def analyze_document(text: str) -> tuple[ValidationReport, Analysis | None]:
    """Full pipeline; returns (validation, None) when validation fails."""
    c = load_complex(text)
    validation = validate_vht(c)
    if validation.errors:
        return validation, None
    r = expand_directed_squares(c)
    ts = build_tiling(r, c)
    maps = chain_maps(c, r)
    return validation, Analysis(
        complex=c,
        validation=validation,
        expanded=r,
        tiling=ts,
        maps=maps,
        homology=homology_report(c, r, maps),
        connectivity=connectivity(ts, c),
        k0=k0_rank(ts),
        theorem=verify_main_theorem(c, r, ts, maps),
    )


def _issues(items) -> list[dict]:
    return [{"kind": i.kind, "message": i.message} for i in items]


def _counts_dict(c: SquareComplex) -> dict:
    return {
        "vertices": len(c.vertices),
        "h_edges": len(c.h_edges),
        "v_edges": len(c.v_edges),
        "squares": len(c.squares),
        "directed_squares": 4 * len(c.squares),
    }


def _validation_dict(v: ValidationReport) -> dict:
    return {"errors": _issues(v.errors), "warnings": _issues(v.warnings)}


def _group_dict(g) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion)}


def _theorem_dict(t: TheoremVerdict) -> dict:
    return {
        "within_hypotheses": t.within_hypotheses,
        "diagram_commutes": t.diagram_commutes,
        "rank_ker_d2": t.rank_ker_d2,
        "rank_ker_stacked": t.rank_ker_stacked,
        "ranks_equal": t.ranks_equal,
        "phi2_image_in_kernel": t.phi2_image_in_kernel,
        "kernel_in_phi2_image": t.kernel_in_phi2_image,
        "kernel_symmetries_hold": t.kernel_symmetries_hold,
        "mu_vanishes": t.mu_vanishes,
        "holds": t.holds,
    }


def _provenance(data: bytes) -> dict:
    return {
        "input_sha256": hashlib.sha256(data).hexdigest(),
        "tool_version": treelat.__version__,
    }


def build_report(a: Analysis, input_bytes: bytes) -> dict:
    m1_sums = a.tiling.m1.column_sums()
    m2_sums = a.tiling.m2.column_sums()

    def span(sums):
        return [min(sums), max(sums)] if sums else [0, 0]

    conn = a.connectivity
    return {
        "counts": _counts_dict(a.complex),
        "validation": _validation_dict(a.validation),
        "homology": {
            "h0": _group_dict(a.homology.h0),
            "h1": _group_dict(a.homology.h1),
            "h2_rank": a.homology.h2_rank,
            "euler_characteristic": a.homology.euler_characteristic,
        },
        "tiling": {
            "kernel_rank": a.k0.kernel_rank,
            "k0_rank": a.k0.k0_rank,
            "k1_rank": a.k0.k1_rank,
            "column_sum_range": {"m1": span(m1_sums), "m2": span(m2_sums)},
            "hypotheses": {
                "one_vertex": a.k0.hypotheses.one_vertex,
                "gh_strongly_connected": a.k0.hypotheses.gh_strongly_connected,
                "gv_strongly_connected": a.k0.hypotheses.gv_strongly_connected,
                "matrices_irreducible": a.k0.hypotheses.matrices_irreducible,
                "irreducible_lattice_asserted": a.k0.hypotheses.irreducible_lattice_asserted,
                "interpretation_supported": a.k0.hypotheses.interpretation_supported,
            },
        },
        "connectivity": {
            "gh_strong": conn.horizontal.strongly_connected,
            "gv_strong": conn.vertical.strongly_connected,
            "gh_weak": conn.horizontal.weakly_connected,
            "gv_weak": conn.vertical.weakly_connected,
            "gh_scc_count": conn.horizontal.scc_count,
            "gv_scc_count": conn.vertical.scc_count,
            "edge_graph_components": {
                "gh_B": [
                    {"vertices": k.vertices, "edges": k.edges, "oriented_edges": k.oriented_edges}
                    for k in conn.gh_b_components
                ],
                "gv_A": [
                    {"vertices": k.vertices, "edges": k.edges, "oriented_edges": k.oriented_edges}
                    for k in conn.gv_a_components
                ],
            },
        },
        "theorem": _theorem_dict(a.theorem),
        "provenance": _provenance(input_bytes),
    }


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_input(path: str) -> bytes | None:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None


def _human_validation(c: SquareComplex | None, v: ValidationReport) -> str:
    lines = []
    if c is not None:
        n = _counts_dict(c)
        lines.append(
            f"{n['vertices']} vertices, {n['h_edges']} horizontal + "
            f"{n['v_edges']} vertical edges, {n['squares']} squares"
        )
    for issue in v.errors:
        lines.append(f"error [{issue.kind}]: {issue.message}")
    for issue in v.warnings:
        lines.append(f"warning [{issue.kind}]: {issue.message}")
    lines.append("invalid" if v.errors else "valid VH-T complex")
    return "\n".join(lines) + "\n"


def cmd_validate(args) -> int:
    data = _read_input(args.path)
    if data is None:
        return 1
    try:
        c = load_complex(data.decode("utf-8"))
    except (ComplexFormatError, UnicodeDecodeError) as exc:
        return _parse_failure(exc, args)
    v = validate_vht(c)
    if args.json:
        report = {
            "counts": _counts_dict(c),
            "validation": _validation_dict(v),
            "provenance": _provenance(data),
        }
        _emit(_to_json(report), args.out)
    else:
        _emit(_human_validation(c, v), args.out)
    return 2 if v.errors else 0


def _parse_failure(exc, args) -> int:
    if isinstance(exc, UnicodeDecodeError):
        problems = [f"not UTF-8: {exc}"]
    else:
        problems = list(exc.problems)
    for p in problems:
        print(f"error: {p}", file=sys.stderr)
    return 1


def _validation_failure(data: bytes, c_text: str, v: ValidationReport, args) -> int:
    if args.json:
        c = load_complex(c_text)
        report = {
            "counts": _counts_dict(c),
            "validation": _validation_dict(v),
            "provenance": _provenance(data),
        }
        _emit(_to_json(report), args.out)
    else:
        for issue in v.errors:
            print(f"error [{issue.kind}]: {issue.message}", file=sys.stderr)
    return 2


def cmd_analyze(args) -> int:
    data = _read_input(args.path)
    if data is None:
        return 1
    try:
        text = data.decode("utf-8")
        v, analysis = analyze_document(text)
    except (ComplexFormatError, UnicodeDecodeError) as exc:
        return _parse_failure(exc, args)
    if analysis is None:
        return _validation_failure(data, text, v, args)
    report = build_report(analysis, data)
    if args.json:
        _emit(_to_json(report), args.out)
    else:
        _emit(_human_report(report), args.out)
    return 0


def _human_report(report: dict) -> str:
    hom = report["homology"]
    til = report["tiling"]
    thm = report["theorem"]
    conn = report["connectivity"]

    def group(g):
        parts = [f"Z^{g['free_rank']}"] if g["free_rank"] else []
        parts += [f"Z/{t}" for t in g["torsion"]]
        return " + ".join(parts) if parts else "0"

    lines = [
        "counts: " + ", ".join(f"{k}={v}" for k, v in report["counts"].items()),
        f"warnings: {len(report['validation']['warnings'])}",
        f"H0 = {group(hom['h0'])}; H1 = {group(hom['h1'])}; H2 rank = {hom['h2_rank']}; "
        f"chi = {hom['euler_characteristic']}",
        f"kernel rank = {til['kernel_rank']}; K0 rank = {til['k0_rank']}; K1 rank = {til['k1_rank']}",
        f"tile graphs strongly connected: horizontal={conn['gh_strong']}, vertical={conn['gv_strong']}",
        f"rank identity verdict: holds={thm['holds']}, within_hypotheses={thm['within_hypotheses']} "
        f"(ker d2 = {thm['rank_ker_d2']}, ker stacked = {thm['rank_ker_stacked']})",
    ]
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    data = _read_input(args.path)
    if data is None:
        return 1
    try:
        text = data.decode("utf-8")
        v, analysis = analyze_document(text)
    except (ComplexFormatError, UnicodeDecodeError) as exc:
        return _parse_failure(exc, args)
    if analysis is None:
        return _validation_failure(data, text, v, args)
    if args.json:
        report = {"theorem": _theorem_dict(analysis.theorem), "provenance": _provenance(data)}
        _emit(_to_json(report), args.out)
    else:
        t = _theorem_dict(analysis.theorem)
        _emit("".join(f"{k}: {str(v).lower()}\n" for k, v in t.items()), args.out)
    return 0


def cmd_generate(args) -> int:
    try:
        doc = generate_mozes_complex(args.p, args.l)
    except MozesParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args.out)
    return 0


def cmd_export(args) -> int:
    data = _read_input(args.path)
    if data is None:
        return 1
    try:
        text = data.decode("utf-8")
        c = load_complex(text)
    except (ComplexFormatError, UnicodeDecodeError) as exc:
        return _parse_failure(exc, args)
    v = validate_vht(c)
    if v.errors:
        return _validation_failure(data, text, v, args)
    r = expand_directed_squares(c)
    if args.what in ("m1", "m2", "stacked"):
        ts = build_tiling(r, c)
        matrix = {"m1": ts.m1, "m2": ts.m2, "stacked": stacked_matrix(ts)}[args.what]
    else:
        maps = chain_maps(c, r)
        matrix = getattr(maps, args.what)
    _emit(matio.write_dense_json(matrix) if args.json else matio.write_triplets(matrix), args.out)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treelat",
        description=(
            "Homology and boundary-algebra K-theory ranks of lattices acting on "
            "products of trees, from VH-T square complex documents."
        ),
    )
    parser.add_argument("--version", action="version", version=f"treelat {treelat.__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_json=True):
        p.add_argument("path", help="complex document (JSON)")
        if with_json:
            p.add_argument("--json", action="store_true", help="canonical JSON output")
        p.add_argument("-o", "--out", default=None, help="write output to this file")

    p = sub.add_parser("validate", help="check a complex document")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="full report: homology, tiling kernel, K-ranks, verdict")
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="rank-identity verdict only")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="generate a Mozes quaternion complex")
    p.add_argument("-p", type=int, required=True, help="first prime, = 1 mod 4")
    p.add_argument("-l", type=int, required=True, help="second prime, = 1 mod 4, distinct")
    p.add_argument("-o", "--out", default=None, help="write the document to this file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("export", help="export a matrix of the pipeline")
    p.add_argument("path", help="complex document (JSON)")
    p.add_argument("--what", required=True, choices=EXPORTABLE, help="which matrix")
    p.add_argument("--json", action="store_true", help="dense JSON instead of sparse triplets")
    p.add_argument("-o", "--out", default=None, help="write output to this file")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        worker_count()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
