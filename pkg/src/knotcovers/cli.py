"""Command line interface.

    knotcovers alexander --knot trefoil
    knotcovers signature --knot figure8 --p 7
    knotcovers branched  --knot trefoil --p 2..8 --format csv
    knotcovers growth    --knot figure8 --ps 10,20,50,100,200 --plot-data
    knotcovers residue   --q q2loop.json --p 2,3,5,7
    knotcovers liftres   --graph theta-theta --p 2..4
    knotcovers selftest

Knots come from the bundled corpus (``--knot NAME``) or from a JSON file
(``--file``) holding either a bare Seifert matrix ``[[0,1],[-1,0]]`` or a
full knot record ``{"name": ..., "seifert": ...}``.  2-loop classes are
JSON ``{"terms": [{"f": ..., "g": ..., "h": ..., "c": ...}]}`` with
Laurent polynomials written as exponent-to-coefficient maps.

Exit status: 0 on success; 1 when the request was well-formed but the
mathematics degenerates everywhere it was asked (for instance a branched
report over a range with no regular p at all); 2 on invalid input.

Output is deterministic: floats are printed to 12 significant digits,
exact rationals as fraction strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exactalg import LaurentPoly, SingularAtOne, mahler_measure
from .lambdamat import AtOne, SingularEvaluation, normalized_determinant
from .seifert import (
    KnotRecord,
    alexander,
    clover_matrix,
    corpus_records,
    seifert_genus,
    signature_function,
    validate_seifert,
)
from .branched import (
    branched_report,
    casson_growth,
    is_p_regular,
    signature_average,
    torsion_growth,
)
from .theta import QSingularAtP, SingularOnTorus, ThetaClass, res_p_theta, torus_average
from .graphs import BeadedGraph, disjoint_union, eyes_graph, liftres_sweep, theta_graph
from .acceptance import run_selftest

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INVALID = 2

_VALIDATION_ERRORS = (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError)


class _DomainEmpty(Exception):
    """The request was valid but every value degenerated."""


# ---------------------------------------------------------------------------
# input plumbing


def _parse_ps(text: str) -> list[int]:
    """Parse a p specification: "7", "2..10", or "2,3,5"."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ValueError("empty range %r" % text)
        ps = list(range(lo, hi + 1))
    else:
        ps = [int(tok) for tok in text.split(",") if tok.strip()]
    if not ps:
        raise ValueError("no p values in %r" % text)
    for p in ps:
        if p < 1:
            raise ValueError("p must be >= 1, got %d" % p)
    return ps


def _load_knot(args) -> KnotRecord:
    if getattr(args, "knot", None):
        for rec in corpus_records():
            if rec.name == args.knot:
                return rec
        names = ", ".join(r.name for r in corpus_records())
        raise ValueError("unknown corpus knot %r (have: %s)" % (args.knot, names))
    if getattr(args, "file", None):
        with open(args.file) as fh:
            obj = json.load(fh)
        if isinstance(obj, list):
            return KnotRecord(name=args.file, seifert=validate_seifert(obj))
        return KnotRecord.from_json(obj)
    raise ValueError("pass --knot NAME or --file SEIFERT.json")


def _load_q(args) -> ThetaClass | None:
    path = getattr(args, "q", None)
    if not path:
        return None
    with open(path) as fh:
        return ThetaClass.from_json(json.load(fh))


def _pick_q(args, rec: KnotRecord) -> ThetaClass | None:
    """Explicit --q wins; otherwise fall back to the record's own class."""
    q = _load_q(args)
    return q if q is not None else rec.q2loop


_GRAPHS = {
    "theta": theta_graph,
    "eyes": eyes_graph,
    "theta-theta": lambda: disjoint_union(theta_graph(), theta_graph()),
    "theta-eyes": lambda: disjoint_union(theta_graph(), eyes_graph()),
}


def _load_graph(args) -> BeadedGraph:
    if getattr(args, "graph", None):
        return _GRAPHS[args.graph]()
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return BeadedGraph.from_json(json.load(fh))
    raise ValueError("pass --graph NAME or --file GRAPH.json")


# ---------------------------------------------------------------------------
# output plumbing


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return "%.12g" % v
    return str(v)


def _json_cell(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, LaurentPoly):
        return str(v)
    return v


def _emit_rows(args, columns: list[str], rows: list[list], summary: dict | None = None):
    """Render rows in the requested format to stdout or --out."""
    fmt = args.format
    lines: list[str] = []
    if fmt == "csv":
        lines.append(",".join(columns))
        lines.extend(",".join(_cell(v) for v in row) for row in rows)
    elif fmt == "json":
        payload = {
            "columns": columns,
            "rows": [[_json_cell(v) for v in row] for row in rows],
        }
        if summary:
            payload.update({k: _json_cell(v) for k, v in summary.items()})
        lines.append(json.dumps(payload, indent=2))
    else:
        cells = [columns] + [[_cell(v) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
        for r in cells:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        if summary:
            lines.append("")
            lines.extend("%s = %s" % (k, _cell(v)) for k, v in summary.items())
    _write_out(args, "\n".join(lines) + "\n")


def _emit_pairs(args, pairs: list[tuple]):
    """Bare "x y" lines for piping into a plotting tool."""
    _write_out(args, "".join("%s %s\n" % (_cell(x), _cell(y)) for x, y in pairs))


def _write_out(args, text: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_alexander(args) -> int:
    rec = _load_knot(args)
    A = rec.seifert
    delta = alexander(A)
    rows = [
        ["name", rec.name],
        ["alexander", str(delta)],
        ["genus", seifert_genus(A)],
        ["determinant", abs(delta.evaluate(Fraction(-1)))],
        ["mahler", mahler_measure(delta)],
    ]
    if A:
        rows.insert(2, ["clover_determinant", str(normalized_determinant(clover_matrix(A)))])
    _emit_rows(args, ["field", "value"], rows)
    return EXIT_OK


def cmd_signature(args) -> int:
    rec = _load_knot(args)
    A = rec.seifert
    ps = _parse_ps(args.p)
    if len(ps) != 1:
        raise ValueError("signature takes a single --p, not a range")
    (p,) = ps
    rows = []
    usable = 0
    for k in range(1, p):
        try:
            sig = signature_function(A, k, p, tol=args.tol)
            usable += 1
        except SingularEvaluation:
            sig = None  # Alexander root on the unit circle: jump point
        rows.append([k, Fraction(k, p), sig])
    summary = {}
    if is_p_regular(A, p):
        from .branched import total_sigma_p

        summary["total_sigma_p"] = total_sigma_p(A, p)
    if not rows:
        raise _DomainEmpty("p = 1 has no interior roots of unity")
    _emit_rows(args, ["k", "k/p", "signature"], rows, summary)
    return EXIT_OK if usable else EXIT_DOMAIN


def cmd_branched(args) -> int:
    rec = _load_knot(args)
    Q = _pick_q(args, rec)
    ps = _parse_ps(args.p)
    reports = branched_report(rec.seifert, ps, Q=Q, tol=args.tol)
    columns = ["p", "regular", "sigma_p", "beta_p", "log_beta_over_p"]
    if Q is not None:
        columns.append("casson")
    rows = []
    for r in reports:
        row = [r.p, r.regular, r.sigma_p, r.beta_p, r.log_beta_over_p]
        if Q is not None:
            row.append(r.casson)
        rows.append(row)
    _emit_rows(args, columns, rows)
    if not any(r.regular for r in reports):
        raise _DomainEmpty("no regular p in the requested range")
    return EXIT_OK


def cmd_growth(args) -> int:
    rec = _load_knot(args)
    A = rec.seifert
    Q = _pick_q(args, rec)
    ps = _parse_ps(args.ps) if args.ps else None
    pmax = args.pmax if args.pmax else (max(ps) if ps else 100)
    triples = torsion_growth(A, pmax, ps=ps)
    if not triples:
        raise _DomainEmpty("no regular p in the requested range")
    if args.plot_data:
        _emit_pairs(args, [(p, ratio) for p, _, ratio in triples])
        return EXIT_OK
    summary = {
        "mahler": mahler_measure(alexander(A)),
        "signature_average": signature_average(A, tol=args.tol),
    }
    if Q is not None:
        try:
            summary["casson_growth"] = casson_growth(A, Q, tol=args.tol)
        except SingularOnTorus:
            summary["casson_growth"] = None  # 2-loop class has poles on the torus
    _emit_rows(args, ["p", "beta_p", "log_beta_over_p"], [list(t) for t in triples], summary)
    return EXIT_OK


def cmd_residue(args) -> int:
    Q = _load_q(args)
    if Q is None:
        raise ValueError("residue needs --q FILE")
    ps = _parse_ps(args.p)
    rows = []
    usable = 0
    for p in ps:
        try:
            val = res_p_theta(Q, p)
            usable += 1
        except QSingularAtP:
            val = None
        rows.append([p, val])
    summary = {}
    try:
        summary["torus_average"] = torus_average(Q, tol=args.tol)
    except SingularOnTorus:
        summary["torus_average"] = None
    _emit_rows(args, ["p", "res_p"], rows, summary)
    if not usable:
        raise _DomainEmpty("the class degenerates at every requested p")
    return EXIT_OK


def cmd_liftres(args) -> int:
    G = _load_graph(args)
    ps = _parse_ps(args.p)
    import random

    rng = random.Random(args.seed)
    rows = []
    bad = 0
    for p in ps:
        cases, failures = liftres_sweep(G, p, max_cases=args.max_cases, rng=rng)
        bad += failures
        rows.append([p, len(G.edges), cases, failures])
    _emit_rows(args, ["p", "edges", "cases", "failures"], rows)
    if bad:
        raise _DomainEmpty("%d bead tuples violated the lift/residue identity" % bad)
    return EXIT_OK


def cmd_selftest(args) -> int:
    criteria = [int(tok) for tok in args.criteria.split(",")] if args.criteria else None
    ok = run_selftest(criteria=criteria, inject_corruption=args.inject_corruption)
    return EXIT_OK if ok else EXIT_DOMAIN


# ---------------------------------------------------------------------------


def _add_knot_flags(sp):
    sp.add_argument("--knot", help="name of a bundled corpus knot")
    sp.add_argument("--file", help="JSON file: Seifert matrix or knot record")


def _add_common_flags(sp):
    sp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    sp.add_argument("--out", help="write output to this file instead of stdout")
    sp.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="knotcovers",
        description="abelian knot invariants and their cyclic branched covers",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("alexander", help="Alexander polynomial and scalar invariants")
    _add_knot_flags(sp)
    _add_common_flags(sp)
    sp.set_defaults(fn=cmd_alexander)

    sp = sub.add_parser("signature", help="signature function at p-th roots of unity")
    _add_knot_flags(sp)
    _add_common_flags(sp)
    sp.add_argument("--p", required=True, help="a single cover degree")
    sp.set_defaults(fn=cmd_signature)

    sp = sub.add_parser("branched", help="branched cover report over a range of p")
    _add_knot_flags(sp)
    _add_common_flags(sp)
    sp.add_argument("--p", required=True, help='degrees: "7", "2..10" or "2,3,5"')
    sp.add_argument("--q", help="JSON file with a 2-loop class (else the record's own)")
    sp.set_defaults(fn=cmd_branched)

    sp = sub.add_parser("growth", help="torsion growth toward the Mahler measure")
    _add_knot_flags(sp)
    _add_common_flags(sp)
    sp.add_argument("--pmax", type=int, help="largest cover degree")
    sp.add_argument("--ps", help="explicit degrees instead of 2..pmax")
    sp.add_argument("--q", help="JSON file with a 2-loop class")
    sp.add_argument(
        "--plot-data", action="store_true", help='emit bare "p ratio" pairs only'
    )
    sp.set_defaults(fn=cmd_growth)

    sp = sub.add_parser("residue", help="res_p of a 2-loop class")
    _add_common_flags(sp)
    sp.add_argument("--q", required=True, help="JSON file with the class")
    sp.add_argument("--p", required=True, help="degrees")
    sp.set_defaults(fn=cmd_residue)

    sp = sub.add_parser("liftres", help="verify lift count = residue on bead sweeps")
    _add_common_flags(sp)
    sp.add_argument("--graph", choices=sorted(_GRAPHS), help="a built-in graph")
    sp.add_argument("--file", help="JSON file with a beaded graph")
    sp.add_argument("--p", required=True, help="degrees")
    sp.add_argument("--max-cases", type=int, help="sample this many bead tuples")
    sp.add_argument("--seed", type=int, default=0, help="sampling seed")
    sp.set_defaults(fn=cmd_liftres)

    sp = sub.add_parser("selftest", help="run the acceptance criteria")
    sp.add_argument("--criteria", help='subset like "1,4,6" (default: all)')
    sp.add_argument(
        "--inject-corruption",
        action="store_true",
        help="flip one frozen expected value; the run must fail",
    )
    sp.set_defaults(fn=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except _DomainEmpty as e:
        print("domain: %s" % e, file=sys.stderr)
        return EXIT_DOMAIN
    except (SingularAtOne, AtOne, QSingularAtP, SingularOnTorus) as e:
        print("domain: %s" % e, file=sys.stderr)
        return EXIT_DOMAIN
    except _VALIDATION_ERRORS as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
