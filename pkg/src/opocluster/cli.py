"""Command-line interface.

Subcommands:

* ``graph build CONFIG OUT``  -- parse a mode/pump config, build the
  interaction matrix (plus optional phase modulation) and write it to an
  edge file.
* ``graph reduce IN --threshold T --out OUT``  -- reduce an interaction
  edge file to the cluster adjacency, prune, optionally classify.
* ``noise table``  -- CSV of displacement variances over a squeezing range.
* ``sim threshold``  -- Monte Carlo threshold scan; writes a per-point CSV
  and prints a one-line summary.

Exit codes: 0 success, 2 usage/config/parse errors, 3 numerical failures
in the reduction, 4 no threshold crossing inside the scanned grid.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import noise as noise_mod
from .configio import parse_graph_config
from .errors import NoCrossing, OpoClusterError, ParseError
from .hgraph import GMatrix, add_phase_modulation, build_g_downconversion, \
    g_from_edge_file, g_to_edge_file
from .montecarlo import threshold_scan
from .noise import NoiseParams
from .reduce import a_from_g, classify_graph, prune

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_NO_CROSSING = 4


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _db_range(args) -> list[float]:
    if args.db_step <= 0 or args.db_to < args.db_from:
        raise ValueError("need db_step > 0 and db_to >= db_from")
    out = []
    value = args.db_from
    while value <= args.db_to + 1e-9:
        out.append(round(value, 9))
        value += args.db_step
    return out


def _cmd_graph_build(args) -> int:
    try:
        cfg = parse_graph_config(Path(args.config).read_text())
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot read {args.config}: {exc}")
    except ParseError as exc:
        return _fail(EXIT_USAGE, f"{args.config}: {exc}")
    g = build_g_downconversion(cfg.pumps, cfg.modes)
    if cfg.pm is not None:
        g = add_phase_modulation(g, cfg.pm)
    Path(args.out).write_text(g_to_edge_file(g))
    print(f"wrote {args.out}: {g.n} modes")
    return EXIT_OK


def _cmd_graph_reduce(args) -> int:
    try:
        g = g_from_edge_file(Path(args.infile).read_text())
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot read {args.infile}: {exc}")
    except ParseError as exc:
        return _fail(EXIT_USAGE, f"{args.infile}: {exc}")
    a = a_from_g(g)
    if args.a_out:
        Path(args.a_out).write_text(g_to_edge_file(GMatrix(a.entries)))
    cluster = prune(a, args.threshold)
    lines = [f"{cluster.n}"]
    for i, j, w in sorted(cluster.edges):
        lines.append(f"{i} {j} {w:.17g}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out}: {cluster.n} nodes, {len(cluster.edges)} edges")
    if args.classify:
        print(classify_graph(cluster).to_line())
    return EXIT_OK


def _cmd_noise_table(args) -> int:
    print("squeezing_db,sigma2_fin,sigma2_loss,sigma2_total")
    for db in _db_range(args):
        p = NoiseParams(db, args.eta)
        print(f"{db:.10g},{noise_mod.sigma2_fin(p):.10g},"
              f"{noise_mod.sigma2_loss(p):.10g},"
              f"{noise_mod.sigma2_total(p):.10g}")
    return EXIT_OK


def _write_rate_csv(path: str, points) -> None:
    lines = ["distance,squeezing_db,trials,failures,p_logical,ci_low,ci_high"]
    for pt in points:
        lines.append(
            f"{pt.d},{pt.squeezing_db:.10g},{pt.trials},{pt.failures},"
            f"{pt.p_logical:.10g},{pt.ci_low:.10g},{pt.ci_high:.10g}")
    Path(path).write_text("\n".join(lines) + "\n")


def _cmd_sim_threshold(args) -> int:
    distances = sorted({int(s) for s in args.distances.split(",")})
    db_grid = _db_range(args)

    def progress(pt):
        print(f"d={pt.d} s={pt.squeezing_db:g} dB "
              f"p={pt.p_logical:.4f} [{pt.ci_low:.4f}, {pt.ci_high:.4f}]",
              file=sys.stderr)

    try:
        result = threshold_scan(
            args.eta, distances, db_grid, args.trials, args.seed,
            workers=args.workers, progress=progress)
    except NoCrossing as exc:
        if args.out and exc.rate_points:
            _write_rate_csv(args.out, exc.rate_points)
        return _fail(EXIT_NO_CROSSING, str(exc))
    if args.out:
        _write_rate_csv(args.out, result.rate_points)
    crossings = " ".join(
        f"d{a}/d{b}:{db:.3f}" for a, b, db in result.crossings)
    print(f"threshold eta={result.eta:g} "
          f"{result.threshold_db:.3f} +/- {result.uncertainty_db:.3f} dB "
          f"({crossings})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opocluster",
        description="OPO cluster-state synthesis and fault-tolerance "
                    "threshold estimation")
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="interaction-graph tools")
    gsub = graph.add_subparsers(dest="graph_command", required=True)

    p = gsub.add_parser("build", help="config -> interaction edge file")
    p.add_argument("config")
    p.add_argument("out")
    p.set_defaults(func=_cmd_graph_build)

    p = gsub.add_parser("reduce",
                        help="interaction edge file -> pruned cluster graph")
    p.add_argument("infile")
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--a-out", help="also write the full cluster adjacency")
    p.add_argument("--classify", action="store_true",
                   help="print a topology report line")
    p.set_defaults(func=_cmd_graph_reduce)

    noise = sub.add_parser("noise", help="noise-model tables")
    nsub = noise.add_subparsers(dest="noise_command", required=True)
    p = nsub.add_parser("table", help="variance CSV over a squeezing range")
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--db-from", type=float, required=True)
    p.add_argument("--db-to", type=float, required=True)
    p.add_argument("--db-step", type=float, default=0.5)
    p.set_defaults(func=_cmd_noise_table)

    sim = sub.add_parser("sim", help="Monte Carlo simulation")
    ssub = sim.add_subparsers(dest="sim_command", required=True)
    p = ssub.add_parser("threshold", help="threshold scan over a dB grid")
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--distances", default="3,5,7",
                   help="comma-separated odd code distances")
    p.add_argument("--db-from", type=float, required=True)
    p.add_argument("--db-to", type=float, required=True)
    p.add_argument("--db-step", type=float, default=0.25)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="per-point CSV path")
    p.set_defaults(func=_cmd_sim_threshold)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except (ValueError,) as exc:
        return _fail(EXIT_USAGE, str(exc))
    except NoCrossing as exc:
        return _fail(EXIT_NO_CROSSING, str(exc))
    except OpoClusterError as exc:
        return _fail(EXIT_NUMERICAL, str(exc))


if __name__ == "__main__":
    sys.exit(main())
