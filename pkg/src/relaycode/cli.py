"""Command-line front end.

Subcommands ``eval``, ``optimize``, ``sweep``, ``figure`` and ``simulate``
all write CSV (stdout unless ``--out`` is given).  Exit codes: 0 success,
2 usage or configuration error, 3 numerical failure, 4 simulation
truncation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from relaycode.exceptions import NumericalError, ParameterError, SimulationTruncated
from relaycode.figures import FIGURES, figure_rows
from relaycode.fluidflow import optimal_rate
from relaycode.model import ChannelParams, EnergyParams, Scheme, SchemeConfig
from relaycode.optimize import optimize_alpha
from relaycode.simulate import SimConfig, simulate_chain, simulate_packets
from relaycode.solve import build_chain, evaluate
from relaycode.sweep import (
    csv_text,
    default_workers,
    evaluate_row,
    make_row,
    manifest_text,
    parse_spec,
    run_sweep,
)

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_TRUNCATED = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParameterError("usage", message)


def _add_point(p):
    p.add_argument("--scheme", required=True, choices=[s.value for s in Scheme])
    p.add_argument("--n", type=int, default=1, help="packets per generation")
    p.add_argument("--x", type=int, default=None, help="relay memory (source-only; default n)")
    p.add_argument("--alpha", type=float, default=None, help="source time-share")
    p.add_argument("--psd", type=float, required=True)
    p.add_argument("--psr", type=float, required=True)
    p.add_argument("--prd", type=float, required=True)
    p.add_argument("--etx", type=float, default=1.0)
    p.add_argument("--erx", type=float, default=1.0)
    p.add_argument("--enc", type=float, default=1.0)
    p.add_argument("--eack", type=float, default=1.0)
    p.add_argument("--out", type=Path, default=None)


def _add_sim(p):
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field-size", type=int, default=65521)
    p.add_argument("--max-slots", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=None, help="default: $RELAYCODE_WORKERS or 1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relaycode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one configuration")
    _add_point(p)

    p = sub.add_parser("optimize", help="optimize the time-share alpha")
    _add_point(p)
    p.add_argument("--kind", choices=["time", "energy"], default="time")
    p.add_argument("--grid-points", type=int, default=201)
    p.add_argument("--curve", action="store_true", help="also emit the sampled alpha grid")

    p = sub.add_parser("sweep", help="evaluate a cross-product of parameters from a spec file")
    p.add_argument("spec_file", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("figure", help="write the data behind one of the comparison plots")
    p.add_argument("figure_id", choices=sorted(FIGURES))
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--grid-points", type=int, default=201)
    p.add_argument("--psd-step", type=float, default=0.05)

    p = sub.add_parser("simulate", help="Monte Carlo estimate next to the analytic value")
    _add_point(p)
    _add_sim(p)
    p.add_argument("--mode", choices=["chain", "packets"], default="packets")
    return parser


def _point(args, need_alpha=True):
    ch = ChannelParams(args.psd, args.psr, args.prd)
    en = EnergyParams(args.etx, args.erx, args.enc, args.eack)
    scheme = Scheme.parse(args.scheme)
    alpha = args.alpha
    if alpha is None:
        if need_alpha and scheme is not Scheme.BOTH:
            raise ParameterError("alpha", f"--alpha is required for {scheme.value}")
        alpha = optimal_rate(ch).alpha
    cfg = SchemeConfig(scheme, n=args.n, alpha=alpha, x=args.x)
    return cfg, ch, en


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_eval(args):
    cfg, ch, en = _point(args)
    _emit(csv_text([make_row(cfg, ch, en, evaluate(cfg, ch, en))]), args.out)


def cmd_optimize(args):
    cfg, ch, en = _point(args, need_alpha=False)
    opt = optimize_alpha(cfg.scheme, cfg.n, ch, en, kind=args.kind, x=cfg.x, grid_points=args.grid_points)
    rows = []
    if args.curve:
        for a, _ in opt.curve:
            if a == 0.0 and cfg.scheme is Scheme.BOTH:
                continue
            rows.append(evaluate_row(SchemeConfig(cfg.scheme, n=cfg.n, alpha=a, x=cfg.x), ch, en, label="curve"))
    best = SchemeConfig(cfg.scheme, n=cfg.n, alpha=opt.alpha_star, x=cfg.x)
    rows.append(make_row(best, ch, en, evaluate(best, ch, en), label=f"optimum ({args.kind})"))
    _emit(csv_text(rows), args.out)


def cmd_sweep(args):
    spec_bytes = args.spec_file.read_bytes()
    spec = parse_spec(spec_bytes.decode())
    points, skipped = spec.points()
    print(f"sweep: {len(points)} points ({skipped} skipped)", file=sys.stderr)
    rows, skipped = run_sweep(spec, workers=args.workers or default_workers())
    args.out.write_text(csv_text(rows))
    manifest = args.out.with_name(args.out.name + ".manifest")
    manifest.write_text(manifest_text(spec_bytes, spec, len(rows), skipped))


def cmd_figure(args):
    _emit(csv_text(figure_rows(args.figure_id, args.grid_points, args.psd_step)), args.out)


def cmd_simulate(args):
    cfg, ch, en = _point(args)
    sim = SimConfig(
        trials=args.trials, master_seed=args.seed, field_size=args.field_size, max_slots=args.max_slots
    )
    workers = args.workers or default_workers()
    res = evaluate(cfg, ch, en)
    if args.mode == "chain":
        est = simulate_chain(build_chain(cfg, ch), sim, en, workers=workers)
    else:
        est = simulate_packets(cfg.scheme, cfg.n, cfg.x, cfg.alpha, ch, en, sim, workers=workers)
    _emit(csv_text([make_row(cfg, ch, en, res, sim=est, label=f"sim:{args.mode}")]), args.out)


COMMANDS = {
    "eval": cmd_eval,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SimulationTruncated as exc:
        print(f"simulation truncated: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
