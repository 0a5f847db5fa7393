"""Command-line front end.

Subcommands:
  analyze       full report for one state file
  reproduce     run the reference reproduction suite
  channel       apply a local channel pair, report the before/after delta
  sigma-family  construct a member of the constrained diagonal family
  batch         seeded sweep over random states

Reports go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 reproduction failure, 2 invalid state, 3 parse error, 4 annihilated
state. Everything runs in-process; no network access.
"""
from __future__ import annotations

import argparse
import sys

from .analysis import (
    analyze_state,
    batch_run,
    channel_pair_report,
    report_to_table,
    reproduce_table,
    reproduction_row_ids,
    resolve_options,
    run_reproduction,
    sigma_family_state,
    state_entries,
)
from .errors import (
    Annihilated,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    ParseError,
    QcorrError,
)
from .fileio import read_state_file, resolve_channel, write_state_file
from .schemas import AnalyzeOptions, ChannelResponse, DeltaModel
from .states import validate_density

EXIT_OK = 0
EXIT_REPRODUCTION = 1
EXIT_INVALID_STATE = 2
EXIT_PARSE = 3
EXIT_ANNIHILATED = 4


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must look like 32x64, got {text!r}") from exc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--side", choices=("A", "B"), default="B", help="measured subsystem")
    parser.add_argument(
        "--format", choices=("table", "structured"), default="table", dest="fmt",
        help="human table or machine-readable JSON",
    )
    parser.add_argument("--rank-tol", type=float, default=None, help="relative rank cutoff")
    parser.add_argument("--disc-tol", type=float, default=None, help="discord classification cutoff")
    parser.add_argument("--grid", type=_grid, default=None, metavar="NxM", help="coarse optimizer grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcorr", description="two-qubit correlation analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one state file")
    p.add_argument("state_file")
    _add_common(p)

    p = sub.add_parser("reproduce", help="run the reference reproduction suite")
    p.add_argument("--list", action="store_true", dest="list_rows", help="print row ids and exit")
    p.add_argument("--only", action="append", default=None, metavar="ID", help="run rows whose id contains ID")
    p.add_argument("--tol", type=float, default=None, help="override every row tolerance")
    p.add_argument(
        "--format", choices=("table", "structured"), default="table", dest="fmt",
    )

    p = sub.add_parser("channel", help="apply a local channel pair to a state")
    p.add_argument("state_file")
    p.add_argument("channel_a", help="inline spec like identity or zero_plus, or a channel file")
    p.add_argument("channel_b")
    p.add_argument("--out", default=None, help="write the transformed state here")
    _add_common(p)

    p = sub.add_parser("sigma-family", help="build a constrained-family member")
    p.add_argument("d1", type=float)
    p.add_argument("d2", type=float)
    p.add_argument("d3", type=float)
    p.add_argument("d4", type=float)
    p.add_argument("c", type=float)
    p.add_argument("--out", default=None, help="write the member state here")
    _add_common(p)

    p = sub.add_parser("batch", help="seeded sweep over random states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--rank", type=int, default=4, choices=(1, 2, 3, 4))
    p.add_argument("--channel", default=None, help="optional channel applied to both sides")
    _add_common(p)

    return parser


def _options(args: argparse.Namespace) -> AnalyzeOptions:
    return AnalyzeOptions(
        side=args.side,
        rank_tol=args.rank_tol,
        disc_tol=args.disc_tol,
        grid=args.grid,
    )


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _cmd_analyze(args) -> int:
    side, tol, settings = resolve_options(_options(args))
    rho = validate_density(read_state_file(args.state_file), tol)
    report = analyze_state(rho, side, tol, settings)
    _emit(report.model_dump_json(indent=2) if args.fmt == "structured" else report_to_table(report))
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    if args.list_rows:
        for row_id, description in reproduction_row_ids():
            _emit(f"{row_id:42s} {description}")
        return EXIT_OK
    result = run_reproduction(only=args.only, tol_override=args.tol)
    _emit(result.model_dump_json(indent=2) if args.fmt == "structured" else reproduce_table(result))
    return EXIT_OK if result.all_passed else EXIT_REPRODUCTION


def _cmd_channel(args) -> int:
    side, tol, settings = resolve_options(_options(args))
    rho = validate_density(read_state_file(args.state_file), tol)
    chan_a = resolve_channel(args.channel_a)
    chan_b = resolve_channel(args.channel_b)
    out, before, after, delta, cptp_a, cptp_b = channel_pair_report(
        rho, chan_a, chan_b, side, tol, settings
    )
    if args.out:
        write_state_file(args.out, out.mat)
    if args.fmt == "structured":
        response = ChannelResponse(
            output_state=state_entries(out),
            before=before,
            after=after,
            delta=DeltaModel(**delta.model_dump()),
            cptp_a=cptp_a,
            cptp_b=cptp_b,
        )
        _emit(response.model_dump_json(indent=2))
    else:
        lines = [
            f"cptp              A={cptp_a}  B={cptp_b}",
            f"delta L_R         {delta.l_r:+d}",
            f"delta L_T         {delta.l_t:+d}",
            f"delta discord     {delta.discord:+.9g}",
            f"delta geo discord {delta.geometric_discord:+.9g}",
            f"delta fidelity    {delta.fidelity:+.9g}",
            "--- before ---",
            report_to_table(before),
            "--- after ---",
            report_to_table(after),
        ]
        if args.out:
            lines.insert(0, f"output state      written to {args.out}")
        _emit("\n".join(lines))
    return EXIT_OK


def _cmd_sigma_family(args) -> int:
    side, tol, settings = resolve_options(_options(args))
    rho = sigma_family_state((args.d1, args.d2, args.d3, args.d4), args.c, tol)
    report = analyze_state(rho, side, tol, settings)
    if args.out:
        write_state_file(args.out, rho.mat)
    _emit(report.model_dump_json(indent=2) if args.fmt == "structured" else report_to_table(report))
    return EXIT_OK


def _cmd_batch(args) -> int:
    side, tol, settings = resolve_options(_options(args))
    chan = None if args.channel is None else resolve_channel(args.channel)
    result = batch_run(args.seed, args.count, args.rank, chan, side, tol, settings)
    if args.fmt == "structured":
        _emit(result.model_dump_json(indent=2))
    else:
        lines = []
        for row in result.rows:
            line = (
                f"{row.index:4d}  L_R={row.l_r} L_T={row.l_t}  "
                f"D={row.discord:.9g}  DG={row.geometric_discord:.9g}  F={row.fidelity:.9g}"
            )
            if row.post_l_r is not None:
                line += (
                    f"  | post L_R={row.post_l_r} D={row.post_discord:.9g} "
                    f"F={row.post_fidelity:.9g} mono={'ok' if row.monotonicity_ok else 'VIOLATION'}"
                )
            lines.append(line)
        lines.append(f"monotonicity violations: {result.monotonicity_violations}")
        _emit("\n".join(lines))
    return EXIT_OK


_HANDLERS = {
    "analyze": _cmd_analyze,
    "reproduce": _cmd_reproduce,
    "channel": _cmd_channel,
    "sigma-family": _cmd_sigma_family,
    "batch": _cmd_batch,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Annihilated as exc:
        print(f"annihilated: {exc}", file=sys.stderr)
        return EXIT_ANNIHILATED
    except (NotHermitian, NotUnitTrace, NotPositive) as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE
    except QcorrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE


if __name__ == "__main__":
    sys.exit(main())
