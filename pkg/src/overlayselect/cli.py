"""Command-line front end.

Commands: sweep, decide, trace, calibrate. Exit status is 0 on success,
1 on runtime or validation failure and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

import yaml

from . import config as config_mod
from . import sim
from .calibration import CalibrationError, fit_reference_consumption, fit_tx_power
from .config import ConfigFile, calibration_to_dict
from .decision import SCORERS, DecisionContext, rank_interfaces, select_with_admission
from .errors import SelectionError
from .interfaces import PARAMETERS
from .power import BatteryProfile

log = logging.getLogger(__name__)

SWEEP_HELP = """\
CSV columns, in order: distance_m, weight_<id> per interface, consumption_<id>
per interface (mW), chosen. Interfaces appear in config order.
"""

TRACE_HELP = """\
Input CSV rows: time,distance,battery,wlan_available (header optional).
Output CSV columns, in order: time_s, distance_m, battery_level,
wlan_available, attached, selected, handover, ranking.
"""


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> argparse.ArgumentParser:
    # subcommands get SUPPRESS defaults so they never clobber flags given earlier
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--config", default=default(None),
                        help="YAML config (default: shipped defaults)")
    parser.add_argument("--output", default=default(None),
                        help="write the data output here instead of stdout")
    parser.add_argument("--format", choices=("csv", "pretty"), default=default("csv"))
    return parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="overlayselect", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common():
        return [_global_flags(argparse.ArgumentParser(add_help=False), suppress=True)]

    p = sub.add_parser("sweep", parents=common(), help="distance sweep",
                       epilog=SWEEP_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--d-min", type=float, default=100.0, help="first distance (m)")
    p.add_argument("--d-max", type=float, default=2000.0, help="last distance (m)")
    p.add_argument("--step", type=float, default=10.0, help="grid step (m)")
    p.add_argument("--mode", choices=[m.value for m in sim.BatteryMode], default="sufficient")
    p.add_argument("--scorer", choices=SCORERS, default=None)
    p.add_argument("--figure", default=None,
                   help="PNG path; defaults to the --output path with a .png suffix")
    p.add_argument("--no-figure", action="store_true")

    p = sub.add_parser("decide", parents=common(), help="rank interfaces at one point")
    p.add_argument("--distance", type=float, required=True, help="MN to BS distance (m)")
    p.add_argument("--battery", type=float, required=True, help="battery level in [0, 1]")
    p.add_argument("--ap-distance", type=float, default=10.0, help="MN to AP distance (m)")
    p.add_argument("--scorer", choices=SCORERS, default=None)
    p.add_argument("--reject", action="append", default=[], metavar="ID",
                   help="interface without resources for the request (repeatable)")

    p = sub.add_parser("trace", parents=common(), help="run the CAC over a mobility trace",
                       epilog=TRACE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("trace_file")

    p = sub.add_parser("calibrate", parents=common(), help="fit calibration constants")
    p.add_argument("--target", type=float, required=True,
                   help="consumption crossover distance (m)")
    p.add_argument("--weight-target", type=float, default=None,
                   help="also refit the reference consumption to this low-battery weight crossover (m)")
    return parser


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _summary(args, line: str) -> None:
    # keep stdout clean for data when no --output is given
    print(line, file=sys.stdout if args.output else sys.stderr)


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in [header, *rows]]
    return "\n".join(lines) + "\n"


def _csv_rows(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def cmd_sweep(args, cfg: ConfigFile) -> int:
    if args.step <= 0:
        raise _Usage("--step must be > 0")
    if not 0 < args.d_min < args.d_max:
        raise _Usage(f"need 0 < --d-min < --d-max, got {args.d_min:g} and {args.d_max:g}")
    spec = sim.SweepSpec(args.d_min, args.d_max, args.step, args.mode, args.scorer)
    result = sim.sweep(spec, cfg.interfaces, cfg.calibration, cfg.policy)
    text = result.to_csv()
    _emit(args, text if args.format == "csv" else _table(*_csv_rows(text)))

    ids = result.interface_ids
    a, b = ids[0], ids[-1]
    w_x = sim.find_crossover(result, f"weight_{a}", f"weight_{b}") if len(ids) > 1 else None
    c_x = sim.find_crossover(result, f"consumption_{a}", f"consumption_{b}") if len(ids) > 1 else None
    n = len(result.rows)
    counts = {i: result.chosen.count(i) for i in ids if result.chosen.count(i)}
    if len(counts) == 1:
        (only,) = counts
        _summary(args, f"chosen: {only} at all {n} grid points")
    else:
        flips = sum(x != y for x, y in zip(result.chosen, result.chosen[1:]))
        parts = ", ".join(f"{i} at {k}" for i, k in counts.items())
        _summary(args, f"chosen: {parts} of {n} grid points ({flips} switch{'es' if flips != 1 else ''})")
    _summary(args, f"weight crossover: {_dist(w_x)}")
    _summary(args, f"consumption crossover: {_dist(c_x)}")

    figure = None if args.no_figure else args.figure
    if figure is None and args.output and not args.no_figure:
        figure = str(Path(args.output).with_suffix(".png"))
    if figure:
        from .plotting import plot_sweep

        plot_sweep(
            result, figure,
            title=f"{spec.battery_mode.value} battery",
            crossovers={"weight": w_x, "consumption": c_x},
        )
        _summary(args, f"figure: {figure}")
    return 0


def _dist(x: float | None) -> str:
    return "none" if x is None else f"{x:.1f} m"


def cmd_decide(args, cfg: ConfigFile) -> int:
    if not args.distance > 0 or not args.ap_distance > 0:
        raise _Usage("distances must be > 0")
    if not 0.0 <= args.battery <= 1.0:
        raise _Usage("--battery must be in [0, 1]")
    admission = {i.id: i.id not in args.reject for i in cfg.interfaces}
    ctx = DecisionContext(
        battery=BatteryProfile(args.battery, cfg.battery_threshold),
        distance_to_bs=args.distance,
        distance_to_ap=args.ap_distance,
        policy=cfg.policy,
        admission=admission,
    )
    scorer = args.scorer or cfg.scorer
    ranking = rank_interfaces(cfg.interfaces, ctx, cfg.calibration, scorer)
    selected = select_with_admission(ranking, admission)
    scaling = cfg.scaling

    header = ["rank", "interface", "weight", "lp", "consumption_mw", "rx_dbm"]
    header += [f"contrib_{m}" for m in PARAMETERS] + ["selected"]
    rows = []
    for rank, (iface, weight) in enumerate(ranking.ordered, start=1):
        det = ranking.details[iface]
        rows.append(
            [str(rank), iface, sim.fmt(weight), sim.fmt(det.lp), sim.fmt(det.consumption),
             sim.fmt(det.rx_power)]
            + [sim.fmt(det.params[m] * scaling[m]) for m in PARAMETERS]
            + [str(int(iface == selected))]
        )
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        _emit(args, buf.getvalue())
    else:
        out = [
            f"scorer: {scorer}   distance to BS: {args.distance:g} m   battery: {args.battery:g}"
            f" ({'sufficient' if ctx.battery.sufficient else 'insufficient'},"
            f" threshold {cfg.battery_threshold:g})",
            "",
            _table(header[:6], [r[:6] for r in rows]),
            "per-parameter contribution (scaled value x scaling factor):",
            _table(["parameter", *ranking.ids],
                   [[m, *(r[6 + k] for r in rows)] for k, m in enumerate(PARAMETERS)]),
            f"selection: {selected or 'none'}",
            "",
        ]
        _emit(args, "\n".join(out))
    _summary(args, f"selection: {selected or 'none'}")
    return 0


def cmd_trace(args, cfg: ConfigFile) -> int:
    try:
        text = Path(args.trace_file).read_text()
    except OSError as exc:
        raise SelectionError(f"cannot read trace {args.trace_file}: {exc.strerror}") from None
    trace = sim.parse_trace(text)
    steps = sim.run_trace(trace, cfg.interfaces, cfg.calibration, cfg.policy)
    out = sim.trace_to_csv(steps)
    _emit(args, out if args.format == "csv" else _table(*_csv_rows(out)))
    _summary(args, f"handovers: {sum(s.handover for s in steps)}")
    return 0


def cmd_calibrate(args, cfg: ConfigFile) -> int:
    if not args.target > 0:
        raise _Usage("--target must be > 0")
    if args.weight_target is not None and not args.weight_target > 0:
        raise _Usage("--weight-target must be > 0")
    cal = fit_tx_power(cfg, args.target)
    cfg = cfg.with_calibration(cal)
    if args.weight_target is not None:
        cal = fit_reference_consumption(cfg, args.weight_target)
    fragment = yaml.safe_dump({"calibration": calibration_to_dict(cal)}, sort_keys=False)
    _emit(args, f"# consumption crossover target: {args.target:g} m\n{fragment}")
    return 0


class _Usage(Exception):
    pass


COMMANDS = {"sweep": cmd_sweep, "decide": cmd_decide, "trace": cmd_trace, "calibrate": cmd_calibrate}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_mod.load(args.config)
    except config_mod.ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 1
    try:
        return COMMANDS[args.command](args, cfg)
    except _Usage as exc:
        parser.error(str(exc))
    except CalibrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
