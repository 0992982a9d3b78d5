"""Command-line front end.

Three subcommands: ``pathloss`` and ``capacity`` evaluate one operating
point and print a human-readable report (or a one-shot CSV), ``sweep``
runs one axis study and emits a deterministic CSV. Exit codes are a
stable contract: 0 success, 1 configuration or parse error, 2
model-domain error (e.g. a two-ray null at the requested frequency).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace

from .absorption import Environment
from .capacity import (BandPlan, channel_capacity,
                       flat_allocation_capacity)
from .config import CATALOG_ENV_VAR, load_scenario
from .errors import (CatalogParseError, ChannelModelError, ConfigError,
                     DomainError, ValidationError)
from .propagation import link_budget_db, total_path_loss
from .sweep import (Scenario, SweepResult, sweep_capacity_vs_distance,
                    sweep_capacity_vs_frequency, sweep_pathloss_vs_frequency,
                    sweep_vs_pressure, sweep_vs_temperature)

AXIS_DEFAULTS = {
    "frequency": (1.0e12, 3.0e12),
    "temperature": (250.0, 400.0),
    "pressure": (20.0, 200.0),
    "distance": (1.0e-5, 1.0e-4),
}


@dataclass
class RunConfig:
    """Validated inputs of one CLI invocation."""

    scenario: Scenario
    frequency: float
    output_path: str | None
    output_format: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # config errors exit 1, not argparse's 2
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="thzlink",
                     description="THz in-package link modeling")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--catalog", metavar="PATH",
                       help=f"line catalog path (default: ${CATALOG_ENV_VAR} "
                            "or the bundled sample catalog)")
        p.add_argument("--scenario", metavar="PATH",
                       help="scenario JSON; omitted keys use defaults")
        p.add_argument("--out", metavar="PATH",
                       help="write output here instead of stdout")
        p.add_argument("--format", choices=("csv", "pretty"), default=None,
                       help="output format (default: pretty for single "
                            "points, csv for sweeps)")
        p.add_argument("--baseline", action="store_true",
                       help="force the conventional model (empty "
                            "composition, kappa = 0)")
        p.add_argument("--frequency", type=float, default=None,
                       help="operating frequency [Hz] "
                            "(default: scenario band center)")
        p.add_argument("--power", type=float, default=None,
                       help="transmit power override [W]")
        p.add_argument("--distance", type=float, default=None,
                       help="antenna separation override [m]")
        p.add_argument("--temperature", type=float, default=None,
                       help="system noise temperature override [K]")
        p.add_argument("--pressure", type=float, default=None,
                       help="ambient pressure override [atm]")

    p_loss = sub.add_parser("pathloss", help="single-point path loss and "
                                             "link-budget ledger")
    add_common(p_loss)
    p_loss.set_defaults(func=cmd_pathloss)

    p_cap = sub.add_parser("capacity", help="single-point capacity with "
                                            "per-subband allocation")
    add_common(p_cap)
    p_cap.add_argument("--allocation", choices=("waterfilling", "flat"),
                       default="waterfilling")
    p_cap.set_defaults(func=cmd_capacity)

    p_sweep = sub.add_parser("sweep", help="one-axis study as CSV")
    add_common(p_sweep)
    p_sweep.add_argument("--axis", required=True,
                         choices=("frequency", "temperature", "pressure",
                                  "distance"))
    p_sweep.add_argument("--from", dest="axis_from", type=float, default=None,
                         help="axis start (Hz, K, kPa, or m)")
    p_sweep.add_argument("--to", dest="axis_to", type=float, default=None,
                         help="axis end")
    p_sweep.add_argument("--points", type=int, default=101)
    p_sweep.add_argument("--log", action="store_true",
                         help="log-spaced axis samples")
    p_sweep.add_argument("--metric", choices=("pathloss", "capacity"),
                         default="pathloss",
                         help="metric for the frequency axis")
    p_sweep.add_argument("--allocation",
                         choices=("waterfilling", "flat", "both"),
                         default="both",
                         help="allocation scheme(s) for the distance axis")
    p_sweep.add_argument("--distances", default=None,
                         help="comma-separated separations [m] for the "
                              "frequency path-loss sweep")
    p_sweep.add_argument("--freqs", default=None,
                         help="comma-separated frequencies [Hz] for the "
                              "temperature/pressure axes")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def _load_run_config(args) -> RunConfig:
    scenario = load_scenario(args.scenario, args.catalog)
    geom, env = scenario.geom, scenario.env
    if args.distance is not None:
        geom = replace(geom, d=args.distance)
    if args.temperature is not None or args.pressure is not None:
        env = Environment(
            t_s=args.temperature if args.temperature is not None else env.t_s,
            p=args.pressure if args.pressure is not None else env.p)
    scenario = replace(scenario, geom=geom, env=env)
    if args.power is not None:
        scenario = replace(scenario, p_t=args.power)
    if args.baseline:
        scenario = replace(scenario, baseline=True)
    frequency = args.frequency
    if frequency is None:
        frequency = float(scenario.band.f_k[0] + scenario.band.f_k[-1]) / 2.0
    return RunConfig(scenario=scenario, frequency=frequency,
                     output_path=args.out, output_format=args.format)


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def cmd_pathloss(args) -> int:
    config = _load_run_config(args)
    scenario, f = config.scenario, config.frequency
    report = total_path_loss(scenario.geom, scenario.medium, scenario.env, f)
    budget = link_budget_db(scenario.geom, scenario.medium, scenario.env, f,
                            scenario.p_t)
    if config.output_format == "csv":
        header = ("f_Hz,L_d_db,L_a_db,L_db,P_R_dBW,opaque")
        row = (f"{f:.12e},{report.l_d_db:.12e},{report.l_a_db:.12e},"
               f"{report.l_db:.12e},{budget.p_r_dbw:.12e},"
               f"{int(report.opaque)}")
        _emit(header + "\n" + row + "\n", config.output_path)
        return 0
    lines = [
        f"frequency            : {f:.6e} Hz",
        f"dielectric loss L_d  : {report.l_d:.6e}  ({report.l_d_db:.6f} dB)",
        f"absorption loss L_a  : {report.l_a:.6e}  ({report.l_a_db:.6f} dB)",
        f"total path loss L    : {report.l:.6e}  ({report.l_db:.6f} dB)",
        f"opaque               : {'yes' if report.opaque else 'no'}",
        "link budget:",
        f"  transmit power     : {budget.p_t_dbw:+.6f} dBW",
        f"  transmit gain      : {budget.g_t_db:+.6f} dB",
        f"  receive gain       : {budget.g_r_db:+.6f} dB",
        f"  permittivity       : {budget.permittivity_db:+.6f} dB",
        f"  spreading          : {budget.spreading_db:+.6f} dB",
        f"  molecular          : {budget.absorption_db:+.6f} dB",
        f"  received power     : {budget.p_r_dbw:+.6f} dBW",
    ]
    _emit("\n".join(lines) + "\n", config.output_path)
    return 0


def cmd_capacity(args) -> int:
    config = _load_run_config(args)
    scenario, f = config.scenario, config.frequency
    band = BandPlan.centered(f, scenario.band.b, scenario.band.k)
    solver = (channel_capacity if args.allocation == "waterfilling"
              else flat_allocation_capacity)
    allocation = solver(scenario.geom, scenario.medium, scenario.env, band,
                        scenario.geom.d, scenario.p_t)
    theta_text = ("n/a" if allocation.theta is None
                  else f"{allocation.theta:.6e} W")
    if config.output_format == "csv":
        lines = ["subband,f_k_Hz,psi_k_W,p_k_W"]
        for k in range(band.k):
            lines.append(f"{k + 1},{band.f_k[k]:.12e},"
                         f"{allocation.psi_k[k]:.12e},"
                         f"{allocation.p_k[k]:.12e}")
        _emit("\n".join(lines) + "\n", config.output_path)
        return 0
    lines = [
        f"capacity             : {allocation.capacity_bits_per_s:.6e} bits/s",
        f"allocation           : {args.allocation}",
        f"water level          : {theta_text}",
        f"subbands             : {band.k} x {band.delta_f:.6e} Hz",
        "subband  f_k_Hz        psi_k_W        p_k_W",
    ]
    for k in range(band.k):
        lines.append(f"{k + 1:>7d}  {band.f_k[k]:.6e}  "
                     f"{allocation.psi_k[k]:.6e}  {allocation.p_k[k]:.6e}")
    _emit("\n".join(lines) + "\n", config.output_path)
    return 0


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"{flag} expects comma-separated numbers: {exc}")


def render_csv(result: SweepResult) -> str:
    """Locale-independent CSV: '.' decimals, %.12e cells, LF endings."""
    gap_reasons: dict[float, list[str]] = {}
    for x, _column, reason in result.gaps:
        gap_reasons.setdefault(x, []).append(reason)
    out = [",".join([f"{result.axis}_{result.unit}"]
                    + result.columns + ["gap"])]
    for x, row in result.points:
        cells = [f"{x:.12e}"]
        for column in result.columns:
            value = row.get(column)
            cells.append("" if value is None else f"{value:.12e}")
        cells.append(";".join(sorted(set(gap_reasons.get(x, [])))))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def render_table(result: SweepResult) -> str:
    header = [f"{result.axis}_{result.unit}"] + result.columns + ["gap"]
    gap_reasons: dict[float, list[str]] = {}
    for x, _column, reason in result.gaps:
        gap_reasons.setdefault(x, []).append(reason)
    rows = [header]
    for x, row in result.points:
        cells = [f"{x:.6e}"]
        cells += ["" if row.get(c) is None else f"{row[c]:.6e}"
                  for c in result.columns]
        cells.append(";".join(sorted(set(gap_reasons.get(x, [])))))
        rows.append(cells)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths))
                     for r in rows) + "\n"


def cmd_sweep(args) -> int:
    config = _load_run_config(args)
    scenario = config.scenario
    lo, hi = AXIS_DEFAULTS[args.axis]
    if args.axis_from is not None:
        lo = args.axis_from
    if args.axis_to is not None:
        hi = args.axis_to
    n = args.points

    if args.axis == "frequency":
        if args.metric == "capacity":
            result = sweep_capacity_vs_frequency(scenario, (lo, hi), n,
                                                 log_axis=args.log)
        else:
            d_values = (None if args.distances is None
                        else _parse_float_list(args.distances, "--distances"))
            result = sweep_pathloss_vs_frequency(scenario, (lo, hi), n,
                                                 d_values, log_axis=args.log)
    elif args.axis in ("temperature", "pressure"):
        f_values = (None if args.freqs is None
                    else _parse_float_list(args.freqs, "--freqs"))
        run = (sweep_vs_temperature if args.axis == "temperature"
               else sweep_vs_pressure)
        result = run(scenario, (lo, hi), n, f_values, log_axis=args.log)
    else:
        result = sweep_capacity_vs_distance(scenario, (lo, hi), n,
                                            args.allocation,
                                            log_axis=args.log)

    renderer = render_table if config.output_format == "pretty" else render_csv
    _emit(renderer(result), config.output_path)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ConfigError, CatalogParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 2
    except ChannelModelError as exc:  # any other model failure
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
