"""Command-line front end: simulate, compare, and sweep workflows.

Every workflow reads INI config files and writes all of its outputs under
the directory given by --out. Exit codes: 0 success, 2 configuration
error, 3 simulation abort (non-finite state), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import (ConfigError, config_digest, load_sim_config, load_sweep_spec,
                     write_sim_config)
from .engine import (SimConfig, SimulationAbort, Trace, compare, metrics,
                     metrics_to_dict, run, write_trace_csv)
from .svgplot import line_plot, write_svg
from .tuner import sweep, write_sweep_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIM_ABORT = 3
EXIT_IO = 4


def _apply_overrides(config: SimConfig, args: argparse.Namespace) -> SimConfig:
    if getattr(args, "dt", None) is not None:
        config = replace(config, dt=args.dt)
    if getattr(args, "no_coupling", False):
        config = replace(config, coupling_enabled=False)
    return config


def _write_manifest(out_dir: Path, digests: dict[str, str], outputs: list[Path]) -> Path:
    manifest = {
        "tool": "nanocontour",
        "version": __version__,
        "timestamp_utc": datetime.datetime.now(datetime.timezone.utc)
        .replace(microsecond=0).isoformat(),
        "config_digests": digests,
        "outputs": [p.name for p in outputs],
    }
    path = out_dir / "manifest.json"
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _xy_plot(trace: Trace) -> str:
    return line_plot(
        [(trace.x_ref, trace.y_ref, "reference"), (trace.x_act, trace.y_act, "actual")],
        title="Command path vs stage motion", xlabel="x (nm)", ylabel="y (nm)",
        equal_aspect=True)


def _eps_plot(traces: list[tuple[Trace, str]]) -> str:
    return line_plot(
        [(tr.t, tr.eps, label) for tr, label in traces],
        title="Contour error", xlabel="t (s)", ylabel="contour error (nm)")


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _apply_overrides(load_sim_config(args.config), args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    trace = run(config)
    m = metrics(trace)

    outputs = []
    trace_path = out_dir / "trace.csv"
    write_trace_csv(trace, trace_path)
    outputs.append(trace_path)

    metrics_path = out_dir / "metrics.json"
    with open(metrics_path, "w") as fh:
        json.dump(metrics_to_dict(m), fh, indent=2, sort_keys=True)
        fh.write("\n")
    outputs.append(metrics_path)

    xy_path = out_dir / "path_xy.svg"
    write_svg(_xy_plot(trace), xy_path)
    outputs.append(xy_path)

    eps_path = out_dir / "contour_error.svg"
    write_svg(_eps_plot([(trace, "contour error")]), eps_path)
    outputs.append(eps_path)

    _write_manifest(out_dir, {"config": config_digest(config)}, outputs)
    print(f"simulated {trace.path.duration:g} s ({len(trace)} samples); "
          f"rms contour error {m.rms_contour_error:.3g} nm, "
          f"max {m.max_abs_contour_error:.3g} nm; outputs in {out_dir}")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    config_a = _apply_overrides(load_sim_config(args.config_a), args)
    config_b = _apply_overrides(load_sim_config(args.config_b), args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    try:
        report = compare(config_a, config_b)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    outputs = []
    report_path = out_dir / "comparison.json"
    with open(report_path, "w") as fh:
        json.dump({
            "a": metrics_to_dict(report.metrics_a),
            "b": metrics_to_dict(report.metrics_b),
            "relative_change": report.relative_change,
        }, fh, indent=2, sort_keys=True)
        fh.write("\n")
    outputs.append(report_path)

    # overlay needs both traces; reruns are cheap and deterministic
    trace_a = run(config_a)
    trace_b = run(config_b)
    overlay_path = out_dir / "contour_error_overlay.svg"
    write_svg(_eps_plot([(trace_a, "config A"), (trace_b, "config B")]), overlay_path)
    outputs.append(overlay_path)

    _write_manifest(out_dir, {"config_a": config_digest(config_a),
                              "config_b": config_digest(config_b)}, outputs)
    delta = report.relative_change["rms_contour_error"]
    print(f"compared: rms contour error {report.metrics_a.rms_contour_error:.3g} nm -> "
          f"{report.metrics_b.rms_contour_error:.3g} nm ({delta:+.1%}); "
          f"outputs in {out_dir}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _apply_overrides(load_sim_config(args.config), args)
    spec = load_sweep_spec(args.sweep)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    try:
        result = sweep(base, spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    outputs = []
    csv_path = out_dir / "sweep.csv"
    write_sweep_csv(result, csv_path)
    outputs.append(csv_path)

    best_config = replace(base, gains=result.best.gains)
    best_path = out_dir / "best_gains.cfg"
    write_sim_config(best_config, best_path)
    outputs.append(best_path)

    _write_manifest(out_dir, {"config": config_digest(base)}, outputs)
    gains = ", ".join(f"{n}={v:g}" for n, v in
                      zip(("k_px", "k_ix", "k_py", "k_iy", "k_dx", "k_dy"),
                          result.best.gains.as_tuple()))
    print(f"swept {len(result.points)} points; best {spec.objective}/{spec.scope} = "
          f"{result.best.objective_value:.6g} nm at {gains}; outputs in {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nanocontour",
        description="Deterministic biaxial stage simulator with cross-coupled "
                    "contour control")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--dt", type=float, default=None,
                       help="override the sample period (s)")
        p.add_argument("--no-coupling", action="store_true",
                       help="disable the cross-coupling stage (force k_d = 0)")

    p_sim = sub.add_parser("simulate", help="run one configuration")
    p_sim.add_argument("--config", required=True, help="simulation config file")
    add_common(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_cmp = sub.add_parser("compare", help="run two configurations over one path")
    p_cmp.add_argument("--config-a", required=True, help="first config file")
    p_cmp.add_argument("--config-b", required=True, help="second config file")
    add_common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_swp = sub.add_parser("sweep", help="grid-search controller gains")
    p_swp.add_argument("--config", required=True, help="base simulation config file")
    p_swp.add_argument("--sweep", required=True, help="sweep spec file")
    add_common(p_swp)
    p_swp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationAbort as exc:
        print(f"simulation abort: {exc}", file=sys.stderr)
        return EXIT_SIM_ABORT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
