"""Command-line interface: simulate, validate-params, metrics, batch."""

from __future__ import annotations

import argparse
import dataclasses
import importlib
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .engine import (
    Strategy,
    compute_metrics,
    emit_report,
    make_constant_strategy,
    read_trajectory,
    run_scenario,
    strategy_max_power,
    strategy_off,
)
from .params import load_parameter_set, validate_parameter_set
from .scenario import ScenarioProfile, load_config


def resolve_strategy(spec: str | None) -> Strategy | None:
    """Map a --strategy argument to a callable.

    Built-ins: ``profile`` (default; request the profile's value_w while
    plugged in), ``max_power``, ``off``, ``constant:<watts>``. Anything with a
    colon and a dotted prefix is loaded as ``module.path:callable``.
    """
    if spec is None or spec == "profile":
        return None
    if spec == "max_power":
        return strategy_max_power
    if spec == "off":
        return strategy_off
    if spec.startswith("constant:"):
        return make_constant_strategy(float(spec.split(":", 1)[1]))
    if ":" in spec:
        module_name, attr = spec.split(":", 1)
        module = importlib.import_module(module_name)
        return getattr(module, attr)
    raise ValueError(f"unknown strategy '{spec}'")


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.dt is not None:
        config = dataclasses.replace(config, dt_s=args.dt)
    profile = ScenarioProfile.from_csv(args.profile)
    strategy = resolve_strategy(args.strategy)
    trajectory = run_scenario(config, profile, strategy)
    paths = emit_report(trajectory, None, args.out)
    for p in paths:
        print(p)
    return 0


def _cmd_validate_params(args: argparse.Namespace) -> int:
    pset = load_parameter_set(args.data)
    for name in ("ocv", "r_ser", "r1", "r2", "c1", "c2"):
        grid = pset.grid(name)
        print(
            f"{name}: {len(grid.soc_breakpoints)} SOC rows x "
            f"{len(grid.temp_breakpoints)} temperature columns"
        )
    report = validate_parameter_set(pset)
    print(report.summary())
    return 0 if report.ok else 1


def _cmd_metrics(args: argparse.Namespace) -> int:
    sim = read_trajectory(args.sim)
    ref = read_trajectory(args.ref)
    metrics = compute_metrics(sim, ref)
    for key, value in metrics.as_dict().items():
        print(f"{key} = {value!r}")
    return 0


def _run_batch_entry(entry: tuple[str, str, str, str]) -> str:
    config_path, profile_path, out_dir, strategy_spec = entry
    config = load_config(config_path)
    profile = ScenarioProfile.from_csv(profile_path)
    strategy = resolve_strategy(strategy_spec or None)
    trajectory = run_scenario(config, profile, strategy)
    emit_report(trajectory, None, out_dir)
    return out_dir


def _cmd_batch(args: argparse.Namespace) -> int:
    manifest = Path(args.manifest)
    if not manifest.is_file():
        raise ValueError(f"missing manifest file: {manifest}")
    base = manifest.parent
    lines = [ln for ln in manifest.read_text().splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "config,profile,out,strategy":
        raise ValueError(f"{manifest}: first line must be 'config,profile,out,strategy'")
    entries = []
    for idx, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 4:
            raise ValueError(f"{manifest} row {idx}: expected 4 cells, got {len(cells)}")
        entries.append(
            (str(base / cells[0]), str(base / cells[1]), str(base / cells[2]), cells[3])
        )

    if args.jobs <= 1:
        results = [_run_batch_entry(e) for e in entries]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_batch_entry, entries))
    for out_dir in results:
        print(f"done {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evplant",
        description="Deterministic EV traction-battery and charger simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one scenario and write its report")
    p.add_argument("--config", required=True, help="scenario configuration file")
    p.add_argument("--profile", required=True, help="usage profile CSV")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--strategy", default=None, help="name or module:callable")
    p.add_argument("--dt", type=float, default=None, help="override timestep in s")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("validate-params", help="check a parameter data directory")
    p.add_argument("--data", required=True, help="directory with the parameter CSVs")
    p.set_defaults(func=_cmd_validate_params)

    p = sub.add_parser("metrics", help="compare a trajectory against a reference")
    p.add_argument("--sim", required=True, help="simulated trajectory CSV")
    p.add_argument("--ref", required=True, help="reference trajectory CSV")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("batch", help="run every scenario in a manifest")
    p.add_argument("--manifest", required=True, help="CSV manifest of scenarios")
    p.add_argument("--jobs", type=int, default=1, help="concurrent scenario runs")
    p.set_defaults(func=_cmd_batch)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
