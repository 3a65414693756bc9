"""Command-line front end.

Subcommands: run (single or replicated simulation), sweep (one parameter
over a value list), calibrate (noise-floor search against a target received
ratio) and presets (list bundled scenarios). Identical command lines and
input files produce byte-identical output files; numeric output is printed
to 6 significant digits. SIM1090_OUTPUT_DIR, when set, anchors relative
--out paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .engine import replicated_to_dict, run, run_replicated
from .metrics import CalibrationError, calibrate_noise_floor
from .scenario import ScenarioConfig, ValidationError, load_scenario
from .seeding import stable_seed

OUTPUT_DIR_ENV = "SIM1090_OUTPUT_DIR"

SWEEP_PARAMS: dict[str, type] = {
    "n_planes": int,
    "n_uavs": int,
    "noise_floor_dbm": float,
    "deadline_s": float,
}


@dataclass(frozen=True)
class SweepSpec:
    """One swept config key, its values, and replications per value."""

    param: str
    values: tuple
    reps: int

    def __post_init__(self) -> None:
        if self.param not in SWEEP_PARAMS:
            raise ValidationError(
                [f"unknown sweep parameter {self.param!r}; valid: {', '.join(sorted(SWEEP_PARAMS))}"]
            )
        if not self.values:
            raise ValidationError(["sweep needs at least one value"])
        if self.reps < 1:
            raise ValidationError([f"replications must be >= 1, got {self.reps}"])


def _presets_dir():
    return resources.files("sim1090.presets")


def _preset_names() -> list[str]:
    return sorted(p.name for p in _presets_dir().iterdir() if p.name.endswith(".scn"))


def _resolve_scenario(path_text: str) -> ScenarioConfig:
    """Load a scenario from a path, falling back to the bundled presets."""
    path = Path(path_text)
    if path.is_file():
        return load_scenario(path)
    name = path_text if path_text.endswith(".scn") else path_text + ".scn"
    if name in _preset_names():
        return load_preset(name)
    raise FileNotFoundError(f"scenario not found: {path_text}")


def load_preset(name: str) -> ScenarioConfig:
    from .scenario import loads_scenario

    return loads_scenario((_presets_dir() / name).read_text(encoding="utf-8"))


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if not path.is_absolute():
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _json_text(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def cmd_run(args) -> int:
    config = _resolve_scenario(args.scenario)
    if args.seed is not None:
        config = config.with_overrides(seed=args.seed)
    if args.reps == 1:
        report = run(config)
        text = _json_text(report.to_dict()) if args.format == "json" else report.to_csv()
    else:
        result = run_replicated(config, args.reps)
        doc = replicated_to_dict(config, result)
        if args.format == "json":
            text = _json_text(doc)
        else:
            lines = ["# sim1090 replicated-summary v1", "metric,mean,std"]
            for metric, s in doc["summary"].items():
                lines.append(f"{metric},{s['mean']:.6g},{s['std']:.6g}")
            lines.append("# sim1090 replications v1")
            lines.append("rep,seed,received_ratio,update_probability")
            for k, row in enumerate(doc["replications"]):
                up = "" if row["update_probability"] is None else f"{row['update_probability']:.6g}"
                lines.append(f"{k},{row['seed']},{row['received_ratio']:.6g},{up}")
            text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 0


def cmd_sweep(args) -> int:
    base = _resolve_scenario(args.scenario)
    if args.seed is not None:
        base = base.with_overrides(seed=args.seed)
    cast = SWEEP_PARAMS.get(args.param, str)
    try:
        values = tuple(cast(v) for v in args.values.split(","))
    except ValueError:
        return _fail(f"could not parse sweep values {args.values!r} as {cast.__name__}")
    spec = SweepSpec(param=args.param, values=values, reps=args.reps)

    point_lines = []
    summary_lines = []
    for value in spec.values:
        ratios = []
        for rep in range(spec.reps):
            seed = stable_seed(base.seed, value, rep)
            cfg = base.with_overrides(**{spec.param: value}, seed=seed)
            report = run(cfg)
            up = "" if report.update is None else f"{report.update.probability:.6g}"
            point_lines.append(
                f"{spec.param},{value},{rep},{seed},{report.received_ratio:.6g},{up}"
            )
            ratios.append(report.received_ratio)
        mean = sum(ratios) / len(ratios)
        std = (sum((r - mean) ** 2 for r in ratios) / len(ratios)) ** 0.5
        summary_lines.append(f"{spec.param},{value},{spec.reps},{mean:.6g},{std:.6g}")

    lines = ["# sim1090 sweep-points v1", "param,value,rep,seed,received_ratio,update_probability"]
    lines += point_lines
    lines += ["# sim1090 sweep-summary v1", "param,value,reps,mean_received_ratio,std_received_ratio"]
    lines += summary_lines
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_calibrate(args) -> int:
    base = _resolve_scenario(args.scenario)
    if args.seed is not None:
        base = base.with_overrides(seed=args.seed)
    result = calibrate_noise_floor(args.target, base, n_reps=args.reps)
    doc = {
        "schema": "sim1090/calibration/v1",
        "noise_floor_dbm": float(f"{result.noise_floor_dbm:.6g}"),
        "achieved_ratio": float(f"{result.achieved_ratio:.6g}"),
        "target_ratio": result.target_ratio,
        "n_reps": result.n_reps,
        "iterations": result.iterations,
    }
    _write_output(_json_text(doc), args.out)
    if args.out is not None:
        print(
            f"calibrated noise floor {result.noise_floor_dbm:.6g} dBm "
            f"(achieved ratio {result.achieved_ratio:.6g})"
        )
    return 0


def cmd_presets(args) -> int:
    for name in _preset_names():
        first = (_presets_dir() / name).read_text(encoding="utf-8").splitlines()[0]
        description = first.lstrip("# ").strip() if first.startswith("#") else ""
        print(f"{name:14s} {description}")
    return 0


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim1090",
        description="Monte Carlo simulator of the shared 1090 MHz surveillance broadcast channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario")
    p_run.add_argument("--scenario", required=True, help="scenario file or bundled preset name")
    p_run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_run.add_argument("--reps", type=int, default=1, help="independent replications")
    p_run.add_argument("--format", choices=("json", "csv"), default="json")
    p_run.add_argument("--out", default=None, help="output file (default: stdout)")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep one config key over a value list")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--param", required=True, help=f"one of: {', '.join(sorted(SWEEP_PARAMS))}")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--reps", type=int, default=1)
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_cal = sub.add_parser("calibrate", help="find the noise floor matching a target received ratio")
    p_cal.add_argument("--scenario", required=True)
    p_cal.add_argument("--target", type=float, required=True, help="target received ratio in (0, 1)")
    p_cal.add_argument("--reps", type=int, default=10)
    p_cal.add_argument("--seed", type=int, default=None)
    p_cal.add_argument("--out", default=None)
    p_cal.set_defaults(func=cmd_calibrate)

    p_presets = sub.add_parser("presets", help="list bundled scenarios")
    p_presets.set_defaults(func=cmd_presets)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except ValidationError as exc:
        return _fail(str(exc))
    except CalibrationError as exc:
        return _fail(f"calibration failed: {exc}")


if __name__ == "__main__":
    sys.exit(main())
