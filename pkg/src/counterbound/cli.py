"""Command-line entry point.

Subcommands map one-to-one onto the report builders in ``reports``:

  bounds    benefit/harm bounds from an observed joint, optionally
            sharpened by sensitivity parameters
  proxy     proxy-rule bounds from a treatment/outcome/proxy joint
  sweep     a 2-D grid of one bound side over two sensitivity parameters
  simulate  the random-model study of the condition-free proxy interval
  social    weighted social-good intervals from bound intervals
  serve     the same operations over HTTP

Structured output is JSON on stdout (or ``--out``); grids and
per-replicate dumps are CSV. Domain errors exit with status 2
(validation) or 3 (degenerate margins) and print the machine-readable
error code on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import reports
from .decision import SocialWeights
from .model import (
    CounterboundError,
    Interval,
    ObservedJoint,
    ProxyJoint,
    SchemaError,
    SensitivityParams,
)
from .proxy import DEFAULT_TIE_TOLERANCE
from .study import SWEEP_SIDES, SWEEP_TARGETS


@dataclass(frozen=True)
class RunConfig:
    """Per-invocation options, resolved from flags with their defaults."""

    input_path: Optional[Path] = None
    out_path: Optional[Path] = None
    seed: int = 0
    resolution: int = 101
    tie_tolerance: float = DEFAULT_TIE_TOLERANCE
    weights: Optional[SocialWeights] = None
    host: str = "127.0.0.1"
    port: int = 8000


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read input file {path}: "
                          f"{exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc


def _parse_floats(text: str, count: int, flag: str) -> tuple[float, ...]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != count:
        raise SchemaError(f"{flag} expects {count} comma-separated numbers, "
                          f"got {text!r}")
    try:
        return tuple(float(part) for part in parts)
    except ValueError as exc:
        raise SchemaError(f"{flag} expects numbers, got {text!r}") from exc


def _parse_interval(text: str, flag: str, kind: str = "probability") -> Interval:
    lo, hi = _parse_floats(text, 2, flag)
    return Interval(lo, hi, kind=kind)


def _parse_fixed(text: str) -> dict[str, float]:
    """Parse ``--fixed M_x=1.0,m_xp=0.0`` style assignments."""
    out: dict[str, float] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise SchemaError(f"--fixed entries look like name=value, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise SchemaError(f"--fixed value for {name!r} must be a number, "
                              f"got {value!r}") from exc
    return out


def _emit(text: str, out_path: Optional[Path]) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        out_path.write_text(text)


def _emit_json(payload: dict, out_path: Optional[Path]) -> None:
    _emit(json.dumps(payload, indent=2) + "\n", out_path)


def cmd_bounds(config: RunConfig, args: argparse.Namespace) -> int:
    obs = ObservedJoint.from_dict(_read_json(args.obs))
    params = None
    if args.params is not None:
        params = SensitivityParams(*_parse_floats(args.params, 4, "--params"))
    _emit_json(reports.bounds_report(obs, params, target=args.target),
               config.out_path)
    return 0


def cmd_proxy(config: RunConfig, args: argparse.Namespace) -> int:
    joint = ProxyJoint.from_dict(_read_json(args.joint))
    _emit_json(reports.proxy_report(joint, tie_tolerance=config.tie_tolerance),
               config.out_path)
    return 0


def cmd_sweep(config: RunConfig, args: argparse.Namespace) -> int:
    obs = ObservedJoint.from_dict(_read_json(args.obs))
    axes = [part.strip() for part in args.axes.split(",")]
    if len(axes) != 2:
        raise SchemaError(f"--axes expects two comma-separated parameter "
                          f"names, got {args.axes!r}")
    result = reports.sweep_report(obs, target=args.target, side=args.side,
                                  axis1=axes[0], axis2=axes[1],
                                  fixed=_parse_fixed(args.fixed),
                                  resolution=config.resolution)
    if args.format == "json":
        _emit_json(result.to_json(), config.out_path)
        return 0
    _emit(result.to_csv(), config.out_path)
    if config.out_path is not None:
        sidecar = config.out_path.with_suffix(".thresholds.json")
        sidecar.write_text(json.dumps(result.thresholds_json(), indent=2) + "\n")
    return 0


def cmd_simulate(config: RunConfig, args: argparse.Namespace) -> int:
    result = reports.simulate_report(args.n, seed=config.seed)
    _emit_json(result.to_json(), config.out_path)
    if args.records is not None:
        Path(args.records).write_text(result.records_csv())
    return 0


def cmd_social(config: RunConfig, args: argparse.Namespace) -> int:
    benefit = _parse_interval(args.benefit, "--benefit")
    harm = _parse_interval(args.harm, "--harm")
    ate = None
    if args.ate is not None:
        ate = _parse_interval(args.ate, "--ate", kind="signed")
    assert config.weights is not None
    _emit_json(reports.social_report(benefit, harm, ate, config.weights),
               config.out_path)
    return 0


def cmd_serve(config: RunConfig, args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(static_dir=args.static),
                host=config.host, port=config.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="counterbound",
        description="Bounds on the probabilities of benefit and harm "
                    "from observational data, sensitivity parameters "
                    "and confounder proxies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds",
                       help="bound benefit/harm from an observed joint")
    p.add_argument("--obs", required=True,
                   help="path to an ObservedJoint JSON file")
    p.add_argument("--params", metavar="m_x,M_x,m_xp,M_xp",
                   help="sensitivity parameters (omit for the envelope only)")
    p.add_argument("--target", choices=reports.BOUNDS_TARGETS, default="both")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("proxy", help="bound benefit/harm from a proxy joint")
    p.add_argument("--joint", required=True,
                   help="path to a ProxyJoint JSON file")
    p.add_argument("--tie-tolerance", type=float, default=DEFAULT_TIE_TOLERANCE,
                   help="width below which a direction counts as a tie "
                        "(default 0: exact ties only)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(handler=cmd_proxy)

    p = sub.add_parser("sweep",
                       help="grid one bound side over two parameters")
    p.add_argument("--obs", required=True,
                   help="path to an ObservedJoint JSON file")
    p.add_argument("--target", choices=SWEEP_TARGETS, required=True)
    p.add_argument("--side", choices=SWEEP_SIDES, required=True)
    p.add_argument("--axes", required=True, metavar="param1,param2",
                   help="the two parameters to vary, e.g. m_x,M_xp")
    p.add_argument("--fixed", default="", metavar="name=value,...",
                   help="values for non-axis parameters (default vacuous)")
    p.add_argument("--res", type=int, default=101,
                   help="grid points per axis (default 101)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="csv writes the grid (plus a .thresholds.json "
                        "sidecar next to --out); json bundles both")
    p.add_argument("--out", help="write the grid here instead of stdout")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("simulate",
                       help="score the condition-free proxy interval on "
                            "random models")
    p.add_argument("--n", type=int, required=True,
                   help="number of replicates")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the replicate sampler (default 0)")
    p.add_argument("--records", metavar="PATH",
                   help="also write per-replicate a,b,c,d,useful CSV here")
    p.add_argument("--out", help="write the JSON summary here instead of stdout")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("social",
                       help="weighted social-good interval from bounds")
    p.add_argument("--benefit", required=True, metavar="lo,hi")
    p.add_argument("--harm", required=True, metavar="lo,hi")
    p.add_argument("--ate", metavar="lo,hi",
                   help="effect band for the refined interval (optional)")
    p.add_argument("--w", default="1,1", metavar="w_benefit,w_harm",
                   help="nonnegative weights (default 1,1)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(handler=cmd_social)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", metavar="DIR",
                   help="also serve this directory at / (for the explorer)")
    p.set_defaults(handler=cmd_serve)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    input_flag = getattr(args, "obs", None) or getattr(args, "joint", None)
    weights = None
    if getattr(args, "w", None) is not None:
        weights = SocialWeights(*_parse_floats(args.w, 2, "--w"))
    return RunConfig(
        input_path=Path(input_flag) if input_flag else None,
        out_path=Path(args.out) if getattr(args, "out", None) else None,
        seed=getattr(args, "seed", 0),
        resolution=getattr(args, "res", 101),
        tie_tolerance=getattr(args, "tie_tolerance", DEFAULT_TIE_TOLERANCE),
        weights=weights,
        host=getattr(args, "host", "127.0.0.1"),
        port=getattr(args, "port", 8000),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        return args.handler(config, args)
    except CounterboundError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
