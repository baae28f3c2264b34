"""Command-line interface: `dtqw run ...` and `dtqw figure ...`."""

import argparse
import math
import re
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .harness import ExperimentSpec, figure_presets, run, run_preset, write_csv
from .walk import Cycle, Line

_PI_FORM = re.compile(r"^\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_angle(text):
    """Parse an angle given as a float or as 'pi/4', '0.5pi', 'pi' etc."""
    text = str(text)
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_FORM.match(text.lower())
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    num = float(m.group(1)) if m.group(1) else 1.0
    den = float(m.group(2)) if m.group(2) else 1.0
    return num * math.pi / den


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dtqw",
        description="Noisy discrete-time quantum walk simulator with quantumness sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a custom sweep and write a CSV")
    p_run.add_argument("--config", help="TOML file with the same keys as the flags")
    p_run.add_argument("--topology", choices=["line", "cycle"])
    p_run.add_argument("--n", type=int, help="cycle size")
    p_run.add_argument("--tmax", type=int, help="line step budget")
    p_run.add_argument(
        "--theta", action="append", type=parse_angle, help="coin angle (repeatable)"
    )
    p_run.add_argument(
        "--lambda",
        dest="lambdas",
        action="append",
        type=float,
        help="amplitude-damping strength (repeatable)",
    )
    p_run.add_argument("--steps", type=int)
    p_run.add_argument("--record-every", type=int)
    p_run.add_argument("--out", help="output CSV path")

    p_fig = sub.add_parser("figure", help="run a shipped figure preset")
    p_fig.add_argument("figure", choices=sorted(figure_presets()))
    p_fig.add_argument("--out-dir", default=".")
    return parser


def _merge_config(args):
    """Fold TOML config values under CLI flags; flags win."""
    settings = {
        "topology": args.topology,
        "n": args.n,
        "tmax": args.tmax,
        "theta": args.theta,
        "lambda": args.lambdas,
        "steps": args.steps,
        "record_every": args.record_every,
        "out": args.out,
    }
    if args.config:
        with open(args.config, "rb") as fh:
            loaded = tomllib.load(fh)
        for key, value in loaded.items():
            if key not in settings:
                raise ValueError(f"unknown config key {key!r}")
            if settings[key] is None:
                settings[key] = value
    if isinstance(settings["theta"], (int, float, str)):
        settings["theta"] = [settings["theta"]]
    if isinstance(settings["lambda"], (int, float)):
        settings["lambda"] = [settings["lambda"]]
    return settings


def _run_command(args):
    s = _merge_config(args)
    for key in ("topology", "steps", "out"):
        if s[key] is None:
            raise ValueError(f"missing required setting {key!r}")
    if s["topology"] == "cycle":
        if s["n"] is None:
            raise ValueError("cycle topology requires --n")
        topology = Cycle(int(s["n"]))
    else:
        if s["tmax"] is None:
            raise ValueError("line topology requires --tmax")
        topology = Line(int(s["tmax"]))
    thetas = [parse_angle(t) for t in (s["theta"] or [])]
    if not thetas:
        raise ValueError("at least one --theta is required")
    lambdas = s["lambda"] if s["lambda"] else [0.0]
    spec = ExperimentSpec(
        name="run",
        topology=topology,
        steps=int(s["steps"]),
        thetas=tuple(thetas),
        lambdas=tuple(float(l) for l in lambdas),
        record_every=int(s["record_every"] or 1),
    )
    write_csv(run(spec), s["out"])
    print(s["out"])


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            _run_command(args)
        else:
            print(run_preset(args.figure, args.out_dir))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
