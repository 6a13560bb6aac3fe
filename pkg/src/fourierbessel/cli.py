"""Command-line experiment runner.

Each subcommand drives one experiment from :mod:`.experiments`, writes a JSON
report (and a CSV of any sampled function) into the output directory, and
exits 0 when every asserted inequality passed, 2 on a usage error, and 3 on
numeric non-convergence.  Options may come from ``--config FILE`` (a JSON
object) with command-line flags taking precedence; identical configs produce
byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import experiments
from .intervals import IntervalSet
from .localization import ConvergenceError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

OUTPUT_ENV = "FOURIERBESSEL_OUT"


def _parse_interval_set(text) -> IntervalSet:
    """``0,1`` or ``0,1;2,3`` -> IntervalSet; also accepts a JSON array."""
    text = text.strip()
    if text.startswith("["):
        return IntervalSet.from_json(text)
    pairs = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(
                f"expected lo,hi pairs separated by ';', got {chunk!r}"
            )
        pairs.append((float(parts[0]), float(parts[1])))
    return IntervalSet(pairs)


def _float_list(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _write_report(report, command, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    samples = report.pop("samples", None)
    report["command"] = command
    path = os.path.join(out_dir, f"{command}.json")
    with open(path, "w") as fh:
        json.dump(_jsonable(report), fh, indent=2, sort_keys=True)
        fh.write("\n")
    written = [path]
    if samples is not None:
        csv_path = os.path.join(out_dir, f"{command}.csv")
        cols = list(samples)
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(cols)
            for row in zip(*(samples[c] for c in cols)):
                writer.writerow([repr(float(v)) for v in row])
        written.append(csv_path)
    return written


def _add_common(p):
    p.add_argument("--config", help="JSON file with option defaults")
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./reports)")
    p.add_argument("--alpha", type=float, help="Bessel order parameter (> -1/2)")
    p.add_argument("--seed", type=int, help="RNG seed")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fourierbessel",
        description="Fourier-Bessel transform experiments with machine-readable reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="Plancherel, Gaussian self-reciprocity, round trip")
    _add_common(p)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--n", type=int)
    p.add_argument("--f", choices=["gaussian", "gaussian-poly", "bump", "bessel-mode"])
    p.add_argument("--trials", type=int)

    p = sub.add_parser("translate", help="product-formula and kernel-mass suite")
    _add_common(p)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--n", type=int)
    p.add_argument("--lambdas", type=_float_list)

    p = sub.add_parser("annihilate", help="annihilating-pair certificate for (S, Sigma)")
    _add_common(p)
    p.add_argument("--S", type=_parse_interval_set)
    p.add_argument("--Sigma", type=_parse_interval_set)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)

    p = sub.add_parser("thin-check", help="two-window thinness verdict for a set")
    _add_common(p)
    p.add_argument("--S", type=_parse_interval_set)
    p.add_argument("--eps", type=float)
    p.add_argument("--R", type=float, dest="radius")

    p = sub.add_parser("thin-example", help="divergent-measure thin family")
    _add_common(p)
    p.add_argument("--eps", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--k-min", type=int, dest="k_min")
    p.add_argument("--k-max", type=int, dest="k_max")

    p = sub.add_parser("lp", help="low/high split, Schur bounds, eps sweep")
    _add_common(p)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--eps-values", type=_float_list, dest="eps_values")
    p.add_argument("--c", type=float)
    p.add_argument("--per-panel", type=int, dest="per_panel")

    p = sub.add_parser("local", help="local uncertainty inequality sweep")
    _add_common(p)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--n", type=int)
    p.add_argument("--instances", type=int)

    p = sub.add_parser("heisenberg", help="dispersion product sweep")
    _add_common(p)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)

    p = sub.add_parser("dilate-gram", help="Gram spectra of dilate families")
    _add_common(p)
    p.add_argument("--R", type=float, dest="radius")
    p.add_argument("--n", type=int)
    p.add_argument("--lambdas", type=_float_list)

    return parser


_RUNNERS = {
    "transform": experiments.run_transform,
    "translate": experiments.run_translate,
    "annihilate": experiments.run_annihilate,
    "thin-check": experiments.run_thin_check,
    "thin-example": experiments.run_thin_example,
    "lp": experiments.run_lp,
    "local": experiments.run_local,
    "heisenberg": experiments.run_heisenberg,
    "dilate-gram": experiments.run_dilate_gram,
}

_REQUIRED = {
    "annihilate": ("S", "Sigma"),
    "thin-check": ("S", "eps"),
}


def _collect_options(args):
    opts = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SystemExit(f"cannot read config {args.config}: {exc}")
        if not isinstance(cfg, dict):
            raise SystemExit("config file must hold a JSON object")
        opts.update(cfg)
    for key, val in vars(args).items():
        if key in ("command", "config", "out") or val is None:
            continue
        opts[key] = val
    for key in ("S", "Sigma"):
        if key in opts and not isinstance(opts[key], IntervalSet):
            opts[key] = IntervalSet(opts[key])
    return opts


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize everything else
        raise SystemExit(EXIT_USAGE if exc.code not in (0, None) else exc.code)
    out_dir = args.out or os.environ.get(OUTPUT_ENV, "reports")
    opts = _collect_options(args)
    for key in _REQUIRED.get(args.command, ()):
        if key not in opts:
            parser.error(f"{args.command} requires --{key}")
    runner = _RUNNERS[args.command]
    try:
        report = runner(**opts)
    except TypeError as exc:
        parser.error(str(exc))
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    written = _write_report(report, args.command, out_dir)
    for path in written:
        print(path)
    violations = int(report.get("violations", 0))
    certified = report.get("certified", True)
    ok = violations == 0 and certified is not False
    print(f"violations: {violations}")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
