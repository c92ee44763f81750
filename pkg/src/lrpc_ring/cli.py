"""Command-line driver for the failure-rate simulation.

Example::

    lrpc-sim --p 2 --r 2 --m 20 --lambda 2 --n 20 --k 8 --t 1:7 \\
        --target-failures 1000 --seed 42 --out results.csv

Settings may also come from a flat ``key=value`` file given with ``--config``;
flags on the command line take precedence. Exit status is 0 on success and 2
on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ConfigError
from .sim import SimConfig, bound_rows, rows_to_csv, run_sweep

REQUIRED = ("p", "r", "m", "lam", "n", "k", "t")
_INT_KEYS = {"p", "r", "m", "lam", "n", "k", "target_failures", "max_trials", "seed", "workers", "chunk_size"}


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            return int(lo), int(lo)
        return int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"t range must look like 1:7, got {text!r}") from None


def _parse_poly(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"modulus must be a list of integers, got {text!r}") from None


def read_config_file(path) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key = key.strip().replace("-", "_")
        out["lam" if key == "lambda" else key] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrpc-sim", description="Monte Carlo failure rates of LRPC codes over Galois rings.")
    ap.add_argument("--p", type=int)
    ap.add_argument("--r", type=int)
    ap.add_argument("--m", type=int)
    ap.add_argument("--lambda", dest="lam", type=int)
    ap.add_argument("--n", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--t", help="inclusive range lo:hi, or a single value")
    ap.add_argument("--target-failures", dest="target_failures", type=int)
    ap.add_argument("--max-trials", dest="max_trials", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--out", help="CSV path (default: standard output)")
    ap.add_argument("--config", help="key=value file with any of the settings above")
    ap.add_argument("--modulus", help="coefficients of h, constant term first")
    ap.add_argument("--code-file", dest="code_path", help="use a saved code instead of generating one")
    ap.add_argument("--workers", type=int, help="worker processes (default: $LRPC_SIM_WORKERS or the CPU count)")
    ap.add_argument("--chunk-size", dest="chunk_size", type=int)
    ap.add_argument("--random-codeword", dest="random_codeword", action="store_true", default=None)
    ap.add_argument("--check-bounds-only", action="store_true", help="write only the analytic columns")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def config_from_args(args: argparse.Namespace) -> SimConfig:
    settings: dict[str, object] = {}
    if args.config:
        settings.update(read_config_file(args.config))
    for key in ("p", "r", "m", "lam", "n", "k", "t", "target_failures", "max_trials", "seed", "out",
                "modulus", "code_path", "workers", "chunk_size", "random_codeword"):
        val = getattr(args, key)
        if val is not None:
            settings[key] = val
    missing = [("lambda" if k == "lam" else k) for k in REQUIRED if k not in settings]
    if missing:
        raise ConfigError("missing required settings: " + ", ".join("--" + k for k in missing))
    kwargs: dict[str, object] = {}
    for key, val in settings.items():
        if key in _INT_KEYS:
            try:
                kwargs[key] = int(val)
            except (TypeError, ValueError):
                raise ConfigError(f"{key} must be an integer, got {val!r}") from None
        elif key == "t":
            kwargs["t_min"], kwargs["t_max"] = _parse_range(str(val))
        elif key == "out":
            kwargs["out_path"] = str(val)
        elif key == "modulus":
            kwargs["h"] = _parse_poly(str(val))
        elif key == "code_path":
            kwargs["code_path"] = str(val)
        elif key == "random_codeword":
            kwargs["random_codeword"] = val if isinstance(val, bool) else str(val).lower() in ("1", "true", "yes")
        else:
            raise ConfigError(f"unknown setting {key!r}")
    cfg = SimConfig(**kwargs)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = config_from_args(args)
        rows = bound_rows(cfg) if args.check_bounds_only else run_sweep(cfg)
    except ConfigError as exc:
        print(f"lrpc-sim: error: {exc}", file=sys.stderr)
        return 2
    text = rows_to_csv(rows)
    if cfg.out_path:
        Path(cfg.out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
