"""``hybrid-bell`` command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from typing import Optional, Sequence

from .errors import ConfigError, HybridBellError, NumericalError, TruncationError
from .figures import PRESETS, run_figure
from .scan import COMMANDS, RUNNERS, THREADS_ENV, ScanConfig, coerce, default_threads, load_config, run_verify

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

log = logging.getLogger("hybrid_bell")

# (flag, ScanConfig field, help)
_VALUE_FLAGS = [
    ("--scheme", "schemes", "onoff, parity, both, or a comma list"),
    ("--alpha-grid", "alpha_grid", "start:stop:step (inclusive), list, or a single value"),
    ("--eta-grid", "eta_grid", "symmetric efficiency grid (eta_A = eta_B)"),
    ("--eta-a-grid", "eta_a_grid", "qubit-side efficiency grid"),
    ("--eta-b-grid", "eta_b_grid", "field-side efficiency grid"),
    ("--alpha-range", "alpha_range", "lo:hi bounds of the amplitude search"),
    ("--dim", "dim", "Fock truncation dimension for verify"),
    ("--tail-tol", "tail_tol", "Poisson tail tolerance for verify"),
    ("--samples", "samples", "number of verify tuples"),
    ("--max-amp", "max_amp", "largest |alpha|, |beta| drawn by verify"),
    ("--mode", "mode", "threshold mode: symmetric, eta-b-only, fixed-eta-a, fixed-eta-b"),
    ("--fixed", "fixed", "the held efficiency for fixed-eta-* modes"),
    ("--tol", "tol", "bisection tolerance on eta"),
]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key-value file with one [command] section")
    common.add_argument("--out", metavar="FILE", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker processes (default ${THREADS_ENV} or 1)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--perfect", action="store_true", default=None,
                        help="verify with eta_A = eta_B = 1 only")
    common.add_argument("-v", "--verbose", action="store_true")
    for flag, dest, help_ in _VALUE_FLAGS:
        common.add_argument(flag, dest=dest, default=None, help=help_)

    p = argparse.ArgumentParser(prog="hybrid-bell", description="Bell-CHSH optimization for hybrid entangled states.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd, parents=[common])
        if cmd == "figures":
            sp.add_argument("figure", choices=sorted(PRESETS), help="preset name")
    return p


def make_config(args: argparse.Namespace) -> ScanConfig:
    """Defaults, then the config file, then explicit flags."""
    kw: dict = {"threads": default_threads()}
    if args.config:
        kw.update(load_config(args.config, args.command))
    for name in ("out", "format", "threads", "seed", "perfect"):
        v = getattr(args, name)
        if v is not None:
            kw[name] = v
    for _, dest, _ in _VALUE_FLAGS:
        v = getattr(args, dest)
        if v is not None:
            k, val = coerce(dest, v)
            kw[k] = val
    if getattr(args, "figure", None):
        kw["figure"] = args.figure
    try:
        return ScanConfig(command=args.command, **kw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(rows[0].keys())
        for r in rows:
            w.writerow(_cell(v) for v in r.values())
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write through a sibling temp file so a failed run never leaves a partial file."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hybrid-bell-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def execute(cfg: ScanConfig) -> tuple[list[dict], bool]:
    """Run one command; returns rows and whether the run succeeded."""
    if cfg.command == "verify":
        return run_verify(cfg)
    if cfg.command == "figures":
        if not cfg.figure:
            raise ConfigError("figures needs a preset name")
        return run_figure(cfg.figure, cfg), True
    return RUNNERS[cfg.command](cfg), True


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = make_config(args)
        rows, ok = execute(cfg)
        text = render(rows, cfg.format)
        if not ok:
            sys.stderr.write(text)
            print("hybrid-bell: verification failed", file=sys.stderr)
            return EXIT_NUMERICAL
        if cfg.out:
            write_atomic(cfg.out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except ConfigError as exc:
        print(f"hybrid-bell: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, TruncationError, ArithmeticError) as exc:
        print(f"hybrid-bell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"hybrid-bell: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HybridBellError as exc:
        print(f"hybrid-bell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
