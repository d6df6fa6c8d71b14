"""Command-line entry point: ``hetura <mode> [options]``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import harness
from .config import load_config_file, make_config, validate

EXIT_OK = 0
EXIT_INVALID = 2


def parse_db_range(text: str) -> tuple[float, ...]:
    """``A:B:STEP`` (inclusive) or a single value."""
    parts = text.split(":")
    if len(parts) == 1:
        return (float(parts[0]),)
    if len(parts) != 3:
        raise ValueError(f"expected A:B:STEP, got {text!r}")
    a, b, step = map(float, parts)
    if step <= 0 or b < a:
        raise ValueError(f"empty dB range {text!r}")
    n = int(round((b - a) / step)) + 1
    return tuple(round(a + i * step, 10) for i in range(n))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hetura", description=__doc__)
    p.add_argument("mode", choices=harness.MODES)
    p.add_argument("--config", help="key = value parameter file")
    p.add_argument("--p1-db", default="13:23:1", help="P_1 sweep in dB, A:B:STEP")
    p.add_argument("--alpha", type=float, default=None, help="P_2 / P_1 (default 6)")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--genie", action="store_true", help="perfect first decoding phase")
    p.add_argument("--denoiser", choices=("pme", "soft"), default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--target", type=float, default=0.05)
    p.add_argument("--rates", default=None, help="comma-separated rate grid for baseline-ura")
    return p


def _fail(msg: str) -> int:
    print(f"hetura: invalid configuration: {msg}", file=sys.stderr)
    return EXIT_INVALID


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        values = load_config_file(args.config) if args.config else {}
        dbs = parse_db_range(args.p1_db)
        alpha = args.alpha if args.alpha is not None else values.pop("alpha", 6.0)
        values.pop("p1", None)
        values.pop("p2", None)
        values["master_seed"] = args.seed
        if args.denoiser:
            values["denoiser"] = args.denoiser
        p1 = harness.db_to_power(dbs[0])
        config = make_config(p1=p1, alpha=alpha, **values)
    except (OSError, ValueError, TypeError) as exc:
        return _fail(str(exc))
    report = validate(config)
    if not report:
        return _fail(str(report))
    threads = harness.resolve_threads(args.threads)
    try:
        spec = harness.ExperimentSpec(
            base=config, mode=args.mode, p1_db=dbs, alpha=alpha, trials=args.trials,
            target=args.target, genie=args.genie, threads=threads,
        )
        if args.rates:
            spec = replace(spec, rates=tuple(float(r) for r in args.rates.split(",")))
    except ValueError as exc:
        return _fail(str(exc))
    results = harness.run_experiment(spec)
    harness.emit(results, args.format, args.out, spec)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
