"""Command-line driver.

Subcommands: ``simulate`` (scene -> echoes -> recovery -> artifacts),
``compare`` (adds the LFM matched-filter baseline), ``selftest`` (invariant
suite), ``export-waveforms`` (weight set and pulses as CSV).

Exit codes: 0 success, 1 property or constraint failure, 2 I/O or parse error.
"""

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .pipeline import export_waveforms, run_compare, run_simulate
from .selftest import run_selftest


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofdmsar",
        description="MIMO-OFDM SAR range reconstruction simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(sp, with_trials=True):
        sp.add_argument("--config", required=True, help="scenario JSON file")
        sp.add_argument("--out", default=None, help="output directory (default: config out_dir or ./out)")
        if with_trials:
            sp.add_argument("--noiseless", action="store_true", help="force a noiseless run")
            sp.add_argument("--verbose", action="store_true", help="retain per-subswath intermediates and print diagnostics")
            sp.add_argument("--trials", type=int, default=0, help="Monte Carlo trials for the zero-scene noise-floor estimate (>= 100)")

    add_run_flags(sub.add_parser("simulate", help="simulate and reconstruct one scenario"))
    add_run_flags(sub.add_parser("compare", help="reconstruct and compare against the chirp baseline"))
    sub.add_parser("selftest", help="run the built-in invariant suite")
    add_run_flags(sub.add_parser("export-waveforms", help="write the weight set and pulses as CSV"), with_trials=False)
    return parser


def _print_selftest(results) -> int:
    width = max(len(r.name) for r in results)
    print(f"{'check'.ljust(width)}  status  detail")
    print(f"{'-' * width}  ------  ------")
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name.ljust(width)}  {status:6}  {r.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"\n{len(failed)} check(s) failed: {', '.join(failed)}")
        return 1
    print(f"\nall {len(results)} checks passed")
    return 0


def _print_run_summary(result, verbose: bool) -> None:
    metrics = result.report.metrics
    if metrics is not None:
        print(f"max abs error: {metrics.max_abs_error:.3e}")
        if metrics.leakage_db is not None:
            print(f"leakage: {metrics.leakage_db:.1f} dB")
        if metrics.noise_floor_estimate is not None:
            print(f"noise floor estimate: {metrics.noise_floor_estimate:.3e}")
    if verbose and result.report.subswath_responses:
        for resp in result.report.subswath_responses:
            peak = float(abs(resp.responses).max())
            print(f"subswath {resp.subswath}: peak response {peak:.4f}")
    for name, path in sorted(result.files.items()):
        print(f"wrote {name}: {path}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "selftest":
        return _print_selftest(run_selftest())

    try:
        config = load_config(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    out_dir = Path(args.out or config.out_dir or "out")
    try:
        if args.command == "simulate":
            result = run_simulate(
                config, out_dir, noiseless=args.noiseless, trials=args.trials, verbose=args.verbose
            )
            _print_run_summary(result, args.verbose)
        elif args.command == "compare":
            result = run_compare(
                config, out_dir, noiseless=args.noiseless, trials=args.trials, verbose=args.verbose
            )
            _print_run_summary(result, args.verbose)
        elif args.command == "export-waveforms":
            for name, path in sorted(export_waveforms(config, out_dir).items()):
                print(f"wrote {name}: {path}")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
