"""``qcverify verify``: run verification suites and print a report."""
from __future__ import annotations

import argparse
import sys

from .report import CONFIG_KEYS, FORMATS, SUITES, ConfigError, emit_report, parse_config, run

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcverify", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suites", help=f"comma-separated subset of {','.join(SUITES)} (or 'all')")
    v.add_argument("--n", type=int, help="quaternionic dimension n (default 2)")
    v.add_argument("--degree", type=int, help="polynomial degree bound for pointwise checks")
    v.add_argument("--trials", type=int, help="number of random polynomials / pairs")
    v.add_argument("--integral-degree", type=int, dest="integral_degree")
    v.add_argument("--integral-trials", type=int, dest="integral_trials")
    v.add_argument("--mc-samples", type=int, dest="mc_samples", help="Monte Carlo samples on the group")
    v.add_argument("--sphere-points", type=int, dest="sphere_points")
    v.add_argument("--samples", type=int, help="Monte Carlo samples on the sphere")
    v.add_argument("--fd-step", type=float, dest="fd_step", help="finite-difference step")
    v.add_argument("--tol", type=float, help="numerical tolerance for sphere checks")
    v.add_argument("--seed", type=int)
    v.add_argument("--format", choices=FORMATS)
    v.add_argument("--workers", type=int, help="worker threads (env QCVERIFY_WORKERS)")
    v.add_argument("--config", help="flat key = value config file")
    v.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp and runtimes for byte-identical output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = {k: getattr(args, k) for k in CONFIG_KEYS if hasattr(args, k)}
    if args.no_timestamp:
        flags["timestamp"] = False
    try:
        cfg = parse_config(args.config, flags)
    except (ConfigError, OSError) as exc:
        sys.stderr.write(f"qcverify: {exc}\n")
        return EXIT_USAGE
    report = run(cfg)
    sys.stdout.write(emit_report(report, cfg.format))
    return EXIT_PASS if report.exit_code == 0 else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
