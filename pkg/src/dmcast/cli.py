"""Command-line entry point for the simulation runs."""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, default_config, load_config
from .experiments import run_ber_angle, run_flops, run_robust_ber, run_ssr_snr

_COMMANDS = {
    "ber-angle": (run_ber_angle, "Monte-Carlo BER versus probe angle"),
    "ssr-snr": (run_ssr_snr, "secrecy sum-rate per group versus SNR"),
    "robust-ber": (run_robust_ber, "BER versus angle under direction-measurement errors"),
    "flops": (run_flops, "FLOP-count table and scaling exponents"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmcast",
        description="Secure multicast precoding simulator for directional-modulation arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file (defaults to the reference setup)")
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--seed", type=int, help="master seed override (u64)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweep points")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else default_config()
        if args.seed is not None:
            if not 0 <= args.seed < 2 ** 64:
                raise ConfigError("--seed", "must be an unsigned 64-bit integer")
            config = config.with_seed(args.seed)
        if args.threads < 1:
            raise ConfigError("--threads", "must be a positive integer")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    runner, _ = _COMMANDS[args.command]
    runner(config, args.out, threads=args.threads)
    return 0


if __name__ == "__main__":
    sys.exit(main())
