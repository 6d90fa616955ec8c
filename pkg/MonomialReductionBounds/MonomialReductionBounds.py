#!/usr/bin/env python3
"""
MonomialReductionBounds.py

Command-line entry point. Subcommands:

  compute CONFIG        run the compute tasks of an instance file
  verify CONFIG         run every task of an instance file, in declaration order
  family N --part P     emit (or with --run, execute) the Veronese(N) family instance
  corpus --count C      emit (or with --run, execute) a seeded random corpus

Usage:
  MonomialReductionBounds verify instance.json --format json --out report.json
    (installed as a console_script entry point in pyproject.toml)

Exit codes: 0 success, 2 config error, 3 hypothesis not met,
4 unresolved bound, 5 failed verdict or internal error.
"""

import argparse
import logging
import os
import sys

from .h_instances import (
    COMPUTE,
    CORPUS_PROFILES,
    config_to_dict,
    generate_random_corpus,
    generate_veronese_family,
)
from .helpers import EXIT_FAIL, AlgebraError, ConfigError, configure_logging, dumps_stable, write_json_file
from .i_runner import apply_overrides, run_config, run_instances
from .j_report import exit_code, render_json, render_table

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table", help="report format")
    common.add_argument("--seed", type=int, default=None, help="seed for generated instances and certificates")
    common.add_argument("--bound-rn", type=int, default=None, help="reduction-number search bound")
    common.add_argument("--bound-k", type=int, default=None, help="search bound for k")
    common.add_argument("--bound-v", type=int, default=None, help="search bound for v_n")
    common.add_argument("--out", default=None, help="write the report or config here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="parallel instances for corpus runs")
    common.add_argument("--timing", action="store_true", help="include timings in JSON reports")
    common.add_argument("-v", "--verbose", action="count", default=0, help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    parser = argparse.ArgumentParser(prog="MonomialReductionBounds",
                                     description="Reduction-number bounds for monomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[common], help="run compute tasks of a config")
    compute.add_argument("config")
    verify = sub.add_parser("verify", parents=[common], help="run all tasks of a config")
    verify.add_argument("config")

    family = sub.add_parser("family", parents=[common], help="Veronese family instance")
    family.add_argument("n", type=int)
    family.add_argument("--part", type=int, choices=(1, 2), default=1)
    family.add_argument("--run", action="store_true", help="execute instead of emitting the config")

    corpus = sub.add_parser("corpus", parents=[common], help="seeded random corpus")
    corpus.add_argument("--count", type=int, default=50)
    corpus.add_argument("--profile", choices=CORPUS_PROFILES, default=CORPUS_PROFILES[0])
    corpus.add_argument("--run", action="store_true", help="execute instead of emitting configs")
    return parser


def _overrides(args) -> dict:
    return {"rn": args.bound_rn, "k": args.bound_k, "v": args.bound_v, "seed": args.seed}


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("Wrote %s", out)
    else:
        sys.stdout.write(text)


def _finish(report, args) -> int:
    if args.format == "json":
        text = render_json(report, include_timing=args.timing)
    else:
        text = render_table(report)
    _emit(text, args.out)
    return exit_code(report)


def _run(args) -> int:
    if args.command in ("compute", "verify"):
        kinds = (COMPUTE,) if args.command == "compute" else None
        return _finish(run_config(args.config, kinds, **_overrides(args)), args)

    if args.command == "family":
        configs = [generate_veronese_family(args.n, args.part)]
    else:
        seed = args.seed if args.seed is not None else 0
        configs = generate_random_corpus(seed, args.count, args.profile)
    configs = [apply_overrides(cfg, **_overrides(args)) for cfg in configs]

    if args.run:
        report = run_instances(configs, workers=args.workers, progress=len(configs) > 1 and not args.quiet)
        return _finish(report, args)

    if args.command == "family":
        _emit(dumps_stable(config_to_dict(configs[0])), args.out)
    elif args.out:
        os.makedirs(args.out, exist_ok=True)
        for cfg in configs:
            write_json_file(os.path.join(args.out, f"{cfg.name}.json"), config_to_dict(cfg))
        logger.info("Wrote %d config(s) to %s", len(configs), args.out)
    else:
        _emit(dumps_stable([config_to_dict(cfg) for cfg in configs]), None)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(-1 if args.quiet else args.verbose)
    try:
        code = _run(args)
    except ConfigError as e:
        logger.error("%s", e)
        sys.exit(e.exit_code)
    except AlgebraError as e:
        logger.error("%s: %s", type(e).__name__, e)
        sys.exit(e.exit_code)
    except OSError as e:
        logger.error("%s", e)
        sys.exit(EXIT_FAIL)
    except Exception:
        logger.exception("Unexpected error")
        sys.exit(EXIT_FAIL)
    sys.exit(code)


if __name__ == "__main__":
    main()
