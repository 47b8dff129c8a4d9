"""Command line entry point.

Subcommands mirror the experiment runners; `sample` writes a field file
pair instead of a table. Exit codes: 0 success, 2 a result check failed
or an internal contract was violated, 3 a resource guard tripped, 4 the
configuration or invocation was invalid.
"""

import argparse
import os
import sys
from dataclasses import replace

from .disorder import sample_field
from .errors import ConfigError, ContractViolationError, ResourceLimitError
from .harness import ExperimentConfig, _params_for, _sampler_for, derive_seed, emit, run_experiment
from .persistence import save_field

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_RESOURCE = 3
EXIT_CONFIG = 4

_SUBCOMMANDS = (
    "sample",
    "pressure",
    "phase-diagram",
    "clusters",
    "audit-bounds",
    "converge",
    "self-average",
    "monotonicity",
    "covariance",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pspinlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        cmd = sub.add_parser(name, help=f"run the {name} experiment")
        cmd.add_argument("--config", required=True, help="JSON config file")
        cmd.add_argument("--seed", type=int, default=None, help="override master_seed")
        cmd.add_argument("--threads", type=int, default=None, help="worker threads")
        cmd.add_argument("--out", default=None, help="output directory")
        cmd.add_argument(
            "--format", choices=("csv", "json"), default=None, help="output format"
        )
    return parser


def _load(args) -> ExperimentConfig:
    from .harness import load_config

    config = load_config(args.config)
    expected = args.command.replace("-", "_")
    if config.experiment != expected:
        raise ConfigError(
            f"config is for experiment {config.experiment!r}, not {expected!r}"
        )
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.format is not None:
        overrides["out_format"] = args.format
    if overrides:
        config = replace(config, **overrides)
        config.validate()
    return config


def _run_sample(config: ExperimentConfig) -> int:
    params = _params_for(config.kind, config.n, config.p)
    sampler = _sampler_for(config.sampler, params)
    seed = derive_seed(config.master_seed, "sample")
    field = sample_field(params, seed, sampler)
    out_dir = config.out_dir or "."
    os.makedirs(out_dir, exist_ok=True)
    base = os.path.join(out_dir, f"field_n{config.n}_seed{config.master_seed}")
    data_path, meta_path = save_field(field, base)
    print(f"wrote {data_path} and {meta_path}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load(args)
        if args.command == "sample":
            return _run_sample(config)
        result = run_experiment(config)
        out_dir = config.out_dir or "."
        paths = emit(result, out_dir)
        for path in paths:
            print(f"wrote {path}")
        for name in sorted(result.checks):
            status = "PASS" if result.checks[name] else "FAIL"
            print(f"{status} {name}")
        return EXIT_OK if result.passed else EXIT_CHECK_FAILED
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ContractViolationError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
