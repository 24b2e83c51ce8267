#!/usr/bin/env python3
"""
coordination - compose, simulate and check coordination networks
=================================================================

Reads a JSON network spec and runs one of the subcommands compose, run,
explore, check or export-dot. Exit codes: 0 success, 1 check failure or
truncated output, 2 input error.
"""
import os
import sys
import json
import argparse
from ..config import EngineConfig
from ..errors import BoundExceeded, CoordinationError
from ..logging_setup import setup_logging
from ..sim.schedulers import SCHEDULERS
from . import commands
from .spec import parse_spec

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2


def parse_domain(text):
    """``0,1`` -> [0, 1]; non-integers stay strings."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(int(part))
        except ValueError:
            values.append(part)
    return values


def build_parser():
    parser = argparse.ArgumentParser(prog="coordination", description=__doc__.split("\n")[1])
    parser.add_argument("--config", help="configuration file (default: ~/.config/coordination_engine/engine_config.json)")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="network spec file, or - for stdin")
    common.add_argument("--domain", type=parse_domain, help="data domain, e.g. 0,1")
    common.add_argument("--bound", type=int, help="state bound for explorations")
    common.add_argument("--out", help="write output to FILE instead of stdout")

    subparsers = parser.add_subparsers(dest="command", required=True)
    compose = subparsers.add_parser("compose", parents=[common], help="flattened product automaton")
    compose.add_argument("--format", choices=("json", "dot"), default="json")
    compose.add_argument("--flatten", action=argparse.BooleanOptionalAction, default=True,
                         help="export the flattened product (default) or, with --no-flatten, each automaton")

    run = subparsers.add_parser("run", parents=[common], help="simulate rounds, NDJSON trace")
    run.add_argument("--rounds", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--policy", choices=sorted(SCHEDULERS))

    subparsers.add_parser("explore", parents=[common], help="global reachability summary")

    check = subparsers.add_parser("check", parents=[common], help="locality, CA product and Linda checks")
    check.add_argument("--depth", type=int)

    subparsers.add_parser("export-dot", parents=[common], help="flattened product as DOT")
    return parser


def _setting(args, name, settings):
    # Command-line flag > config file
    value = getattr(args, name, None)
    return settings[name] if value is None else value


def _domain(args, spec, settings):
    # --domain > the spec file's domain > config file
    if args.domain is not None:
        return args.domain
    if spec.domain_declared:
        return spec.domain
    return settings["domain"]


def _read_spec(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _json(data):
    return json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"


def execute(args, settings, logger):
    """Run one subcommand; returns the exit code."""
    try:
        name = os.path.splitext(os.path.basename(args.spec))[0] if args.spec != "-" else "network"
        spec = parse_spec(_read_spec(args.spec), name=name)
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"Cannot read spec {args.spec}: {e}")
        print(f"Error: cannot read {args.spec}: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    domain = _domain(args, spec, settings)
    bound = _setting(args, "bound", settings)
    logger.info(f"Running {args.command} on {spec.name}")

    if args.command == "compose":
        try:
            result = commands.cmd_compose(spec, domain, bound, args.format, strict=True, flatten=args.flatten)
        except BoundExceeded as e:
            logger.warning(str(e))
            result = e.partial
            _emit(result if args.format == "dot" else _json(result), args.out)
            return EXIT_FAILURE
        _emit(result if args.format == "dot" else _json(result), args.out)
    elif args.command == "export-dot":
        _emit(commands.cmd_export_dot(spec, domain, bound), args.out)
    elif args.command == "explore":
        result = commands.cmd_explore(spec, domain, bound)
        _emit(_json(result), args.out)
        if result["truncated"]:
            return EXIT_FAILURE
    elif args.command == "run":
        records = commands.cmd_run(spec, domain, _setting(args, "rounds", settings),
                                   _setting(args, "seed", settings), _setting(args, "policy", settings))
        _emit("".join(json.dumps(record, sort_keys=True, default=str) + "\n" for record in records), args.out)
    elif args.command == "check":
        report = commands.cmd_check(spec, domain, _setting(args, "depth", settings), bound)
        _emit(_json(report), args.out)
        if not report["ok"]:
            logger.warning(f"Checks failed: {', '.join(report['failures'])}")
            return EXIT_FAILURE
    return EXIT_OK


def main(argv=None):
    """Main entry point for the coordination tool."""
    args = build_parser().parse_args(argv)

    config = EngineConfig(args.config)
    logger = setup_logging(config, log_level=args.log_level)
    settings = config.get_engine_settings()
    logger.debug(f"Using configuration from: {config.config_file}")

    try:
        return execute(args, settings, logger)
    except CoordinationError as e:
        logger.error(f"Input error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_FAILURE
    except Exception as e:
        logger.exception(f"Unhandled exception: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
