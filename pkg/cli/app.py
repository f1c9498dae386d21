"""
GVC Engine — Command-Line Entry Point
-------------------------------------
Bootstraps logging, parses arguments into a RunConfig and runs one
subcommand.

✔ stdout carries results only (text or JSON)
✔ Logs go to stderr
✔ Exit code mirrors the outcome
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence, Tuple

import psutil

# =================================================
# BASE PATH
# =================================================
BASE_DIR = Path(__file__).resolve().parent.parent
if str(BASE_DIR) not in sys.path:
    sys.path.insert(0, str(BASE_DIR))

# =================================================
# CORE IMPORTS (AFTER PATH FIX)
# =================================================
from config.settings import DEFAULTS, LOG_FORMAT, LOG_LEVEL, OUTPUT_MODES, default_output_mode
from cli.commands import EXIT_INPUT, RunConfig, run_command
from reporting.json_reporter import to_json, with_config

PROJECT_NAME = "gvc-engine"

logger = logging.getLogger("GVC.CLI")


# =================================================
# LOGGING
# =================================================
def setup_logging(level: str = LOG_LEVEL):
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


# =================================================
# ARGUMENTS
# =================================================
def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _bounds(text: str) -> Tuple[int, int]:
    values = _int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected DEG_X,DEG_Y, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--phi", help='Φ(t), e.g. "t^2 + 2*t^3"')
    common.add_argument("--m-max", type=int, default=None, dest="m_max",
                        help=f"default {DEFAULTS['M_MAX']} ({DEFAULTS['SEARCH_M_MAX']} for search)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--output", choices=OUTPUT_MODES, default=None,
                        help="output mode (overrides GVC_OUTPUT)")
    common.add_argument("--workers", type=int, default=DEFAULTS["WORKERS"],
                        help="process-pool size for the per-m loop")
    common.add_argument("--log-level", default=None, dest="log_level",
                        help="DEBUG, INFO, WARNING, ERROR (overrides GVC_LOG_LEVEL)")

    poly_args = argparse.ArgumentParser(add_help=False)
    poly_args.add_argument("--P", dest="p", help='P(x, y), e.g. "x + y^2"')
    poly_args.add_argument("--Q", dest="q", default=DEFAULTS["Q"], help="Q(x, y), default 1")

    split_args = argparse.ArgumentParser(add_help=False)
    split_args.add_argument("--f", help="f(x)")
    split_args.add_argument("--g", help="g(y)")

    parser = argparse.ArgumentParser(
        prog=PROJECT_NAME,
        description="Exact checks of Λ^m(P^m Q) = 0 for Λ = (Dx - Φ(Dy))*Dy",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common, poly_args],
                   help="hypothesis and conclusion for m = 1..m_max")

    certify_p = sub.add_parser("certify", parents=[common, poly_args],
                               help="certificate with an explicit threshold m*")
    certify_p.add_argument("--m-verify", type=int, default=DEFAULTS["M_VERIFY"], dest="m_verify")

    sub.add_parser("kernel", parents=[common, split_args], help="e^{xΦ(Dy)}(f + g)")
    sub.add_parser("classify", parents=[common, poly_args], help="split P into f(x) + g(y)")

    oracle_p = sub.add_parser("oracle", parents=[common, split_args],
                              help="coefficient identities eq1 / eq2")
    oracle_p.add_argument("oracle", choices=("eq1", "eq2"))
    oracle_p.add_argument("--r", type=int)

    search_p = sub.add_parser("search", parents=[common],
                              help="small exhaustive or sampled counterexample search")
    search_p.add_argument("--bounds", type=_bounds, default=(2, 2), help="DEG_X,DEG_Y")
    search_p.add_argument("--pool", type=_int_list, default=(-1, 0, 1),
                          help="coefficient pool, e.g. --pool=-1,0,1")
    search_p.add_argument("--q-degree", type=int, default=DEFAULTS["SEARCH_Q_BASIS_DEGREE"],
                          dest="q_basis_degree")
    search_p.add_argument("--samples", type=int, default=None,
                          help="draw this many random candidates instead of enumerating")
    search_p.add_argument("--seed", type=int, default=DEFAULTS["SEED"])

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Defaults are already applied by argparse; validation happens in run_command."""
    values = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    values.pop("output", None)
    if values.get("m_max") is None:
        values["m_max"] = DEFAULTS["SEARCH_M_MAX"] if args.command == "search" else DEFAULTS["M_MAX"]
    config = RunConfig(**values)
    config.output = "json" if args.json else (args.output or default_output_mode())
    return config


# =================================================
# ENTRY POINT
# =================================================
def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse usage errors are input errors
        return EXIT_INPUT if exc.code else 0

    setup_logging(args.log_level or LOG_LEVEL)
    config = config_from_args(args)

    started = time.perf_counter()
    result = run_command(config)
    elapsed = time.perf_counter() - started

    rss_mb = psutil.Process().memory_info().rss / (1024 * 1024)
    logger.info("%s finished: exit %d, %.3f s, rss %.1f MB",
                config.command, result.code, elapsed, rss_mb)

    if config.output == "json":
        print(to_json(with_config(result.tree, config.to_dict())))
    elif "error" in result.tree:
        print(result.text, file=sys.stderr)
    else:
        print(result.text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
