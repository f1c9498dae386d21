"""
CLI Commands
------------
One function per subcommand. Each takes the effective RunConfig and
returns a CommandResult (exit code, text, JSON tree); printing and exit
handling stay in cli.app.

Exit codes:
    0  success
    1  mathematical falsification, with witness
    2  input error (syntax, unknown variable, bad configuration)
    3  engine precondition or form failure
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

from config.settings import DEFAULTS, LIMITS, OUTPUT_MODES, default_output_mode
from core.errors import (
    BoundRefuted,
    GvcError,
    HypothesisViolated,
    InvalidInput,
    PolySyntaxError,
    UnknownVariable,
)
from core.parser import format_expr, parse_phi, parse_poly
from gvc.certify import certify
from gvc.detector import check_conclusion, check_hypothesis
from gvc.kernel import classify_kernel, kernel_element
from analytics.oracles import eq1_residual, eq2_leading_difference, eq2_value
from analytics.search import counterexample_search
from reporting.json_reporter import (
    certificate_to_dict,
    decomposition_to_dict,
    eq1_to_dict,
    render_certificate,
    render_report,
    render_search,
    report_to_dict,
    search_to_dict,
)

logger = logging.getLogger("GVC.CLI")

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INPUT = 2
EXIT_ENGINE = 3

INPUT_ERRORS = (PolySyntaxError, UnknownVariable, InvalidInput)
FALSIFICATIONS = (HypothesisViolated, BoundRefuted)


# =================================================
# 1️⃣ RUN CONFIGURATION
# =================================================

@dataclass
class RunConfig:
    command: str
    phi: Optional[str] = None
    p: Optional[str] = None
    q: str = DEFAULTS["Q"]
    f: Optional[str] = None
    g: Optional[str] = None
    oracle: Optional[str] = None
    r: Optional[int] = None
    m_max: int = DEFAULTS["M_MAX"]
    m_verify: int = DEFAULTS["M_VERIFY"]
    output: str = field(default_factory=default_output_mode)
    seed: int = DEFAULTS["SEED"]
    workers: int = DEFAULTS["WORKERS"]
    samples: Optional[int] = None
    bounds: Tuple[int, int] = (2, 2)
    pool: Tuple[int, ...] = (-1, 0, 1)
    q_basis_degree: int = DEFAULTS["SEARCH_Q_BASIS_DEGREE"]

    def validate(self) -> "RunConfig":
        if not 1 <= self.m_max <= LIMITS["MAX_M"]:
            raise InvalidInput(f"--m-max must be in 1..{LIMITS['MAX_M']}, got {self.m_max}")
        if self.m_verify < 0:
            raise InvalidInput(f"--m-verify must be >= 0, got {self.m_verify}")
        if self.output not in OUTPUT_MODES:
            raise InvalidInput(f"output mode must be one of {OUTPUT_MODES}, got {self.output!r}")
        if not 1 <= self.workers <= LIMITS["MAX_WORKERS"]:
            raise InvalidInput(f"--workers must be in 1..{LIMITS['MAX_WORKERS']}")
        if self.samples is not None and self.samples < 1:
            raise InvalidInput(f"--samples must be >= 1, got {self.samples}")
        if self.r is not None and self.r < 1:
            raise InvalidInput(f"--r must be >= 1, got {self.r}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        tree = asdict(self)
        tree["bounds"] = list(self.bounds)
        tree["pool"] = list(self.pool)
        return tree


@dataclass
class CommandResult:
    code: int
    text: str
    tree: Dict[str, Any]


def _require(value: Optional[str], flag: str) -> str:
    if value is None:
        raise InvalidInput(f"{flag} is required")
    return value


def error_result(exc: GvcError) -> CommandResult:
    """Map an engine error onto its exit code and a structured error node."""
    if isinstance(exc, INPUT_ERRORS):
        code = EXIT_INPUT
    elif isinstance(exc, FALSIFICATIONS):
        code = EXIT_FALSIFIED
    else:
        code = EXIT_ENGINE

    node: Dict[str, Any] = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("position", "m", "m_star"):
        value = getattr(exc, attr, None)
        if value is not None:
            node[attr] = value
    witness = getattr(exc, "witness", None)
    if witness is not None:
        node["witness"] = format_expr(witness)
    return CommandResult(code, f"error: {exc}", {"error": node})


# =================================================
# 2️⃣ COMMANDS
# =================================================

def cmd_check(config: RunConfig) -> CommandResult:
    """Hypothesis Λ^m(P^m) then conclusion Λ^m(P^m Q) for m = 1..m_max."""
    phi = parse_phi(_require(config.phi, "--phi"))
    p = parse_poly(_require(config.p, "--P"))
    q = parse_poly(config.q)

    hypothesis = check_hypothesis(phi, p, config.m_max, config.workers)
    conclusion = check_conclusion(phi, p, q, config.m_max, config.workers)

    falsified = not hypothesis.all_vanished or not conclusion.entries[-1].vanished
    code = EXIT_FALSIFIED if falsified else EXIT_OK

    tree = {
        "hypothesis": report_to_dict(hypothesis),
        "conclusion": report_to_dict(conclusion),
    }
    text = "\n".join([
        render_report(hypothesis, "Λ^m(P^m)"),
        render_report(conclusion, "Λ^m(P^m Q)"),
    ])
    return CommandResult(code, text, tree)


def cmd_certify(config: RunConfig) -> CommandResult:
    phi = parse_phi(_require(config.phi, "--phi"))
    p = parse_poly(_require(config.p, "--P"))
    q = parse_poly(config.q)

    cert = certify(phi, p, q, config.m_verify, config.m_max, config.workers)
    return CommandResult(EXIT_OK, render_certificate(cert), certificate_to_dict(cert))


def cmd_kernel(config: RunConfig) -> CommandResult:
    phi = parse_phi(_require(config.phi, "--phi"))
    f = parse_poly(config.f or "0")
    g = parse_poly(config.g or "0")

    p = kernel_element(phi, f, g)
    return CommandResult(EXIT_OK, format_expr(p), {"p": format_expr(p)})


def cmd_classify(config: RunConfig) -> CommandResult:
    phi = parse_phi(_require(config.phi, "--phi"))
    p = parse_poly(_require(config.p, "--P"))

    dec = classify_kernel(phi, p)
    text = f"f = {format_expr(dec.f)}\ng = {format_expr(dec.g)}"
    return CommandResult(EXIT_OK, text, decomposition_to_dict(dec))


def cmd_oracle(config: RunConfig) -> CommandResult:
    if config.oracle == "eq2":
        if config.r is None:
            raise InvalidInput("--r is required for eq2")
        value = eq2_value(config.r)
        leading = eq2_leading_difference(config.r)
        tree = {"r": config.r, "value": str(value), "leading_difference": str(leading)}
        return CommandResult(EXIT_OK, str(value), tree)

    if config.oracle == "eq1":
        phi = parse_phi(_require(config.phi, "--phi"))
        f = parse_poly(config.f or "0")
        g = parse_poly(config.g or "0")
        result = eq1_residual(phi, f, g)
        text = "\n".join([
            f"direct      = {format_expr(result.direct)}",
            f"transcribed = {format_expr(result.transcribed)}",
            f"residual    = {format_expr(result.residual)}",
        ])
        return CommandResult(EXIT_OK, text, eq1_to_dict(result))

    raise InvalidInput(f"unknown oracle {config.oracle!r}; expected eq1 or eq2")


def cmd_search(config: RunConfig) -> CommandResult:
    phi = parse_phi(_require(config.phi, "--phi"))

    result = counterexample_search(
        phi,
        config.bounds,
        config.pool,
        config.m_max,
        q_basis_degree=config.q_basis_degree,
        samples=config.samples,
        seed=config.seed,
    )
    code = EXIT_FALSIFIED if result.hits else EXIT_OK
    return CommandResult(code, render_search(result), search_to_dict(result))


COMMANDS = {
    "check": cmd_check,
    "certify": cmd_certify,
    "kernel": cmd_kernel,
    "classify": cmd_classify,
    "oracle": cmd_oracle,
    "search": cmd_search,
}


def run_command(config: RunConfig) -> CommandResult:
    """Validate, dispatch and map engine errors onto exit codes."""
    try:
        config.validate()
        handler = COMMANDS[config.command]
        return handler(config)
    except GvcError as exc:
        logger.info("%s failed: %s", config.command, exc)
        return error_result(exc)
