"""
Kernel Lemma Checks
-------------------
Direct-computation checks of the two structural facts the theorem rests on:

- constant-term branch: ΛP = 0 with q0 != 0 forces P into K[x]
- form check: ΛP = Λ²(P²) = 0 with o(Φ) >= 2 gives P = a1·x + g(y),
  deg g <= o(Φ)

Reports say which premise or conclusion failed and carry the witnesses.
They never assume the outcome.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from core.diffop import PhiSpec, apply, apply_lambda_power, lambda_of
from core.errors import NotInKernel, PreconditionViolated
from core.poly import Degree, Polynomial
from gvc.kernel import KernelDecomposition, classify_kernel

logger = logging.getLogger("GVC.Lemmas")


# =================================================
# CONSTANT-TERM BRANCH (q0 != 0)
# =================================================

@dataclass(frozen=True)
class KxBranchReport:
    q0: Fraction
    lambda_p: Polynomial
    in_kx: bool

    @property
    def consistent(self) -> bool:
        """ΛP = 0 and q0 != 0 must imply P in K[x]."""
        return not (self.q0 != 0 and self.lambda_p.is_zero() and not self.in_kx)


def kx_branch_check(phi: PhiSpec, p: Polynomial) -> KxBranchReport:
    x, y = p.ring
    lambda_p = apply(lambda_of(phi, p.ring), p)
    in_kx = p.degree(y) <= 0
    report = KxBranchReport(phi.q0, lambda_p, in_kx)
    if not report.consistent:
        logger.warning("ΛP = 0 with q0 = %s but P = %s is not in K[x]", phi.q0, p)
    return report


# =================================================
# FORM CHECK (o(Φ) >= 2)
# =================================================

@dataclass(frozen=True)
class Lemma23Report:
    r: Degree
    lambda_p: Polynomial
    lambda2_p2: Polynomial
    decomposition: Optional[KernelDecomposition]
    a1: Optional[Fraction]
    d: Optional[Degree]
    failures: Tuple[str, ...]

    @property
    def premises_hold(self) -> bool:
        return self.lambda_p.is_zero() and self.lambda2_p2.is_zero()

    @property
    def conclusion_holds(self) -> bool:
        return not any(f.startswith("conclusion:") for f in self.failures)


def lemma23_check(phi: PhiSpec, p: Polynomial) -> Lemma23Report:
    """
    Verify ΛP = 0 and Λ²(P²) = 0, then check f = a1·x and deg g <= r on the
    kernel decomposition of P.
    """
    r = phi.r
    if not r >= 2:
        raise PreconditionViolated(f"the form check needs o(Φ) >= 2, got {r}")

    x, y = p.ring
    lambda_p = apply(lambda_of(phi, p.ring), p)
    lambda2_p2 = apply_lambda_power(phi, 2, p * p)

    failures = []
    if not lambda_p.is_zero():
        failures.append(f"premise: ΛP = {lambda_p}")
    if not lambda2_p2.is_zero():
        failures.append(f"premise: Λ²(P²) = {lambda2_p2}")

    decomposition = None
    a1 = None
    d = None
    try:
        decomposition = classify_kernel(phi, p)
    except NotInKernel as exc:
        failures.append(f"conclusion: P is not in the kernel (mixed terms {exc.mixed})")
    else:
        f, g = decomposition.f, decomposition.g
        d = g.degree(y)
        if f.degree(x) > 1:
            failures.append(f"conclusion: f = {f} is not of the form a1*x")
        if d > r:
            failures.append(f"conclusion: deg g = {d} exceeds o(Φ) = {r}")
        if p.has_mixed_terms() or p.degree(x) > 1:
            failures.append(f"conclusion: P = {p} is not of the form a1*x + g(y)")
        else:
            a1 = p.coefficient((1, 0))

    report = Lemma23Report(r, lambda_p, lambda2_p2, decomposition, a1, d, tuple(failures))
    if report.premises_hold and not report.conclusion_holds:
        logger.warning("form check: premises hold but the conclusion fails for P = %s", p)
    return report
