"""
Kernel of Λ
-----------
Construction and classification of polynomials P with ΛP = 0 on the
q0 = 0 branch, through the exponential shift:

    P = e^{xΦ(∂y)}(f(x) + g(y))

• f carries no constant term; constants are moved into g
• Classification fails with the ΛP witness when e^{-xΦ(∂y)}P has mixed terms
"""

import logging
from dataclasses import dataclass

from core.diffop import PhiSpec, apply, exp_shift, lambda_of
from core.errors import InvalidInput, NotInKernel
from core.poly import Polynomial

logger = logging.getLogger("GVC.Kernel")


@dataclass(frozen=True)
class KernelDecomposition:
    """f in K[x] with f(0) = 0, g in K[y]."""

    f: Polynomial
    g: Polynomial

    @property
    def a1(self):
        return self.f.coefficient((1, 0))

    def coefficient_a(self, j: int):
        """a_j of f = a1 x + a2 x^2 + ..."""
        return self.f.coefficient((j, 0))


def _require_univariate(p: Polynomial, var: str, label: str):
    other = [v for v in p.variables_used() if v != var]
    if other:
        raise InvalidInput(f"{label} must be a polynomial in {var} only, found {other}")


def kernel_element(phi: PhiSpec, f: Polynomial, g: Polynomial) -> Polynomial:
    """P = e^{xΦ(∂y)}(f + g); ΛP = 0 by construction."""
    x, y = f.ring
    _require_univariate(f, x, "f")
    _require_univariate(g, y, "g")
    return exp_shift(phi, +1, f + g)


def classify_kernel(phi: PhiSpec, p: Polynomial) -> KernelDecomposition:
    """
    Split e^{-xΦ(∂y)}P into f(x) + g(y). A surviving mixed term x^a y^b
    (a, b >= 1) means ΛP != 0.
    """
    w = exp_shift(phi, -1, p)

    if w.has_mixed_terms():
        mixed = w.filter_terms(lambda e: e[0] >= 1 and e[1] >= 1)
        witness = apply(lambda_of(phi, p.ring), p)
        logger.debug("classify_kernel: mixed terms %s survive", mixed)
        raise NotInKernel(witness, mixed)

    f = w.filter_terms(lambda e: e[0] >= 1)
    g = w.filter_terms(lambda e: e[0] == 0)
    return KernelDecomposition(f, g)
