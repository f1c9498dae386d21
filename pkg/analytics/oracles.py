"""
Analytics: Coefficient Oracles
------------------------------
Exact evaluators for the two coefficient identities used inside the form
check's proof.

• eq1: the x = 0 slice of Λ²(P²) for P = e^{xΦ(∂y)}(f + g), computed from
  first principles, next to the printed closed form. The direct value is
  authoritative; the residual is reported, not asserted.
• eq2: (4r)! r! r! - 6 (3r)! (2r)! r! + 6 ((2r)!)^3 as an exact integer.
"""

import logging
import math
from dataclasses import dataclass

from core.diffop import PhiSpec, apply, apply_lambda_power
from core.errors import InvalidInput
from core.poly import Polynomial
from gvc.kernel import kernel_element

logger = logging.getLogger("GVC.Oracles")


# -------------------------------------------------
# x = 0 SLICE OF Λ²(P²)
# -------------------------------------------------

@dataclass(frozen=True)
class Eq1Residual:
    direct: Polynomial
    transcribed: Polynomial
    residual: Polynomial

    @property
    def agrees(self) -> bool:
        return self.residual.is_zero()


def eq1_direct(phi: PhiSpec, f: Polynomial, g: Polynomial) -> Polynomial:
    """Λ²(P²)|_{x=0} with P = kernel_element(phi, f, g)."""
    x = f.ring[0]
    p = kernel_element(phi, f, g)
    return apply_lambda_power(phi, 2, p * p).substitute(x, 0)


def eq1_transcribed(phi: PhiSpec, f: Polynomial, g: Polynomial) -> Polynomial:
    """
    Φ²(g²)'' - 4a1 Φ(g'') - 4Φ((gΦ(g))'') + 2((Φ(g))²)'' + 4a2 g''
    + 4a1 (Φ(g))'' + 2(gΦ²(g))'', with ' = ∂y and Φ(h) = Φ(∂y)h.
    """
    y = g.ring[1]
    phi_op = phi.as_operator(y, g.ring)
    a1 = f.coefficient((1, 0))
    a2 = f.coefficient((2, 0))

    def Phi(h: Polynomial) -> Polynomial:
        return apply(phi_op, h)

    def dd(h: Polynomial) -> Polynomial:
        return h.partial(y, 2)

    phi_g = Phi(g)
    phi2_g = Phi(phi_g)

    return (
        Phi(Phi(dd(g * g)))
        - Phi(dd(g)).scale(4 * a1)
        - Phi(dd(g * phi_g)).scale(4)
        + dd(phi_g * phi_g).scale(2)
        + dd(g).scale(4 * a2)
        + dd(phi_g).scale(4 * a1)
        + dd(g * phi2_g).scale(2)
    )


def eq1_residual(phi: PhiSpec, f: Polynomial, g: Polynomial) -> Eq1Residual:
    if f.constant_term() != 0:
        raise InvalidInput(f"f must have zero constant term, got f(0) = {f.constant_term()}")

    direct = eq1_direct(phi, f, g)
    transcribed = eq1_transcribed(phi, f, g)
    result = Eq1Residual(direct, transcribed, direct - transcribed)

    if not result.agrees:
        logger.warning(
            "eq1: printed form differs from direct expansion by %s (Φ = %s, f = %s, g = %s)",
            result.residual, phi, f, g,
        )
    return result


# -------------------------------------------------
# FACTORIAL IDENTITY
# -------------------------------------------------

def _check_r(r: int):
    if not isinstance(r, int) or r < 1:
        raise InvalidInput(f"r must be a positive integer, got {r!r}")


def eq2_leading_difference(r: int) -> int:
    """(4r)! r! r! - 6 (3r)! (2r)! r!; negative only for r <= 2."""
    _check_r(r)
    f = math.factorial
    return f(4 * r) * f(r) * f(r) - 6 * f(3 * r) * f(2 * r) * f(r)


def eq2_value(r: int) -> int:
    """(4r)! r! r! - 6 (3r)! (2r)! r! + 6 ((2r)!)^3."""
    _check_r(r)
    return eq2_leading_difference(r) + 6 * math.factorial(2 * r) ** 3
