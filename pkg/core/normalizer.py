"""
Coordinate Normalizer
---------------------
Removes the linear term of Φ by the change of coordinates y -> y + c·x.

With c = -q1 and Φ'(t) = Φ(t) + c·t, the substitution σ_c intertwines the
two operators:

    Λ_Φ'(σ_c p) = σ_c(Λ_Φ p)        for every polynomial p

σ_c is a ring automorphism, so Λ^m(P^m) vanishes for Φ exactly when
Λ'^m(σ_c(P)^m) vanishes for Φ'.

• Normalization ONLY
• No vanishing checks
"""

import logging
from fractions import Fraction
from typing import Sequence, Tuple

from config.settings import XY_RING
from core.diffop import PhiSpec
from core.errors import Q0NotZero
from core.poly import Polynomial, Scalar, to_coefficient

logger = logging.getLogger("GVC.Normalizer")


def normalize_phi(phi: PhiSpec) -> Tuple[PhiSpec, Fraction]:
    """
    Return (Φ', c) with c = -q1 and Φ' = Φ + c·t, so o(Φ') >= 2 or Φ' = 0.
    """
    if phi.q0 != 0:
        raise Q0NotZero(f"normalization needs q0 = 0, got q0 = {phi.q0}")

    c = -phi.q1
    linear = Polynomial.monomial(phi.phi.ring, (1,), c)
    normalized = PhiSpec(phi.phi + linear)

    logger.debug("normalize_phi: Φ = %s -> Φ' = %s (c = %s)", phi, normalized, c)
    return normalized, c


def coord_change(p: Polynomial, c: Scalar, variables: Sequence[str] = XY_RING) -> Polynomial:
    """σ_c(p) = p(x, y + c·x); the inverse is σ_{-c}."""
    c = to_coefficient(c)
    if not c:
        return p

    x, y = variables
    shifted = Polynomial.variable(p.ring, y) + Polynomial.variable(p.ring, x).scale(c)
    return p.substitute(y, shifted)
