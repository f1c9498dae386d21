"""
Certificate Generator
---------------------
Produces a certificate that Λ^m(P^m·Q) = 0 for every m >= m*, with an
explicit m*.

Pipeline:
    q0 != 0 → P must lie in K[x]; threshold deg_y(Q) + 1
    q0 == 0 → ΛP = 0
            → normalize Φ to o(Φ') >= 2 (or Φ' = 0) via y -> y + c·x
            → read the form of P' = σ_c(P)
            → hypothesis Λ^m(P^m) = 0 for m = 1..m_max
            → per-monomial thresholds on σ_c(Q), m* = max
    finally  → verify m = m*..m*+m_verify in the original coordinates

Families of P' (x^a y^b ranges over the monomials of σ_c(Q)):

    linear   P' = a1·x + g(y), deg g = d <= r   vanish for m > b + a·r
             (Φ' = 0: r replaced by max(d, 0))
    x-only   P' in K[x], deg_x P' >= 2           vanish for m > b
    y-linear P' = f(x) + b1·y, deg f = s >= 2    vanish for m > a + s·b
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from config.settings import DEFAULTS
from core.diffop import PhiSpec, apply, apply_lambda_power, lambda_of
from core.errors import (
    BoundRefuted,
    FormViolated,
    HypothesisViolated,
    InvalidInput,
    NormalizationFailed,
)
from core.normalizer import coord_change, normalize_phi
from core.poly import Degree, Polynomial, is_infinite
from gvc.detector import VanishEngine, VanishReport, check_hypothesis
from gvc.lemmas import kx_branch_check

logger = logging.getLogger("GVC.Certify")

FAMILY_LINEAR = "linear"
FAMILY_X_ONLY = "x-only"
FAMILY_Y_LINEAR = "y-linear"


# =================================================
# CERTIFICATE TYPES
# =================================================

@dataclass(frozen=True)
class MonomialBound:
    a: int
    b: int
    threshold: int      # Λ^m(P^m x^a y^b) = 0 for all m >= threshold


@dataclass(frozen=True)
class GvcCertificate:
    phi: PhiSpec
    c: Fraction
    phi_normalized: PhiSpec
    family: str
    a1: Fraction
    g: Polynomial
    d: Degree
    r: Degree
    s: Optional[int]
    m_star: int
    bounds: Tuple[MonomialBound, ...]
    hypothesis: VanishReport
    samples: VanishReport


# =================================================
# BOUNDS
# =================================================

def monomial_threshold(a: int, b: int, family: str, r: Degree, d: Degree, s: Optional[int] = None) -> int:
    """Least m0 with Λ^m(P^m x^a y^b) = 0 guaranteed for all m >= m0."""
    if family == FAMILY_X_ONLY:
        return b + 1
    if family == FAMILY_LINEAR:
        rate = max(d, 0) if is_infinite(r) else r
        return b + a * rate + 1
    if family == FAMILY_Y_LINEAR:
        return a + s * b + 1
    raise ValueError(f"unknown family {family!r}")


def vanishing_bounds(
    q: Polynomial, family: str, r: Degree, d: Degree, s: Optional[int] = None
) -> Tuple[MonomialBound, ...]:
    return tuple(
        MonomialBound(a, b, monomial_threshold(a, b, family, r, d, s))
        for (a, b), _ in q.items()
    )


# =================================================
# NORMAL FORM
# =================================================

@dataclass(frozen=True)
class NormalForm:
    """Normalization data and the family of P' = σ_c(P)."""

    c: Fraction
    phi_normalized: PhiSpec
    p_normalized: Polynomial
    family: str
    a1: Fraction
    g: Polynomial
    d: Degree
    s: Optional[int]

    @property
    def r(self) -> Degree:
        return self.phi_normalized.r

    def bounds(self, q: Polynomial) -> Tuple[MonomialBound, ...]:
        """Thresholds per monomial of σ_c(Q)."""
        q_n = coord_change(q, self.c, q.ring)
        return vanishing_bounds(q_n, self.family, self.r, self.d, self.s)

    def m_star(self, q: Polynomial) -> int:
        return max((b.threshold for b in self.bounds(q)), default=1)


def _read_form(phi_n: PhiSpec, p_n: Polynomial):
    """(family, a1, g, d, s) of the normalized polynomial, or None."""
    x, y = p_n.ring
    r = phi_n.r
    mixed = p_n.has_mixed_terms()
    a1 = p_n.coefficient((1, 0))
    g = p_n.filter_terms(lambda e: e[0] == 0)
    d = g.degree(y)

    if not mixed and p_n.degree(x) <= 1:
        if d > r:
            return None
        return FAMILY_LINEAR, a1, g, d, None
    if p_n.degree(y) <= 0:
        return FAMILY_X_ONLY, a1, g, d, None
    if not mixed and p_n.degree(y) <= 1:
        return FAMILY_Y_LINEAR, a1, g, d, p_n.degree(x)
    return None


def normal_form(phi: PhiSpec, p: Polynomial) -> NormalForm:
    """
    Steps (i)-(iii) of the pipeline: the constant-term branch or ΛP = 0,
    normalization, and the form of P'.
    """
    y = p.ring[1]
    lam = lambda_of(phi, p.ring)

    if phi.q0 != 0:
        # ΛP = 0 forces P into K[x] here; the exponential shift is unavailable.
        branch = kx_branch_check(phi, p)
        if not branch.in_kx:
            raise NormalizationFailed(branch.lambda_p)
        g = p.filter_terms(lambda e: e[0] == 0)
        return NormalForm(
            Fraction(0), phi, p, FAMILY_X_ONLY, p.coefficient((1, 0)), g, g.degree(y), None
        )

    lambda_p = apply(lam, p)
    if not lambda_p.is_zero():
        raise HypothesisViolated(1, lambda_p.lex_least_term())

    phi_n, c = normalize_phi(phi)
    p_n = coord_change(p, c, p.ring)
    logger.info("normalized: c = %s, Φ' = %s, P' = %s", c, phi_n, p_n)

    form = _read_form(phi_n, p_n)
    if form is None:
        raise FormViolated(
            f"P' = {p_n} is neither a1*x + g(y) with deg g <= o(Φ'), "
            f"nor in K[x], nor f(x) + b1*y",
            apply_lambda_power(phi, 2, p * p),
        )
    family, a1, g, d, s = form
    return NormalForm(c, phi_n, p_n, family, a1, g, d, s)


# =================================================
# PIPELINE
# =================================================

def certify(
    phi: PhiSpec,
    p: Polynomial,
    q: Polynomial,
    m_verify: int = DEFAULTS["M_VERIFY"],
    m_max: int = DEFAULTS["M_MAX"],
    workers: int = 1,
) -> GvcCertificate:
    if m_verify < 0:
        raise InvalidInput("m_verify must be >= 0")
    if m_max < 2:
        raise InvalidInput("the hypothesis must be checked at least through m = 2")
    if p.ring != q.ring:
        raise InvalidInput(f"P and Q live in different rings: {p.ring} vs {q.ring}")

    form = normal_form(phi, p)

    hypothesis = check_hypothesis(phi, p, m_max, workers)
    if not hypothesis.all_vanished:
        m = hypothesis.first_failure
        raise HypothesisViolated(m, hypothesis.by_m[m].witness)

    bounds = form.bounds(q)
    m_star = max((b.threshold for b in bounds), default=1)
    logger.info("family %s, r = %s, d = %s: m* = %d", form.family, form.r, form.d, m_star)

    samples = VanishEngine(phi, workers).scan(p, q, m_star, m_star + m_verify)
    if not samples.all_vanished:
        m = samples.first_failure
        raise BoundRefuted(m_star, m, samples.by_m[m].witness)

    return GvcCertificate(
        phi=phi,
        c=form.c,
        phi_normalized=form.phi_normalized,
        family=form.family,
        a1=form.a1,
        g=form.g,
        d=form.d,
        r=form.r,
        s=form.s,
        m_star=m_star,
        bounds=bounds,
        hypothesis=hypothesis,
        samples=samples,
    )
