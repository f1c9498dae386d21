"""
Analytics: Counterexample Search
--------------------------------
Enumerates (or samples) small P(x, y), keeps those satisfying the
hypothesis Λ^m(P^m) = 0 up to m_max, and checks the conclusion against a
fixed monomial basis of Q.

A hit is a P whose conclusion fails at some m at or beyond the certified
threshold, or a hypothesis-passing P whose form no family covers.
For Λ = (∂x - Φ(∂y))∂y the hit list is expected to be empty.

• Deterministic for a fixed seed
• Exploration ONLY: no certificates are emitted here
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import DEFAULTS, LIMITS, XY_RING
from core.diffop import PhiSpec, apply, lambda_of
from core.errors import FormViolated, InvalidInput
from core.poly import Polynomial
from gvc.certify import normal_form
from gvc.detector import VanishEngine, check_hypothesis

logger = logging.getLogger("GVC.Search")


@dataclass(frozen=True)
class SearchHit:
    p: Polynomial
    q: Optional[Polynomial]
    m: Optional[int]        # first failing m at or beyond the threshold
    reason: str


@dataclass(frozen=True)
class SearchResult:
    candidates: int
    hypothesis_passed: int
    hits: Tuple[SearchHit, ...]
    seed: Optional[int]


# -------------------------------------------------
# CANDIDATES
# -------------------------------------------------

def monomial_basis(max_x: int, max_y: int, ring: Sequence[str] = XY_RING) -> List[Polynomial]:
    return [
        Polynomial.monomial(ring, (a, b))
        for a in range(max_x + 1)
        for b in range(max_y + 1)
    ]


def _candidates(
    exponents: List[Tuple[int, int]],
    pool: Sequence[int],
    samples: Optional[int],
    seed: Optional[int],
    ring: Sequence[str],
) -> Iterator[Polynomial]:
    if samples is None:
        for coeffs in itertools.product(pool, repeat=len(exponents)):
            yield Polynomial(ring, dict(zip(exponents, coeffs)))
        return

    rng = np.random.default_rng(seed)
    draws = rng.choice(np.asarray(pool, dtype=np.int64), size=(samples, len(exponents)))
    for row in draws:
        yield Polynomial(ring, {e: int(c) for e, c in zip(exponents, row)})


# -------------------------------------------------
# SEARCH
# -------------------------------------------------

def counterexample_search(
    phi: PhiSpec,
    deg_bounds: Tuple[int, int],
    coeff_pool: Iterable[int],
    m_max: int,
    q_basis_degree: int = DEFAULTS["SEARCH_Q_BASIS_DEGREE"],
    samples: Optional[int] = None,
    seed: Optional[int] = DEFAULTS["SEED"],
    ring: Sequence[str] = XY_RING,
) -> SearchResult:
    """
    Exhaustive over the coefficient box when samples is None, otherwise
    `samples` seeded random draws from it.
    """
    max_x, max_y = deg_bounds
    if max_x < 0 or max_y < 0:
        raise InvalidInput(f"degree bounds must be >= 0, got {deg_bounds}")
    pool = sorted({int(c) for c in coeff_pool})
    if not pool:
        raise InvalidInput("coefficient pool is empty")

    exponents = [(a, b) for a in range(max_x + 1) for b in range(max_y + 1)]
    total = samples if samples is not None else len(pool) ** len(exponents)
    if total > LIMITS["MAX_SEARCH_CANDIDATES"]:
        raise InvalidInput(
            f"{total} candidates exceed the limit {LIMITS['MAX_SEARCH_CANDIDATES']}; sample instead"
        )

    lam = lambda_of(phi, ring)
    basis = monomial_basis(q_basis_degree, q_basis_degree, ring)
    engine = VanishEngine(phi)

    hits: List[SearchHit] = []
    seen = set()
    passed = 0

    for p in _candidates(exponents, pool, samples, seed if samples is not None else None, ring):
        if p in seen:
            continue
        seen.add(p)

        # cheap m = 1 filter before the full hypothesis scan
        if not apply(lam, p).is_zero():
            continue
        if not check_hypothesis(phi, p, m_max).all_vanished:
            continue
        passed += 1

        try:
            form = normal_form(phi, p)
        except FormViolated as exc:
            hits.append(SearchHit(p, None, None, f"no family covers P: {exc.reason}"))
            continue

        thresholds = [form.m_star(q) for q in basis]
        reports = engine.scan_many(p, basis, 1, max(m_max, max(thresholds)))
        for q, m_star, report in zip(basis, thresholds, reports):
            late = [e.m for e in report.entries if e.m >= m_star and not e.vanished]
            if late:
                hits.append(SearchHit(p, q, late[0], f"Λ^m(P^m Q) != 0 beyond m* = {m_star}"))

    logger.info(
        "search: %d candidates, %d passed the hypothesis, %d hits",
        len(seen), passed, len(hits),
    )
    return SearchResult(len(seen), passed, tuple(hits), seed if samples is not None else None)
