"""
Vanishing Detector
------------------
Checks Λ^m(P^m·Q) = 0 for a finite range of m and records the outcome
per m.

Exact
Deterministic (reports are ordered by m, whatever the evaluation order)
Non-vanishing is reported, never raised
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from config.settings import FEATURES, LIMITS
from core.diffop import DiffOperator, PhiSpec, apply_lambda_power, op_pow, shift_factor
from core.errors import InvalidInput
from core.poly import Polynomial

logger = logging.getLogger("GVC.Detector")


# ===============================
# REPORT TYPES
# ===============================

@dataclass(frozen=True)
class VanishEntry:
    m: int
    vanished: bool
    witness: Optional[Polynomial] = None    # lex-least nonzero term


@dataclass(frozen=True)
class VanishReport:
    """
    Outcome of Λ^m(P^m·Q) for m = m_min..m_max.
    """

    entries: Tuple[VanishEntry, ...]
    m_min: int
    m_max: int

    @property
    def by_m(self) -> Dict[int, VanishEntry]:
        return {e.m: e for e in self.entries}

    @property
    def first_failure(self) -> Optional[int]:
        return next((e.m for e in self.entries if not e.vanished), None)

    @property
    def all_vanished(self) -> bool:
        return self.first_failure is None

    @property
    def empirical_threshold(self) -> int:
        """
        Least m0 such that every checked m >= m0 vanished; m_max + 1 when
        the last checked m fails.
        """
        threshold = self.m_max + 1
        for entry in reversed(self.entries):
            if not entry.vanished:
                break
            threshold = entry.m
        return threshold

    def pattern(self) -> Tuple[bool, ...]:
        return tuple(e.vanished for e in self.entries)


# ===============================
# ENGINE
# ===============================

def _evaluate_m(phi: PhiSpec, p: Polynomial, q: Polynomial, m: int) -> VanishEntry:
    # Process-pool entry point: no shared state, recomputes P^m from scratch.
    result = apply_lambda_power(phi, m, (p ** m) * q)
    if result.is_zero():
        return VanishEntry(m, True)
    return VanishEntry(m, False, result.lex_least_term())


class VanishEngine:
    """
    Evaluates Λ^m(P^m·Q) over a range of m.

    Sequential mode keeps P^m and (Dx - Φ(Dy))^m incrementally; with
    workers > 1 each m is evaluated independently in a process pool.
    """

    def __init__(self, phi: PhiSpec, workers: int = 1):
        if not 1 <= workers <= LIMITS["MAX_WORKERS"]:
            raise InvalidInput(f"workers must be in 1..{LIMITS['MAX_WORKERS']}")
        self.phi = phi
        self.workers = workers

    # -------------------------------
    # RANGE SCAN
    # -------------------------------

    def scan(self, p: Polynomial, q: Polynomial, m_min: int, m_max: int) -> VanishReport:
        if m_min < 1 or m_max < m_min:
            raise InvalidInput(f"invalid m range {m_min}..{m_max}")
        if m_max > LIMITS["MAX_M"]:
            raise InvalidInput(f"m_max {m_max} exceeds the limit {LIMITS['MAX_M']}")
        if p.ring != q.ring:
            raise InvalidInput(f"P and Q live in different rings: {p.ring} vs {q.ring}")

        if self.workers > 1:
            entries = self._scan_parallel(p, q, m_min, m_max)
        else:
            entries = self._scan_sequential(p, q, m_min, m_max)

        report = VanishReport(tuple(entries), m_min, m_max)
        if report.first_failure is not None:
            logger.info(
                "Λ^m(P^m Q) != 0 first at m = %d (range %d..%d)",
                report.first_failure, m_min, m_max,
            )
        return report

    def _scan_sequential(self, p, q, m_min, m_max) -> List[VanishEntry]:
        entries: List[VanishEntry] = []
        incremental = FEATURES.get("INCREMENTAL_POWERS", True)

        factor: DiffOperator = shift_factor(self.phi, p.ring)
        p_power = p ** m_min
        factor_power = op_pow(factor, m_min)

        for m in range(m_min, m_max + 1):
            if m > m_min:
                if incremental:
                    p_power = p_power * p
                    factor_power = factor_power * factor
                else:
                    p_power = p ** m
                    factor_power = op_pow(factor, m)

            result = apply_lambda_power(self.phi, m, p_power * q, factor_power)
            if result.is_zero():
                entries.append(VanishEntry(m, True))
            else:
                entries.append(VanishEntry(m, False, result.lex_least_term()))
            logger.debug("m = %d: %s", m, "vanished" if result.is_zero() else "nonzero")

        return entries

    def scan_many(
        self, p: Polynomial, qs: List[Polynomial], m_min: int, m_max: int
    ) -> List[VanishReport]:
        """
        One report per Q, sharing P^m and (Dx - Φ(Dy))^m across all of them.
        """
        if self.workers > 1:
            return [self.scan(p, q, m_min, m_max) for q in qs]
        if m_min < 1 or m_max < m_min:
            raise InvalidInput(f"invalid m range {m_min}..{m_max}")

        factor = shift_factor(self.phi, p.ring)
        p_power = p ** m_min
        factor_power = op_pow(factor, m_min)
        per_q: List[List[VanishEntry]] = [[] for _ in qs]

        for m in range(m_min, m_max + 1):
            if m > m_min:
                p_power = p_power * p
                factor_power = factor_power * factor
            for entries, q in zip(per_q, qs):
                result = apply_lambda_power(self.phi, m, p_power * q, factor_power)
                if result.is_zero():
                    entries.append(VanishEntry(m, True))
                else:
                    entries.append(VanishEntry(m, False, result.lex_least_term()))

        return [VanishReport(tuple(entries), m_min, m_max) for entries in per_q]

    def _scan_parallel(self, p, q, m_min, m_max) -> List[VanishEntry]:
        ms = list(range(m_min, m_max + 1))
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            entries = list(pool.map(_evaluate_m, [self.phi] * len(ms), [p] * len(ms), [q] * len(ms), ms))
        return sorted(entries, key=lambda e: e.m)


# ===============================
# PUBLIC CHECKS
# ===============================

def check_conclusion(
    phi: PhiSpec, p: Polynomial, q: Polynomial, m_max: int, workers: int = 1
) -> VanishReport:
    """Λ^m(P^m·Q) for m = 1..m_max."""
    return VanishEngine(phi, workers).scan(p, q, 1, m_max)


def check_hypothesis(phi: PhiSpec, p: Polynomial, m_max: int, workers: int = 1) -> VanishReport:
    """Λ^m(P^m) for m = 1..m_max."""
    return check_conclusion(phi, p, Polynomial.one(p.ring), m_max, workers)
