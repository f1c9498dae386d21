"""
Differential Operator Module
----------------------------
Constant-coefficient differential operators acting on polynomials.

Responsible for:
- DiffOperator: a polynomial in derivation symbols (Dx, Dy)
- PhiSpec: the univariate Φ(t) and its order r = o(Φ)
- Λ = (Dx - Φ(Dy))·Dy and its powers
- The exponential shift e^{±xΦ(∂y)} on the q0 = 0 branch

IMPORTANT:
• Composition of constant-coefficient operators is commutative, so it is
  computed as a product of symbol polynomials
• No normalization here (see core.normalizer)
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from config.settings import FEATURES, OPERATOR_PREFIX, PHI_RING, XY_RING
from core.errors import NotLocallyNilpotent, RingMismatch
from core.poly import (
    Exponents,
    Polynomial,
    Scalar,
    falling_factorial,
    is_infinite,
    render,
    univariate,
)

logger = logging.getLogger("GVC.DiffOp")


# =================================================
# 1. OPERATORS
# =================================================

def symbol_ring(variables: Sequence[str]) -> Tuple[str, ...]:
    return tuple(OPERATOR_PREFIX + v for v in variables)


class DiffOperator:
    """
    Constant-coefficient operator, stored as its symbol polynomial.
    The symbol monomial Dx^i·Dy^j acts as ∂x^i ∂y^j.
    """

    __slots__ = ("symbol",)

    def __init__(self, symbol: Polynomial):
        bad = [s for s in symbol.ring if not s.startswith(OPERATOR_PREFIX) or len(s) <= len(OPERATOR_PREFIX)]
        if bad:
            raise ValueError(f"operator symbols must look like {OPERATOR_PREFIX}<var>: {bad}")
        self.symbol = symbol

    # ---------------- CONSTRUCTORS ----------------

    @classmethod
    def identity(cls, variables: Sequence[str] = XY_RING) -> "DiffOperator":
        return cls(Polynomial.one(symbol_ring(variables)))

    @classmethod
    def derivation(cls, var: str, variables: Sequence[str] = XY_RING) -> "DiffOperator":
        ring = symbol_ring(variables)
        return cls(Polynomial.variable(ring, OPERATOR_PREFIX + var))

    @classmethod
    def scalar(cls, value: Scalar, variables: Sequence[str] = XY_RING) -> "DiffOperator":
        return cls(Polynomial.constant(symbol_ring(variables), value))

    # ---------------- ACCESSORS ----------------

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(s[len(OPERATOR_PREFIX):] for s in self.symbol.ring)

    def is_zero(self) -> bool:
        return self.symbol.is_zero()

    # ---------------- ALGEBRA ----------------

    def _other(self, other) -> "DiffOperator":
        if isinstance(other, DiffOperator):
            if other.symbol.ring != self.symbol.ring:
                raise RingMismatch(self.symbol.ring, other.symbol.ring)
            return other
        return DiffOperator.scalar(other, self.variables)

    def __add__(self, other):
        return DiffOperator(self.symbol + self._other(other).symbol)

    __radd__ = __add__

    def __sub__(self, other):
        return DiffOperator(self.symbol - self._other(other).symbol)

    def __rsub__(self, other):
        return DiffOperator(self._other(other).symbol - self.symbol)

    def __neg__(self):
        return DiffOperator(-self.symbol)

    def __mul__(self, other):
        return op_mul(self, self._other(other))

    __rmul__ = __mul__

    def __pow__(self, m: int):
        return op_pow(self, m)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.symbol == other.symbol

    def __hash__(self):
        return hash(("op", self.symbol))

    def __str__(self):
        return render(self.symbol)

    def __repr__(self):
        return f"DiffOperator({render(self.symbol)!r})"


def apply(op: DiffOperator, p: Polynomial) -> Polynomial:
    """
    Linear action of op on p: Dx^i·Dy^j sends x^a y^b to
    a^(i) b^(j) x^(a-i) y^(b-j) (falling factorials), scaled and summed.
    """
    if op.variables != p.ring:
        raise RingMismatch(op.symbol.ring, p.ring)

    out: Dict[Exponents, Fraction] = {}
    for sym_exps, sym_c in op.symbol.terms.items():
        for exps, c in p.terms.items():
            if any(s > e for s, e in zip(sym_exps, exps)):
                continue
            factor = 1
            for s, e in zip(sym_exps, exps):
                if s:
                    factor *= falling_factorial(e, s)
            new = tuple(e - s for s, e in zip(sym_exps, exps))
            out[new] = out.get(new, 0) + sym_c * c * factor
    return Polynomial(p.ring, out)


def op_mul(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Composition a∘b; equals the product of symbols."""
    if a.symbol.ring != b.symbol.ring:
        raise RingMismatch(a.symbol.ring, b.symbol.ring)
    return DiffOperator(a.symbol * b.symbol)


def op_pow(a: DiffOperator, m: int) -> DiffOperator:
    return DiffOperator(a.symbol ** m)


# =================================================
# 2. Φ(t)
# =================================================

@dataclass(frozen=True)
class PhiSpec:
    """
    Φ(t) = q0 + q1 t + ... + qs t^s. The order r is always recomputed
    from the polynomial, never stored.
    """

    phi: Polynomial

    def __post_init__(self):
        if len(self.phi.ring) != 1:
            raise RingMismatch(self.phi.ring, PHI_RING)

    @classmethod
    def from_coefficients(cls, coefficients, name: str = PHI_RING[0]) -> "PhiSpec":
        return cls(univariate(name, coefficients))

    @classmethod
    def zero(cls) -> "PhiSpec":
        return cls(Polynomial.zero(PHI_RING))

    @property
    def name(self) -> str:
        return self.phi.ring[0]

    @property
    def r(self):
        """o(Φ); +inf for Φ = 0."""
        return self.phi.order(self.name)

    @property
    def s(self):
        return self.phi.degree(self.name)

    def coefficient(self, i: int) -> Fraction:
        return self.phi.coefficient((i,))

    @property
    def q0(self) -> Fraction:
        return self.coefficient(0)

    @property
    def q1(self) -> Fraction:
        return self.coefficient(1)

    def is_zero(self) -> bool:
        return self.phi.is_zero()

    def coefficients(self) -> Tuple[Fraction, ...]:
        if self.is_zero():
            return ()
        return tuple(self.coefficient(i) for i in range(self.s + 1))

    def as_operator(self, y: str = XY_RING[1], variables: Sequence[str] = XY_RING) -> DiffOperator:
        """Φ(Dy) in the operator ring of `variables`."""
        ring = symbol_ring(variables)
        idx = ring.index(OPERATOR_PREFIX + y)
        terms = {}
        for (k,), c in self.phi.terms.items():
            exps = tuple(k if i == idx else 0 for i in range(len(ring)))
            terms[exps] = c
        return DiffOperator(Polynomial(ring, terms))

    def __str__(self):
        return render(self.phi)


# =================================================
# 3. Λ AND ITS POWERS
# =================================================

def shift_factor(phi: PhiSpec, variables: Sequence[str] = XY_RING) -> DiffOperator:
    """Dx - Φ(Dy)."""
    x, y = variables
    return DiffOperator.derivation(x, variables) - phi.as_operator(y, variables)


def lambda_of(phi: PhiSpec, variables: Sequence[str] = XY_RING) -> DiffOperator:
    """Λ = (Dx - Φ(Dy))·Dy."""
    return shift_factor(phi, variables) * DiffOperator.derivation(variables[1], variables)


def apply_lambda_power(
    phi: PhiSpec,
    m: int,
    p: Polynomial,
    factor_power: Optional[DiffOperator] = None,
) -> Polynomial:
    """
    Λ^m(p). With Dy-first pruning, ∂y^m runs before (Dx - Φ(Dy))^m so
    every term with deg_y < m dies before the expensive part.
    `factor_power` may carry a precomputed (Dx - Φ(Dy))^m.
    """
    if m < 0:
        raise ValueError("m must be >= 0")

    if not FEATURES.get("DY_FIRST_PRUNING", True):
        return apply(op_pow(lambda_of(phi, p.ring), m), p)

    pruned = p.partial(p.ring[1], m)
    if pruned.is_zero():
        return pruned
    if factor_power is None:
        factor_power = op_pow(shift_factor(phi, p.ring), m)
    return apply(factor_power, pruned)


# =================================================
# 4. EXPONENTIAL SHIFT
# =================================================

def exp_shift(phi: PhiSpec, sign: int, p: Polynomial) -> Polynomial:
    """
    e^{sign·xΦ(∂y)} p = Σ_k (sign·x)^k Φ(∂y)^k p / k!.

    Requires q0 = 0: each Φ(∂y) then drops deg_y by at least r, so the
    series stops after K = deg_y(p) // r terms.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if phi.q0 != 0:
        raise NotLocallyNilpotent(
            f"q0 = {phi.q0} != 0: e^{{xΦ(∂y)}} does not preserve polynomials"
        )

    x, y = p.ring
    deg_y = p.degree(y)
    if phi.is_zero() or is_infinite(deg_y):
        return p

    bound = deg_y // phi.r
    op = phi.as_operator(y, p.ring)
    step = Polynomial.variable(p.ring, x).scale(sign)

    result = p
    term = p
    shift = Polynomial.one(p.ring)
    used = 0
    for k in range(1, bound + 1):
        term = apply(op, term)
        if term.is_zero():
            break
        shift = shift * step
        result = result + (shift * term).scale(Fraction(1, math.factorial(k)))
        used = k

    logger.debug("exp_shift(sign=%d) used %d of %d series terms", sign, used, bound)
    return result
