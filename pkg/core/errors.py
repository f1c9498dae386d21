"""
Engine Errors
-------------
Exception hierarchy shared by every layer.

• Errors carry their evidence (witness polynomial, failing m, position)
• Non-vanishing of Λ^m(P^m Q) is a report entry, never an error
"""

from typing import Any, Iterable, Optional


class GvcError(Exception):
    """
    Root of all engine errors.
    """


# =================================================
# POLY / DSL
# =================================================

class RingMismatch(GvcError):
    def __init__(self, left, right):
        super().__init__(f"ring mismatch: {tuple(left)} vs {tuple(right)}")
        self.left = tuple(left)
        self.right = tuple(right)


class UnknownVariable(GvcError):
    def __init__(self, name: str, ring: Iterable[str], position: Optional[int] = None):
        ring = tuple(ring)
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown variable {name!r}{where}; ring is {ring}")
        self.name = name
        self.ring = ring
        self.position = position


class PolySyntaxError(GvcError):
    """
    Positioned parse failure. `position` is a 1-based column into the
    original text; end of input is len(text) + 1.
    """

    def __init__(self, position: int, expected: Iterable[str], found: str):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        super().__init__(
            f"syntax error at position {position}: expected "
            f"{' | '.join(self.expected)}, found {found}"
        )


# =================================================
# OPERATORS
# =================================================

class NotLocallyNilpotent(GvcError):
    """Raised when q0 != 0, so e^{xΦ(∂y)} leaves the polynomial ring."""


class Q0NotZero(GvcError):
    """Normalization is only defined on the q0 = 0 branch."""


# =================================================
# GVC ENGINE
# =================================================

class InvalidInput(GvcError):
    pass


class PreconditionViolated(GvcError):
    pass


class NotInKernel(GvcError):
    def __init__(self, witness: Any, mixed: Any = None):
        super().__init__(f"not in the kernel of Λ: ΛP = {witness}")
        self.witness = witness
        self.mixed = mixed


class HypothesisViolated(GvcError):
    def __init__(self, m: int, witness: Any):
        super().__init__(f"Λ^m(P^m) != 0 at m = {m} (witness term {witness})")
        self.m = m
        self.witness = witness


class FormViolated(GvcError):
    def __init__(self, reason: str, witness: Any = None):
        suffix = f"; Λ²(P²) = {witness}" if witness is not None else ""
        super().__init__(f"form check failed: {reason}{suffix}")
        self.reason = reason
        self.witness = witness


class NormalizationFailed(GvcError):
    def __init__(self, witness: Any):
        super().__init__(f"q0 != 0 and P is not in K[x]; ΛP = {witness}")
        self.witness = witness


class BoundRefuted(GvcError):
    """A verification sample at or beyond the certified threshold did not vanish."""

    def __init__(self, m_star: int, m: int, witness: Any):
        super().__init__(f"bound m* = {m_star} refuted: Λ^m(P^m Q) != 0 at m = {m} ({witness})")
        self.m_star = m_star
        self.m = m
        self.witness = witness
