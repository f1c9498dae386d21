"""
Sparse Polynomial Module
------------------------
Exact sparse multivariate polynomials over the rationals.

Responsible for:
- Canonical sparse storage (no zero coefficient is ever stored)
- Ring arithmetic, formal partial derivatives, substitution
- degree / order with the -inf / +inf sentinels for the zero polynomial
- Canonical text rendering (graded-lex descending, x > y)

IMPORTANT:
• Values are immutable; every operation returns a new polynomial
• Coefficients are fractions.Fraction; floats are rejected
"""

import functools
import math
import numbers
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from core.errors import RingMismatch, UnknownVariable

Exponents = Tuple[int, ...]
Coefficient = Fraction
Scalar = Union[int, Fraction]


# =================================================
# 1. INFINITY SENTINELS
# =================================================

@functools.total_ordering
class _Infinity:
    """
    Signed infinity that orders against integers and absorbs integer
    addition, so deg(p*q) = deg p + deg q holds for the zero polynomial.
    """

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, numbers.Rational):
            return self.sign < 0
        return NotImplemented

    def __hash__(self):
        return hash(("inf", self.sign))

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise ArithmeticError("inf - inf is undefined")
        if isinstance(other, (_Infinity, numbers.Rational)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return NEG_INFINITY if self.sign > 0 else POS_INFINITY

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"


POS_INFINITY = _Infinity(+1)
NEG_INFINITY = _Infinity(-1)

Degree = Union[int, _Infinity]


def is_infinite(value) -> bool:
    return isinstance(value, _Infinity)


# =================================================
# 2. COEFFICIENTS
# =================================================

def to_coefficient(value) -> Coefficient:
    """
    Exact conversion to Fraction. Floats and other inexact types are refused.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"inexact or unsupported coefficient: {value!r}")


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); zero when k > n."""
    return math.perm(n, k) if k <= n else 0


# =================================================
# 3. POLYNOMIAL
# =================================================

class Polynomial:
    """
    Immutable sparse polynomial: a ring (tuple of variable names) and a map
    exponent tuple -> nonzero Fraction.
    """

    __slots__ = ("_ring", "_terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Optional[Mapping[Exponents, Scalar]] = None):
        ring = tuple(ring)
        if len(set(ring)) != len(ring):
            raise ValueError(f"duplicate variable names in ring {ring}")

        clean: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(ring):
                raise ValueError(f"exponent tuple {exps} does not match ring {ring}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = to_coefficient(coeff)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]

        self._ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Tuple[str, ...], terms: Dict[Exponents, Fraction]) -> "Polynomial":
        # Caller guarantees canonical input (no zeros, exact Fractions).
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    # ---------------- CONSTRUCTORS ----------------

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(ring), {})

    @classmethod
    def constant(cls, ring: Sequence[str], value: Scalar) -> "Polynomial":
        ring = tuple(ring)
        c = to_coefficient(value)
        return cls._raw(ring, {(0,) * len(ring): c} if c else {})

    @classmethod
    def one(cls, ring: Sequence[str]) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: Sequence[str], name: str) -> "Polynomial":
        ring = tuple(ring)
        idx = _index(ring, name)
        exps = tuple(1 if i == idx else 0 for i in range(len(ring)))
        return cls._raw(ring, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, ring: Sequence[str], exps: Exponents, coeff: Scalar = 1) -> "Polynomial":
        return cls(ring, {tuple(exps): coeff})

    # ---------------- ACCESSORS ----------------

    @property
    def ring(self) -> Tuple[str, ...]:
        return self._ring

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, exps: Exponents) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self._ring))

    def items(self) -> Iterator[Tuple[Exponents, Fraction]]:
        """Terms in canonical (graded-lex descending) order."""
        for exps in sorted(self._terms, key=_grlex_key, reverse=True):
            yield exps, self._terms[exps]

    def lex_least_term(self) -> "Polynomial":
        """The lex-least single term, used as a compact non-vanishing witness."""
        if not self._terms:
            return self
        exps = min(self._terms)
        return Polynomial._raw(self._ring, {exps: self._terms[exps]})

    def has_mixed_terms(self) -> bool:
        return any(sum(1 for e in exps if e) >= 2 for exps in self._terms)

    def variables_used(self) -> Tuple[str, ...]:
        used = set()
        for exps in self._terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(self._ring[i] for i in sorted(used))

    def filter_terms(self, keep) -> "Polynomial":
        """Sub-polynomial of the terms whose exponent tuple satisfies keep."""
        return Polynomial._raw(
            self._ring, {e: c for e, c in self._terms.items() if keep(e)}
        )

    # ---------------- EQUALITY ----------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._ring == other._ring and self._terms == other._terms
        if isinstance(other, numbers.Rational) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self._ring, other)._terms
        return NotImplemented

    def __hash__(self):
        # constants hash like the scalar they compare equal to
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self._ring, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # ---------------- ARITHMETIC ----------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._ring != self._ring:
                raise RingMismatch(self._ring, other._ring)
            return other
        return Polynomial.constant(self._ring, to_coefficient(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Polynomial._raw(self._ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Scalar) -> "Polynomial":
        f = to_coefficient(factor)
        if not f:
            return Polynomial.zero(self._ring)
        return Polynomial._raw(self._ring, {e: c * f for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if other._ring != self._ring:
            raise RingMismatch(self._ring, other._ring)

        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                out[exps] = out.get(exps, 0) + c1 * c2
        return Polynomial._raw(self._ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
        result = Polynomial.one(self._ring)
        base = self
        # binary exponentiation
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---------------- CALCULUS ----------------

    def partial(self, var: str, k: int = 1) -> "Polynomial":
        """k-th formal partial derivative with respect to var."""
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        idx = _index(self._ring, var)
        if k == 0:
            return self

        out: Dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            e = exps[idx]
            if e < k:
                continue
            new = exps[:idx] + (e - k,) + exps[idx + 1:]
            out[new] = c * falling_factorial(e, k)
        return Polynomial._raw(self._ring, out)

    def degree(self, var: str) -> Degree:
        idx = _index(self._ring, var)
        if not self._terms:
            return NEG_INFINITY
        return max(exps[idx] for exps in self._terms)

    def total_degree(self) -> Degree:
        if not self._terms:
            return NEG_INFINITY
        return max(sum(exps) for exps in self._terms)

    def order(self, var: str) -> Degree:
        idx = _index(self._ring, var)
        if not self._terms:
            return POS_INFINITY
        return min(exps[idx] for exps in self._terms)

    # ---------------- SUBSTITUTION ----------------

    def substitute(self, var: str, value: Union["Polynomial", Scalar]) -> "Polynomial":
        """
        Formal substitution var -> value, expanded. `value` must live in the
        same ring (scalars are promoted to constants).
        """
        idx = _index(self._ring, var)
        value = self._coerce(value)

        buckets: Dict[int, Dict[Exponents, Fraction]] = {}
        for exps, c in self._terms.items():
            rest = exps[:idx] + (0,) + exps[idx + 1:]
            buckets.setdefault(exps[idx], {})[rest] = c

        result = Polynomial.zero(self._ring)
        power = Polynomial.one(self._ring)
        done = 0
        for e in sorted(buckets):
            while done < e:
                power = power * value
                done += 1
            result = result + Polynomial._raw(self._ring, buckets[e]) * power
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point; every ring variable must be bound."""
        missing = [v for v in self._ring if v not in point]
        if missing:
            raise UnknownVariable(missing[0], self._ring)
        values = [to_coefficient(point[v]) for v in self._ring]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def rename(self, ring: Sequence[str]) -> "Polynomial":
        """Same terms read in a ring of equal size with other names."""
        ring = tuple(ring)
        if len(ring) != len(self._ring):
            raise RingMismatch(self._ring, ring)
        return Polynomial._raw(ring, dict(self._terms))

    # ---------------- TEXT ----------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r}, ring={self._ring})"


# =================================================
# 4. HELPERS
# =================================================

def _index(ring: Tuple[str, ...], var: str) -> int:
    try:
        return ring.index(var)
    except ValueError:
        raise UnknownVariable(var, ring) from None


def _grlex_key(exps: Exponents):
    return (sum(exps), exps)


def _monomial_text(ring: Tuple[str, ...], exps: Exponents) -> str:
    parts = []
    for name, e in zip(ring, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render(p: Polynomial) -> str:
    """
    Canonical text: graded-lex descending terms, explicit '*' and '^',
    rationals as a/b, '0' for the zero polynomial.
    """
    if p.is_zero():
        return "0"

    chunks = []
    for exps, c in p.items():
        mono = _monomial_text(p.ring, exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"

        if not chunks:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(chunks)


def univariate(name: str, coefficients: Iterable[Scalar]) -> Polynomial:
    """c0 + c1*name + c2*name^2 + ... in the one-variable ring (name,)."""
    return Polynomial((name,), {(i,): c for i, c in enumerate(coefficients)})
