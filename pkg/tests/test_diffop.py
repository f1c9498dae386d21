import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings

from core.diffop import (
    DiffOperator,
    PhiSpec,
    apply,
    apply_lambda_power,
    exp_shift,
    lambda_of,
    op_mul,
    op_pow,
)
from core.errors import NotLocallyNilpotent, RingMismatch
from core.parser import parse_phi, parse_poly
from core.poly import POS_INFINITY, Polynomial
from tests.strategies import operators, phis, polynomials, sympy_apply, to_sympy

RING = ("x", "y")
Dx = DiffOperator.derivation("x")
Dy = DiffOperator.derivation("y")


class TestApply:
    def test_dx_dy_on_xy(self):
        assert apply(Dx * Dy, parse_poly("x*y")) == 1

    def test_identity(self):
        p = parse_poly("3*x^2*y - 1/2*y + 4")
        assert apply(DiffOperator.identity(), p) == p

    def test_falling_factorial_coefficients(self):
        assert apply(Dy ** 3, parse_poly("y^5")) == parse_poly("60*y^2")

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            apply(Dx, Polynomial.variable(("u", "v"), "u"))

    @settings(deadline=None)
    @given(operators(), polynomials())
    def test_matches_sympy(self, op, p):
        assert to_sympy(apply(op, p)) == sympy_apply(op, p)

    @settings(deadline=None)
    @given(operators(max_degree=2), operators(max_degree=2), polynomials())
    def test_composition_is_product(self, a, b, p):
        assert apply(op_mul(a, b), p) == apply(a, apply(b, p))

    @given(operators(), operators(), polynomials())
    def test_linearity(self, a, b, p):
        assert apply(a + b, p) == apply(a, p) + apply(b, p)


class TestPhiSpec:
    def test_order_and_degree(self):
        phi = parse_phi("t^2 + 2*t^3")
        assert phi.r == 2
        assert phi.s == 3
        assert phi.coefficient(2) == 1
        assert phi.coefficient(3) == 2
        assert phi.q0 == 0 and phi.q1 == 0

    def test_zero_order_is_infinite(self):
        assert PhiSpec.zero().r == POS_INFINITY
        assert PhiSpec.zero().coefficients() == ()

    def test_from_coefficients(self):
        phi = PhiSpec.from_coefficients([0, Fraction(1, 2), 0, 3])
        assert phi.coefficients() == (0, Fraction(1, 2), 0, 3)
        assert phi.r == 1

    def test_as_operator(self):
        assert parse_phi("t^2").as_operator() == Dy ** 2


class TestLambda:
    def test_lambda_t_squared(self):
        assert lambda_of(parse_phi("t^2")) == Dx * Dy - Dy ** 3

    def test_lambda_zero_phi(self):
        assert lambda_of(PhiSpec.zero()) == Dx * Dy

    @settings(deadline=None)
    @given(phis(max_degree=3), polynomials(max_degree=4))
    def test_dy_first_matches_operator_power(self, phi, p):
        for m in (1, 2, 3):
            assert apply_lambda_power(phi, m, p) == apply(op_pow(lambda_of(phi), m), p)

    def test_power_zero_is_identity(self):
        p = parse_poly("x + y^2")
        assert apply_lambda_power(parse_phi("t^2"), 0, p) == p


class TestExpShift:
    def test_examples(self):
        phi = parse_phi("t^2")
        assert exp_shift(phi, 1, parse_poly("x + y^2")) == parse_poly("3*x + y^2")
        assert exp_shift(phi, 1, parse_poly("y^3")) == parse_poly("y^3 + 6*x*y")
        assert exp_shift(phi, 1, parse_poly("y^4")) == parse_poly("y^4 + 12*x*y^2 + 12*x^2")

    def test_q0_nonzero(self):
        with pytest.raises(NotLocallyNilpotent):
            exp_shift(parse_phi("1 + t"), 1, parse_poly("y"))

    def test_trivial_inputs(self):
        p = parse_poly("x*y + 3")
        assert exp_shift(PhiSpec.zero(), 1, p) == p
        assert exp_shift(parse_phi("t"), -1, Polynomial.zero(RING)).is_zero()

    def test_sign_validated(self):
        with pytest.raises(ValueError):
            exp_shift(parse_phi("t"), 2, parse_poly("y"))

    @pytest.mark.parametrize("text, used, bound", [("y^4", 2, 2), ("y^5 + x", 2, 2), ("x^3", 0, 0)])
    def test_logs_series_terms_used(self, caplog, text, used, bound):
        with caplog.at_level(logging.DEBUG, logger="GVC.DiffOp"):
            exp_shift(parse_phi("t^2"), 1, parse_poly(text))
        assert f"used {used} of {bound} series terms" in caplog.text

    @settings(max_examples=200, deadline=None)
    @given(phis(max_degree=4), polynomials(max_degree=5))
    def test_inverse(self, phi, p):
        assert exp_shift(phi, -1, exp_shift(phi, 1, p)) == p

    @settings(max_examples=200, deadline=None)
    @given(phis(max_degree=6), polynomials(max_degree=5))
    def test_conjugation_identity(self, phi, p):
        lam = lambda_of(phi)
        assert apply(Dx * Dy, exp_shift(phi, -1, p)) == exp_shift(phi, -1, apply(lam, p))
