from fractions import Fraction

import pytest
from hypothesis import given, settings

from config.settings import XY_RING
from core.diffop import DiffOperator, lambda_of
from core.errors import PolySyntaxError, UnknownVariable
from core.parser import format_expr, parse_operator, parse_phi, parse_poly, tokenize
from core.poly import Polynomial
from tests.conftest import read_fixture_lines
from tests.strategies import operators, polynomials

x = Polynomial.variable(XY_RING, "x")
y = Polynomial.variable(XY_RING, "y")


def _error_cases():
    cases = []
    for line in read_fixture_lines("grammar_errors.txt"):
        text, position = line.rsplit(" @ ", 1)
        cases.append((text, int(position)))
    return cases


class TestTokenizer:
    def test_positions_are_one_based_and_monotone(self):
        tokens = tokenize("3*x^2 - y")
        assert [t.position for t in tokens] == [1, 2, 3, 4, 5, 7, 9, 10]
        assert tokens[-1].kind == "eof"

    def test_eof_after_whitespace(self):
        assert tokenize("x  ")[-1].position == 4

    def test_bytes_input(self):
        assert [t.kind for t in tokenize(b"x+1")] == ["ident", "plus", "number", "eof"]


class TestParsePoly:
    def test_three_terms(self):
        p = parse_poly("3*x^2*y - 1/2*y + 4")
        assert p == Polynomial(XY_RING, {(2, 1): 3, (0, 1): Fraction(-1, 2), (0, 0): 4})
        assert len(p) == 3

    def test_binomial_square(self):
        assert parse_poly("(x + y)^2") == x ** 2 + 2 * x * y + y ** 2

    def test_caret_binds_tighter_than_unary_minus(self):
        assert parse_poly("-x^2") == -(x ** 2)
        assert parse_poly("-(x)^2") == -(x ** 2)
        assert parse_poly("(-x)^2") == x ** 2

    def test_minus_after_plus(self):
        assert parse_poly("x + -y") == x - y
        assert parse_poly("x - -y") == x + y

    def test_nested_parentheses(self):
        assert parse_poly("((x))*(1 - (y))") == x - x * y

    def test_unknown_variable_carries_position(self):
        with pytest.raises(UnknownVariable) as info:
            parse_poly("x + z")
        assert info.value.position == 5
        assert info.value.name == "z"

    def test_operator_idents_rejected_in_xy_ring(self):
        with pytest.raises(UnknownVariable):
            parse_poly("Dx*y")

    @pytest.mark.parametrize("text, position", _error_cases())
    def test_grammar_errors(self, text, position):
        with pytest.raises(PolySyntaxError) as info:
            parse_poly(text)
        assert info.value.position == position
        assert f"position {position}" in str(info.value)

    def test_chained_exponent_does_not_expect_caret(self):
        with pytest.raises(PolySyntaxError) as info:
            parse_poly("x^2^3")
        assert info.value.position == 4
        assert info.value.found == "'^'"
        assert "'^'" not in info.value.expected

    def test_trailing_token_after_bare_factor_allows_caret(self):
        with pytest.raises(PolySyntaxError) as info:
            parse_poly("x y")
        assert "'^'" in info.value.expected
        assert "'*'" in info.value.expected

    def test_error_is_deterministic(self):
        messages = set()
        for _ in range(3):
            with pytest.raises(PolySyntaxError) as info:
                parse_poly("x + + y")
            messages.add((str(info.value), info.value.expected))
        assert len(messages) == 1


class TestParsePhiAndOperator:
    def test_phi(self):
        phi = parse_phi("t^2 + 2*t^3")
        assert phi.coefficient(2) == 1
        assert phi.coefficient(3) == 2
        assert phi.r == 2

    def test_phi_syntax_error_at_eof(self):
        with pytest.raises(PolySyntaxError) as info:
            parse_phi("t^")
        assert info.value.position == 3

    def test_phi_rejects_x(self):
        with pytest.raises(UnknownVariable):
            parse_phi("x")

    def test_operator(self):
        assert parse_operator("Dx*Dy") == DiffOperator.derivation("x") * DiffOperator.derivation("y")

    def test_lambda_text(self):
        assert parse_operator("(Dx - Dy^2)*Dy") == lambda_of(parse_phi("t^2"))

    def test_operator_rejects_plain_variables(self):
        with pytest.raises(UnknownVariable):
            parse_operator("Dx*y")


class TestFormat:
    def test_zero(self):
        assert format_expr(Polynomial.zero(XY_RING)) == "0"

    def test_canonical_order(self):
        assert format_expr(x ** 2 + 2 * x * y ** 2 + y ** 4) == "y^4 + 2*x*y^2 + x^2"

    def test_operator_and_phi(self):
        assert format_expr(lambda_of(parse_phi("t^2"))) == "-Dy^3 + Dx*Dy"
        assert format_expr(parse_phi("2*t^3 + t^2")) == "2*t^3 + t^2"

    def test_unsupported(self):
        with pytest.raises(TypeError):
            format_expr(3)

    @pytest.mark.parametrize("text", read_fixture_lines("roundtrip.txt"))
    def test_canonical_fixtures(self, text):
        assert format_expr(parse_poly(text)) == text

    @settings(max_examples=500, deadline=None)
    @given(polynomials(max_degree=5, max_terms=8))
    def test_roundtrip_polynomials(self, p):
        assert parse_poly(format_expr(p)) == p

    @settings(max_examples=100, deadline=None)
    @given(operators())
    def test_roundtrip_operators(self, op):
        assert parse_operator(format_expr(op)) == op
