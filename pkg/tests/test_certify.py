from fractions import Fraction

import pytest

from core.diffop import PhiSpec
from core.errors import (
    FormViolated,
    HypothesisViolated,
    InvalidInput,
    NormalizationFailed,
)
from core.parser import parse_phi, parse_poly
from core.poly import NEG_INFINITY, POS_INFINITY, Polynomial
from gvc.certify import (
    FAMILY_LINEAR,
    FAMILY_X_ONLY,
    FAMILY_Y_LINEAR,
    certify,
    monomial_threshold,
    normal_form,
    vanishing_bounds,
)
from gvc.detector import check_conclusion, check_hypothesis
from gvc.lemmas import kx_branch_check

T2 = parse_phi("t^2")


class TestThresholds:
    def test_linear(self):
        assert monomial_threshold(2, 1, FAMILY_LINEAR, 2, 2) == 6
        assert monomial_threshold(0, 3, FAMILY_LINEAR, 3, 1) == 4

    def test_linear_zero_phi_uses_degree_of_g(self):
        assert monomial_threshold(1, 0, FAMILY_LINEAR, POS_INFINITY, 1) == 2
        assert monomial_threshold(3, 2, FAMILY_LINEAR, POS_INFINITY, NEG_INFINITY) == 3

    def test_x_only(self):
        assert monomial_threshold(5, 2, FAMILY_X_ONLY, 2, NEG_INFINITY) == 3

    def test_y_linear(self):
        assert monomial_threshold(1, 1, FAMILY_Y_LINEAR, 2, NEG_INFINITY, s=2) == 4

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            monomial_threshold(0, 0, "quadratic", 2, 2)

    def test_bounds_table(self):
        bounds = vanishing_bounds(parse_poly("x^2*y + y^3"), FAMILY_LINEAR, 2, 2)
        assert {(b.a, b.b, b.threshold) for b in bounds} == {(2, 1, 6), (0, 3, 4)}


class TestCertify:
    def test_theorem_example(self):
        cert = certify(T2, parse_poly("x + y^2"), parse_poly("x^2*y"))
        assert cert.m_star == 6
        assert cert.family == FAMILY_LINEAR
        assert cert.c == 0
        assert cert.a1 == 1
        assert cert.g == parse_poly("y^2")
        assert (cert.d, cert.r) == (2, 2)
        assert [e.m for e in cert.samples.entries] == [6, 7, 8, 9, 10, 11]
        assert cert.samples.all_vanished
        assert cert.hypothesis.all_vanished

    def test_pure_x_multiple(self):
        cert = certify(T2, parse_poly("5*x"), parse_poly("x^2*y^3 + y"))
        assert cert.g.is_zero()
        assert cert.d == NEG_INFINITY
        assert cert.m_star == 1 + max(3 + 2 * 2, 1 + 0)

    def test_normalization_branch(self):
        cert = certify(parse_phi("t"), parse_poly("x + y"), parse_poly("y"))
        assert cert.c == Fraction(-1)
        assert cert.phi_normalized.is_zero()
        assert cert.r == POS_INFINITY
        assert cert.d == 1
        assert cert.m_star == 2
        report = check_conclusion(parse_phi("t"), parse_poly("x + y"), parse_poly("y"), 1)
        assert report.first_failure == 1

    def test_y_linear_family(self):
        cert = certify(T2, parse_poly("x^2 + y"), parse_poly("x*y"))
        assert cert.family == FAMILY_Y_LINEAR
        assert cert.s == 2
        assert cert.m_star == 4

    def test_constant_term_branch(self):
        cert = certify(parse_phi("1 + t"), parse_poly("x^2"), parse_poly("y"))
        assert cert.family == FAMILY_X_ONLY
        assert cert.m_star == 2

    def test_constant_term_branch_outside_kx(self):
        with pytest.raises(NormalizationFailed) as info:
            certify(parse_phi("1 + t"), parse_poly("y"), parse_poly("1"))
        assert info.value.witness == -1

    def test_constant_term_branch_runs_kx_check(self, monkeypatch):
        seen = []

        def spy(phi, p):
            report = kx_branch_check(phi, p)
            seen.append(report)
            return report

        monkeypatch.setattr("gvc.certify.kx_branch_check", spy)
        with pytest.raises(NormalizationFailed) as info:
            normal_form(parse_phi("2 - t^2"), parse_poly("x + y^2"))
        assert len(seen) == 1
        assert not seen[0].in_kx
        assert info.value.witness == seen[0].lambda_p

        form = normal_form(parse_phi("2 - t^2"), parse_poly("3*x^2 + 1"))
        assert seen[-1].in_kx and seen[-1].lambda_p.is_zero()
        assert form.family == FAMILY_X_ONLY

    def test_form_violated_carries_witness(self):
        with pytest.raises(FormViolated) as info:
            certify(T2, parse_poly("y^3 + 6*x*y"), parse_poly("1"))
        assert info.value.witness == 288

    def test_hypothesis_violated_at_one(self):
        with pytest.raises(HypothesisViolated) as info:
            certify(T2, parse_poly("x*y"), parse_poly("1"))
        assert info.value.m == 1

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInput):
            certify(T2, parse_poly("x"), parse_poly("1"), m_verify=-1)
        with pytest.raises(InvalidInput):
            certify(T2, parse_poly("x"), parse_poly("1"), m_max=1)

    def test_zero_q(self):
        cert = certify(T2, parse_poly("x + y^2"), Polynomial.zero(("x", "y")))
        assert cert.m_star == 1
        assert cert.bounds == ()

    def test_normal_form_transports_q(self):
        form = normal_form(parse_phi("t"), parse_poly("x + y"))
        assert form.p_normalized == parse_poly("y")
        assert {(b.a, b.b) for b in form.bounds(parse_poly("y"))} == {(0, 1), (1, 0)}


THEOREM_CASES = [
    (r, a1, g)
    for r in (2, 3)
    for a1 in (1, -2)
    for g in ("0", f"y^{r}", f"2*y^{r} - y + 3", "y^2 - 5*y")
]


@pytest.mark.slow
@pytest.mark.parametrize("r, a1, g", THEOREM_CASES)
def test_theorem_bound_family(r, a1, g):
    phi = PhiSpec.from_coefficients([0] * r + [1])
    p = parse_poly(f"{a1}*x + {g}")
    assert check_hypothesis(phi, p, 10).all_vanished

    basis = [Polynomial.monomial(("x", "y"), (a, b)) for a in range(4) for b in range(4)]
    form = normal_form(phi, p)
    for h in basis:
        (a, b), _ = next(h.items())
        bound = b + a * r
        assert form.m_star(h) == bound + 1
        report = check_conclusion(phi, p, h, bound + 5)
        assert all(report.by_m[m].vanished for m in range(bound + 1, bound + 6)), (p, h)
        assert report.empirical_threshold <= form.m_star(h)
