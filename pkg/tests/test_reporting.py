import json
from fractions import Fraction

from core.parser import parse_phi, parse_poly
from core.poly import NEG_INFINITY, POS_INFINITY
from gvc.certify import certify
from gvc.detector import check_hypothesis
from reporting.json_reporter import (
    certificate_to_dict,
    degree_text,
    rational_text,
    render_certificate,
    render_report,
    report_to_dict,
    to_json,
)

CERTIFICATE_FIELDS = {"phi", "c", "phi_normalized", "a1", "g", "d", "r", "m_star", "samples"}


class TestScalars:
    def test_rationals_always_have_denominator(self):
        assert rational_text(3) == "3/1"
        assert rational_text(Fraction(-6, 4)) == "-3/2"
        assert rational_text(0) == "0/1"

    def test_degree_sentinels(self):
        assert degree_text(NEG_INFINITY) == "-inf"
        assert degree_text(POS_INFINITY) == "inf"
        assert degree_text(4) == 4


class TestCertificateTree:
    def test_fixed_field_set(self):
        cert = certify(parse_phi("t^2"), parse_poly("x + y^2"), parse_poly("x^2*y"))
        tree = certificate_to_dict(cert)
        assert set(tree) == CERTIFICATE_FIELDS
        assert tree["m_star"] == 6
        assert tree["c"] == "0/1"
        assert tree["a1"] == "1/1"
        assert tree["g"] == "y^2"
        assert tree["samples"][0] == {"m": 6, "vanished": True}

    def test_normalized_sentinels(self):
        cert = certify(parse_phi("t"), parse_poly("x + y"), parse_poly("y"))
        tree = certificate_to_dict(cert)
        assert tree["c"] == "-1/1"
        assert tree["phi_normalized"] == "0"
        assert tree["r"] == "inf"
        assert tree["d"] == 1

    def test_json_is_deterministic(self):
        cert = certify(parse_phi("t^2"), parse_poly("5*x"), parse_poly("y^2"))
        first = to_json(certificate_to_dict(cert))
        second = to_json(certificate_to_dict(cert))
        assert first == second
        assert json.loads(first)["d"] == "-inf"

    def test_text_mentions_threshold(self):
        cert = certify(parse_phi("t^2"), parse_poly("x + y^2"), parse_poly("x^2*y"))
        text = render_certificate(cert)
        assert "m*             = 6" in text
        assert "a = 2, b = 1: m >= 6" in text


class TestReportTree:
    def test_witness_only_on_failure(self):
        report = check_hypothesis(parse_phi("0"), parse_poly("x*y"), 2)
        tree = report_to_dict(report)
        assert tree["first_failure"] == 1
        assert tree["samples"][0]["witness"] == "1"
        assert all("witness" in s for s in tree["samples"] if not s["vanished"])

    def test_text(self):
        report = check_hypothesis(parse_phi("t^2"), parse_poly("x + y^2"), 3)
        assert render_report(report, "hypothesis").endswith("all vanished")
