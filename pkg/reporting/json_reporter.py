"""
Report Serializer (JSON + Text)
-------------------------------
Turns engine results into a stable JSON tree or canonical text.

✔ Fixed field names
✔ Rationals always "num/den", infinities "inf" / "-inf"
✔ Polynomials in canonical, re-parsable text
✔ Byte-deterministic (sorted keys, fixed separators)
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from core.poly import is_infinite
from core.parser import format_expr
from gvc.certify import GvcCertificate
from gvc.detector import VanishEntry, VanishReport
from gvc.kernel import KernelDecomposition
from analytics.oracles import Eq1Residual
from analytics.search import SearchResult


# ==================================================
# SCALARS
# ==================================================

def rational_text(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def degree_text(value) -> Any:
    """Finite degrees stay integers; sentinels become "inf" / "-inf"."""
    if is_infinite(value):
        return repr(value)
    return int(value)


def poly_text(value) -> str:
    return format_expr(value)


# ==================================================
# TREES
# ==================================================

def entry_to_dict(entry: VanishEntry) -> Dict[str, Any]:
    node: Dict[str, Any] = {"m": entry.m, "vanished": entry.vanished}
    if entry.witness is not None:
        node["witness"] = poly_text(entry.witness)
    return node


def report_to_dict(report: VanishReport) -> Dict[str, Any]:
    return {
        "m_min": report.m_min,
        "m_max": report.m_max,
        "first_failure": report.first_failure,
        "empirical_threshold": report.empirical_threshold,
        "samples": [entry_to_dict(e) for e in report.entries],
    }


def certificate_to_dict(cert: GvcCertificate) -> Dict[str, Any]:
    return {
        "phi": poly_text(cert.phi),
        "c": rational_text(cert.c),
        "phi_normalized": poly_text(cert.phi_normalized),
        "a1": rational_text(cert.a1),
        "g": poly_text(cert.g),
        "d": degree_text(cert.d),
        "r": degree_text(cert.r),
        "m_star": cert.m_star,
        "samples": [entry_to_dict(e) for e in cert.samples.entries],
    }


def decomposition_to_dict(dec: KernelDecomposition) -> Dict[str, Any]:
    return {"f": poly_text(dec.f), "g": poly_text(dec.g), "a1": rational_text(dec.a1)}


def eq1_to_dict(result: Eq1Residual) -> Dict[str, Any]:
    return {
        "direct": poly_text(result.direct),
        "transcribed": poly_text(result.transcribed),
        "residual": poly_text(result.residual),
        "agrees": result.agrees,
    }


def search_to_dict(result: SearchResult) -> Dict[str, Any]:
    return {
        "candidates": result.candidates,
        "hypothesis_passed": result.hypothesis_passed,
        "seed": result.seed,
        "hits": [
            {
                "p": poly_text(hit.p),
                "q": poly_text(hit.q) if hit.q is not None else None,
                "m": hit.m,
                "reason": hit.reason,
            }
            for hit in result.hits
        ],
    }


def to_json(tree: Dict[str, Any]) -> str:
    return json.dumps(tree, sort_keys=True, ensure_ascii=False, indent=2, separators=(",", ": "))


# ==================================================
# TEXT
# ==================================================

def render_report(report: VanishReport, title: str) -> str:
    lines = [f"{title} (m = {report.m_min}..{report.m_max})"]
    for entry in report.entries:
        if entry.vanished:
            lines.append(f"  m = {entry.m}: 0")
        else:
            lines.append(f"  m = {entry.m}: nonzero, witness {poly_text(entry.witness)}")
    if report.all_vanished:
        lines.append("  all vanished")
    else:
        lines.append(f"  first failure m = {report.first_failure}")
        lines.append(f"  empirical threshold {report.empirical_threshold}")
    return "\n".join(lines)


def render_certificate(cert: GvcCertificate) -> str:
    lines: List[str] = [
        f"Φ              = {poly_text(cert.phi)}",
        f"c              = {cert.c}",
        f"Φ'             = {poly_text(cert.phi_normalized)}",
        f"family         = {cert.family}",
        f"a1             = {cert.a1}",
        f"g              = {poly_text(cert.g)}",
        f"d              = {degree_text(cert.d)}",
        f"r              = {degree_text(cert.r)}",
    ]
    if cert.s is not None:
        lines.append(f"s              = {cert.s}")
    lines.append(f"m*             = {cert.m_star}")

    lines.append("thresholds per monomial x^a*y^b of σ_c(Q):")
    for bound in cert.bounds:
        lines.append(f"  a = {bound.a}, b = {bound.b}: m >= {bound.threshold}")

    lines.append(
        f"hypothesis checked for m = {cert.hypothesis.m_min}..{cert.hypothesis.m_max} (empirical)"
    )
    verified = ", ".join(str(e.m) for e in cert.samples.entries)
    lines.append(f"vanishing verified for m = {verified}; m >= m* is theorem-backed")
    return "\n".join(lines)


def render_search(result: SearchResult) -> str:
    lines = [
        f"candidates        {result.candidates}",
        f"hypothesis passed {result.hypothesis_passed}",
    ]
    if result.seed is not None:
        lines.append(f"seed              {result.seed}")
    if not result.hits:
        lines.append("no counterexamples")
    for hit in result.hits:
        q = poly_text(hit.q) if hit.q is not None else "-"
        m = hit.m if hit.m is not None else "-"
        lines.append(f"P = {poly_text(hit.p)}, Q = {q}, m = {m}: {hit.reason}")
    return "\n".join(lines)


def with_config(tree: Dict[str, Any], config: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Attach the effective run configuration under "config"."""
    if config is None:
        return tree
    merged = dict(tree)
    merged["config"] = config
    return merged
