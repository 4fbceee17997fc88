"""Deterministic JSON and text rendering of results.

Two runs of the same configuration must produce byte-identical documents:
keys are sorted, rationals are rendered canonically as "num/den", ASCII is
escaped, and list orderings are fixed by the producing code.
"""

from __future__ import annotations

import json
from fractions import Fraction

from djem import __version__
from djem.characters import SmoothCharacter, TorusCharacter
from djem.cohomology import CohomologyResult, StabilizationCertificate
from djem.extbound import ExtCase
from djem.jacquet import JacquetReport


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def eigenvalue_json(pair, p=None):
    exponent, unit = pair
    out = {"p_exp": exponent, "unit": frac_str(unit)}
    if p is not None:
        out["value"] = frac_str(Fraction(p) ** exponent * unit)
    return out


def eigenvalue_text(pair, p=None):
    exponent, unit = pair
    if p is not None:
        return frac_str(Fraction(p) ** exponent * unit)
    return f"p^{exponent} * {frac_str(unit)}"


def smooth_character_json(psi: SmoothCharacter):
    return {
        "label": psi.label,
        "z_valuation": psi.z_valuation,
        "z_unit": frac_str(psi.z_unit),
        "w_selfdual": psi.w_selfdual,
        "torus_unit_label": psi.torus_unit_label,
    }


def character_json(chi: TorusCharacter, psi: SmoothCharacter, p=None):
    return {
        "weight": chi.weight,
        "psi_exp": chi.psi_exp,
        "psiw_exp": chi.psiw_exp,
        "delta_exp": chi.delta_exp,
        "text": chi.text(),
        "eigenvalue": eigenvalue_json(chi.z_eigenvalue(psi), p),
    }


def extension_json(flag, psi, p=None):
    out = {"kind": flag.kind}
    if flag.kind == "ext-class-undetermined":
        out["sub"] = [character_json(c, psi, p) for c in flag.sub]
        out["quot"] = [character_json(c, psi, p) for c in flag.quot]
    elif flag.kind == "connecting-undetermined":
        out["section"] = [character_json(c, psi, p) for c in flag.sub]
        out["stalk"] = [character_json(c, psi, p) for c in flag.quot]
    return out


def jacquet_result_json(report: JacquetReport, p=None):
    psi = report.spec.psi
    chars = lambda cs: [character_json(c, psi, p) for c in cs]
    degrees = {}
    for i in (0, 1):
        deg = report.degrees[i]
        degrees[str(i)] = {
            "jh_factors": chars(deg.jh_factors),
            "extension": extension_json(deg.extension, psi, p),
            "hecke_eigenvalues": [eigenvalue_json(e, p) for e in deg.hecke_eigenvalues],
            "finite_slope_complete": deg.finite_slope_complete,
        }
    return {
        "section": {"0": chars(report.section[0]), "1": chars(report.section[1])},
        "stalk": {"0": chars(report.stalk[0]), "1": chars(report.stalk[1])},
        "degrees": degrees,
        "connecting_map_forced_zero": report.connecting_map_forced_zero,
        "finite_slope_complete": report.finite_slope_complete,
    }


def jacquet_text(report: JacquetReport, p=None):
    psi = report.spec.psi
    lines = [f"family={report.spec.family} k={report.spec.k} psi={psi.label}"]
    for i in (0, 1):
        deg = report.degrees[i]
        lines.append(f"H^{i} J_P  [{deg.extension.kind}]")
        if deg.extension.kind == "ext-class-undetermined":
            for c in deg.extension.sub:
                lines.append(f"  sub:  {c.text()}  (z-eigenvalue {eigenvalue_text(c.z_eigenvalue(psi), p)})")
            for c in deg.extension.quot:
                lines.append(f"  quot: {c.text()}  (z-eigenvalue {eigenvalue_text(c.z_eigenvalue(psi), p)})")
        elif deg.extension.kind == "connecting-undetermined":
            for c in deg.extension.sub:
                lines.append(f"  section candidate: {c.text()}")
            for c in deg.extension.quot:
                lines.append(f"  stalk candidate:   {c.text()}")
        else:
            for c in deg.jh_factors:
                lines.append(f"  {c.text()}  (z-eigenvalue {eigenvalue_text(c.z_eigenvalue(psi), p)})")
            if not deg.jh_factors:
                lines.append("  0")
    return lines


def certificate_json(cert: StabilizationCertificate | None):
    if cert is None:
        return None
    return {
        "operator": cert.operator,
        "coefficient": None if cert.coefficient is None else cert.coefficient.text(),
        "coefficient_coeffs": None if cert.coefficient is None else list(cert.coefficient.coeffs),
        "roots": list(cert.roots),
        "bound": cert.bound,
        "finite": cert.finite,
    }


def cohomology_result_json(res: CohomologyResult):
    lines = lambda groups: [{"weight": g.weight, "dim": g.dim, "labels": list(g.labels)}
                            for g in groups]
    return {
        "direction": res.direction,
        "certified": res.certified,
        "weight_shift_applied": res.weight_shift_applied,
        "h0": lines(res.h0),
        "h1": lines(res.h1),
        "higher_degrees": "zero",
        "certificate": certificate_json(res.certificate),
    }


def cohomology_text(res: CohomologyResult):
    lines = [f"direction={res.direction} certified={'yes' if res.certified else 'NO (window-only)'} "
             f"h1-shift={res.weight_shift_applied:+d}"]
    for name, groups in (("H^0", res.h0), ("H^1", res.h1)):
        if not groups:
            lines.append(f"{name}: 0")
        for g in groups:
            lines.append(f"{name}: weight {g.weight}  dim {g.dim}  [{', '.join(g.labels)}]")
    cert = res.certificate
    if cert is not None:
        if cert.finite:
            lines.append("certificate: finite module, nothing truncated")
        else:
            lines.append(f"certificate: operator {cert.operator}, coefficient {cert.coefficient.text()}, "
                         f"roots {list(cert.roots)}, bound {cert.bound}")
    return lines


def ext_case_json(case: ExtCase, p=None):
    return {
        "k": case.k,
        "ell": case.ell,
        "verdict": case.verdict,
        "fired_bullets": list(case.fired_bullets),
        "relations": dict(sorted(case.relations.items())),
        "source_character": character_json(case.source_character, case.psi, p),
        "h1_factors": [character_json(c, case.phi, p) for c in case.h1_factors],
        "matched_factors": [character_json(c, case.phi, p) for c in case.matched_factors],
        "hom_bound": None if case.hom_bound is None else
            {"min": case.hom_bound[0], "max": case.hom_bound[1]},
    }


def ext_case_text(case: ExtCase):
    lines = [f"k={case.k} ell={case.ell} psi={case.psi.label} phi={case.phi.label}",
             f"verdict: {case.verdict}"]
    if case.fired_bullets:
        lines.append(f"fired bullets: {', '.join(str(b) for b in case.fired_bullets)}")
    for name, value in sorted(case.relations.items()):
        lines.append(f"relation {name}: {'yes' if value else 'no'}")
    if case.h1_factors:
        lines.append("H^1 factors of the target: " + "; ".join(c.text() for c in case.h1_factors))
    if case.matched_factors:
        lines.append("matched by the source: " + "; ".join(c.text() for c in case.matched_factors))
    if case.hom_bound is not None:
        lines.append(f"hom multiplicity bound: min {case.hom_bound[0]}, max {case.hom_bound[1]}")
    return lines


def check_result_json(k, passed, **extra):
    out = {"k": k, "passed": passed}
    out.update(extra)
    return out


def make_document(command, config, result):
    return {
        "tool": "djem",
        "version": __version__,
        "deterministic": True,
        "command": command,
        "config": config,
        "result": result,
    }


def serialize(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
