"""Extension-dimension bounds from computed Jacquet reports.

classify_ext answers: how large can the space of extensions between the
negative-weight principal-series-type module attached to (k, psi) and the
canonically embedded submodule attached to (ell, phi) be?  The verdict is a
pure character-matching case analysis driven by three relation predicates

    psi = phi,   psi delta_P = phi^w,   phi delta_P = phi^w,

evaluated against the degree-1 Jacquet report of the (ell, phi) module.
Smooth characters agreeing at z may still differ on the compact torus, so a
predicate is only decided by an explicit declaration, by identical
declarations on both sides, or by refutation from distinct z-values; anything
else raises rather than silently guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from djem.characters import SmoothCharacter, TorusCharacter, DELTA_P_Z_EXPONENT
from djem.errors import ParityError, UndecidableRelationError, ValidationError
from djem.jacquet import JacquetReport, OrlikStrauchSpec, assemble_les

VERDICT_TRIVIAL = "trivial"
VERDICT_ONE = "one-dimensional"
VERDICT_AT_MOST_ONE = "at-most-one-dimensional"
VERDICT_ONE_OR_TWO = "one-or-two-dimensional"

_BULLET_VERDICTS = {1: VERDICT_ONE, 2: VERDICT_AT_MOST_ONE,
                    3: VERDICT_ONE_OR_TWO, 4: VERDICT_AT_MOST_ONE}


@dataclass(frozen=True)
class RelationDeclarations:
    """Explicit truth declarations; None means undeclared."""
    psi_eq_phi: bool | None = None
    psi_delta_eq_phi_w: bool | None = None
    phi_delta_eq_phi_w: bool | None = None


@dataclass(frozen=True)
class ExtCase:
    k: int
    ell: int
    psi: SmoothCharacter
    phi: SmoothCharacter
    verdict: str
    fired_bullets: tuple[int, ...]
    source_character: TorusCharacter
    h1_factors: tuple[TorusCharacter, ...]
    matched_factors: tuple[TorusCharacter, ...]
    hom_bound: tuple[int, int] | None
    relations: dict


def _decide(name, declared, lhs_z, rhs_z, identical_declarations=False):
    if declared is not None:
        return bool(declared)
    if lhs_z != rhs_z:
        return False
    if identical_declarations:
        return True
    raise UndecidableRelationError(
        f"relation {name} is undecidable: z-values agree but the characters may "
        f"differ on the compact torus; declare the relation explicitly")


def _delta_twisted(z_value):
    v, u = z_value
    return (v + DELTA_P_Z_EXPONENT, u)


def resolve_relations(psi: SmoothCharacter, phi: SmoothCharacter,
                      declared: RelationDeclarations) -> dict:
    """Decide the three predicates or raise UndecidableRelationError."""
    same_declaration = (psi.label == phi.label
                        and psi.z_value() == phi.z_value()
                        and psi.torus_unit_label == phi.torus_unit_label)
    psi_eq_phi = _decide("psi-eq-phi", declared.psi_eq_phi,
                         psi.z_value(), phi.z_value(), same_declaration)
    psi_delta_eq_phi_w = _decide("psi-delta-eq-phi-w", declared.psi_delta_eq_phi_w,
                                 _delta_twisted(psi.z_value()), phi.w_conjugate_z_value())
    phi_delta_eq_phi_w = _decide("phi-delta-eq-phi-w", declared.phi_delta_eq_phi_w,
                                 _delta_twisted(phi.z_value()), phi.w_conjugate_z_value())
    return {"psi-eq-phi": psi_eq_phi,
            "psi-delta-eq-phi-w": psi_delta_eq_phi_w,
            "phi-delta-eq-phi-w": phi_delta_eq_phi_w}


def hom_dimension_bound(source: TorusCharacter, report: JacquetReport, degree: int):
    """(min, max) for the multiplicity of source among the degree's factors.

    max is the plain multiset multiplicity of source in the Jordan-Hoelder
    list.  min only credits factors of a direct-sum-determined degree; layers
    of an unresolved extension contribute nothing to min (conservative: the
    class could absorb them).  Characters are compared componentwise after
    normalizing against the report's base character.
    """
    deg = report.degrees[degree]
    psi = report.spec.psi
    want = source.normalized(psi)
    count = sum(1 for c in deg.jh_factors if c.normalized(psi) == want)
    low = count if deg.extension.kind == "direct-sum-determined" else 0
    return (low, count)


def classify_ext(k, ell, psi: SmoothCharacter, phi: SmoothCharacter,
                 relations: RelationDeclarations = RelationDeclarations(),
                 trunc=None) -> ExtCase:
    """Case analysis for Ext^1 between the (k, psi) and (ell, phi) modules.

    Trivial whenever k != -(ell+2).  Otherwise the four bullets are checked
    in order against the degree-1 report of the (ell, phi) module:

      1. phi delta_P != phi^w and psi = phi            -> one-dimensional
      2. phi delta_P != phi^w and psi delta_P = phi^w  -> at most one-dimensional
      3. phi delta_P  = phi^w and psi = phi            -> one or two-dimensional
      4. psi delta_P = phi^w                           -> at most one-dimensional

    Every bullet that fires is recorded; the verdict is the first one's.
    """
    k = int(k)
    ell = int(ell)
    if k % 2 or ell % 2:
        raise ParityError(f"k and ell must be even, got k={k}, ell={ell}")
    if k >= 0:
        raise ValidationError(f"classify_ext requires k < 0, got k={k}")
    if k == ell:
        raise ValidationError("classify_ext requires k != ell")
    source = TorusCharacter(k, psi_exp=1, delta_exp=1)
    if k != -(ell + 2):
        return ExtCase(k, ell, psi, phi, VERDICT_TRIVIAL, (), source, (), (), None, {})

    rel = resolve_relations(psi, phi, relations)
    target_spec = OrlikStrauchSpec("simple" if ell >= 0 else "verma", ell, phi)
    report = assemble_les(target_spec, trunc)
    h1 = report.degrees[1].jh_factors

    b1 = (not rel["phi-delta-eq-phi-w"]) and rel["psi-eq-phi"]
    b2 = (not rel["phi-delta-eq-phi-w"]) and rel["psi-delta-eq-phi-w"]
    b3 = rel["phi-delta-eq-phi-w"] and rel["psi-eq-phi"]
    b4 = rel["psi-delta-eq-phi-w"]
    fired = tuple(i for i, b in ((1, b1), (2, b2), (3, b3), (4, b4)) if b)
    verdict = _BULLET_VERDICTS[fired[0]] if fired else VERDICT_TRIVIAL

    # Which degree-1 factors the source can pair with under the fired relations.
    matched = []
    for c in h1:
        if c.delta_exp == 1 and rel["psi-eq-phi"]:
            matched.append(c)
        elif c.psiw_exp == 1 and rel["psi-delta-eq-phi-w"]:
            matched.append(c)

    # Hom bound against H^1 when the source can be written over phi.
    if rel["psi-eq-phi"]:
        source_over_phi = TorusCharacter(k, psi_exp=1, delta_exp=1)
    elif rel["psi-delta-eq-phi-w"]:
        source_over_phi = TorusCharacter(k, psiw_exp=1)
    else:
        source_over_phi = None
    bound = None if source_over_phi is None else hom_dimension_bound(source_over_phi, report, 1)

    return ExtCase(k, ell, psi, phi, verdict, fired, source, h1, tuple(matched), bound, rel)
