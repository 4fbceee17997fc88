"""Derived Jacquet modules of the three locally analytic families.

The computation runs over the dense algebraic core.  Writing V for one of the
three representations attached to an even k and a smooth character psi,

  * family "verma"     -> the full principal-series-type module on verma(-k),
  * family "dualverma" -> the module built on dual_verma(-k) (k >= 0),
  * family "simple"    -> the locally algebraic module on simple(-k) (k >= 0),

the open-cell section of V contributes the X-cohomology of the n-finite dual
ladder, each weight line landing in the character chi_weight psi delta_P (the
compactly supported smooth factor is killed by differentiation, and its
invariants form the single psi delta_P line in every degree).  The stalk at
the Weyl point contributes the Y-cohomology tensored by psi, read through the
w-interpolation: weights negate and psi becomes psi^w.  The two contributions
splice through the six-term sequence

  0 -> S0 -> H^0 -> T0 -> S1 -> H^1 -> T1 -> 0,

whose connecting map T0 -> S1 the tool only ever resolves when it is forced
to vanish (one side zero, or no z-eigenvalue match); otherwise the degree is
reported as connecting-undetermined rather than guessed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from djem.characters import SmoothCharacter, TorusCharacter, TRIVIAL_PSI, w_twist_characters
from djem.cohomology import cohomology
from djem.errors import ParityError, ValidationError
from djem.sl2 import WeightModule, default_truncation, dual_verma, n_finite_dual, simple, verma

FAMILIES = ("verma", "dualverma", "simple")


@dataclass(frozen=True)
class OrlikStrauchSpec:
    """Input descriptor: a module family, the character weight k, and psi.

    The parameter k names the character chi_k of the inducing data, so family
    "verma" with k builds the ladder verma(-k).  Families "dualverma" and
    "simple" require k >= 0.
    """
    family: str
    k: int
    psi: SmoothCharacter = TRIVIAL_PSI

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.k % 2:
            raise ParityError(f"k must be even, got {self.k}")
        if self.family in ("dualverma", "simple") and self.k < 0:
            raise ValidationError(f"family {self.family!r} requires k >= 0, got {self.k}")


def build_module(spec: OrlikStrauchSpec, trunc=None) -> WeightModule:
    if spec.family == "verma":
        return verma(-spec.k, trunc)
    if spec.family == "dualverma":
        return dual_verma(-spec.k, trunc)
    return simple(-spec.k)


def _lines_to_characters(lines, make):
    out = []
    for line in lines:  # already ordered by descending weight
        out.extend(make(line.weight) for _ in range(line.dim))
    return tuple(out)


def section_cohomology_characters(spec: OrlikStrauchSpec, trunc=None):
    """Per-degree torus characters of the open-cell section contribution.

    X-cohomology of the n-finite dual ladder; every line lands in
    chi_weight psi delta_P.
    """
    dual = n_finite_dual(build_module(spec, trunc))
    res = cohomology(dual, "n")
    make = lambda w: TorusCharacter(w, psi_exp=1, delta_exp=1)
    return {0: _lines_to_characters(res.h0, make),
            1: _lines_to_characters(res.h1, make)}


def stalk_cohomology_characters(spec: OrlikStrauchSpec, trunc=None):
    """Per-degree torus characters of the Weyl-point stalk contribution.

    Y-cohomology of the dual ladder tensored by psi, then interpolated
    through w: weights negate and psi becomes psi^w.
    """
    dual = n_finite_dual(build_module(spec, trunc))
    res = cohomology(dual, "nbar")
    make = lambda w: TorusCharacter(w, psi_exp=1)
    return {0: w_twist_characters(_lines_to_characters(res.h0, make)),
            1: w_twist_characters(_lines_to_characters(res.h1, make))}


@dataclass(frozen=True)
class ExtensionFlag:
    """Layer structure of one degree.

    kind "zero": the degree vanishes.  kind "direct-sum-determined": the
    listed factors form an honest direct sum.  kind "ext-class-undetermined":
    a two-sided extension with sub and quot known but the class unresolved.
    kind "connecting-undetermined": the six-term sequence could not be
    spliced; section and stalk candidates are reported unmerged.
    """
    kind: str
    sub: tuple[TorusCharacter, ...] = ()
    quot: tuple[TorusCharacter, ...] = ()


@dataclass(frozen=True)
class DegreeReport:
    jh_factors: tuple[TorusCharacter, ...]
    extension: ExtensionFlag
    hecke_eigenvalues: tuple[tuple[int, Fraction], ...]
    finite_slope_complete: bool


@dataclass(frozen=True)
class JacquetReport:
    spec: OrlikStrauchSpec
    truncation: int | None
    section: dict
    stalk: dict
    degrees: dict
    connecting_map_forced_zero: bool

    @property
    def finite_slope_complete(self):
        return all(d.finite_slope_complete for d in self.degrees.values())


def hecke_eigenvalue(chi: TorusCharacter, psi: SmoothCharacter = TRIVIAL_PSI):
    """Eigenvalue of the normalized Hecke operator at z on the chi line,
    as (p-exponent, unit).  Always nonzero, so every line is finite slope."""
    return chi.z_eigenvalue(psi)


def _degree_report(section_chars, stalk_chars, psi) -> DegreeReport:
    if not section_chars and not stalk_chars:
        flag = ExtensionFlag("zero")
    elif section_chars and stalk_chars:
        flag = ExtensionFlag("ext-class-undetermined", sub=section_chars, quot=stalk_chars)
    else:
        flag = ExtensionFlag("direct-sum-determined")
    jh = tuple(section_chars) + tuple(stalk_chars)
    hecke = tuple(hecke_eigenvalue(c, psi) for c in jh)
    return DegreeReport(jh, flag, hecke, all(u != 0 for _, u in hecke))


def assemble_les(spec: OrlikStrauchSpec, trunc=None) -> JacquetReport:
    """Splice section and stalk characters through the six-term sequence.

    The connecting map T0 -> S1 is taken to vanish only when that is forced:
    one of the two is zero, or no pair of lines shares a z-eigenvalue (a
    torus-equivariant map between lines with distinct z-eigenvalues is zero).
    When it cannot be forced, both degrees are flagged
    connecting-undetermined and no Jordan-Hoelder list is emitted.
    """
    if trunc is None:
        trunc = default_truncation(spec.k)
    section = section_cohomology_characters(spec, trunc)
    stalk = stalk_cohomology_characters(spec, trunc)
    t0, s1 = stalk[0], section[1]
    forced_zero = (not t0) or (not s1) or not any(
        a.z_eigenvalue(spec.psi) == b.z_eigenvalue(spec.psi) for a in t0 for b in s1)
    if forced_zero:
        degrees = {i: _degree_report(section[i], stalk[i], spec.psi) for i in (0, 1)}
    else:
        degrees = {
            i: DegreeReport((), ExtensionFlag("connecting-undetermined",
                                              sub=section[i], quot=stalk[i]),
                            (), True)
            for i in (0, 1)
        }
    return JacquetReport(spec, trunc, section, stalk, degrees, forced_zero)


def les_consistency_check(k, psi: SmoothCharacter = TRIVIAL_PSI, trunc=None) -> bool:
    """Euler-characteristic cancellation across the short exact sequence
    relating the locally algebraic sub, the full induction, and the negative
    weight quotient.

    With sub = simple(k), mid = verma(k) and quot = verma(-(k+2)), the
    Jordan-Hoelder multisets must satisfy
      H0(sub) + H0(quot) + H1(mid) = H0(mid) + H1(sub) + H1(quot).
    """
    k = int(k)
    if k < 0 or k % 2:
        raise ValidationError(f"les_consistency_check expects an even k >= 0, got {k}")
    if trunc is None:
        trunc = default_truncation(k + 2)
    sub = assemble_les(OrlikStrauchSpec("simple", k, psi), trunc)
    mid = assemble_les(OrlikStrauchSpec("verma", k, psi), trunc)
    quot = assemble_les(OrlikStrauchSpec("verma", -(k + 2), psi), trunc)

    def jh(report, degree):
        return [c.normalized(psi) for c in report.degrees[degree].jh_factors]

    lhs = Counter(jh(sub, 0) + jh(quot, 0) + jh(mid, 1))
    rhs = Counter(jh(mid, 0) + jh(sub, 1) + jh(quot, 1))
    return lhs == rhs
