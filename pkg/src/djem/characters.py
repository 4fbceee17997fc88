"""Torus character bookkeeping.

A torus character is tracked as a formal product chi_weight * psi^a * (psi^w)^b
* delta_P^c over one declared smooth base character psi.  Only its value at
z = diag(p, p^{-1}) is ever evaluated, symbolically as a pair
(p-exponent, unit), without committing to a numeric prime:

  * chi_k(diag(a, a^{-1})) = a^k, so chi_k contributes exponent k;
  * delta_P(z) = 1/[N_0 : z N_0 z^{-1}] = p^{-2}, exponent -2;
  * psi contributes its declared pair, and psi^w(z) = psi(z)^{-1} because
    w z w^{-1} = z^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from djem.errors import ParityError, ValidationError
from djem.linalg import as_rational

# z N_0 z^{-1} has index p^2 in N_0.
DELTA_P_Z_EXPONENT = -2


@dataclass(frozen=True)
class SmoothCharacter:
    """A smooth character of the diagonal torus, declared by its value at z.

    The value at z = diag(p, p^{-1}) is recorded as p^z_valuation * z_unit.
    w_selfdual asserts psi^w = psi; torus_unit_label names the restriction to
    the maximal compact torus (characters agreeing at z may still differ
    there, so equality of smooth characters is never inferred from z-values
    alone).
    """
    label: str
    z_valuation: int = 0
    z_unit: Fraction = Fraction(1)
    w_selfdual: bool = False
    torus_unit_label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "z_unit", as_rational(self.z_unit))
        if self.z_unit == 0:
            raise ValidationError(f"smooth character {self.label!r} must be nonzero at z")
        if not self.torus_unit_label:
            object.__setattr__(self, "torus_unit_label", self.label)

    def z_value(self) -> tuple[int, Fraction]:
        return (self.z_valuation, self.z_unit)

    def w_conjugate_z_value(self) -> tuple[int, Fraction]:
        """psi^w(z) = psi(z)^{-1}: negated valuation, inverted unit."""
        return (-self.z_valuation, 1 / self.z_unit)


TRIVIAL_PSI = SmoothCharacter("trivial", 0, Fraction(1), w_selfdual=True)


@dataclass(frozen=True)
class TorusCharacter:
    """Formal product chi_weight * psi^psi_exp * (psi^w)^psiw_exp * delta_P^delta_exp."""
    weight: int
    psi_exp: int = 0
    psiw_exp: int = 0
    delta_exp: int = 0

    def __post_init__(self):
        if self.weight % 2:
            raise ParityError(f"algebraic weight must be even, got {self.weight}")

    def w_twist(self) -> "TorusCharacter":
        """Conjugation by w: negates the algebraic weight, swaps psi with psi^w
        and inverts the modulus twist.  An involution."""
        return TorusCharacter(-self.weight, self.psiw_exp, self.psi_exp, -self.delta_exp)

    def normalized(self, psi: SmoothCharacter) -> "TorusCharacter":
        """Fold psi^w into psi when the base character declares psi^w = psi."""
        if psi.w_selfdual and self.psiw_exp:
            return replace(self, psi_exp=self.psi_exp + self.psiw_exp, psiw_exp=0)
        return self

    def z_eigenvalue(self, psi: SmoothCharacter) -> tuple[int, Fraction]:
        """Eigenvalue of z = diag(p, p^{-1}) as (p-exponent, unit)."""
        exponent = (self.weight
                    + self.psi_exp * psi.z_valuation
                    - self.psiw_exp * psi.z_valuation
                    + self.delta_exp * DELTA_P_Z_EXPONENT)
        unit = psi.z_unit ** self.psi_exp * (1 / psi.z_unit) ** self.psiw_exp
        return (exponent, unit)

    def text(self) -> str:
        parts = [f"chi_{{{self.weight}}}"]
        if self.psi_exp:
            parts.append("psi" if self.psi_exp == 1 else f"psi^{self.psi_exp}")
        if self.psiw_exp:
            parts.append("psi^w" if self.psiw_exp == 1 else f"(psi^w)^{self.psiw_exp}")
        if self.delta_exp:
            parts.append("delta_P" if self.delta_exp == 1 else f"delta_P^{self.delta_exp}")
        return " ".join(parts)


def w_twist_characters(chars) -> tuple[TorusCharacter, ...]:
    """Entrywise w-twist of a character list, preserving order."""
    return tuple(c.w_twist() for c in chars)
