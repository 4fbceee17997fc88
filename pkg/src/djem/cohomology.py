"""Cohomology of the one-dimensional nilpotent radicals on weight modules.

For a one-dimensional Lie algebra spanned by a single operator, degree 0 is
the kernel of that operator and degree 1 is its cokernel tensored by the dual
line; every higher degree is structurally zero.  Direction "n" uses X and
twists degree 1 by weight -2 (the dual line of the weight +2 radical);
direction "nbar" uses Y and twists by +2.

Truncated windows are discharged by a stabilization certificate: the closed
form ladder coefficient together with its integer roots proves that neither
kernel nor cokernel receives contributions past the certified bound, so the
window answer is the exact answer.  Without a certificate the computation
refuses by default; callers may opt into a window-only answer that is flagged
as non-certified.
"""

from __future__ import annotations

from dataclasses import dataclass

from djem.errors import CertificateError, UnsupportedFamilyError, ValidationError
from djem.linalg import SparseMatrix, Subspace, cokernel_basis, kernel
from djem.sl2 import IndexPoly, WeightModule, check_bracket_relations, n_finite_dual, simple

# direction -> (operator, weight shift of the operator, degree-1 report shift)
_DIRECTIONS = {"n": ("x", 2, -2), "nbar": ("y", -2, 2)}


@dataclass(frozen=True)
class StabilizationCertificate:
    """Proof object: the ladder coefficient is nonzero at every index > bound.

    For finite modules there is nothing to certify and the certificate is
    empty (finite=True).  For truncated ladders, every integer root of the
    coefficient polynomial is < bound, so kernel and cokernel contributions
    can only occur at ladder indices < bound <= truncation.
    """
    operator: str
    coefficient: IndexPoly | None
    roots: tuple[int, ...]
    bound: int
    finite: bool


@dataclass(frozen=True)
class WeightLines:
    """The computed lines of one weight: a canonical subspace plus basis labels."""
    weight: int
    space: Subspace
    labels: tuple[str, ...]

    @property
    def dim(self):
        return self.space.dim


@dataclass(frozen=True)
class CohomologyResult:
    direction: str
    h0: tuple[WeightLines, ...]
    h1: tuple[WeightLines, ...]
    weight_shift_applied: int
    certificate: StabilizationCertificate | None
    certified: bool = True

    def h0_dims(self):
        return {line.weight: line.dim for line in self.h0}

    def h1_dims(self):
        return {line.weight: line.dim for line in self.h1}


def _line_labels(space: Subspace, weight_labels) -> tuple[str, ...]:
    out = []
    for row in space.basis:
        nz = [(j, v) for j, v in enumerate(row) if v != 0]
        if len(nz) == 1 and nz[0][1] == 1:
            out.append(weight_labels[nz[0][0]])
        else:
            out.append("+".join(f"({v})*{weight_labels[j]}" for j, v in nz))
    return tuple(out)


def stabilization_certificate(m: WeightModule, direction: str) -> StabilizationCertificate:
    """Certificate for the operator of the given direction on a ladder module.

    Finite modules get the empty certificate.  Truncated modules must carry
    ladder coefficient data, which is re-verified against the stored matrices
    before being trusted.
    """
    if direction not in _DIRECTIONS:
        raise ValidationError(f"direction must be one of {sorted(_DIRECTIONS)}, got {direction!r}")
    op, _, _ = _DIRECTIONS[direction]
    if m.is_finite:
        return StabilizationCertificate(op.upper(), None, (), 0, True)
    if m.ladder is None:
        raise UnsupportedFamilyError(
            "module carries no ladder coefficient data; cannot certify a truncated window")
    if any(d != 1 for d in m.dims.values()):
        raise UnsupportedFamilyError("certificates require one-dimensional weight spaces")
    coeff = m.ladder.coeff_x if op == "x" else m.ladder.coeff_y
    if coeff.is_zero():
        raise UnsupportedFamilyError(
            "ladder coefficient vanishes identically; a truncated window cannot be certified")
    # Cross-check the closed form against every stored block in the window.
    stored = m.stored_x_blocks() if op == "x" else m.stored_y_blocks()
    for mu, blk in stored.items():
        i = m.index_of_weight(mu)
        if blk.entry(0, 0) != coeff(i):
            raise UnsupportedFamilyError(
                f"stored {op.upper()} action at index {i} disagrees with the ladder coefficient")
    roots = coeff.integer_roots()
    bound = max(roots) + 1 if roots else 0
    return StabilizationCertificate(op.upper(), coeff, tuple(roots), max(bound, 0), False)


def cohomology(m: WeightModule, direction: str, allow_uncertified: bool = False) -> CohomologyResult:
    """Kernel (degree 0) and twisted cokernel (degree 1) of X or Y on m.

    Certified results are exact for the untruncated module.  If the window
    cannot be certified, raises CertificateError / UnsupportedFamilyError
    unless allow_uncertified is set, in which case the window-only answer is
    returned with certified=False.
    """
    if direction not in _DIRECTIONS:
        raise ValidationError(f"direction must be one of {sorted(_DIRECTIONS)}, got {direction!r}")
    if not check_bracket_relations(m):
        raise ValidationError("module fails the bracket identity [X, Y] = H on its window")
    op, op_shift, report_shift = _DIRECTIONS[direction]

    certificate = None
    certified = True
    try:
        certificate = stabilization_certificate(m, direction)
    except UnsupportedFamilyError:
        if not allow_uncertified:
            raise
        certified = False
    if certificate is not None and not certificate.finite and m.truncation < certificate.bound:
        if not allow_uncertified:
            raise CertificateError(
                f"truncation {m.truncation} is below the certificate bound "
                f"{certificate.bound}; increase truncation")
        certified = False

    h0 = []
    for mu in reversed(m.weights):
        block = m.op_block(mu, op)
        if block is None:
            if certified:
                # Ladder index at the cut is >= bound, so the coefficient is
                # nonzero there and the true kernel misses this weight.
                continue
            block = SparseMatrix.zero(0, m.dims[mu])
        space = kernel(block)
        if space.dim:
            h0.append(WeightLines(mu, space, _line_labels(space, m.basis_labels[mu])))

    h1 = []
    for nu in reversed(m.weights):
        src = nu - op_shift
        if src in m.dims:
            block = m.op_block(src, op)
            if block is None:  # target nu is inside the window, so unreachable
                raise AssertionError("in-window block unexpectedly hidden")
        else:
            beyond_top = src > m.max_weight
            beyond_bottom = src < m.min_weight
            genuine_empty = ((beyond_top and m.top_exact)
                             or (beyond_bottom and m.bottom_exact)
                             or (not beyond_top and not beyond_bottom))
            if genuine_empty:
                block = SparseMatrix.zero(m.dims[nu], 0)
            elif certified:
                # The incoming coefficient at the first index past the cut is
                # certified nonzero, so nu is fully hit in the true module.
                continue
            else:
                block = SparseMatrix.zero(m.dims[nu], 0)
        space = cokernel_basis(block)
        if space.dim:
            h1.append(WeightLines(nu + report_shift, space,
                                  _line_labels(space, m.basis_labels[nu])))

    return CohomologyResult(direction, tuple(h0), tuple(h1), report_shift,
                            certificate, certified)


def kostant_check(k) -> bool:
    """Nilpotent-radical cohomology of the dual of the simple module: one line
    per Weyl-group element, at weights k and -(k+2)."""
    k = int(k)
    if k < 0 or k % 2:
        raise ValidationError(f"kostant_check expects an even k >= 0, got {k}")
    res = cohomology(n_finite_dual(simple(-k)), "n")
    return res.h0_dims() == {k: 1} and res.h1_dims() == {-(k + 2): 1}
