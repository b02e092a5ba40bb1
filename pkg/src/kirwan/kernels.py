"""Kernel of the reduction map, computed two independent ways, plus the
constructive decomposition that exhibits their agreement.

The pairing of two classes is the sum, over fixed points above the cut, of
the X^-1 coefficient of (eta * zeta)|_F divided by the tangent Euler class
at F.  A degree-d class is in the kernel exactly when it pairs to zero with
the whole complementary degree 2n-2-d; restricting the test set to that one
degree is exact, not an approximation, since homogeneous classes of any other
degree pair to zero identically.  The second characterization is the direct
sum of the classes vanishing above the cut and those vanishing below it; the
two kernels agree on every valid datum, and `kernels_equal` treats any
disagreement as a diagnosable data error.

Residues here are literal X^-1 coefficients; no global orientation constant
is applied.  Kernels and Betti numbers are unaffected by that convention
(scaling a pairing matrix by a nonzero constant preserves its nullspace).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import (
    EquivariantClass,
    Subspace,
    add_classes,
    basis_points,
    class_to_dict,
    degree_basis,
    restrict,
    scale_class,
    subspace_classes,
    subspace_contains,
    subspace_scalar_rows,
    subspace_sum,
    zero_class,
)
from .errors import (
    InternalContradiction,
    MissingAlphaPlus,
    NotInImage,
    NotInKernel,
)
from .exactmath import (
    MatrixQ,
    Poly,
    nullspace,
    rat_str,
    residue_at_zero,
    solve_upper_triangular,
)
from .momentdata import (
    CutLevel,
    FixedPoint,
    ManifoldData,
    euler_class,
    morse_index,
    split_fixed_points,
)

__all__ = [
    "PairingMatrix",
    "KernelReport",
    "BMatrixReport",
    "DecompositionCertificate",
    "pairing",
    "pairing_matrix",
    "kernel_residue",
    "kernel_tw",
    "kernels_equal",
    "b_matrix",
    "decompose",
    "report_to_dict",
    "certificate_to_dict",
    "bmatrix_to_dict",
    "pairing_to_dict",
]

SIGN_CONVENTION = (
    "residues are literal X^-1 coefficients; no global orientation constant applied"
)


def pairing(
    m: ManifoldData, eta: EquivariantClass, zeta: EquivariantClass, cut: CutLevel
) -> Fraction:
    """Reduced-space intersection pairing of eta and zeta at the cut.

    Nonzero only when the degrees add to 2n - 2: at each fixed point the
    summand is a monomial over eps * X^n, whose expansion has an X^-1 term
    exactly in that degree.
    """
    plus, _ = split_fixed_points(m, cut)
    k = (eta.degree + zeta.degree) // 2
    total = Fraction(0)
    for fp in plus:
        scalar = eta.restrictions[fp.name] * zeta.restrictions[fp.name]
        eps, n = euler_class(fp)
        total += residue_at_zero(Poly.monomial(k, scalar), eps, n)
    return total


@dataclass(frozen=True)
class PairingMatrix:
    """Pairing values between the degree-d basis (rows) and the complementary
    degree-(2n-2-d) basis (columns)."""

    cut: CutLevel
    degree: int
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    matrix: MatrixQ


def pairing_matrix(m: ManifoldData, cut: CutLevel, degree: int) -> PairingMatrix:
    """All pairings between the degree basis and its complementary basis.

    The column set is empty when 2n - 2 - d is negative.
    """
    rows = degree_basis(m, degree)
    row_pts = basis_points(m, degree)
    co_degree = 2 * m.n - 2 - degree
    cols = degree_basis(m, co_degree)
    col_pts = basis_points(m, co_degree)
    entries = [
        [pairing(m, eta, zeta, cut) for zeta in cols] for eta in rows
    ]
    return PairingMatrix(
        cut=cut,
        degree=degree,
        row_labels=tuple(fp.name for fp in row_pts),
        col_labels=tuple(fp.name for fp in col_pts),
        matrix=MatrixQ.from_rows(entries, cols=len(cols)),
    )


def kernel_residue(m: ManifoldData, cut: CutLevel, degree: int) -> Subspace:
    """Degree-d classes pairing to zero against the whole complementary basis."""
    pm = pairing_matrix(m, cut, degree)
    basis = nullspace(pm.matrix.transpose())
    return Subspace(degree, pm.row_labels, basis)


def _evaluation_kernel(
    m: ManifoldData, degree: int, points: Sequence[FixedPoint]
) -> Subspace:
    basis = degree_basis(m, degree)
    labels = tuple(fp.name for fp in basis_points(m, degree))
    rows = [[restrict(cls, fp) for cls in basis] for fp in points]
    eva = MatrixQ.from_rows(rows, cols=len(basis))
    return Subspace(degree, labels, nullspace(eva))


def kernel_tw(
    m: ManifoldData, cut: CutLevel, degree: int
) -> tuple[Subspace, Subspace, Subspace]:
    """(vanishing above the cut, vanishing below it, their sum)."""
    plus, minus = split_fixed_points(m, cut)
    tw_plus = _evaluation_kernel(m, degree, plus)
    tw_minus = _evaluation_kernel(m, degree, minus)
    return tw_plus, tw_minus, subspace_sum(tw_plus, tw_minus)


@dataclass(frozen=True)
class KernelReport:
    """Both kernel descriptions in one degree, their comparison, and the
    resulting Betti number of the reduced space."""

    cut: CutLevel
    degree: int
    residue_kernel: Subspace
    tw_plus: Subspace
    tw_minus: Subspace
    tw_sum: Subspace
    equal: bool
    betti: int
    witness: EquivariantClass | None = None


def _find_witness(
    m: ManifoldData, a: Subspace, b: Subspace
) -> EquivariantClass | None:
    """A class in one subspace but not the other, expanded to restrictions."""
    for first, second in ((a, b), (b, a)):
        for i in range(first.basis.rows):
            row = list(first.basis.row(i))
            if not subspace_contains(second, row):
                return subspace_classes(m, first)[i]
    return None


def kernels_equal(m: ManifoldData, cut: CutLevel, degree: int) -> KernelReport:
    """Compute both kernels and compare their canonical bases.

    On valid data `equal` is always True; a False value comes with a witness
    class and means the restriction tables are inconsistent (or the library
    has a bug), never a mathematical possibility.
    """
    residue = kernel_residue(m, cut, degree)
    tw_plus, tw_minus, tw_sum = kernel_tw(m, cut, degree)
    equal = residue == tw_sum
    betti = len(residue.labels) - residue.dim
    return KernelReport(
        cut=cut,
        degree=degree,
        residue_kernel=residue,
        tw_plus=tw_plus,
        tw_minus=tw_minus,
        tw_sum=tw_sum,
        equal=equal,
        betti=betti,
        witness=None if equal else _find_witness(m, residue, tw_sum),
    )


@dataclass(frozen=True)
class BMatrixReport:
    """Upward-restriction matrix over the high-index points above the cut.

    Rows and columns are ordered by DESCENDING (moment, name): the support
    condition kills entries at strictly higher moments, which in this order
    is exactly the strict lower triangle.  `m_exponents` records, per row
    point, the X power that makes the test class land in degree 2n - 2.
    """

    cut: CutLevel
    degree: int
    labels: tuple[str, ...]
    matrix: MatrixQ
    m_exponents: tuple[int, ...]
    upper_triangular: bool
    diagonal_nonzero: bool
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.upper_triangular and self.diagonal_nonzero


def b_matrix(m: ManifoldData, cut: CutLevel, degree: int) -> BMatrixReport:
    """Restriction scalars of upward classes among points above the cut with
    index >= degree + 2, with the triangularity diagnostics."""
    if m.alpha_plus is None:
        raise MissingAlphaPlus(f"{m.name!r} carries no alpha_plus table")
    plus, _ = split_fixed_points(m, cut)
    pts = [fp for fp in plus if morse_index(fp) >= degree + 2]
    pts.sort(key=lambda fp: (-fp.moment, fp.name))
    entries = [
        [m.alpha_plus_scalar(f.name, g.name) for g in pts] for f in pts
    ]
    mat = MatrixQ.from_rows(entries, cols=len(pts))
    violations: list[str] = []
    for i in range(len(pts)):
        for j in range(i):
            if mat.entry(i, j) != 0:
                violations.append(
                    f"entry ({pts[i].name}, {pts[j].name}) = "
                    f"{rat_str(mat.entry(i, j))} breaks upper triangularity"
                )
    diag_ok = True
    for i in range(len(pts)):
        if mat.entry(i, i) == 0:
            diag_ok = False
            violations.append(f"diagonal entry at {pts[i].name} is zero")
    return BMatrixReport(
        cut=cut,
        degree=degree,
        labels=tuple(fp.name for fp in pts),
        matrix=mat,
        m_exponents=tuple((morse_index(fp) - degree - 2) // 2 for fp in pts),
        upper_triangular=not any("triangularity" in v for v in violations),
        diagonal_nonzero=diag_ok,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class DecompositionCertificate:
    """Outcome of splitting a kernel class into pieces vanishing above and
    below the cut, with every coefficient that produced it."""

    input: EquivariantClass
    cut: CutLevel
    coefficients: dict[str, Fraction]
    corrections: dict[str, Fraction]
    eta_plus: EquivariantClass
    eta_minus: EquivariantClass
    b_exhibit: BMatrixReport | None


def _solve_basis_coefficients(
    m: ManifoldData, eta: EquivariantClass
) -> dict[str, Fraction]:
    """Coefficients of eta over the degree basis, or NotInImage.

    The restriction of the basis class of F at G vanishes unless G sits
    weakly above F, so in descending (moment, name) order the square system
    over the basis points is upper triangular with the negative-weight
    products on the diagonal.  Solving it and then checking the remaining
    fixed points decides membership exactly.
    """
    pts = basis_points(m, eta.degree)
    if not pts:
        if eta.is_zero():
            return {}
        raise NotInImage(
            f"degree {eta.degree} has an empty basis but the class is nonzero"
        )
    desc = list(reversed(pts))
    system = MatrixQ.from_rows(
        [
            [m.alpha_minus_scalar(f.name, g.name) for f in desc]
            for g in desc
        ],
        cols=len(desc),
    )
    rhs = [eta.restrictions[g.name] for g in desc]
    solution = solve_upper_triangular(system, rhs)
    coeffs = {f.name: c for f, c in zip(desc, solution)}
    # the triangular solve pinned the basis points; membership needs the rest
    for g in m.fixed_points:
        rebuilt = sum(
            (coeffs[f.name] * m.alpha_minus_scalar(f.name, g.name) for f in pts),
            Fraction(0),
        )
        if rebuilt != eta.restrictions[g.name]:
            raise NotInImage(
                f"restriction at {g.name} is {rat_str(eta.restrictions[g.name])} "
                f"but the basis span forces {rat_str(rebuilt)}"
            )
    return {f.name: coeffs[f.name] for f in pts}


def decompose(
    m: ManifoldData, eta: EquivariantClass, cut: CutLevel
) -> DecompositionCertificate:
    """Split a kernel class as eta_plus + eta_minus with eta_minus vanishing
    at every point above the cut and eta_plus at every point below it.

    Steps: (1) solve the triangular system for the basis coefficients of eta
    (NotInImage when it is not in the degree span); (2) verify the residue
    pairings against the complementary basis vanish (NotInKernel otherwise);
    (3) group basis terms by side of the cut, then zero the low-index above-
    cut restrictions of the minus part by induction up the moment values,
    moving each correction term into the plus part; (4) the remaining above-
    cut restrictions of the minus part vanish automatically for kernel
    classes, and the plus part vanishes below the cut because downward
    classes of above-cut points are supported above the cut.  Step 4 is
    asserted and raises InternalContradiction on inconsistent data.
    """
    plus, minus = split_fixed_points(m, cut)
    coeffs = _solve_basis_coefficients(m, eta)

    co_degree = 2 * m.n - 2 - eta.degree
    for zeta, fp in zip(degree_basis(m, co_degree), basis_points(m, co_degree)):
        value = pairing(m, eta, zeta, cut)
        if value != 0:
            raise NotInKernel(
                f"pairing against the basis class of {fp.name} in degree "
                f"{co_degree} is {rat_str(value)}, not zero"
            )

    pts = basis_points(m, eta.degree)
    classes = dict(zip([fp.name for fp in pts], degree_basis(m, eta.degree)))
    plus_names = {fp.name for fp in plus}

    eta_minus = zero_class(m, eta.degree)
    eta_plus = zero_class(m, eta.degree)
    for fp in pts:
        term = scale_class(classes[fp.name], coeffs[fp.name])
        if fp.name in plus_names:
            eta_plus = add_classes(eta_plus, term)
        else:
            eta_minus = add_classes(eta_minus, term)

    corrections: dict[str, Fraction] = {}
    for fp in pts:
        # induction upward through the above-cut points of index <= degree
        if fp.name not in plus_names:
            continue
        residual = eta_minus.restrictions[fp.name]
        b = residual / m.alpha_minus_scalar(fp.name, fp.name)
        corrections[fp.name] = b
        if b != 0:
            term = scale_class(classes[fp.name], b)
            eta_minus = add_classes(eta_minus, scale_class(term, -1))
            eta_plus = add_classes(eta_plus, term)

    for fp in plus:
        if eta_minus.restrictions[fp.name] != 0:
            raise InternalContradiction(
                f"minus part still restricts to "
                f"{rat_str(eta_minus.restrictions[fp.name])} at {fp.name}; "
                "the restriction tables are inconsistent"
            )
    for fp in minus:
        if eta_plus.restrictions[fp.name] != 0:
            raise InternalContradiction(
                f"plus part restricts to "
                f"{rat_str(eta_plus.restrictions[fp.name])} at {fp.name}; "
                "the restriction tables are inconsistent"
            )
    if add_classes(eta_plus, eta_minus) != eta:
        raise InternalContradiction("decomposition does not reassemble the input")

    return DecompositionCertificate(
        input=eta,
        cut=cut,
        coefficients=coeffs,
        corrections=corrections,
        eta_plus=eta_plus,
        eta_minus=eta_minus,
        b_exhibit=b_matrix(m, cut, eta.degree) if m.has_alpha_plus else None,
    )


# --- serialization -------------------------------------------------------------


def _subspace_to_dict(m: ManifoldData, s: Subspace) -> dict:
    return {
        "degree": s.degree,
        "labels": list(s.labels),
        "dimension": s.dim,
        "coefficient_rows": [
            [rat_str(e) for e in s.basis.row(i)] for i in range(s.basis.rows)
        ],
        "restriction_rows": [
            [rat_str(e) for e in row] for row in subspace_scalar_rows(m, s)
        ],
    }


def report_to_dict(m: ManifoldData, report: KernelReport) -> dict:
    out = {
        "cut": rat_str(report.cut.c),
        "degree": report.degree,
        "residue_kernel": _subspace_to_dict(m, report.residue_kernel),
        "tw_plus": _subspace_to_dict(m, report.tw_plus),
        "tw_minus": _subspace_to_dict(m, report.tw_minus),
        "tw_sum": _subspace_to_dict(m, report.tw_sum),
        "equal": report.equal,
        "betti": report.betti,
    }
    if report.witness is not None:
        out["witness"] = class_to_dict(m, report.witness)
    return out


def bmatrix_to_dict(report: BMatrixReport) -> dict:
    return {
        "cut": rat_str(report.cut.c),
        "degree": report.degree,
        "labels": list(report.labels),
        "rows": [
            [rat_str(e) for e in report.matrix.row(i)]
            for i in range(report.matrix.rows)
        ],
        "m_exponents": list(report.m_exponents),
        "upper_triangular": report.upper_triangular,
        "diagonal_nonzero": report.diagonal_nonzero,
        "violations": list(report.violations),
    }


def certificate_to_dict(m: ManifoldData, cert: DecompositionCertificate) -> dict:
    return {
        "cut": rat_str(cert.cut.c),
        "input": class_to_dict(m, cert.input),
        "coefficients": {k: rat_str(v) for k, v in cert.coefficients.items()},
        "corrections": {k: rat_str(v) for k, v in cert.corrections.items()},
        "eta_plus": class_to_dict(m, cert.eta_plus),
        "eta_minus": class_to_dict(m, cert.eta_minus),
        "b_matrix": None if cert.b_exhibit is None else bmatrix_to_dict(cert.b_exhibit),
    }


def pairing_to_dict(pm: PairingMatrix) -> dict:
    return {
        "cut": rat_str(pm.cut.c),
        "degree": pm.degree,
        "row_labels": list(pm.row_labels),
        "col_labels": list(pm.col_labels),
        "entries": [
            [rat_str(e) for e in pm.matrix.row(i)] for i in range(pm.matrix.rows)
        ],
        "convention": SIGN_CONVENTION,
    }
