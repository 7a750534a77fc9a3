"""p-hyponormality tests, Aluthge transforms and the kernel-split similarity.

Finite hyponormal matrices are normal (trace obstruction), so the matrix
checks here carry tolerance semantics and the genuinely non-normal cases
live at the model level (weight monotonicity for shifts). The similarity
construction conjugates the kernel-complement compression through a double
Aluthge transform, which fixes normal compressions and produces a
hyponormal one in general.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances, within
from .errors import DomainError, HypothesisError
from .linalg import (
    ComplexMatrix,
    eigenvalues,
    operator_norm,
    polar_decompose,
    psd_power,
    solve,
)
from .models import ConstantTail, GeometricTail, HarmonicTail, WeightedShiftModel
from .setlimits import PointCloud, hausdorff_distance

__all__ = [
    "HyponormalVerdict",
    "is_p_hyponormal",
    "aluthge",
    "SimilarityReport",
    "kernel_split_similarity",
    "resolvent_distance_identity",
    "shift_hyponormality",
    "adjoint_convergence_diagnostics",
]


@dataclass(frozen=True)
class HyponormalVerdict:
    passed: bool
    defect: float
    p: float
    tol: float


def is_p_hyponormal(
    a: ComplexMatrix, p: float, tol: float, tols: Tolerances = DEFAULT
) -> HyponormalVerdict:
    """Check (a* a)^p - (a a*)^p >= 0 up to tol.

    The defect is the negative part of the smallest eigenvalue of the
    difference, clipped at zero.
    """
    if not a.is_square:
        raise DomainError("hyponormality check needs a square matrix")
    if a.rows == 0:
        return HyponormalVerdict(True, 0.0, p, tol)
    gram_right = a.H @ a
    gram_left = a @ a.H
    diff = psd_power(gram_right, p, tols) - psd_power(gram_left, p, tols)
    h = 0.5 * (diff.array + diff.array.conj().T)
    lam_min = float(np.linalg.eigvalsh(h)[0])
    defect = max(0.0, -lam_min)
    return HyponormalVerdict(within(defect, tol), defect, p, tol)


def aluthge(a: ComplexMatrix, tols: Tolerances = DEFAULT) -> ComplexMatrix:
    """|a|^(1/2) U |a|^(1/2) from the polar decomposition a = U |a|."""
    if not a.is_square:
        raise DomainError("aluthge needs a square matrix")
    if a.rows == 0:
        return a
    u, pos = polar_decompose(a, tols)
    root = psd_power(pos, 0.5, tols)
    return root @ u @ root


@dataclass(frozen=True)
class SimilarityReport:
    """S = X T X^{-1} built from the kernel split of T.

    reconstruction_defect is ||S X - X T||; spectrum_distance is the
    Hausdorff distance between the eigenvalue sets of S and T, which
    similarity forces to zero.
    """

    x: ComplexMatrix
    s: ComplexMatrix
    reconstruction_defect: float
    spectrum_distance: float
    x_norm: float
    x_inv_norm: float
    x_min_singular: float
    kernel_dim: int


def kernel_split_similarity(
    t: ComplexMatrix, tols: Tolerances = DEFAULT
) -> SimilarityReport:
    """Split off N(t), double-Aluthge the complement compression B, and
    conjugate by X = I (+) |B^|^(1/2) |B|^(1/2).

    Preconditions: t has a tolerance-detected kernel (0 is an eigenvalue)
    and the compression B to the kernel complement is injective with |B|
    invertible; a singular B signals a rank-tolerance misconfiguration.
    """
    if not t.is_square:
        raise DomainError("similarity construction needs a square matrix")
    n = t.rows
    m = t.array
    if n == 0:
        raise DomainError("similarity construction needs a nonempty matrix")
    _w, svals, vh = np.linalg.svd(m)
    smax = float(svals[0])
    kernel_mask = svals <= tols.kernel_rtol * max(smax, 1e-300)
    k = int(kernel_mask.sum())
    if k == 0:
        raise HypothesisError("0 is not an eigenvalue of t (no kernel detected)")
    v = vh.conj().T
    q_kernel = v[:, kernel_mask]
    q_comp = v[:, ~kernel_mask]
    d = n - k

    if d == 0:
        x = ComplexMatrix.identity(n)
        s = ComplexMatrix.zeros(n, n)
        spec_dist = _spectrum_distance(s, t)
        return SimilarityReport(x, s, 0.0, spec_dist, 1.0, 1.0, 1.0, k)

    b = ComplexMatrix(q_comp.conj().T @ m @ q_comp)
    b_svals = np.linalg.svd(b.array, compute_uv=False)
    if float(b_svals[-1]) <= tols.kernel_rtol * max(smax, 1e-300):
        raise HypothesisError(
            "compression |B| is singular; kernel tolerance appears misconfigured"
        )
    b_hat = aluthge(b, tols)
    b_tilde = aluthge(b_hat, tols)
    _ub, pos_b = polar_decompose(b, tols)
    _uh, pos_hat = polar_decompose(b_hat, tols)
    x_comp = psd_power(pos_hat, 0.5, tols) @ psd_power(pos_b, 0.5, tols)

    x_arr = np.zeros((n, n), dtype=complex)
    x_arr += q_kernel @ q_kernel.conj().T
    x_arr += q_comp @ x_comp.array @ q_comp.conj().T
    s_arr = q_comp @ b_tilde.array @ q_comp.conj().T
    x = ComplexMatrix(x_arr)
    s = ComplexMatrix(s_arr)

    defect = operator_norm(s @ x - x @ t)
    spec_dist = _spectrum_distance(s, t)
    x_svals = np.linalg.svd(x_arr, compute_uv=False)
    x_inv_norm = 1.0 / float(x_svals[-1])
    return SimilarityReport(
        x,
        s,
        defect,
        spec_dist,
        float(x_svals[0]),
        x_inv_norm,
        float(x_svals[-1]),
        k,
    )


def _spectrum_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    ca = PointCloud(eigenvalues(a).values)
    cb = PointCloud(eigenvalues(b).values)
    return hausdorff_distance(ca, cb)


@dataclass(frozen=True)
class ResolventIdentityRow:
    lam: complex
    deviation: float
    skipped: bool


@dataclass(frozen=True)
class ResolventIdentityReport:
    applicable: bool
    hyponormal_defect: float
    rows: tuple[ResolventIdentityRow, ...]

    def max_deviation(self) -> float:
        vals = [r.deviation for r in self.rows if not r.skipped]
        return max(vals) if vals else 0.0


def resolvent_distance_identity(
    s: ComplexMatrix,
    lambdas: Sequence[complex],
    margin: float = 1e-6,
    hyponormal_tol: float = 1e-10,
    tols: Tolerances = DEFAULT,
) -> ResolventIdentityReport:
    """Deviation of ||(s - lam)^{-1}|| * d(lam, sigma(s)) from 1.

    For hyponormal (hence normal, in finite dimensions) matrices the
    deviation vanishes; if the hyponormality precondition fails the report
    is marked not applicable but deviations are still listed. Points within
    margin of the spectrum are skipped with a flag.
    """
    verdict = is_p_hyponormal(s, 1.0, hyponormal_tol, tols)
    eigs = np.asarray(eigenvalues(s).values, dtype=complex)
    rows = []
    n = s.rows
    eye = ComplexMatrix.identity(n)
    for lam in lambdas:
        d = float(np.abs(eigs - lam).min()) if eigs.size else math.inf
        if d <= margin:
            rows.append(ResolventIdentityRow(complex(lam), math.nan, True))
            continue
        shifted = ComplexMatrix(s.array - lam * np.eye(n))
        res = solve(shifted, eye, tols=tols)
        deviation = abs(operator_norm(res) * d - 1.0)
        rows.append(ResolventIdentityRow(complex(lam), deviation, False))
    return ResolventIdentityReport(verdict.passed, verdict.defect, tuple(rows))


@dataclass(frozen=True)
class ShiftHyponormalityVerdict:
    passed: bool
    first_violation: int | None
    reason: str


def shift_hyponormality(model: WeightedShiftModel) -> ShiftHyponormalityVerdict:
    """Operator-level criterion: a weighted shift is hyponormal iff its
    weight sequence is nondecreasing.

    Finite sections of shifts are never hyponormal, so this model-level
    check is the honest stand-in for the operator statement.
    """
    if not isinstance(model, WeightedShiftModel):
        raise DomainError("shift_hyponormality needs a weighted shift model")
    weights = list(model.prefix)
    p = len(weights)
    for i in range(1, p):
        if weights[i] < weights[i - 1]:
            return ShiftHyponormalityVerdict(
                False, i, f"prefix decreases at index {i}: {weights[i-1]} -> {weights[i]}"
            )
    tail = model.tail
    first_tail = model.weight(p + 1)
    if p and first_tail < weights[-1]:
        return ShiftHyponormalityVerdict(
            False, p, f"tail starts below prefix: {weights[-1]} -> {first_tail}"
        )
    if isinstance(tail, ConstantTail):
        return ShiftHyponormalityVerdict(True, None, "constant tail")
    if isinstance(tail, HarmonicTail):
        if tail.scale == 0:
            return ShiftHyponormalityVerdict(True, None, "zero tail")
        return ShiftHyponormalityVerdict(
            False, p + 1, "harmonic tail is strictly decreasing"
        )
    if tail.scale == 0:
        return ShiftHyponormalityVerdict(True, None, "zero tail")
    return ShiftHyponormalityVerdict(
        False, p + 1, "geometric tail is strictly decreasing"
    )


@dataclass(frozen=True)
class AdjointDiagnosticsRow:
    n: int
    limit_adjoint_norm: float  # ||T* (T_n - T)||
    member_adjoint_norm: float  # ||T_n* (T_n - T)||


def adjoint_convergence_diagnostics(
    limit: ComplexMatrix, members: Sequence[ComplexMatrix]
) -> list[AdjointDiagnosticsRow]:
    """The two adjoint-side diagnostics ||T*(T_n - T)|| and ||T_n*(T_n - T)||.

    These feed the alternative hypothesis set for the similarity theorem;
    the downstream inference through |T_n|^(1/2) convergence is not drawn
    here, only the quantities are reported.
    """
    rows = []
    for i, tn in enumerate(members, start=1):
        diff = tn - limit
        rows.append(
            AdjointDiagnosticsRow(
                i,
                operator_norm(limit.H @ diff),
                operator_norm(tn.H @ diff),
            )
        )
    return rows
