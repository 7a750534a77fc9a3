"""Dense complex linear algebra on immutable matrices.

Eigenvalues, singular values and solves are delegated to LAPACK through
numpy/scipy (Hessenberg reduction plus shifted QR underneath), which meets
the backward-stability contract; the polar decomposition and PSD powers are
assembled here because their kernel conventions matter downstream.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .config import DEFAULT, Tolerances
from .errors import ConvergenceError, DomainError, ShapeError, SingularMatrixError

__all__ = [
    "ComplexMatrix",
    "EigenResult",
    "SvdResult",
    "matmul",
    "operator_norm",
    "eigenvalues",
    "svd",
    "solve",
    "polar_decompose",
    "psd_power",
]


class ComplexMatrix:
    """Immutable dense complex matrix, stored row-major.

    Entries must be finite; NaN or Inf anywhere is rejected at construction.
    All operations on matrices are pure functions, so values are safe to
    share across threads.
    """

    __slots__ = ("_a",)

    def __init__(self, data):
        a = np.array(data, dtype=np.complex128, order="C", copy=True)
        if a.ndim == 1:
            a = a.reshape(-1, 1)
        if a.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got ndim={a.ndim}")
        if a.size and not np.all(np.isfinite(a)):
            raise DomainError("matrix entries must be finite (no NaN/Inf)")
        a.setflags(write=False)
        self._a = a

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ComplexMatrix":
        return cls(np.zeros((rows, cols if cols is not None else rows)))

    @classmethod
    def diagonal(cls, entries: Iterable[complex]) -> "ComplexMatrix":
        return cls(np.diag(np.asarray(list(entries), dtype=np.complex128)))

    # -- basic structure -------------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        """Read-only ndarray view of the entries."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> complex:
        return complex(self._a[i, j])

    def adjoint(self) -> "ComplexMatrix":
        return ComplexMatrix(self._a.conj().T)

    @property
    def H(self) -> "ComplexMatrix":
        return self.adjoint()

    def trace(self) -> complex:
        if not self.is_square:
            raise ShapeError("trace needs a square matrix")
        return complex(np.trace(self._a))

    # -- arithmetic ------------------------------------------------------------

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return matmul(self, other)

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return ComplexMatrix(self._a + other._a)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return ComplexMatrix(self._a - other._a)

    def __mul__(self, scalar: complex) -> "ComplexMatrix":
        return ComplexMatrix(self._a * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexMatrix":
        return ComplexMatrix(-self._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"ComplexMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues with algebraic multiplicity plus a conditioning estimate.

    ``condition_estimate`` is the condition number of the eigenvector matrix;
    large values flag defective or nearly defective inputs.
    """

    values: tuple[complex, ...]
    condition_estimate: float

    def sorted_values(self) -> list[complex]:
        return sorted(self.values, key=lambda z: (z.real, z.imag))


@dataclass(frozen=True)
class SvdResult:
    """Factorisation a = left @ diag(values) @ right."""

    left: ComplexMatrix
    values: tuple[float, ...]
    right: ComplexMatrix


def _square(a: ComplexMatrix, what: str) -> np.ndarray:
    if not a.is_square:
        raise ShapeError(f"{what} needs a square matrix, got {a.shape}")
    return a.array


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product a @ b."""
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    return ComplexMatrix(a.array @ b.array)


def operator_norm(a: ComplexMatrix) -> float:
    """Largest singular value (the operator 2-norm)."""
    if a.rows == 0 or a.cols == 0:
        raise ShapeError("operator_norm needs a nonempty matrix")
    return float(np.linalg.norm(a.array, 2))


def eigenvalues(a: ComplexMatrix) -> EigenResult:
    """Eigenvalue multiset of a square matrix, backward stable."""
    m = _square(a, "eigenvalues")
    if m.shape[0] == 0:
        return EigenResult(values=(), condition_estimate=1.0)
    try:
        vals, vecs = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:  # QR iteration failed to settle
        raise ConvergenceError(f"eigenvalue iteration did not converge: {exc}") from exc
    with np.errstate(all="ignore"):
        cond = float(np.linalg.cond(vecs))
    if not np.isfinite(cond):
        cond = float("inf")
    return EigenResult(values=tuple(complex(v) for v in vals), condition_estimate=cond)


def svd(a: ComplexMatrix) -> SvdResult:
    """Thin SVD with nonincreasing singular values."""
    if a.rows == 0 or a.cols == 0:
        raise ShapeError("svd needs a nonempty matrix")
    u, s, vh = np.linalg.svd(a.array, full_matrices=False)
    return SvdResult(ComplexMatrix(u), tuple(float(x) for x in s), ComplexMatrix(vh))


def solve(
    a: ComplexMatrix,
    b: ComplexMatrix,
    tols: Tolerances = DEFAULT,
    point: complex | None = None,
) -> ComplexMatrix:
    """Solve a @ x = b by partially pivoted LU.

    Raises :class:`SingularMatrixError` when a pivot falls below
    ``pivot_rtol`` times the largest pivot; ``point`` tags the error with the
    resolvent parameter when the solve sits inside a contour integral.
    """
    m = _square(a, "solve")
    if b.rows != a.rows:
        raise ShapeError(f"rhs has {b.rows} rows, matrix has {a.rows}")
    if m.shape[0] == 0:
        return ComplexMatrix(np.zeros((0, b.cols)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    diag = np.abs(np.diag(lu))
    dmax = float(diag.max(initial=0.0))
    if dmax == 0.0 or float(diag.min()) <= tols.pivot_rtol * dmax:
        raise SingularMatrixError(
            "matrix is numerically singular (pivot below threshold)", point=point
        )
    x = scipy.linalg.lu_solve((lu, piv), b.array, check_finite=False)
    return ComplexMatrix(x)


def polar_decompose(
    a: ComplexMatrix, tols: Tolerances = DEFAULT
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Polar decomposition a = U |a| with the canonical partial isometry.

    |a| = (a* a)^(1/2). U is built from the SVD restricted to singular
    directions with s > rank_rtol * s_max, so its initial space is the range
    of |a| and kernel directions map to zero (N(a) = N(|a|) semantics).
    On invertible input U is unitary.
    """
    m = _square(a, "polar_decompose")
    if m.shape[0] == 0:
        z = ComplexMatrix(np.zeros((0, 0)))
        return z, z
    w, s, vh = np.linalg.svd(m)
    smax = float(s[0]) if s.size else 0.0
    keep = s > tols.rank_rtol * smax if smax > 0 else np.zeros_like(s, dtype=bool)
    u = w[:, keep] @ vh[keep, :]
    pos = (vh.conj().T * s) @ vh
    pos = 0.5 * (pos + pos.conj().T)
    return ComplexMatrix(u), ComplexMatrix(pos)


def psd_power(a: ComplexMatrix, p: float, tols: Tolerances = DEFAULT) -> ComplexMatrix:
    """Spectral power of a Hermitian PSD matrix: same eigenvectors, eigenvaluesp.

    Eigenvalues in [-tol, 0) are rounding noise and are clipped to 0 before
    powering; anything below -tol (or a non-Hermitian input) is a domain
    error.
    """
    m = _square(a, "psd_power")
    if p <= 0:
        raise DomainError("psd_power needs a positive exponent")
    if m.shape[0] == 0:
        return ComplexMatrix(np.zeros((0, 0)))
    scale = float(np.linalg.norm(m, 2))
    herm_defect = float(np.linalg.norm(m - m.conj().T, 2))
    if scale > 0 and herm_defect > tols.hermitian_rtol * scale:
        raise DomainError(
            f"matrix is not Hermitian within tolerance ({herm_defect:.3e} > "
            f"{tols.hermitian_rtol * scale:.3e})"
        )
    h = 0.5 * (m + m.conj().T)
    vals, vecs = np.linalg.eigh(h)
    floor = -tols.psd_clip_rtol * max(scale, 1e-300)
    if float(vals.min(initial=0.0)) < floor:
        raise DomainError(
            f"matrix is indefinite beyond tolerance (min eigenvalue {vals.min():.3e})"
        )
    clipped = np.clip(vals, 0.0, None)
    powered = (vecs * np.power(clipped, p)) @ vecs.conj().T
    return ComplexMatrix(0.5 * (powered + powered.conj().T))


def resolvent_min_singular(a: ComplexMatrix, z: complex) -> float:
    """Smallest singular value of (a - z), the reciprocal resolvent norm."""
    m = _square(a, "resolvent_min_singular")
    if m.shape[0] == 0:
        return float("inf")
    shifted = m - z * np.eye(m.shape[0])
    return float(np.linalg.svd(shifted, compute_uv=False)[-1])


def sorted_eigenvalues(a: ComplexMatrix) -> list[complex]:
    """Eigenvalues sorted by (real, imag), convenient for multiset compares."""
    return eigenvalues(a).sorted_values()
