"""Cauchy contours, resolvent quadrature and Riesz spectral projections.

Circles use the periodic trapezoid rule (spectrally accurate for the
analytic resolvent); polygon edges use a composite trapezoid with a fixed
subdivision. Orientation +1 means the enclosed region lies to the left of
the traced curve; a clockwise piece with orientation -1 acts as a hole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances, within
from .errors import (
    AdmissibilityError,
    ContourSpectrumError,
    ConvergenceError,
    DomainError,
    HypothesisError,
    SingularMatrixError,
)
from .linalg import ComplexMatrix, eigenvalues, operator_norm, solve

__all__ = [
    "CirclePiece",
    "PolygonPiece",
    "CauchyContour",
    "ResolventCheck",
    "ProjectionReport",
    "contour_in_resolvent",
    "spectral_projection",
    "verify_projection",
    "nonzero_under_radius_perturbation",
    "projector_family_convergence",
]


@dataclass(frozen=True)
class CirclePiece:
    center: complex
    radius: float
    orientation: int = 1

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError("circle radius must be positive")
        if self.orientation not in (-1, 1):
            raise DomainError("orientation must be +1 or -1")

    def nodes_weights(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        th = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        unit = np.exp(1j * th)
        z = self.center + self.radius * unit
        w = self.orientation * (1j * self.radius * unit) * (2.0 * math.pi / n)
        return z, w

    def winding(self, z0: complex) -> int:
        return self.orientation if abs(z0 - self.center) < self.radius else 0

    def distance(self, z0: complex) -> float:
        return abs(abs(z0 - self.center) - self.radius)


@dataclass(frozen=True)
class PolygonPiece:
    vertices: tuple[complex, ...]
    orientation: int = 1

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise DomainError("polygon needs at least 3 vertices")
        if self.orientation not in (-1, 1):
            raise DomainError("orientation must be +1 or -1")

    def nodes_weights(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Composite trapezoid with n nodes per edge."""
        if n < 2:
            raise DomainError("need at least 2 nodes per edge")
        zs, ws = [], []
        verts = list(self.vertices) + [self.vertices[0]]
        for a, b in zip(verts[:-1], verts[1:]):
            t = np.linspace(0.0, 1.0, n)
            z = a + t * (b - a)
            w = np.full(n, (b - a) / (n - 1), dtype=complex)
            w[0] *= 0.5
            w[-1] *= 0.5
            zs.append(z)
            ws.append(self.orientation * w)
        return np.concatenate(zs), np.concatenate(ws)

    def winding(self, z0: complex) -> int:
        verts = list(self.vertices) + [self.vertices[0]]
        total = 0.0
        for a, b in zip(verts[:-1], verts[1:]):
            total += np.angle((b - z0) / (a - z0))
        return self.orientation * int(round(total / (2.0 * math.pi)))

    def distance(self, z0: complex) -> float:
        best = math.inf
        verts = list(self.vertices) + [self.vertices[0]]
        for a, b in zip(verts[:-1], verts[1:]):
            d = b - a
            t = ((z0 - a) * d.conjugate()).real / abs(d) ** 2
            t = min(max(t, 0.0), 1.0)
            best = min(best, abs(z0 - (a + t * d)))
        return best


Piece = CirclePiece | PolygonPiece


@dataclass(frozen=True)
class CauchyContour:
    """Oriented union of disjoint circle and polygon pieces plus node counts."""

    pieces: tuple[Piece, ...]
    nodes_per_piece: int = 128

    def __post_init__(self):
        if self.nodes_per_piece < 2:
            raise DomainError("nodes_per_piece must be >= 2")
        self._check_disjoint()

    def _check_disjoint(self):
        samples = [p.nodes_weights(64)[0] for p in self.pieces]
        for i in range(len(samples)):
            for j in range(i + 1, len(samples)):
                gap = np.abs(samples[i][:, None] - samples[j][None, :]).min()
                if gap <= 0:
                    raise DomainError("contour pieces must be pairwise disjoint")

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def nodes_weights(self) -> tuple[np.ndarray, np.ndarray]:
        if self.is_empty:
            return np.zeros(0, complex), np.zeros(0, complex)
        zs, ws = zip(*(p.nodes_weights(self.nodes_per_piece) for p in self.pieces))
        return np.concatenate(zs), np.concatenate(ws)

    def winding(self, z0: complex) -> int:
        return sum(p.winding(z0) for p in self.pieces)

    def distance(self, z0: complex) -> float:
        if self.is_empty:
            return math.inf
        return min(p.distance(z0) for p in self.pieces)

    def with_nodes(self, n: int) -> "CauchyContour":
        return CauchyContour(self.pieces, n)


@dataclass(frozen=True)
class ResolventCheck:
    ok: bool
    min_singular: float
    worst_node: complex | None
    margin: float


def contour_in_resolvent(
    a: ComplexMatrix, c: CauchyContour, margin: float
) -> ResolventCheck:
    """True iff min over quadrature nodes of s_min(a - z) is at least margin."""
    if not a.is_square:
        raise DomainError("contour_in_resolvent needs a square matrix")
    z, _w = c.nodes_weights()
    if z.size == 0:
        return ResolventCheck(True, math.inf, None, margin)
    m = a.array
    eye = np.eye(m.shape[0])
    worst = math.inf
    worst_node = None
    for zk in z:
        s = float(np.linalg.svd(m - zk * eye, compute_uv=False)[-1])
        if s < worst:
            worst, worst_node = s, complex(zk)
    return ResolventCheck(worst >= margin, worst, worst_node, margin)


@dataclass(frozen=True)
class ProjectionReport:
    """Riesz projection with its verification metadata.

    riesz_count is round(Re trace p); construction fails if the trace is not
    within projection_trace_tol of an integer, which flags quadrature
    failure rather than returning a degraded projection.
    """

    p: ComplexMatrix
    idempotency_defect: float
    commutation_defect: float
    riesz_count: int
    min_resolvent_margin: float
    trace_defect: float


def spectral_projection(
    a: ComplexMatrix,
    c: CauchyContour,
    tols: Tolerances = DEFAULT,
) -> ProjectionReport:
    """Contour integral -(1/2*pi*i) of the resolvent, with verification data.

    Refuses contours whose resolvent margin is below the admissibility floor
    rather than returning degraded output.
    """
    if not a.is_square:
        raise DomainError("spectral_projection needs a square matrix")
    n = a.rows
    norm_a = operator_norm(a) if n else 0.0
    floor = tols.admissibility_floor_rtol * max(norm_a, 1.0)
    check = contour_in_resolvent(a, c, floor)
    if not check.ok:
        raise AdmissibilityError(
            f"resolvent margin {check.min_singular:.3e} below floor {floor:.3e} "
            f"at node {check.worst_node}"
        )
    z, w = c.nodes_weights()
    acc = np.zeros((n, n), dtype=complex)
    eye = ComplexMatrix.identity(n)
    for zk, wk in zip(z, w):
        shifted = ComplexMatrix(a.array - zk * np.eye(n))
        try:
            res = solve(shifted, eye, tols=tols, point=complex(zk))
        except SingularMatrixError as exc:
            raise ContourSpectrumError(
                f"contour touches the spectrum at z={zk}", point=complex(zk)
            ) from exc
        acc += wk * res.array
    p_arr = -acc / (2.0j * math.pi)
    p = ComplexMatrix(p_arr)
    idem = operator_norm(ComplexMatrix(p_arr @ p_arr - p_arr)) if n else 0.0
    comm = operator_norm(ComplexMatrix(p_arr @ a.array - a.array @ p_arr)) if n else 0.0
    tr = complex(np.trace(p_arr)) if n else 0.0
    count = int(round(tr.real))
    trace_defect = abs(tr - count)
    if not within(trace_defect, tols.projection_trace_tol):
        raise ConvergenceError(
            f"projection trace {tr} is not near an integer "
            f"(defect {trace_defect:.3e}); refine the quadrature"
        )
    return ProjectionReport(p, idem, comm, count, check.min_singular, trace_defect)


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    idempotency_defect: float
    commutation_defect: float
    tol: float


def verify_projection(rep: ProjectionReport, tol: float) -> VerifyResult:
    """Pass iff both defects are within tol."""
    ok = within(rep.idempotency_defect, tol) and within(rep.commutation_defect, tol)
    return VerifyResult(ok, rep.idempotency_defect, rep.commutation_defect, tol)


@dataclass(frozen=True)
class PerturbationVerdict:
    applicable: bool
    certified_nonzero: bool
    spectral_radius: float
    reason: str


def nonzero_under_radius_perturbation(
    p: ComplexMatrix, q: ComplexMatrix, tols: Tolerances = DEFAULT
) -> PerturbationVerdict:
    """If p is a nonzero idempotent and r(p - q) < 1, certify q != 0."""
    if p.shape != q.shape:
        raise DomainError("p and q must have equal shapes")
    idem = operator_norm(p @ p - p) if p.rows else 0.0
    if not within(idem, tols.idempotency_tol):
        raise DomainError(f"p is not idempotent within tolerance ({idem:.3e})")
    p_norm = operator_norm(p) if p.rows else 0.0
    r = max((abs(v) for v in eigenvalues(p - q).values), default=0.0)
    if p_norm <= tols.idempotency_tol:
        return PerturbationVerdict(False, False, r, "p is zero")
    if r >= 1.0:
        return PerturbationVerdict(False, False, r, "spectral radius not below 1")
    return PerturbationVerdict(True, True, r, "r(p - q) < 1 forces q != 0")


@dataclass(frozen=True)
class FamilyProjectionRow:
    n: int
    admissible: bool
    defect_on_limit: float  # ||(p_n - p) p||
    defect_on_member: float  # ||(p_n - p) p_n||
    member_norm: float
    reason: str = ""


@dataclass(frozen=True)
class FamilyProjectionReport:
    rows: tuple[FamilyProjectionRow, ...]
    first_admissible: int | None
    limit_report: ProjectionReport


def projector_family_convergence(
    a: ComplexMatrix,
    members: Sequence[ComplexMatrix],
    c: CauchyContour,
    tols: Tolerances = DEFAULT,
) -> FamilyProjectionReport:
    """Riesz projections along a matrix family against the limit projection.

    Requires 0 strictly exterior to the contour. Members for which the
    contour is not resolvent-admissible are flagged, never skipped silently.
    first_admissible is the earliest index from which every later tested
    member is admissible.
    """
    if c.winding(0.0) != 0 or c.distance(0.0) <= 1e-12:
        raise HypothesisError("0 must lie strictly exterior to the contour")
    limit_rep = spectral_projection(a, c, tols=tols)
    p = limit_rep.p.array
    rows = []
    floor_scale = tols.admissibility_floor_rtol
    for i, an in enumerate(members, start=1):
        floor = floor_scale * max(operator_norm(an), 1.0)
        check = contour_in_resolvent(an, c, floor)
        if not check.ok:
            rows.append(
                FamilyProjectionRow(
                    i, False, math.nan, math.nan, operator_norm(an),
                    f"margin {check.min_singular:.3e} below floor at {check.worst_node}",
                )
            )
            continue
        rep_n = spectral_projection(an, c, tols=tols)
        diff = rep_n.p.array - p
        rows.append(
            FamilyProjectionRow(
                i,
                True,
                float(np.linalg.norm(diff @ p, 2)),
                float(np.linalg.norm(diff @ rep_n.p.array, 2)),
                float(np.linalg.norm(rep_n.p.array, 2)),
            )
        )
    first = None
    for i in range(len(rows), 0, -1):
        if not rows[i - 1].admissible:
            break
        first = i
    return FamilyProjectionReport(tuple(rows), first, limit_rep)
