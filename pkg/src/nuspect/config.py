"""Numerical tolerances and the shared comparator.

Every numerical pass/fail decision in the library routes through
:func:`within` so that a tolerance is always an explicit, configurable
value rather than an inline literal.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # Singular values below rank_rtol * s_max count as zero (rank decisions,
    # polar partial isometries).
    rank_rtol: float = 1e-12
    # Kernel detection threshold for the similarity split.
    kernel_rtol: float = 1e-10
    # LU pivots below pivot_rtol * max_pivot flag a singular solve.
    pivot_rtol: float = 1e-14
    # Hermitian / PSD input checks, relative to the operator norm.
    hermitian_rtol: float = 1e-10
    psd_clip_rtol: float = 1e-10
    # Spectral projection: |trace p - round(trace p)| must stay below this.
    # Sized for the O(h^2) polygon trapezoid at default node counts; circle
    # quadrature is exponentially accurate and sits far below it.
    projection_trace_tol: float = 1e-4
    # Contours are refused when min s_min(a - z) < floor_rtol * ||a||.
    admissibility_floor_rtol: float = 1e-6
    # Idempotency check for the nonzero-under-perturbation verdict.
    idempotency_tol: float = 1e-8
    # Commutator norm below which a matrix family counts as commuting.
    commuting_tol: float = 1e-12
    # Fraction of tail indices a candidate must meet to count as recurring
    # "infinitely often" in the limsup estimator.
    limsup_frequency: float = 0.5

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with every relative tolerance multiplied by factor."""
        return replace(
            self,
            rank_rtol=self.rank_rtol * factor,
            kernel_rtol=self.kernel_rtol * factor,
            pivot_rtol=self.pivot_rtol * factor,
            hermitian_rtol=self.hermitian_rtol * factor,
            psd_clip_rtol=self.psd_clip_rtol * factor,
            projection_trace_tol=self.projection_trace_tol * factor,
            admissibility_floor_rtol=self.admissibility_floor_rtol * factor,
            idempotency_tol=self.idempotency_tol * factor,
            commuting_tol=self.commuting_tol * factor,
        )


DEFAULT = Tolerances()


def within(value: float, bound: float) -> bool:
    """Single comparator for defect-vs-tolerance decisions: value <= bound."""
    return value <= bound
