"""Convergence diagnostics for operator sequences and one checker per
spectral-continuity statement, each yielding a quantitative verdict.

A sequence is nu-convergent when its norms stay bounded while
||(T_n - T) T|| and ||(T_n - T) T_n|| tend to zero; this is weaker than
norm convergence and does not determine the limit uniquely. Checkers gate
on hypotheses they can certify per model class and report
``hypothesis-unmet`` otherwise, never a silent pass. Limits over a finite
window are judged by a tail maximum below tolerance together with a
monotone-trend guard (last tail value not above the first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT, Tolerances, within
from .errors import DomainError, HypothesisError, NuspectError
from .linalg import ComplexMatrix, eigenvalues, operator_norm
from .models import (
    ConstantTail,
    DiagonalModel,
    FiniteMatrixModel,
    GeometricTail,
    HarmonicTail,
    NormEnclosure,
    OperatorModel,
    PerturbedModel,
    ToeplitzModel,
    TruncationSpec,
    WeightedShiftModel,
    compose_difference_product,
    difference_norm,
    model_norm,
    symbol_curve,
)
from .setlimits import (
    CloudSequence,
    PointCloud,
    cluster_components,
    directed_distance,
    hausdorff_distance,
    liminf_estimate,
    limsup_estimate,
)
from . import spectra

__all__ = [
    "OperatorSequence",
    "NuDiagnostics",
    "nu_diagnostics",
    "Classification",
    "classify_convergence",
    "nu_nonuniqueness_demo",
    "CheckReport",
    "check_upper_semicontinuity",
    "check_commuting_case",
    "check_component_persistence",
    "check_ap_limsup",
    "check_ap_continuity",
    "check_index_continuity",
    "check_weyl_continuity_essg1",
    "check_riesz_liminf",
    "check_iso_liminf",
    "check_spectrum_convergence",
]

PASS, FAIL, UNMET = "pass", "fail", "hypothesis-unmet"


@dataclass(frozen=True)
class OperatorSequence:
    """A limit model with an indexed family rule over n_first..n_last."""

    limit: OperatorModel
    members: Callable[[int], OperatorModel]
    n_first: int = 1
    n_last: int = 64

    def __post_init__(self):
        if self.n_first < 1 or self.n_last < self.n_first:
            raise DomainError("need 1 <= n_first <= n_last")
        first = self.members(self.n_first)
        if isinstance(self.limit, FiniteMatrixModel) != isinstance(
            first, FiniteMatrixModel
        ):
            raise DomainError("members must share the ambient space of the limit")
        if isinstance(self.limit, FiniteMatrixModel) and isinstance(
            first, FiniteMatrixModel
        ):
            if self.limit.matrix.shape != first.matrix.shape:
                raise DomainError("finite members must match the limit dimension")

    def indices(self) -> range:
        return range(self.n_first, self.n_last + 1)

    def member(self, n: int) -> OperatorModel:
        return self.members(n)

    def __len__(self) -> int:
        return self.n_last - self.n_first + 1


@dataclass(frozen=True)
class NuDiagnostics:
    """Per-index convergence quantities, each a certified enclosure."""

    indices: tuple[int, ...]
    member_norm: tuple[NormEnclosure, ...]
    diff_norm: tuple[NormEnclosure, ...]  # ||T_n - T||
    nu1: tuple[NormEnclosure, ...]  # ||(T_n - T) T||
    nu2: tuple[NormEnclosure, ...]  # ||(T_n - T) T_n||
    limit_norm: NormEnclosure

    def rows(self) -> list[dict]:
        out = []
        for i, n in enumerate(self.indices):
            out.append(
                {
                    "n": n,
                    "member_norm": self.member_norm[i].upper,
                    "diff_norm": self.diff_norm[i].upper,
                    "nu1": self.nu1[i].upper,
                    "nu2": self.nu2[i].upper,
                }
            )
        return out

    def rows_as_trace(self) -> list[dict]:
        out = []
        for i, n in enumerate(self.indices):
            for key, seq in (
                ("diff_norm", self.diff_norm),
                ("nu1", self.nu1),
                ("nu2", self.nu2),
            ):
                out.append({"n": n, "quantity": key, "value": seq[i].upper})
        return out


def _as_matrix(model: OperatorModel) -> ComplexMatrix | None:
    return model.matrix if isinstance(model, FiniteMatrixModel) else None


def nu_diagnostics(seq: OperatorSequence, section: int = 192) -> NuDiagnostics:
    """Table of norms, difference norms and the two nu-products per index.

    Matrix families are computed densely (exact); model families go through
    the certified band enclosures.
    """
    t = seq.limit
    t_mat = _as_matrix(t)
    idx, mn, dn, n1, n2 = [], [], [], [], []
    for n in seq.indices():
        tn = seq.member(n)
        tn_mat = _as_matrix(tn)
        if t_mat is not None and tn_mat is not None:
            diff = tn_mat - t_mat
            mn.append(NormEnclosure.exact(operator_norm(tn_mat)))
            dn.append(NormEnclosure.exact(operator_norm(diff)))
            n1.append(NormEnclosure.exact(operator_norm(diff @ t_mat)))
            n2.append(NormEnclosure.exact(operator_norm(diff @ tn_mat)))
        else:
            mn.append(model_norm(tn))
            dn.append(difference_norm(tn, t, section))
            n1.append(compose_difference_product(tn, t, t, section))
            n2.append(compose_difference_product(tn, t, tn, section))
        idx.append(n)
    limit_norm = (
        NormEnclosure.exact(operator_norm(t_mat)) if t_mat is not None else model_norm(t)
    )
    return NuDiagnostics(tuple(idx), tuple(mn), tuple(dn), tuple(n1), tuple(n2), limit_norm)


@dataclass(frozen=True)
class Classification:
    kind: str  # "norm-convergent" | "nu-only" | "not-nu"
    tol: float
    window: tuple[int, int]
    max_member_norm: float

    @property
    def is_nu(self) -> bool:
        return self.kind in ("norm-convergent", "nu-only")


def _tail_ok(values: Sequence[float], tol: float) -> bool:
    return within(max(values), tol) and values[-1] <= values[0]


def classify_convergence(
    diag: NuDiagnostics, tol: float, tail: int = 16
) -> Classification:
    """norm-convergent / nu-only / not-nu over a tail window.

    Tail maxima must sit below tol and must not trend upward across the
    window (last <= first).
    """
    n = len(diag.indices)
    tail = min(tail, n)
    if tail < 5:
        raise DomainError("classification needs at least 5 tail indices")
    lo = n - tail
    window = (diag.indices[lo], diag.indices[-1])
    diffs = [e.upper for e in diag.diff_norm[lo:]]
    nu1s = [e.upper for e in diag.nu1[lo:]]
    nu2s = [e.upper for e in diag.nu2[lo:]]
    sup_norm = max(e.upper for e in diag.member_norm)
    if _tail_ok(diffs, tol):
        return Classification("norm-convergent", tol, window, sup_norm)
    if _tail_ok(nu1s, tol) and _tail_ok(nu2s, tol) and math.isfinite(sup_norm):
        return Classification("nu-only", tol, window, sup_norm)
    return Classification("not-nu", tol, window, sup_norm)


@dataclass(frozen=True)
class NonUniquenessReport:
    """The zero sequence nu-converges to two distinct limits."""

    limit_a: ComplexMatrix
    limit_b: ComplexMatrix
    nu1_a: float
    nu2_a: float
    nu1_b: float
    nu2_b: float
    member_norm: float
    limits_gap: float
    both_pass: bool


def nu_nonuniqueness_demo(
    second_limit: ComplexMatrix | None = None,
) -> NonUniquenessReport:
    """x_n = 0 nu-converges to 0 and to any square-zero matrix y, yet the
    limits differ; with invertible y the second verdict fails, matching the
    right-invertibility rigidity.
    """
    y = second_limit if second_limit is not None else ComplexMatrix([[0, 1], [0, 0]])
    if not y.is_square:
        raise DomainError("second limit must be square")
    zero = ComplexMatrix.zeros(y.rows, y.cols)
    # member x_n = 0 for every n; all quantities are n-independent
    nu1_a = operator_norm((zero - zero) @ zero) if y.rows else 0.0
    nu2_a = nu1_a
    diff_b = zero - y
    nu1_b = operator_norm(diff_b @ y)
    nu2_b = operator_norm(diff_b @ zero)
    gap = operator_norm(zero - y)
    both = nu1_a == 0.0 and nu2_a == 0.0 and nu1_b == 0.0 and nu2_b == 0.0
    return NonUniquenessReport(zero, y, nu1_a, nu2_a, nu1_b, nu2_b, 0.0, gap, both)


# -- checker scaffolding --------------------------------------------------------


@dataclass
class CheckReport:
    """Verdict plus per-index trace rows, serializable as a JSON fragment."""

    checker: str
    verdict: str
    trace: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fragment(self) -> dict:
        return {
            "checker": self.checker,
            "verdict": self.verdict,
            "trace": self.trace,
            "details": self.details,
        }


def _classify_gate(
    seq: OperatorSequence, tol: float, tail: int, section: int = 96
) -> tuple[Classification, NuDiagnostics]:
    # Gates only consume the upper bounds of the enclosures, so a small
    # section suffices (it loosens the lower bounds only).
    diag = nu_diagnostics(seq, section)
    cls = classify_convergence(diag, tol, tail)
    return cls, diag


def _spectrum_clouds(
    seq: OperatorSequence, spectrum_fn: Callable[[OperatorModel], PointCloud]
) -> tuple[PointCloud, list[PointCloud]]:
    return spectrum_fn(seq.limit), [spectrum_fn(seq.member(n)) for n in seq.indices()]


def check_upper_semicontinuity(
    seq: OperatorSequence,
    spectrum_fn: Callable[[OperatorModel], PointCloud] | None = None,
    tol: float = 0.05,
    classify_tol: float = 1e-6,
    tail: int = 16,
) -> CheckReport:
    """Directed distance sigma(T_n) -> sigma(T) must fall below tol on the
    tail: the finite shadow of limsup sigma(T_n) inside sigma(T)."""
    name = "upper-semicontinuity"
    spectrum_fn = spectrum_fn or spectra.spectrum
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(
            name, UNMET, details={"reason": "family is not nu-convergent", "class": cls.kind}
        )
    limit_cloud, member_clouds = _spectrum_clouds(seq, spectrum_fn)
    trace = []
    dists = []
    for n, cloud in zip(seq.indices(), member_clouds):
        d = directed_distance(cloud, limit_cloud)
        dists.append(d)
        trace.append({"n": n, "quantity": "directed_distance", "value": d})
    tail_n = min(tail, len(dists))
    ok = _tail_ok(dists[-tail_n:], tol)
    return CheckReport(
        name,
        PASS if ok else FAIL,
        trace,
        {"classification": cls.kind, "tol": tol, "window": list(cls.window)},
    )


def _zero_accumulation_certificate(model: OperatorModel) -> str | None:
    """Reason string when 0 is certifiably an accumulation point of sigma."""
    if isinstance(model, DiagonalModel):
        t = model.tail
        if isinstance(t, HarmonicTail) and t.scale != 0:
            return "harmonic diagonal tail accumulates at 0"
        if isinstance(t, GeometricTail) and t.scale != 0:
            return "geometric diagonal tail accumulates at 0"
    return None


def _commuting_certificate(seq: OperatorSequence, tols: Tolerances) -> str | None:
    models = [seq.limit] + [seq.member(n) for n in seq.indices()]
    if all(isinstance(m, DiagonalModel) for m in models):
        return "diagonal model class commutes"
    mats = [_as_matrix(m) for m in models]
    if all(m is not None for m in mats):
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                comm = operator_norm(mats[i] @ mats[j] - mats[j] @ mats[i])
                if not within(comm, tols.commuting_tol):
                    return None
        return "pairwise commutator norms below tolerance"
    return None


def check_commuting_case(
    seq: OperatorSequence,
    tol: float = 1e-6,
    classify_tol: float = 0.05,
    tail: int = 16,
    tols: Tolerances = DEFAULT,
) -> CheckReport:
    """Full Hausdorff convergence of spectra for commuting nu-families whose
    limit has 0 as an accumulation point of its spectrum."""
    name = "commuting-spectra"
    commute = _commuting_certificate(seq, tols)
    if commute is None:
        return CheckReport(name, UNMET, details={"reason": "commutation not certified"})
    acc = _zero_accumulation_certificate(seq.limit)
    if acc is None:
        return CheckReport(
            name,
            UNMET,
            details={
                "reason": "0 in acc sigma(T) not certified "
                "(finite spectra have no accumulation points)"
            },
        )
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(name, UNMET, details={"reason": "family is not nu-convergent"})
    limit_cloud, member_clouds = _spectrum_clouds(seq, spectra.spectrum)
    trace = []
    dists = []
    for n, cloud in zip(seq.indices(), member_clouds):
        h = hausdorff_distance(cloud, limit_cloud)
        dists.append(h)
        trace.append({"n": n, "quantity": "hausdorff", "value": h})
    tail_n = min(tail, len(dists))
    ok = _tail_ok(dists[-tail_n:], tol)
    return CheckReport(
        name,
        PASS if ok else FAIL,
        trace,
        {"commutation": commute, "zero_accumulation": acc, "tol": tol},
    )


def check_component_persistence(
    seq: OperatorSequence,
    u_center: complex,
    u_radius: float,
    gap: float = 0.05,
    spectrum_fn: Callable[[OperatorModel], PointCloud] | None = None,
) -> CheckReport:
    """Find the first index from which some spectral cluster of every later
    member sits entirely inside the ball U = B(center, radius); 0 must be
    outside U and a cluster of sigma(T) inside it.

    Deliberately not gated on the nu-classification, so that families which
    violate it surface as fail (the negative-control contract).
    """
    name = "component-persistence"
    if abs(u_center) <= u_radius:
        raise HypothesisError("0 must lie outside the ball U")
    spectrum_fn = spectrum_fn or spectra.spectrum
    limit_cloud = spectrum_fn(seq.limit)
    limit_clusters = cluster_components(limit_cloud, gap)
    inside = [
        c for c in limit_clusters if np.abs(c.points - u_center).max() < u_radius
    ]
    if not inside:
        return CheckReport(
            name, UNMET, details={"reason": "no component of sigma(T) inside U"}
        )
    trace = []
    contained = []
    for n in seq.indices():
        clusters = cluster_components(spectrum_fn(seq.member(n)), gap)
        hit = any(np.abs(c.points - u_center).max() < u_radius for c in clusters)
        contained.append(hit)
        trace.append({"n": n, "quantity": "component_in_U", "value": 1.0 if hit else 0.0})
    first = None
    for i in range(len(contained) - 1, -1, -1):
        if not contained[i]:
            break
        first = seq.n_first + i
    if first is None:
        return CheckReport(name, FAIL, trace, {"reason": "no persistent component"})
    return CheckReport(name, PASS, trace, {"n0": first})


def _fredholm_at_zero_certificate(model: OperatorModel) -> str | None:
    if isinstance(model, FiniteMatrixModel):
        return "finite matrices are Fredholm"
    if isinstance(model, WeightedShiftModel) and isinstance(model.tail, ConstantTail):
        if model.tail.value.real > 0:
            return "shift essential circle has positive radius"
        return None
    if isinstance(model, ToeplitzModel):
        dist = float(np.abs(symbol_curve(model, 4096)).min())
        if dist > 1e-6:
            return f"symbol bounded away from 0 (min |phi| = {dist:.3g})"
        return None
    if isinstance(model, DiagonalModel):
        from .models import tail_limit

        if abs(tail_limit(model.tail)) > 1e-6:
            return "diagonal accumulation point away from 0"
        return None
    return None


def _member_ap_cloud(
    model: OperatorModel, grid: Sequence[complex], trunc: TruncationSpec, eps: float
) -> PointCloud:
    return spectra.ap_spectrum_grid(model, grid, trunc, eps)


def check_ap_limsup(
    seq: OperatorSequence,
    grid: Sequence[complex],
    trunc: TruncationSpec,
    eps: float = 1e-2,
    tol: float = 0.05,
    exclusion_radius: float = 0.2,
    set_eps: float | None = None,
    classify_tol: float = 0.05,
    tail: int = 8,
) -> CheckReport:
    """Tail limsup of approximate-point clouds, minus a ball at 0, must sit
    within tol of sigma_ap(T); requires the limit Fredholm-certified."""
    name = "ap-limsup"
    cert = _fredholm_at_zero_certificate(seq.limit)
    if cert is None:
        return CheckReport(
            name, UNMET, details={"reason": "limit not Fredholm-certified at 0"}
        )
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(name, UNMET, details={"reason": "family is not nu-convergent"})
    clouds = [
        _member_ap_cloud(seq.member(n), grid, trunc, eps) for n in seq.indices()
    ]
    nonempty = [c for c in clouds if not c.is_empty]
    if not nonempty:
        return CheckReport(name, FAIL, details={"reason": "all member clouds empty"})
    if any(c.is_empty for c in clouds):
        return CheckReport(name, FAIL, details={"reason": "a member cloud is empty"})
    cseq = CloudSequence(tuple(clouds))
    tail_start = max(1, len(clouds) - min(tail, len(clouds)) + 1)
    a_inf = limsup_estimate(cseq, set_eps if set_eps is not None else tol, tail_start)
    probed = a_inf.without_ball(0.0, exclusion_radius)
    oracle = spectra.ap_spectrum_oracle(seq.limit)
    if probed.is_empty:
        return CheckReport(
            name,
            PASS,
            details={"reason": "limsup cloud empty outside the excluded ball",
                     "certificate": cert},
        )
    d = directed_distance(probed, oracle)
    verdict = PASS if within(d, tol) else FAIL
    return CheckReport(
        name,
        verdict,
        [{"n": 0, "quantity": "limsup_directed_distance", "value": d}],
        {"certificate": cert, "tol": tol, "points": len(probed)},
    )


def check_ap_continuity(
    seq: OperatorSequence,
    grid: Sequence[complex],
    trunc: TruncationSpec,
    eps: float = 1e-2,
    tol: float = 0.05,
    exclusion_radius: float = 0.2,
    classify_tol: float = 0.05,
    tail: int = 8,
) -> CheckReport:
    """Composite two-sided scenario: the limsup inclusion plus the lower
    inclusion sigma_ap(T) (minus the 0-ball) inside the liminf estimate."""
    name = "ap-continuity"
    upper = check_ap_limsup(
        seq, grid, trunc, eps, tol, exclusion_radius,
        classify_tol=classify_tol, tail=tail,
    )
    if upper.verdict == UNMET:
        return CheckReport(name, UNMET, upper.trace, upper.details)
    clouds = [
        _member_ap_cloud(seq.member(n), grid, trunc, eps) for n in seq.indices()
    ]
    if any(c.is_empty for c in clouds):
        return CheckReport(name, FAIL, details={"reason": "a member cloud is empty"})
    cseq = CloudSequence(tuple(clouds))
    tail_start = max(1, len(clouds) - min(tail, len(clouds)) + 1)
    lim_inf = liminf_estimate(cseq, tol, tail_start)
    oracle = spectra.ap_spectrum_oracle(seq.limit).without_ball(0.0, exclusion_radius)
    if oracle.is_empty or lim_inf.is_empty:
        return CheckReport(name, FAIL, details={"reason": "empty comparison cloud"})
    d_low = directed_distance(oracle, lim_inf)
    trace = list(upper.trace)
    trace.append({"n": 0, "quantity": "liminf_directed_distance", "value": d_low})
    ok = upper.verdict == PASS and within(d_low, tol)
    return CheckReport(name, PASS if ok else FAIL, trace, upper.details)


def check_index_continuity(
    seq: OperatorSequence,
    lambda_path: Callable[[int], complex],
    lambda_limit: complex,
    nu1_tol: float = 1e-3,
    tail: int = 8,
) -> CheckReport:
    """Integer index trace i(T_n - lambda_n), which must become constant and
    equal to i(T - lambda); needs (T_n - T) T -> 0 certified from the
    diagnostics and every point off the respective symbol curves."""
    name = "index-continuity"
    diag = nu_diagnostics(seq)
    nu1_tail = [e.upper for e in diag.nu1[-min(tail, len(diag.nu1)) :]]
    if not _tail_ok(nu1_tail, nu1_tol):
        return CheckReport(
            name, UNMET, details={"reason": "(T_n - T) T -> 0 not certified"}
        )
    trace = []
    indices = []
    for n in seq.indices():
        k = spectra._index_at(seq.member(n), lambda_path(n))
        indices.append(k)
        trace.append({"n": n, "quantity": "index", "value": float(k)})
    k_limit = spectra._index_at(seq.limit, lambda_limit)
    tail_n = min(tail, len(indices))
    tail_vals = indices[-tail_n:]
    ok = all(k == k_limit for k in tail_vals) and len(set(tail_vals)) == 1
    return CheckReport(
        name,
        PASS if ok else FAIL,
        trace,
        {"limit_index": k_limit, "tol": nu1_tol},
    )


def check_weyl_continuity_essg1(
    seq: OperatorSequence,
    density: float = 20.0,
    tol: float = 0.05,
    classify_tol: float = 0.05,
    tail: int = 16,
) -> CheckReport:
    """Hausdorff convergence of Weyl spectra for essentially normal
    (Toeplitz trig-polynomial) members.

    Certificate: Toeplitz trig-polynomial models are essentially normal,
    hence their essential resolvent norm equals the reciprocal distance to
    sigma_e; the limit must be Fredholm (0 off its curve) or have 0 as an
    accumulation point of sigma_w, which for curve-based Weyl spectra is
    membership.
    """
    name = "weyl-essg1"
    models = [seq.limit] + [seq.member(n) for n in seq.indices()]
    if not all(isinstance(m, ToeplitzModel) for m in models):
        return CheckReport(
            name, UNMET,
            details={"reason": "members are not Toeplitz trig-polynomial models"},
        )
    curve = symbol_curve(seq.limit, 4096)
    dist0 = float(np.abs(curve).min())
    if dist0 <= 1e-9:
        return CheckReport(
            name, UNMET, details={"reason": "limit is not Fredholm (0 on its curve)"}
        )
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(name, UNMET, details={"reason": "family is not nu-convergent"})
    _e_limit, w_limit = spectra.essential_and_weyl(seq.limit, density)
    trace = []
    dists = []
    for n in seq.indices():
        _en, wn = spectra.essential_and_weyl(seq.member(n), density)
        h = hausdorff_distance(wn, w_limit)
        dists.append(h)
        trace.append({"n": n, "quantity": "weyl_hausdorff", "value": h})
    tail_n = min(tail, len(dists))
    ok = _tail_ok(dists[-tail_n:], tol)
    return CheckReport(
        name,
        PASS if ok else FAIL,
        trace,
        {"certificate": "toeplitz trig-polynomial: essentially normal",
         "classification": cls.kind, "tol": tol},
    )


def check_riesz_liminf(
    seq: OperatorSequence,
    tol: float = 0.05,
    set_eps: float | None = None,
    gap: float | None = None,
    classify_tol: float = 1e-6,
    tail: int = 16,
) -> CheckReport:
    """Isolated finite-multiplicity eigenvalues of the limit must be within
    tol of the liminf estimate of the members' Riesz points."""
    name = "riesz-liminf"
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(name, UNMET, details={"reason": "family is not nu-convergent"})
    limit_riesz = spectra.riesz_points(seq.limit, gap=gap)
    if limit_riesz.is_empty:
        return CheckReport(name, PASS, details={"reason": "limit has no Riesz points"})
    clouds = [spectra.riesz_points(seq.member(n), gap=gap) for n in seq.indices()]
    if any(c.is_empty for c in clouds):
        return CheckReport(name, FAIL, details={"reason": "a member has no Riesz points"})
    cseq = CloudSequence(tuple(clouds))
    tail_start = max(1, len(clouds) - min(tail, len(clouds)) + 1)
    lim_inf = liminf_estimate(cseq, set_eps if set_eps is not None else tol, tail_start)
    if lim_inf.is_empty:
        return CheckReport(name, FAIL, details={"reason": "liminf estimate empty"})
    d = directed_distance(limit_riesz, lim_inf)
    return CheckReport(
        name,
        PASS if within(d, tol) else FAIL,
        [{"n": 0, "quantity": "riesz_liminf_distance", "value": d}],
        {"tol": tol},
    )


def check_iso_liminf(
    seq: OperatorSequence,
    tol: float = 0.05,
    gap: float = 0.05,
    exclusion_radius: float = 0.1,
    set_eps: float | None = None,
    classify_tol: float = 1e-6,
    tail: int = 16,
    spectrum_fn: Callable[[OperatorModel], PointCloud] | None = None,
) -> CheckReport:
    """Isolated spectrum points of the limit away from 0 must land in the
    liminf estimate of the member spectra."""
    name = "iso-liminf"
    spectrum_fn = spectrum_fn or spectra.spectrum
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(name, UNMET, details={"reason": "family is not nu-convergent"})
    limit_cloud, member_clouds = _spectrum_clouds(seq, spectrum_fn)
    clusters = cluster_components(limit_cloud, gap)
    iso = [c.points[0] for c in clusters if len(c) == 1]
    iso_cloud = PointCloud(iso).without_ball(0.0, exclusion_radius)
    if iso_cloud.is_empty:
        return CheckReport(
            name, PASS, details={"reason": "no isolated points outside the 0-ball"}
        )
    cseq = CloudSequence(tuple(member_clouds))
    tail_start = max(1, len(member_clouds) - min(tail, len(member_clouds)) + 1)
    lim_inf = liminf_estimate(cseq, set_eps if set_eps is not None else tol, tail_start)
    if lim_inf.is_empty:
        return CheckReport(name, FAIL, details={"reason": "liminf estimate empty"})
    d = directed_distance(iso_cloud, lim_inf)
    return CheckReport(
        name,
        PASS if within(d, tol) else FAIL,
        [{"n": 0, "quantity": "iso_liminf_distance", "value": d}],
        {"tol": tol, "isolated_points": len(iso_cloud)},
    )


def check_spectrum_convergence(
    seq: OperatorSequence,
    tol: float = 0.05,
    classify_tol: float = 0.05,
    tail: int = 16,
    spectrum_fn: Callable[[OperatorModel], PointCloud] | None = None,
) -> CheckReport:
    """Full Hausdorff trace of sigma(T_n) against sigma(T): the composite
    upper-plus-lower scenario for families in a certified class."""
    name = "spectrum-convergence"
    spectrum_fn = spectrum_fn or spectra.spectrum
    try:
        cls, _diag = _classify_gate(seq, classify_tol, tail)
    except DomainError as exc:
        return CheckReport(name, UNMET, details={"reason": str(exc)})
    if not cls.is_nu:
        return CheckReport(name, UNMET, details={"reason": "family is not nu-convergent"})
    limit_cloud, member_clouds = _spectrum_clouds(seq, spectrum_fn)
    trace = []
    dists = []
    for n, cloud in zip(seq.indices(), member_clouds):
        h = hausdorff_distance(cloud, limit_cloud)
        dists.append(h)
        trace.append({"n": n, "quantity": "hausdorff", "value": h})
    tail_n = min(tail, len(dists))
    ok = _tail_ok(dists[-tail_n:], tol)
    return CheckReport(
        name, PASS if ok else FAIL, trace, {"classification": cls.kind, "tol": tol}
    )
