"""Spectra and their Fredholm-theoretic refinements for the model catalog.

Ground truth for infinite-dimensional models comes from symbol and closure
oracles (winding numbers for Toeplitz-class models, entry closures for
diagonal models), never from square-truncation eigenvalues, which pollute.
Square truncations appear only where a statement is genuinely about finite
matrices; rectangular sections appear only through the injection-modulus
bound s_min((m+bw) x m section) >= inf ||(T - lam)x||, which is monotone
nonincreasing in m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    NuspectError,
    OracleUnavailableError,
)
from .linalg import ComplexMatrix, eigenvalues, operator_norm
from .models import (
    ConstantTail,
    DiagonalModel,
    FiniteMatrixModel,
    GeometricTail,
    HarmonicTail,
    OperatorModel,
    PerturbedModel,
    ShiftedModel,
    ToeplitzModel,
    TruncationSpec,
    WeightedShiftModel,
    adjoint_model,
    symbol_curve,
    symbol_eval,
    tail_limit,
    truncate,
)
from .setlimits import PointCloud, cluster_components

__all__ = [
    "IndexMap",
    "SpectrumReport",
    "GelfandRadius",
    "spectrum",
    "spectral_radius_gelfand",
    "ap_spectrum_grid",
    "surjectivity_spectrum_grid",
    "fredholm_index_map",
    "essential_and_weyl",
    "riesz_points",
    "ap_spectrum_oracle",
    "point_spectrum",
    "full_report",
    "square_grid",
    "annulus_grid",
    "section_smin",
    "index_jump_points",
    "delta_points",
]

_MESH0 = 512
_MESH_CAP = 65536


# -- grids ----------------------------------------------------------------------


def square_grid(center: complex, halfwidth: float, step: float) -> list[complex]:
    """Deterministic row-major grid over a centred square."""
    if step <= 0 or halfwidth <= 0:
        raise DomainError("grid step and halfwidth must be positive")
    n = int(math.floor(halfwidth / step))
    offs = np.arange(-n, n + 1) * step
    return [
        complex(center.real + dx, center.imag + dy) for dx in offs for dy in offs
    ]


def annulus_grid(
    center: complex, r_min: float, r_max: float, step: float
) -> list[complex]:
    pts = square_grid(center, r_max, step)
    return [z for z in pts if r_min <= abs(z - center) <= r_max]


# -- Toeplitz symbol reduction ---------------------------------------------------


def _as_symbol_model(model: OperatorModel) -> ToeplitzModel | None:
    """Toeplitz model with the same essential spectrum and index data.

    Finite-rank perturbations and finitely many deviating shift weights do
    not move the essential spectrum or the Fredholm index, so they reduce to
    the tail symbol.
    """
    if isinstance(model, ToeplitzModel):
        return model
    if isinstance(model, WeightedShiftModel) and isinstance(model.tail, ConstantTail):
        return ToeplitzModel({1: complex(model.tail.value)})
    if isinstance(model, ShiftedModel):
        base = _as_symbol_model(model.base)
        if base is None:
            return None
        coeffs = base.coeff_dict()
        coeffs[0] = coeffs.get(0, 0.0) - complex(model.scalar)
        return ToeplitzModel(coeffs)
    if isinstance(model, PerturbedModel):
        return _as_symbol_model(model.base)
    return None


# -- winding numbers --------------------------------------------------------------


def _curve_distance(sym: ToeplitzModel, lams: np.ndarray, mesh: int = 8192) -> np.ndarray:
    from scipy.spatial import cKDTree

    curve = symbol_curve(sym, mesh)
    tree = cKDTree(np.column_stack([curve.real, curve.imag]))
    dist, _ = tree.query(np.column_stack([lams.real, lams.imag]))
    return np.asarray(dist, dtype=float)


def _winding_batch(
    sym: ToeplitzModel,
    lams: np.ndarray,
    mesh0: int = _MESH0,
    mesh_cap: int = _MESH_CAP,
    on_cap: str = "raise",
) -> tuple[np.ndarray, np.ndarray]:
    """Winding number of the symbol curve about each point.

    Argument increments are summed over a theta mesh that doubles until every
    increment is below pi/2, which is exactly the condition
    Re(w_{j+1} conj(w_j)) > 0. Once the increments are that small, their total
    equals 2 pi times the signed crossing count of the negative real axis, so
    the sum is evaluated by counting sign flips of Im w on the Re w < 0 side
    (no arctangents needed).

    Returns (windings, resolved mask). With on_cap="raise", unresolved points
    at the mesh cap are an error; with "mark" they are reported unresolved
    (they necessarily hug the curve).
    """
    windings = np.zeros(lams.size, dtype=int)
    resolved = np.zeros(lams.size, dtype=bool)
    pending = np.arange(lams.size)
    mesh = mesh0
    while pending.size:
        if mesh > mesh_cap:
            if on_cap == "mark":
                return windings, resolved
            raise ConvergenceError(
                f"winding mesh exceeded cap {mesh_cap} with {pending.size} points "
                "unresolved (points too close to the symbol curve)"
            )
        z = symbol_curve(sym, mesh)
        zc = np.concatenate([z, z[:1]])
        zr, zi = zc.real.copy(), zc.imag.copy()
        block_rows = max(1, 4_000_000 // (mesh + 1))
        still: list[int] = []
        for start in range(0, pending.size, block_rows):
            idx = pending[start : start + block_rows]
            wr = zr[None, :] - lams[idx].real[:, None]
            wi = zi[None, :] - lams[idx].imag[:, None]
            dot = wr[:, 1:] * wr[:, :-1]
            dot += wi[:, 1:] * wi[:, :-1]
            fine = (dot > 0).all(axis=1)
            if fine.any():
                im_sign = wi[fine, :] >= 0
                flips = im_sign[:, 1:] != im_sign[:, :-1]
                neg_side = (wr[fine, 1:] < 0) | (wr[fine, :-1] < 0)
                cross = flips & neg_side
                down = cross & im_sign[:, :-1]
                up = cross & ~im_sign[:, :-1]
                windings[idx[fine]] = (
                    down.sum(axis=1) - up.sum(axis=1)
                ).astype(int)
                resolved[idx[fine]] = True
            still.extend(idx[~fine].tolist())
        pending = np.asarray(still, dtype=int)
        mesh *= 2
    return windings, resolved


@dataclass(frozen=True)
class IndexMap:
    """Fredholm index sampled on a grid; None marks points on the symbol curve.

    The index is constant on every connected component off the curve.
    """

    grid: tuple[complex, ...]
    indices: tuple[int | None, ...]
    curve_tol: float

    def defined(self) -> list[tuple[complex, int]]:
        return [
            (z, k) for z, k in zip(self.grid, self.indices) if k is not None
        ]

    def value_at(self, z: complex) -> int | None:
        for g, k in zip(self.grid, self.indices):
            if g == z:
                return k
        raise DomainError(f"{z} is not a grid point of this index map")


def fredholm_index_map(
    model: OperatorModel,
    grid: Sequence[complex],
    curve_tol: float = 0.02,
) -> IndexMap:
    """index(model - lam) = -winding(symbol - lam) for the Toeplitz class."""
    sym = _as_symbol_model(model)
    if sym is None:
        raise OracleUnavailableError(
            f"no winding oracle for model class {type(model).__name__}"
        )
    lams = np.asarray(list(grid), dtype=complex)
    dist = _curve_distance(sym, lams)
    on_curve = dist <= curve_tol
    indices: list[int | None] = [None] * lams.size
    off = np.nonzero(~on_curve)[0]
    if off.size:
        winds, _ok = _winding_batch(sym, lams[off])
        for pos, w in zip(off, winds):
            indices[pos] = -int(w)
    return IndexMap(tuple(lams.tolist()), tuple(indices), curve_tol)


def _index_at(model: OperatorModel, lam: complex, curve_tol: float = 1e-9) -> int:
    """Fredholm index at one point; raises if lam sits on the symbol curve."""
    from .errors import UndefinedIndexError

    imap = fredholm_index_map(model, [lam], curve_tol=curve_tol)
    k = imap.indices[0]
    if k is None:
        raise UndefinedIndexError(
            f"index undefined within {curve_tol} of the symbol curve", point=lam
        )
    return k


# -- spectra ----------------------------------------------------------------------


def _disk_samples(radius: float, density: float, center: complex = 0.0) -> PointCloud:
    if radius <= 0:
        return PointCloud([center])
    rings = max(1, int(round(radius * density)))
    pts = [center]
    for j in range(1, rings + 1):
        r = radius * j / rings
        count = max(8, int(round(2.0 * math.pi * r * density)))
        th = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
        pts.extend((center + r * np.exp(1j * th)).tolist())
    return PointCloud(pts)


def _circle_samples(radius: float, mesh: int = 512, center: complex = 0.0) -> PointCloud:
    th = np.linspace(0.0, 2.0 * math.pi, mesh, endpoint=False)
    return PointCloud((center + radius * np.exp(1j * th)).tolist())


def _diagonal_entry_samples(model: DiagonalModel, count: int = 64) -> list[complex]:
    p = len(model.prefix)
    vals = list(model.prefix)
    vals.extend(model.entry(k) for k in range(p + 1, p + count + 1))
    return vals


def _toeplitz_region(
    sym: ToeplitzModel,
    density: float,
    keep: Callable[[np.ndarray], np.ndarray],
    include_near_curve: bool = True,
    curve_tol: float = 2e-3,
) -> list[complex]:
    """Grid points whose winding-derived index satisfies the vectorised
    predicate ``keep``, plus (optionally) points within the curve tolerance,
    which belong to the target set through the essential spectrum anyway.

    The curve tolerance is absolute and small: the winding mesh refines far
    enough that only points closer than ~1e-4 to the curve are undecidable.
    """
    step = 1.0 / density
    curve = symbol_curve(sym, 1024)
    pad = 2 * step
    xs = np.arange(curve.real.min() - pad, curve.real.max() + pad + step / 2, step)
    ys = np.arange(curve.imag.min() - pad, curve.imag.max() + pad + step / 2, step)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    lams = (gx + 1j * gy).ravel()
    if lams.size == 0:
        return []
    dist = _curve_distance(sym, lams)
    near = dist <= curve_tol
    selected = near.copy() if include_near_curve else np.zeros_like(near)
    off = np.nonzero(~near)[0]
    if off.size:
        winds, ok = _winding_batch(sym, lams[off], on_cap="mark")
        chosen = keep(-winds) & ok
        if include_near_curve:
            chosen |= ~ok
        selected[off] = chosen
    return lams[selected].tolist()


def spectrum(model: OperatorModel, density: float = 20.0) -> PointCloud:
    """Sampled spectrum for the supported model classes.

    FiniteMatrix: eigenvalues. Diagonal: closure of the entries. Constant
    tail shift: the closed disk of the tail radius. Toeplitz: symbol curve
    plus the region of nonzero winding. Anything else has no exact oracle
    here and raises rather than silently falling back to truncations.
    """
    if isinstance(model, FiniteMatrixModel):
        return PointCloud(eigenvalues(model.matrix).values)
    if isinstance(model, DiagonalModel):
        vals = _diagonal_entry_samples(model)
        vals.append(tail_limit(model.tail))
        return PointCloud(vals)
    if isinstance(model, WeightedShiftModel) and isinstance(model.tail, ConstantTail):
        return _disk_samples(float(model.tail.value.real), density)
    if isinstance(model, ToeplitzModel):
        pts = symbol_curve(model, 1024).tolist()
        pts.extend(_toeplitz_region(model, density, lambda k: k != 0))
        return PointCloud(pts)
    raise OracleUnavailableError(
        f"no spectrum oracle for model class {type(model).__name__}"
    )


@dataclass(frozen=True)
class GelfandRadius:
    """min over n of ||a^n||^(1/n) (a certified upper bound for the radius)."""

    radius_upper: float
    eigen_max: float
    best_n: int


def spectral_radius_gelfand(
    a: ComplexMatrix, n_max: int
) -> GelfandRadius:
    """Power-norm estimate of the spectral radius with eigenvalue companion."""
    if not a.is_square:
        raise DomainError("spectral radius needs a square matrix")
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    m = a.array
    eig_max = max((abs(v) for v in eigenvalues(a).values), default=0.0)
    best = math.inf
    best_n = 1
    b = np.eye(m.shape[0], dtype=complex)
    log_scale = 0.0
    for n in range(1, n_max + 1):
        b = b @ m
        nb = float(np.linalg.norm(b, 2))
        if nb == 0.0:
            return GelfandRadius(0.0, eig_max, n)
        log_norm = math.log(nb) + log_scale
        if log_norm / n > 700.0:
            raise NuspectError("spectral radius exceeds the representable range")
        val = math.exp(log_norm / n)
        if val < best:
            best, best_n = val, n
        if nb > 1e100 or nb < 1e-100:
            b = b / nb
            log_scale += math.log(nb)
    return GelfandRadius(best, eig_max, best_n)


# -- injection-modulus grids -------------------------------------------------------


def _base_section(model: OperatorModel, spec: TruncationSpec) -> np.ndarray:
    if not spec.is_rectangular:
        raise ContractError("injection-modulus grids need a rectangular truncation")
    return truncate(model, spec).array


def section_smin(model: OperatorModel, lam: complex, spec: TruncationSpec) -> float:
    """Smallest singular value of the rectangular section of (model - lam)."""
    r = _base_section(model, spec).copy()
    m = spec.size
    r[np.arange(m), np.arange(m)] -= lam
    return float(np.linalg.svd(r, compute_uv=False)[-1])


def _smin_membership_tridiag(
    r0: np.ndarray, m: int, lams: np.ndarray, eps: float
) -> np.ndarray:
    """Vectorised Sturm count: True where s_min(section) < eps.

    Valid when the Gram matrix of the section is tridiagonal (band span of
    the model at most 1). One LDL sweep per column, vectorised over the
    whole grid.
    """
    g0 = r0.conj().T @ r0
    c1 = r0[:m, :]
    g0d = np.diag(g0).copy()
    g0s = np.diag(g0, 1).copy()
    c1d = np.diag(c1).copy()
    c1s = np.diag(c1, 1).copy()
    c1sub = np.diag(c1, -1).copy()
    mu = eps * eps
    ll = np.abs(lams) ** 2
    conj_l = np.conj(lams)
    count = np.zeros(lams.size, dtype=np.int32)
    d = np.zeros(lams.size)
    tiny = np.finfo(float).tiny
    for i in range(m):
        a_i = (g0d[i] - conj_l * c1d[i] - lams * np.conj(c1d[i]) + ll).real - mu
        if i == 0:
            d = a_i
        else:
            b = g0s[i - 1] - conj_l * c1s[i - 1] - lams * np.conj(c1sub[i - 1])
            safe = np.where(d == 0.0, tiny, d)
            d = a_i - (np.abs(b) ** 2) / safe
        count += d < 0.0
    return count >= 1


def _smin_values_dense(
    r0: np.ndarray, m: int, lams: np.ndarray, chunk: int = 128
) -> np.ndarray:
    out = np.empty(lams.size, dtype=float)
    for start in range(0, lams.size, chunk):
        block = lams[start : start + chunk]
        secs = np.broadcast_to(r0, (block.size,) + r0.shape).copy()
        idx = np.arange(m)
        secs[:, idx, idx] -= block[:, None]
        svals = np.linalg.svd(secs, compute_uv=False)
        out[start : start + block.size] = svals[:, -1]
    return out


def _bandwidth_of(mat: np.ndarray) -> int:
    rows, cols = np.nonzero(mat)
    if rows.size == 0:
        return 0
    return int(np.abs(rows - cols).max())


def _grid_membership(
    model: OperatorModel, lams: np.ndarray, spec: TruncationSpec, eps: float
) -> np.ndarray:
    r0 = _base_section(model, spec)
    if spec.extra_rows < model.required_extra_rows(spec.size):
        raise ContractError("extra rows below model bandwidth")
    m = spec.size
    # Sections whose Gram matrices are tridiagonal (for every lam) take the
    # vectorised Sturm path; the shift correction contributes C1 = top rows.
    g0 = r0.conj().T @ r0
    c1 = r0[:m, :]
    if max(_bandwidth_of(g0), _bandwidth_of(c1)) <= 1:
        return _smin_membership_tridiag(r0, m, lams, eps)
    return _smin_values_dense(r0, m, lams) < eps


def ap_spectrum_grid(
    model: OperatorModel,
    grid: Sequence[complex],
    spec: TruncationSpec,
    eps: float,
) -> PointCloud:
    """Grid points where the section of (model - lam) has s_min below eps.

    Since s_min of the rectangular section is an upper bound for the
    injection modulus, inclusion certifies inf ||(T - lam)x|| < eps.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    lams = np.asarray(list(grid), dtype=complex)
    if lams.size == 0:
        return PointCloud([])
    member = _grid_membership(model, lams, spec, eps)
    return PointCloud(lams[member])


def surjectivity_spectrum_grid(
    model: OperatorModel,
    grid: Sequence[complex],
    spec: TruncationSpec,
    eps: float,
) -> PointCloud:
    """Grid points where model - lam fails to be surjective (adjoint test).

    lam is included iff conj(lam) passes the approximate-point test for the
    adjoint model; extra rows are raised to the adjoint's own bandwidth.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    adj = adjoint_model(model)
    need = adj.required_extra_rows(spec.size)
    spec_adj = TruncationSpec.rectangular(
        spec.size, max(spec.extra_rows or 0, need)
    )
    lams = np.asarray(list(grid), dtype=complex)
    if lams.size == 0:
        return PointCloud([])
    member = _grid_membership(adj, np.conj(lams), spec_adj, eps)
    return PointCloud(lams[member])


# -- essential / Weyl spectra -------------------------------------------------------


def essential_and_weyl(
    model: OperatorModel, density: float = 20.0
) -> tuple[PointCloud, PointCloud]:
    """(sigma_e, sigma_w) sampled clouds.

    Toeplitz class: sigma_e is the symbol curve, sigma_w adds the nonzero
    index region. Diagonal: the accumulation set of the entries (index zero
    elsewhere). Finite matrices: both empty.
    """
    if isinstance(model, FiniteMatrixModel):
        return PointCloud([]), PointCloud([])
    if isinstance(model, DiagonalModel):
        acc = PointCloud([tail_limit(model.tail)])
        return acc, acc
    if isinstance(model, WeightedShiftModel) and isinstance(model.tail, ConstantTail):
        w = float(model.tail.value.real)
        return _circle_samples(w), _disk_samples(w, density)
    sym = _as_symbol_model(model)
    if sym is not None and isinstance(model, (ToeplitzModel, ShiftedModel)):
        curve = symbol_curve(sym, 1024)
        region = _toeplitz_region(sym, density, lambda k: k != 0)
        return PointCloud(curve), PointCloud(curve.tolist() + region)
    raise OracleUnavailableError(
        f"no essential-spectrum oracle for model class {type(model).__name__}"
    )


def riesz_points(
    model: OperatorModel,
    gap: float | None = None,
    density: float = 20.0,
) -> PointCloud:
    """Isolated eigenvalues of finite algebraic multiplicity.

    The isolation gap defaults to 10 grid spacings. For perturbed Toeplitz
    models, finite-section eigenvalues are certified by stability across a
    doubled section, distance from the symbol curve, zero winding index and
    a small rectangular-section s_min (which rejects spectral pollution).
    """
    if gap is None:
        gap = 10.0 / density
    if isinstance(model, FiniteMatrixModel):
        vals = PointCloud(eigenvalues(model.matrix).values)
        reps = [
            complex(c.points.mean()) for c in cluster_components(vals, max(gap * 1e-6, 1e-12))
        ]
        return PointCloud(reps)
    if isinstance(model, DiagonalModel):
        limit = tail_limit(model.tail)
        p = len(model.prefix)
        cands: list[complex] = list(model.prefix)
        k = p + 1
        while k <= p + 10_000:
            v = model.entry(k)
            if abs(v - limit) <= gap:
                break
            cands.append(v)
            k += 1
        distinct = sorted(set(cands), key=lambda z: (z.real, z.imag))
        out = []
        for z in distinct:
            if abs(z - limit) <= gap:
                continue
            others = [w for w in distinct if w != z] + [limit]
            if min(abs(z - w) for w in others) > gap:
                out.append(z)
        return PointCloud(out)
    if isinstance(model, ToeplitzModel):
        return PointCloud([])
    if isinstance(model, PerturbedModel):
        sym = _as_symbol_model(model)
        if sym is None:
            raise OracleUnavailableError("perturbed model has no symbol oracle")
        return _perturbed_riesz(model, sym, gap)
    raise OracleUnavailableError(
        f"no Riesz-point oracle for model class {type(model).__name__}"
    )


def _perturbed_riesz(
    model: PerturbedModel, sym: ToeplitzModel, gap: float
) -> PointCloud:
    bump_extent = max(model.bump.rows, model.bump.cols, 1)
    m = max(96, 4 * bump_extent)
    eig_small = eigenvalues(truncate(model, TruncationSpec.square(m))).values
    eig_big = eigenvalues(truncate(model, TruncationSpec.square(2 * m))).values
    big = np.asarray(eig_big, dtype=complex)
    curve = symbol_curve(sym, 2048)
    extra = model.required_extra_rows(2 * m)
    spec2 = TruncationSpec.rectangular(2 * m, extra)
    out = []
    for mu in eig_small:
        if big.size == 0 or np.abs(big - mu).min() > gap / 10.0:
            continue  # unstable across sections: pollution
        if np.abs(curve - mu).min() <= gap:
            continue  # too close to the essential spectrum
        if _index_at(model, mu) != 0:
            continue  # not a Fredholm-index-zero point
        if section_smin(model, mu, spec2) >= gap / 2.0:
            continue  # injection modulus bounded away from zero: spurious
        out.append(complex(mu))
    if not out:
        return PointCloud([])
    reps = [
        complex(c.points.mean())
        for c in cluster_components(PointCloud(out), gap / 5.0)
    ]
    return PointCloud(reps)


def ap_spectrum_oracle(model: OperatorModel, density: float = 20.0) -> PointCloud:
    """Model-level ground truth for the approximate point spectrum."""
    if isinstance(model, FiniteMatrixModel):
        return PointCloud(eigenvalues(model.matrix).values)
    if isinstance(model, DiagonalModel):
        return spectrum(model, density)
    if isinstance(model, WeightedShiftModel) and isinstance(model.tail, ConstantTail):
        return _circle_samples(float(model.tail.value.real))
    if isinstance(model, ToeplitzModel):
        pts = symbol_curve(model, 1024).tolist()
        # off the curve, lam is approximate-point iff the kernel is nontrivial,
        # i.e. the index is positive (winding negative)
        pts.extend(_toeplitz_region(model, density, lambda k: k > 0))
        return PointCloud(pts)
    raise OracleUnavailableError(
        f"no approximate-point oracle for model class {type(model).__name__}"
    )


def point_spectrum(model: OperatorModel) -> PointCloud:
    """Eigenvalues; exposed only where a finite certificate exists."""
    if isinstance(model, FiniteMatrixModel):
        return PointCloud(eigenvalues(model.matrix).values)
    if isinstance(model, DiagonalModel):
        return PointCloud(_diagonal_entry_samples(model))
    raise OracleUnavailableError(
        f"no point-spectrum certificate for model class {type(model).__name__}"
    )


# -- aggregate report ---------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    """All spectral sets of one model with per-set oracle provenance."""

    sigma: PointCloud
    sigma_ap: PointCloud
    sigma_e: PointCloud
    sigma_w: PointCloud
    riesz: PointCloud
    sigma_p: PointCloud | None
    provenance: dict[str, str]

    def to_json(self) -> dict:
        from .setlimits import cloud_to_json

        data = {
            "sigma": cloud_to_json(self.sigma),
            "sigma_ap": cloud_to_json(self.sigma_ap),
            "sigma_e": cloud_to_json(self.sigma_e),
            "sigma_w": cloud_to_json(self.sigma_w),
            "riesz_points": cloud_to_json(self.riesz),
            "provenance": dict(self.provenance),
        }
        if self.sigma_p is not None:
            data["sigma_p"] = cloud_to_json(self.sigma_p)
        return data


def _check_subset(a: PointCloud, b: PointCloud, tol: float, what: str) -> None:
    from .setlimits import directed_distance

    if a.is_empty:
        return
    if b.is_empty or directed_distance(a, b) > tol:
        raise NuspectError(f"report invariant violated: {what}")


def full_report(model: OperatorModel, density: float = 20.0) -> SpectrumReport:
    """Assemble every spectral set with consistency checks at grid tolerance."""
    step = 1.0 / density
    sig = spectrum(model, density)
    sig_e, sig_w = essential_and_weyl(model, density)
    sig_ap = ap_spectrum_oracle(model, density)
    riesz = riesz_points(model, density=density)
    try:
        sig_p = point_spectrum(model)
    except OracleUnavailableError:
        sig_p = None
    if isinstance(model, FiniteMatrixModel):
        prov = {"sigma": "eigen", "sigma_ap": "eigen", "sigma_e": "eigen",
                "sigma_w": "eigen", "riesz_points": "eigen"}
    elif isinstance(model, DiagonalModel):
        prov = {"sigma": "closure-rule", "sigma_ap": "closure-rule",
                "sigma_e": "closure-rule", "sigma_w": "closure-rule",
                "riesz_points": "closure-rule"}
    else:
        prov = {"sigma": "winding", "sigma_ap": "winding", "sigma_e": "winding",
                "sigma_w": "winding", "riesz_points": "winding"}
    tol = 2.5 * step
    _check_subset(sig_e, sig_w, tol, "sigma_e inside sigma_w")
    _check_subset(sig_w, sig, tol, "sigma_w inside sigma")
    _check_subset(sig_ap, sig, tol, "sigma_ap inside sigma")
    if not riesz.is_empty and not sig_e.is_empty:
        from .setlimits import _min_dists

        if float(_min_dists(riesz.points, sig_e.points).min()) <= tol:
            raise NuspectError("report invariant violated: riesz points meet sigma_e")
    return SpectrumReport(sig, sig_ap, sig_e, sig_w, riesz, sig_p, prov)


# -- index-set extractors -------------------------------------------------------------


def index_jump_points(imap: IndexMap, radius: float) -> PointCloud:
    """Grid points near which two defined indices differ (boundary detector)."""
    defined = imap.defined()
    if not defined:
        return PointCloud([])
    pts = np.asarray([z for z, _ in defined], dtype=complex)
    vals = np.asarray([k for _, k in defined], dtype=int)
    out = []
    for z in imap.grid:
        near = np.abs(pts - z) <= radius
        if near.any() and np.unique(vals[near]).size >= 2:
            out.append(z)
    return PointCloud(out)


def delta_points(
    model: OperatorModel,
    density: float = 20.0,
    exclusion_radius: float = 0.1,
    ball_radius: float | None = None,
) -> PointCloud:
    """Spectrum points isolated from the nonzero-index region whose small
    ball contains a whole component of sigma_sf union the Riesz points.

    Winding-oracle classes only; a finite proxy of the component condition
    using gap clusters.
    """
    sym = _as_symbol_model(model)
    if sym is None:
        raise OracleUnavailableError("delta set needs the winding oracle class")
    step = 1.0 / density
    if ball_radius is None:
        ball_radius = 4.0 * step
    sig = spectrum(sym, density)
    curve = PointCloud(symbol_curve(sym, 1024))
    riesz = riesz_points(model, density=density) if isinstance(
        model, PerturbedModel
    ) else PointCloud([])
    rho_pm = PointCloud(_toeplitz_region(sym, density, lambda k: k != 0))
    sf_union = curve.union(riesz)
    clusters = cluster_components(sf_union, 2.0 * step)
    out = []
    for z in sig:
        if abs(z) <= exclusion_radius:
            continue
        if not rho_pm.is_empty and np.abs(rho_pm.points - z).min() <= 2.0 * step:
            continue
        for cl in clusters:
            if np.abs(cl.points - z).max() <= ball_radius:
                out.append(z)
                break
    return PointCloud(out)
