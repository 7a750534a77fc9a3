"""Symbolic operator models with exact norm and truncation semantics.

A model describes an operator on l2 (or a finite space embedded in it)
through structured data: a dense matrix, a diagonal rule, a weighted
forward shift, a banded Toeplitz operator with trigonometric-polynomial
symbol, or a shifted/perturbed combination. Every model exposes a band
decomposition (band offset -> column-indexed entry sequence, plus an
optional dense corner bump), from which truncations are materialised
exactly and norm quantities are either computed exactly or enclosed with
certified bounds. Truncation eigenvalues are never used as spectral ground
truth; the band data is what the spectral oracles consume.

Tail rules are eventually monotone in absolute value by construction,
which is what makes the tail bounds in the norm enclosures certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import ContractError, DomainError, EnclosureUnavailableError, ShapeError
from .linalg import ComplexMatrix, operator_norm

__all__ = [
    "ConstantTail",
    "HarmonicTail",
    "GeometricTail",
    "TailRule",
    "FiniteMatrixModel",
    "DiagonalModel",
    "WeightedShiftModel",
    "ToeplitzModel",
    "ShiftedModel",
    "PerturbedModel",
    "OperatorModel",
    "TruncationSpec",
    "NormEnclosure",
    "truncate",
    "model_norm",
    "difference_norm",
    "compose_difference_product",
    "symbol_eval",
    "symbol_curve",
    "adjoint_band_map",
    "model_to_json",
    "model_from_json",
]


# -- tail rules ----------------------------------------------------------------


@dataclass(frozen=True)
class ConstantTail:
    """Tail entries all equal to ``value``."""

    value: complex


@dataclass(frozen=True)
class HarmonicTail:
    """Tail entry at global index k equals scale / k."""

    scale: complex


@dataclass(frozen=True)
class GeometricTail:
    """Tail entry at global index k equals scale * ratio**(k-1), 0 < |ratio| < 1."""

    scale: complex
    ratio: float

    def __post_init__(self):
        if not 0.0 < abs(self.ratio) < 1.0:
            raise DomainError("geometric ratio must satisfy 0 < |ratio| < 1")


TailRule = Union[ConstantTail, HarmonicTail, GeometricTail]


def tail_value(rule: TailRule, k: int) -> complex:
    if isinstance(rule, ConstantTail):
        return complex(rule.value)
    if isinstance(rule, HarmonicTail):
        return complex(rule.scale) / k
    return complex(rule.scale) * (rule.ratio ** (k - 1))


def tail_limit(rule: TailRule) -> complex:
    return complex(rule.value) if isinstance(rule, ConstantTail) else 0.0 + 0.0j


# -- internal band machinery ---------------------------------------------------
# A _Term is one additive piece of a band's entry sequence beyond its prefix.
# Harmonic terms carry an index shift so that adjoints (which re-index bands)
# stay inside the same closed family.

_CONST, _HARM, _GEOM = "const", "harm", "geom"


@dataclass(frozen=True)
class _Term:
    kind: str
    coeff: complex
    ratio: float = 0.0
    shift: int = 0

    def value_at(self, ks: np.ndarray) -> np.ndarray:
        if self.kind == _CONST:
            return np.full(ks.shape, self.coeff, dtype=complex)
        if self.kind == _HARM:
            denom = ks + self.shift
            out = np.zeros(ks.shape, dtype=complex)
            ok = denom >= 1
            out[ok] = self.coeff / denom[ok]
            return out
        return self.coeff * np.power(self.ratio, ks - 1)

    def abs_bound(self, k: int) -> float:
        """Nonincreasing bound on |value| for indices >= k (nonconstant part)."""
        if self.kind == _CONST:
            return 0.0
        if self.kind == _HARM:
            return abs(self.coeff) / max(k + self.shift, 1)
        return abs(self.coeff) * abs(self.ratio) ** (k - 1)

    @property
    def limit(self) -> complex:
        return self.coeff if self.kind == _CONST else 0.0 + 0.0j

    def conj(self) -> "_Term":
        return _Term(self.kind, complex(self.coeff).conjugate(), self.ratio, self.shift)

    def scaled(self, c: complex) -> "_Term":
        return _Term(self.kind, self.coeff * c, self.ratio, self.shift)

    def index_shifted(self, d: int) -> "_Term":
        """Term for the sequence k -> value(k - d)."""
        if self.kind == _CONST:
            return self
        if self.kind == _HARM:
            return _Term(_HARM, self.coeff, shift=self.shift - d)
        return _Term(_GEOM, self.coeff * self.ratio ** (-d), self.ratio)


def _term_of(rule: TailRule) -> _Term:
    if isinstance(rule, ConstantTail):
        return _Term(_CONST, complex(rule.value))
    if isinstance(rule, HarmonicTail):
        return _Term(_HARM, complex(rule.scale))
    return _Term(_GEOM, complex(rule.scale), rule.ratio)


@dataclass(frozen=True)
class _BandSeq:
    """Column-indexed entries of one band: prefix values then a term sum."""

    prefix: tuple[complex, ...]
    terms: tuple[_Term, ...]

    def values(self, ks: np.ndarray) -> np.ndarray:
        ks = np.asarray(ks, dtype=int)
        out = np.zeros(ks.shape, dtype=complex)
        p = len(self.prefix)
        pre = (ks >= 1) & (ks <= p)
        if pre.any():
            pref = np.asarray(self.prefix, dtype=complex)
            out[pre] = pref[ks[pre] - 1]
        post = ks > p
        if post.any():
            kk = ks[post]
            acc = np.zeros(kk.shape, dtype=complex)
            for t in self.terms:
                acc += t.value_at(kk)
            out[post] = acc
        return out

    def value(self, k: int) -> complex:
        return complex(self.values(np.array([k]))[0])

    @property
    def limit(self) -> complex:
        return sum((t.limit for t in self.terms), 0.0 + 0.0j)

    def decay(self, k: int) -> float:
        """Bound on |value(j) - limit| for all j >= k > len(prefix)."""
        return float(sum(t.abs_bound(k) for t in self.terms))

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.prefix) and all(t.coeff == 0 for t in self.terms)

    def conj(self) -> "_BandSeq":
        return _BandSeq(
            tuple(complex(v).conjugate() for v in self.prefix),
            tuple(t.conj() for t in self.terms),
        )

    def scaled(self, c: complex) -> "_BandSeq":
        return _BandSeq(
            tuple(v * c for v in self.prefix), tuple(t.scaled(c) for t in self.terms)
        )

    def index_shifted(self, d: int) -> "_BandSeq":
        """Sequence k -> value(k - d), zero where k - d < 1."""
        new_p = max(0, len(self.prefix) + d)
        ks = np.arange(1, new_p + 1) - d
        vals = np.zeros(new_p, dtype=complex)
        ok = ks >= 1
        if ok.any():
            vals[ok] = self.values(ks[ok])
        return _BandSeq(tuple(vals.tolist()), tuple(t.index_shifted(d) for t in self.terms))

    def plus(self, other: "_BandSeq") -> "_BandSeq":
        p = max(len(self.prefix), len(other.prefix))
        ks = np.arange(1, p + 1)
        vals = self.values(ks) + other.values(ks) if p else np.zeros(0, complex)
        return _BandSeq(tuple(vals.tolist()), self.terms + other.terms)


_ZERO_SEQ = _BandSeq((), ())


@dataclass(frozen=True)
class _BandMap:
    """Band decomposition: offset -> entries at (col+offset, col), plus bump."""

    bands: Mapping[int, _BandSeq]
    bump: np.ndarray | None = None

    @property
    def max_positive_offset(self) -> int:
        return max((o for o in self.bands), default=0) if self.bands else 0

    @property
    def min_offset(self) -> int:
        return min((o for o in self.bands), default=0) if self.bands else 0

    @property
    def prefix_extent(self) -> int:
        return max((len(s.prefix) for s in self.bands.values()), default=0)

    @property
    def bump_shape(self) -> tuple[int, int]:
        return (0, 0) if self.bump is None else self.bump.shape

    def materialize(self, rows: int, cols: int) -> np.ndarray:
        t = np.zeros((rows, cols), dtype=complex)
        for off, seq in self.bands.items():
            cmin = max(1, 1 - off)
            cmax = min(cols, rows - off)
            if cmax >= cmin:
                ks = np.arange(cmin, cmax + 1)
                t[ks - 1 + off, ks - 1] += seq.values(ks)
        if self.bump is not None:
            r = min(rows, self.bump.shape[0])
            c = min(cols, self.bump.shape[1])
            t[:r, :c] += self.bump[:r, :c]
        return t


def _bm_sub(x: _BandMap, y: _BandMap) -> _BandMap:
    bands: dict[int, _BandSeq] = {}
    for off in set(x.bands) | set(y.bands):
        seq = x.bands.get(off, _ZERO_SEQ).plus(y.bands.get(off, _ZERO_SEQ).scaled(-1))
        if not seq.is_zero:
            bands[off] = seq
    bump = None
    if x.bump is not None or y.bump is not None:
        xr, xc = x.bump_shape
        yr, yc = y.bump_shape
        bump = np.zeros((max(xr, yr), max(xc, yc)), dtype=complex)
        if x.bump is not None:
            bump[:xr, :xc] += x.bump
        if y.bump is not None:
            bump[:yr, :yc] -= y.bump
        if bump.size == 0 or not bump.any():
            bump = None
    return _BandMap(bands, bump)


# -- models --------------------------------------------------------------------


class OperatorModel:
    """Base class for symbolic operator descriptors."""

    def band_map(self) -> _BandMap:
        raise NotImplementedError

    def lower_bandwidth(self) -> int:
        """Largest band offset below the diagonal, ignoring the finite bump."""
        return max(0, self.band_map().max_positive_offset)

    def required_extra_rows(self, m: int) -> int:
        bm = self.band_map()
        need = max(0, bm.max_positive_offset)
        br, _bc = bm.bump_shape
        return max(need, br - m, 0)


@dataclass(frozen=True)
class FiniteMatrixModel(OperatorModel):
    """A finite square matrix embedded at the origin of l2 (A oplus 0)."""

    matrix: ComplexMatrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise ShapeError("finite operator model needs a square matrix")

    def band_map(self) -> _BandMap:
        return _BandMap({}, self.matrix.array.copy() if self.matrix.rows else None)


def _check_weight(x: float, what: str) -> float:
    v = complex(x)
    if abs(v.imag) > 0 or v.real < 0:
        raise DomainError(f"{what} must be a nonnegative real, got {x}")
    return v.real


@dataclass(frozen=True)
class DiagonalModel(OperatorModel):
    """Diagonal operator: prefix entries then a tail rule."""

    prefix: tuple[complex, ...]
    tail: TailRule

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(complex(v) for v in self.prefix))

    def band_map(self) -> _BandMap:
        return _BandMap({0: _BandSeq(self.prefix, (_term_of(self.tail),))})

    def entry(self, k: int) -> complex:
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return tail_value(self.tail, k)


@dataclass(frozen=True)
class WeightedShiftModel(OperatorModel):
    """Forward weighted shift: e_i -> w_i e_{i+1}, weights nonnegative."""

    prefix: tuple[float, ...]
    tail: TailRule

    def __post_init__(self):
        object.__setattr__(
            self, "prefix", tuple(_check_weight(w, "shift weight") for w in self.prefix)
        )
        if isinstance(self.tail, ConstantTail):
            _check_weight(self.tail.value, "tail weight")
        elif isinstance(self.tail, HarmonicTail):
            _check_weight(self.tail.scale, "tail weight scale")
        else:
            _check_weight(self.tail.scale, "tail weight scale")
            if self.tail.ratio < 0:
                raise DomainError("shift tail ratio must be nonnegative")

    def band_map(self) -> _BandMap:
        pref = tuple(complex(w) for w in self.prefix)
        return _BandMap({1: _BandSeq(pref, (_term_of(self.tail),))})

    def weight(self, k: int) -> float:
        if k <= len(self.prefix):
            return float(self.prefix[k - 1])
        return tail_value(self.tail, k).real


@dataclass(frozen=True)
class ToeplitzModel(OperatorModel):
    """Toeplitz operator with trig-polynomial symbol sum c_k exp(i k theta).

    Matrix entries T[i, j] = c_{i-j}; band offset k holds coefficient c_k.
    """

    coeffs: tuple[tuple[int, complex], ...]

    def __init__(self, coeffs: Mapping[int, complex] | Sequence[tuple[int, complex]]):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        cleaned = sorted((int(k), complex(c)) for k, c in items if complex(c) != 0)
        if not cleaned:
            cleaned = [(0, 0.0 + 0.0j)]
        object.__setattr__(self, "coeffs", tuple(cleaned))

    def coeff_dict(self) -> dict[int, complex]:
        return dict(self.coeffs)

    def band_map(self) -> _BandMap:
        bands = {}
        for k, c in self.coeffs:
            bands[k] = _BandSeq((0.0 + 0.0j,) * max(0, -k), (_Term(_CONST, c),))
        return _BandMap(bands)


@dataclass(frozen=True)
class ShiftedModel(OperatorModel):
    """base - scalar * identity."""

    base: OperatorModel
    scalar: complex

    def band_map(self) -> _BandMap:
        bm = self.base.band_map()
        bands = dict(bm.bands)
        add = _BandSeq((), (_Term(_CONST, -complex(self.scalar)),))
        bands[0] = bands.get(0, _ZERO_SEQ).plus(add)
        if bands[0].is_zero:
            del bands[0]
        return _BandMap(bands, bm.bump)


@dataclass(frozen=True)
class PerturbedModel(OperatorModel):
    """base + a finite-rank bump embedded at the origin."""

    base: OperatorModel
    bump: ComplexMatrix

    def band_map(self) -> _BandMap:
        bm = self.base.band_map()
        br, bc = bm.bump_shape
        pr, pc = self.bump.shape
        out = np.zeros((max(br, pr), max(bc, pc)), dtype=complex)
        if bm.bump is not None:
            out[:br, :bc] += bm.bump
        out[:pr, :pc] += self.bump.array
        return _BandMap(bm.bands, out if out.size else None)


# -- truncation ----------------------------------------------------------------


@dataclass(frozen=True)
class TruncationSpec:
    """Finite-section shape: leading (size+extra) x size block in the canonical basis."""

    size: int
    extra_rows: int | None = None

    def __post_init__(self):
        if self.size < 1:
            raise DomainError("truncation size must be >= 1")
        if self.extra_rows is not None and self.extra_rows < 0:
            raise DomainError("extra rows must be >= 0")

    @classmethod
    def square(cls, m: int) -> "TruncationSpec":
        return cls(m, None)

    @classmethod
    def rectangular(cls, m: int, extra: int) -> "TruncationSpec":
        return cls(m, extra)

    @property
    def is_rectangular(self) -> bool:
        return self.extra_rows is not None

    @property
    def rows(self) -> int:
        return self.size + (self.extra_rows or 0)


def truncate(model: OperatorModel, spec: TruncationSpec) -> ComplexMatrix:
    """Exact leading section of the model in the canonical basis."""
    if spec.is_rectangular:
        need = model.required_extra_rows(spec.size)
        if spec.extra_rows < need:
            raise ContractError(
                f"rectangular section needs extra rows >= {need} (bandwidth), "
                f"got {spec.extra_rows}"
            )
    return ComplexMatrix(model.band_map().materialize(spec.rows, spec.size))


# -- norms ---------------------------------------------------------------------


@dataclass(frozen=True)
class NormEnclosure:
    """Certified interval [lower, upper] containing an operator norm."""

    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper + 1e-15 * max(1.0, abs(self.upper)):
            raise EnclosureUnavailableError(
                f"empty enclosure [{self.lower}, {self.upper}]"
            )

    @classmethod
    def exact(cls, v: float) -> "NormEnclosure":
        return cls(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __repr__(self) -> str:
        if self.is_exact:
            return f"NormEnclosure({self.upper:.6g})"
        return f"NormEnclosure([{self.lower:.6g}, {self.upper:.6g}])"


def _seq_abs_sup(seq: _BandSeq, scan: int = 512) -> tuple[float, float]:
    """Enclosure of sup_k |seq(k)| using a scan plus the monotone tail bound."""
    k0 = max(len(seq.prefix), 1) + scan
    ks = np.arange(1, k0 + 1)
    scan_max = float(np.abs(seq.values(ks)).max()) if k0 else 0.0
    lim = abs(seq.limit)
    dec = seq.decay(k0 + 1)
    return max(scan_max, lim), max(scan_max, lim + dec)


def model_norm(model: OperatorModel) -> NormEnclosure:
    """Operator norm: exact for diagonal/shift classes, enclosure otherwise.

    Toeplitz models return [max over a theta mesh of |phi|, sum |c_k|];
    shifted/perturbed composites return triangle-inequality enclosures.
    """
    if isinstance(model, FiniteMatrixModel):
        if model.matrix.rows == 0:
            return NormEnclosure.exact(0.0)
        return NormEnclosure.exact(operator_norm(model.matrix))
    if isinstance(model, (DiagonalModel, WeightedShiftModel)):
        seq = next(iter(model.band_map().bands.values()))
        pref = max((abs(v) for v in seq.prefix), default=0.0)
        p = len(seq.prefix)
        first_tail = abs(seq.value(p + 1))
        # prefix max vs first tail value: tail magnitudes are nonincreasing
        return NormEnclosure.exact(max(pref, first_tail))
    if isinstance(model, ToeplitzModel):
        theta = np.linspace(0.0, 2.0 * math.pi, 4096, endpoint=False)
        lo = float(np.abs(symbol_eval(model, theta)).max())
        hi = float(sum(abs(c) for _k, c in model.coeffs))
        return NormEnclosure(min(lo, hi), hi)
    if isinstance(model, ShiftedModel):
        base = model_norm(model.base)
        s = abs(model.scalar)
        lo = max(0.0, base.lower - s, s - base.upper)
        return NormEnclosure(lo, base.upper + s)
    if isinstance(model, PerturbedModel):
        base = model_norm(model.base)
        b = operator_norm(model.bump) if model.bump.rows else 0.0
        lo = max(0.0, base.lower - b, b - base.upper)
        return NormEnclosure(lo, base.upper + b)
    raise DomainError(f"unknown model class {type(model).__name__}")


def _min_section(*maps: _BandMap, floor: int = 64) -> int:
    need = floor
    for bm in maps:
        br, bc = bm.bump_shape
        span = abs(bm.min_offset) + bm.max_positive_offset
        need = max(need, bm.prefix_extent + span + 8, br + span + 8, bc + span + 8)
    return need


def _bandmap_section_norm(bm: _BandMap, m: int) -> float:
    rows = m + max(0, bm.max_positive_offset, bm.bump_shape[0] - m)
    sec = bm.materialize(rows, m)
    if sec.size == 0:
        return 0.0
    return float(np.linalg.norm(sec, 2))


def _bandmap_norm(bm: _BandMap, section: int) -> NormEnclosure:
    if not bm.bands:
        if bm.bump is None or not bm.bump.any():
            return NormEnclosure.exact(0.0)
        return NormEnclosure.exact(float(np.linalg.norm(bm.bump, 2)))
    sups = {off: _seq_abs_sup(seq) for off, seq in bm.bands.items()}
    if len(sups) == 1 and bm.bump is None:
        (lo, hi), = sups.values()
        if lo == hi:
            return NormEnclosure.exact(lo)
    m = max(section, _min_section(bm))
    sec = _bandmap_section_norm(bm, m)
    lower = max(max(lo for lo, _ in sups.values()), sec)
    upper = sum(hi for _, hi in sups.values())
    if bm.bump is not None:
        upper += float(np.linalg.norm(bm.bump, 2))
    return NormEnclosure(lower, max(lower, upper))


def difference_norm(
    a: OperatorModel, b: OperatorModel, section: int = 192
) -> NormEnclosure:
    """Certified enclosure of ||a - b||, exact for matched single-band classes."""
    return _bandmap_norm(_bm_sub(a.band_map(), b.band_map()), section)


def _product_band_data(
    bx: _BandMap, by: _BandMap
) -> dict[int, tuple[float, float, complex, float]]:
    """Per product band: (scan_sup_lo, scan_sup_hi, limit, tail_decay_at_scan_end).

    Covers only the band-times-band part of the product; bump cross terms are
    finite and live inside any sufficiently large section.
    """
    pairs: dict[int, list[tuple[int, _BandSeq, int, _BandSeq]]] = {}
    for d, u in bx.bands.items():
        for e, v in by.bands.items():
            pairs.setdefault(d + e, []).append((d, u, e, v))
    out = {}
    for f, plist in pairs.items():
        k0 = 1
        for _d, u, e, v in plist:
            k0 = max(k0, len(u.prefix) - e, len(v.prefix))
        k0 += 512
        ks = np.arange(1, k0 + 1)
        w = np.zeros(k0, dtype=complex)
        for _d, u, e, v in plist:
            ku = ks + e
            uv = np.zeros(k0, dtype=complex)
            ok = ku >= 1
            uv[ok] = u.values(ku[ok])
            w += uv * v.values(ks)
        scan = float(np.abs(w).max()) if k0 else 0.0
        limit = 0.0 + 0.0j
        dec = 0.0
        for _d, u, e, v in plist:
            lu, lv = u.limit, v.limit
            limit += lu * lv
            du = u.decay(max(1, k0 + 1 + e))
            dv = v.decay(k0 + 1)
            dec += abs(lu) * dv + abs(lv) * du + du * dv
        out[f] = (max(scan, abs(limit)), max(scan, abs(limit) + dec), limit, dec)
    return out


def compose_difference_product(
    a: OperatorModel, b: OperatorModel, c: OperatorModel, section: int = 192
) -> NormEnclosure:
    """Certified enclosure of ||(a - b) @ c||.

    Exact when the difference and c are single-band with settling tails;
    otherwise the lower bound is the norm of an exact rectangular section of
    the product and the upper bound adds the certified band tails beyond it.
    """
    bx = _bm_sub(a.band_map(), b.band_map())
    by = c.band_map()
    if not bx.bands and not by.bands:
        # purely finite: dense exact product
        xr, xc = bx.bump_shape
        yr, yc = by.bump_shape
        if bx.bump is None or by.bump is None:
            return NormEnclosure.exact(0.0)
        n = max(xr, xc, yr, yc)
        x = np.zeros((n, n), complex)
        x[:xr, :xc] = bx.bump
        y = np.zeros((n, n), complex)
        y[:yr, :yc] = by.bump
        return NormEnclosure.exact(float(np.linalg.norm(x @ y, 2)))
    if not bx.bands and bx.bump is None:
        return NormEnclosure.exact(0.0)

    data = _product_band_data(bx, by)
    no_bumps = bx.bump is None and by.bump is None
    if no_bumps and len(bx.bands) == 1 and len(by.bands) == 1:
        (lo, hi, _l, _d), = data.values()
        if lo == hi:
            return NormEnclosure.exact(lo)

    m = max(section, _min_section(bx, by))
    # exact section of the product: (X restricted) @ (Y P_m)
    r2 = m + max(0, by.max_positive_offset, by.bump_shape[0] - m)
    r3 = r2 + max(0, bx.max_positive_offset, bx.bump_shape[0] - r2)
    y_sec = by.materialize(r2, m)
    x_sec = bx.materialize(r3, r2)
    sec_norm = float(np.linalg.norm(x_sec @ y_sec, 2)) if m else 0.0

    band_lo = max((lo for lo, _hi, _l, _d in data.values()), default=0.0)
    lower = max(sec_norm, band_lo if no_bumps else 0.0)
    # tail of the product beyond column m: bump cross terms vanish there
    tail = 0.0
    for f, (_lo, _hi, limit, _dec) in data.items():
        seqs = [
            (d, u, e, v)
            for d, u in bx.bands.items()
            for e, v in by.bands.items()
            if d + e == f
        ]
        t = abs(limit)
        for _d, u, e, v in seqs:
            du = u.decay(max(1, m + 1 + e))
            dv = v.decay(m + 1)
            t += abs(u.limit) * dv + abs(v.limit) * du + du * dv
        tail += t
    upper = sec_norm + tail
    alt = difference_norm(a, b, section).upper * model_norm(c).upper
    upper = min(upper, alt) if alt >= lower else upper
    return NormEnclosure(lower, max(lower, upper))


# -- Toeplitz symbols ----------------------------------------------------------


def symbol_eval(model: OperatorModel, theta):
    """Evaluate the Toeplitz symbol sum c_k exp(i k theta) at theta (scalar or array)."""
    if not isinstance(model, ToeplitzModel):
        raise DomainError("symbol_eval is defined for Toeplitz models only")
    th = np.asarray(theta, dtype=float)
    out = np.zeros(th.shape, dtype=complex)
    for k, c in model.coeffs:
        out = out + c * np.exp(1j * k * th)
    if np.isscalar(theta) or th.ndim == 0:
        return complex(out)
    return out


def symbol_curve(model: ToeplitzModel, mesh: int = 1024) -> np.ndarray:
    """Symbol values on a closed uniform mesh (endpoint excluded)."""
    theta = np.linspace(0.0, 2.0 * math.pi, mesh, endpoint=False)
    return symbol_eval(model, theta)


def adjoint_band_map(model: OperatorModel) -> _BandMap:
    """Band decomposition of the Hilbert-space adjoint."""
    bm = model.band_map()
    bands = {}
    for off, seq in bm.bands.items():
        adj = seq.conj().index_shifted(off)
        if not adj.is_zero:
            bands[-off] = adj
    bump = None if bm.bump is None else bm.bump.conj().T.copy()
    return _BandMap(bands, bump)


class _AdjointModel(OperatorModel):
    """Internal wrapper exposing the adjoint's band map as a model."""

    def __init__(self, base: OperatorModel):
        self._bm = adjoint_band_map(base)

    def band_map(self) -> _BandMap:
        return self._bm


def adjoint_model(model: OperatorModel) -> OperatorModel:
    if isinstance(model, FiniteMatrixModel):
        return FiniteMatrixModel(model.matrix.adjoint())
    if isinstance(model, DiagonalModel):
        return DiagonalModel(
            tuple(complex(v).conjugate() for v in model.prefix), _conj_tail(model.tail)
        )
    return _AdjointModel(model)


def _conj_tail(rule: TailRule) -> TailRule:
    if isinstance(rule, ConstantTail):
        return ConstantTail(complex(rule.value).conjugate())
    if isinstance(rule, HarmonicTail):
        return HarmonicTail(complex(rule.scale).conjugate())
    return GeometricTail(complex(rule.scale).conjugate(), rule.ratio)


# -- JSON schema ---------------------------------------------------------------


def _c2j(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _j2c(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def _tail_to_json(rule: TailRule) -> dict:
    if isinstance(rule, ConstantTail):
        return {"kind": "constant", "value": _c2j(rule.value)}
    if isinstance(rule, HarmonicTail):
        return {"kind": "harmonic", "scale": _c2j(rule.scale)}
    return {"kind": "geometric", "scale": _c2j(rule.scale), "ratio": rule.ratio}


def _tail_from_json(data: dict) -> TailRule:
    kind = data.get("kind")
    if kind == "constant":
        return ConstantTail(_j2c(data["value"]))
    if kind == "harmonic":
        return HarmonicTail(_j2c(data["scale"]))
    if kind == "geometric":
        return GeometricTail(_j2c(data["scale"]), float(data["ratio"]))
    raise DomainError(f"unknown tail kind {kind!r}")


def _matrix_to_json(m: ComplexMatrix) -> list[list[list[float]]]:
    return [[_c2j(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def _matrix_from_json(rows) -> ComplexMatrix:
    return ComplexMatrix([[_j2c(v) for v in row] for row in rows])


def model_to_json(model: OperatorModel) -> dict:
    if isinstance(model, FiniteMatrixModel):
        return {"variant": "finite_matrix", "matrix": _matrix_to_json(model.matrix)}
    if isinstance(model, DiagonalModel):
        return {
            "variant": "diagonal",
            "prefix": [_c2j(v) for v in model.prefix],
            "tail": _tail_to_json(model.tail),
        }
    if isinstance(model, WeightedShiftModel):
        return {
            "variant": "weighted_shift",
            "prefix": [float(w) for w in model.prefix],
            "tail": _tail_to_json(model.tail),
        }
    if isinstance(model, ToeplitzModel):
        return {
            "variant": "toeplitz",
            "coeffs": {str(k): _c2j(c) for k, c in model.coeffs},
        }
    if isinstance(model, ShiftedModel):
        return {
            "variant": "shifted",
            "base": model_to_json(model.base),
            "scalar": _c2j(model.scalar),
        }
    if isinstance(model, PerturbedModel):
        return {
            "variant": "perturbed",
            "base": model_to_json(model.base),
            "bump": _matrix_to_json(model.bump),
        }
    raise DomainError(f"cannot serialize model class {type(model).__name__}")


def model_from_json(data: dict) -> OperatorModel:
    variant = data.get("variant")
    if variant == "finite_matrix":
        return FiniteMatrixModel(_matrix_from_json(data["matrix"]))
    if variant == "diagonal":
        return DiagonalModel(
            tuple(_j2c(v) for v in data.get("prefix", [])),
            _tail_from_json(data["tail"]),
        )
    if variant == "weighted_shift":
        return WeightedShiftModel(
            tuple(float(w) for w in data.get("prefix", [])),
            _tail_from_json(data["tail"]),
        )
    if variant == "toeplitz":
        return ToeplitzModel({int(k): _j2c(c) for k, c in data["coeffs"].items()})
    if variant == "shifted":
        return ShiftedModel(model_from_json(data["base"]), _j2c(data["scalar"]))
    if variant == "perturbed":
        return PerturbedModel(
            model_from_json(data["base"]), _matrix_from_json(data["bump"])
        )
    raise DomainError(f"unknown model variant {variant!r}")
