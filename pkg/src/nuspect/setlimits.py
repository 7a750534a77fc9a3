"""Finite point clouds standing for compact spectral sets.

Hausdorff metric, directed distances, tail estimators for the limit
inferior/superior of a set sequence, and single-link component clustering.
A cloud is a finite sample; duplicates are allowed but every distance is a
set distance and ignores multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DomainError

__all__ = [
    "PointCloud",
    "CloudSequence",
    "directed_distance",
    "hausdorff_distance",
    "limsup_estimate",
    "liminf_estimate",
    "cluster_components",
    "cloud_to_csv",
    "cloud_from_csv",
    "cloud_to_json",
    "cloud_from_json",
]

_CHUNK = 512  # row block for pairwise distance sweeps


class PointCloud:
    """Finite set of complex numbers; immutable."""

    __slots__ = ("_pts",)

    def __init__(self, points: Iterable[complex] = ()):
        arr = np.asarray(
            points if isinstance(points, np.ndarray) else list(points),
            dtype=np.complex128,
        ).ravel()
        if arr.size and not np.all(np.isfinite(arr)):
            raise DomainError("cloud points must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        self._pts = arr

    @property
    def points(self) -> np.ndarray:
        return self._pts

    @property
    def is_empty(self) -> bool:
        return self._pts.size == 0

    def __len__(self) -> int:
        return int(self._pts.size)

    def __iter__(self):
        return iter(self._pts.tolist())

    def __repr__(self) -> str:
        return f"PointCloud({len(self)} points)"

    def translated(self, offset: complex) -> "PointCloud":
        return PointCloud(self._pts + offset)

    def without_ball(self, center: complex, radius: float) -> "PointCloud":
        """Points at distance >= radius from center (drops an excluded ball)."""
        keep = np.abs(self._pts - center) >= radius
        return PointCloud(self._pts[keep])

    def union(self, other: "PointCloud") -> "PointCloud":
        return PointCloud(np.concatenate([self._pts, other.points]))


@dataclass(frozen=True)
class CloudSequence:
    """Ordered sequence of clouds, indexed from 1."""

    clouds: tuple[PointCloud, ...]

    def __post_init__(self):
        if not self.clouds:
            raise DomainError("cloud sequence must be nonempty")

    def __len__(self) -> int:
        return len(self.clouds)

    def member(self, n: int) -> PointCloud:
        if not 1 <= n <= len(self.clouds):
            raise DomainError(f"index {n} outside 1..{len(self.clouds)}")
        return self.clouds[n - 1]

    def tail(self, tail_start: int) -> tuple[PointCloud, ...]:
        if not 1 <= tail_start <= len(self.clouds):
            raise DomainError(
                f"tail start {tail_start} outside 1..{len(self.clouds)}"
            )
        return self.clouds[tail_start - 1 :]


def _min_dists(sources: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """For every source point, distance to the nearest target point."""
    if sources.size * targets.size > 1_000_000:
        from scipy.spatial import cKDTree

        tree = cKDTree(np.column_stack([targets.real, targets.imag]))
        dist, _ = tree.query(np.column_stack([sources.real, sources.imag]))
        return np.asarray(dist, dtype=float)
    out = np.empty(sources.size, dtype=float)
    for start in range(0, sources.size, _CHUNK):
        block = sources[start : start + _CHUNK]
        d = np.abs(block[:, None] - targets[None, :])
        out[start : start + block.size] = d.min(axis=1)
    return out


def directed_distance(a: PointCloud, b: PointCloud) -> float:
    """sup over x in a of dist(x, b)."""
    if a.is_empty or b.is_empty:
        raise DomainError("directed_distance needs nonempty clouds")
    return float(_min_dists(a.points, b.points).max())


def hausdorff_distance(a: PointCloud, b: PointCloud) -> float:
    """max of the two directed distances; zero iff the point sets agree."""
    return max(directed_distance(a, b), directed_distance(b, a))


def _candidates(tail: Sequence[PointCloud]) -> np.ndarray:
    pts = np.concatenate([c.points for c in tail]) if tail else np.empty(0, complex)
    if pts.size == 0:
        raise DomainError("tail clouds are all empty")
    # np.unique sorts by (real, imag): canonical, order-independent output.
    return np.unique(pts)


def limsup_estimate(
    seq: CloudSequence,
    eps: float,
    tail_start: int,
    tols: Tolerances = DEFAULT,
) -> PointCloud:
    """Points whose eps-ball meets infinitely many members, by a tail proxy.

    "Infinitely many" is undecidable from a finite window; a candidate
    qualifies when its open eps-ball meets at least ``limsup_frequency`` of
    the tail clouds. Candidates are drawn from the union of tail clouds.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    tail = seq.tail(tail_start)
    cands = _candidates(tail)
    hits = np.zeros(cands.size, dtype=int)
    for cloud in tail:
        if cloud.is_empty:
            continue
        hits += _min_dists(cands, cloud.points) < eps
    need = int(np.ceil(tols.limsup_frequency * len(tail)))
    return PointCloud(cands[hits >= max(need, 1)])


def liminf_estimate(seq: CloudSequence, eps: float, tail_start: int) -> PointCloud:
    """Points whose eps-ball meets every tail member."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    tail = seq.tail(tail_start)
    cands = _candidates(tail)
    keep = np.ones(cands.size, dtype=bool)
    for cloud in tail:
        if cloud.is_empty:
            keep[:] = False
            break
        keep &= _min_dists(cands, cloud.points) < eps
    return PointCloud(cands[keep])


def cluster_components(a: PointCloud, gap: float) -> list[PointCloud]:
    """Single-link clusters of the gap-graph (edges where distance < gap).

    The output partition is canonical: clusters are sorted by their minimal
    point under (real, imag) order, points inside each cluster likewise, so
    the result is invariant under permutations of the input.
    """
    if a.is_empty:
        raise DomainError("cluster_components needs a nonempty cloud")
    if gap <= 0:
        raise DomainError("gap must be positive")
    pts = a.points
    n = pts.size
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for i in range(n):
        d = np.abs(pts[i + 1 :] - pts[i])
        for off in np.nonzero(d < gap)[0]:
            union(i, i + 1 + int(off))

    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(complex(pts[i]))
    clusters = []
    for members in groups.values():
        members.sort(key=lambda z: (z.real, z.imag))
        clusters.append(members)
    clusters.sort(key=lambda ms: (ms[0].real, ms[0].imag))
    return [PointCloud(ms) for ms in clusters]


# -- serialization -------------------------------------------------------------
# 17 significant decimal digits round-trip IEEE doubles exactly.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def cloud_to_csv(a: PointCloud) -> str:
    lines = ["re,im"]
    for z in a:
        lines.append(f"{_fmt(z.real)},{_fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def cloud_from_csv(text: str) -> PointCloud:
    pts = []
    for i, line in enumerate(text.strip().splitlines()):
        line = line.strip()
        if not line or (i == 0 and line.lower().startswith("re")):
            continue
        re_s, im_s = line.split(",")
        pts.append(complex(float(re_s), float(im_s)))
    return PointCloud(pts)


def cloud_to_json(a: PointCloud) -> list[list[float]]:
    return [[z.real, z.imag] for z in a]


def cloud_from_json(data: Sequence[Sequence[float]]) -> PointCloud:
    return PointCloud([complex(p[0], p[1]) for p in data])
