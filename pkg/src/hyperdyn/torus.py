"""The hyperbolic toral automorphism with matrix [[3, 1], [5, 2]].

Orbits along the stable direction contract by lambda_- per step while
plane coordinates grow like lambda_+^j, so iterates are carried in
mpmath at ``DPS`` decimal digits.  In double precision the difference
T^j(a) - T^j(a + s v_-) would be pure rounding noise by j ~ 12.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .hyperspace import cdiam
from .metric import REAL_TOL, FiniteCompactSet, SpaceHandle, hausdorff_distance, kdtree_dedup

MATRIX = ((3, 1), (5, 2))
DPS = 60


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float


@dataclass(frozen=True)
class TorusPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (0.0 <= self.x < 1.0 and 0.0 <= self.y < 1.0):
            raise ValueError("torus coordinates must be reduced to [0, 1)")


def project(p: PlanePoint) -> TorusPoint:
    x, y = p.x % 1.0, p.y % 1.0
    return TorusPoint(0.0 if x == 1.0 else x, 0.0 if y == 1.0 else y)


def torus_distance(a: TorusPoint, b: TorusPoint) -> float:
    """min |a - b + z| over z in {-1, 0, 1}^2."""
    return min(math.hypot(a.x - b.x + i, a.y - b.y + j) for i in (-1, 0, 1) for j in (-1, 0, 1))


def _torus_pairwise(A, B) -> np.ndarray:
    a = np.array([(p.x, p.y) for p in A], dtype=float)
    b = np.array([(p.x, p.y) for p in B], dtype=float)
    d = a[:, None, :] - b[None, :, :]
    d -= np.round(d)
    return np.hypot(d[..., 0], d[..., 1])


def _torus_coords(points) -> np.ndarray:
    return np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)


def thom_apply_plane(p: PlanePoint) -> PlanePoint:
    (a, b), (c, d) = MATRIX
    return PlanePoint(a * p.x + b * p.y, c * p.x + d * p.y)


def thom_apply(p: TorusPoint) -> TorusPoint:
    return project(thom_apply_plane(PlanePoint(p.x, p.y)))


def torus_space() -> SpaceHandle:
    return SpaceHandle(
        distance=torus_distance, map_f=thom_apply, label="torus:thom", dedup_tol=REAL_TOL,
        pairwise=_torus_pairwise,
        dedup=kdtree_dedup(REAL_TOL, boxsize=1.0, coords=_torus_coords),
        format_point=lambda p: f"{p.x!r} {p.y!r}",
        parse_point=lambda s: TorusPoint(*map(float, s.split())),
    )


@dataclass(frozen=True)
class ThomSystem:
    matrix: tuple
    lambda_plus: float
    lambda_minus: float
    v_plus: tuple[float, float]
    v_minus: tuple[float, float]

    @property
    def determinant(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c


def _eigen_mp():
    with mpmath.workdps(DPS):
        r = mpmath.sqrt(21)
        lp = (5 + r) / 2
        lm = 2 / (5 + r)  # = (5 - sqrt 21)/2 without cancellation
        vp = _unit((mpmath.mpf(1), lp - 3))
        vm = _unit((mpmath.mpf(1), lm - 3))
    return lp, lm, vp, vm


def _unit(v):
    n = mpmath.sqrt(v[0] ** 2 + v[1] ** 2)
    return (v[0] / n, v[1] / n)


def eigen_data() -> ThomSystem:
    """Closed-form eigenvalues (5 +- sqrt 21)/2 and unit eigenvectors with positive x."""
    lp, lm, vp, vm = _eigen_mp()
    return ThomSystem(
        MATRIX, float(lp), float(lm),
        (float(vp[0]), float(vp[1])), (float(vm[0]), float(vm[1])),
    )


# -- stable contraction -------------------------------------------------------


@dataclass(frozen=True)
class DecayRow:
    j: int
    measured: float
    predicted: float
    bound: float


def stable_decay(a: PlanePoint, s: float, j_max: int) -> list[DecayRow]:
    """|T^j a - T^j(a + s v_-)| for j = 0..j_max with the prediction |s| lambda_-^j.

    Plane coordinates of both orbits grow like lambda_+^j when ``a`` has an
    unstable component; the difference does not, and the working
    precision is raised with j so that it survives the cancellation.
    """
    if j_max < 0:
        raise ValueError("j must be nonnegative")
    grow = math.log10(4.8) * j_max
    if grow > 900:
        raise OverflowError("j too large for the configured precision guard")
    rows = []
    with mpmath.workdps(DPS + int(grow) + 5):
        _, lm, _, vm = _eigen_mp()
        p = (mpmath.mpf(a.x), mpmath.mpf(a.y))
        q = (p[0] + mpmath.mpf(s) * vm[0], p[1] + mpmath.mpf(s) * vm[1])
        (m00, m01), (m10, m11) = MATRIX
        for j in range(j_max + 1):
            if j:
                p = (m00 * p[0] + m01 * p[1], m10 * p[0] + m11 * p[1])
                q = (m00 * q[0] + m01 * q[1], m10 * q[0] + m11 * q[1])
            meas = mpmath.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)
            rows.append(DecayRow(j, float(meas), float(abs(s) * lm ** j), abs(s) * 2.0 ** -j))
    return rows


# -- segment sets -------------------------------------------------------------


@dataclass(frozen=True)
class SegmentSet:
    base: tuple[PlanePoint, ...]
    M: float
    samples_per_segment: int

    def __post_init__(self):
        if self.M < 0:
            raise ValueError("M must be nonnegative")
        if self.M > 0 and self.samples_per_segment < 2:
            raise ValueError("need at least 2 samples per segment")

    def parameters(self) -> list[float]:
        if self.M == 0:
            return [0.0]
        k = self.samples_per_segment
        return [-self.M + 2 * self.M * i / (k - 1) for i in range(k)]

    def plane_samples_mp(self) -> list[list[tuple]]:
        """Per base point, the sample points a + s v_- in mpmath."""
        _, _, _, vm = _eigen_mp()
        out = []
        with mpmath.workdps(DPS):
            for b in self.base:
                row = []
                for s in self.parameters():
                    s = mpmath.mpf(s)
                    row.append((mpmath.mpf(b.x) + s * vm[0], mpmath.mpf(b.y) + s * vm[1]))
                out.append(row)
        return out


def _reduce_mp(p):
    return (p[0] - mpmath.floor(p[0]), p[1] - mpmath.floor(p[1]))


def _to_torus(p) -> TorusPoint:
    x, y = float(p[0]), float(p[1])
    return TorusPoint(x % 1.0 if x < 1.0 else 0.0, y % 1.0 if y < 1.0 else 0.0)


def build_segment_set(base: Sequence[PlanePoint], M: float, samples: int,
                      collision_tol: float = 1e-9) -> tuple[SegmentSet, FiniteCompactSet]:
    """Sample each stable segment a + [-M, M] v_- and project to the torus.

    Warns when samples from different segments land within
    ``collision_tol`` of each other (the projection is then not injective
    at this resolution); such points are kept, not merged.
    """
    seg = SegmentSet(tuple(base), float(M), samples)
    pts = [_to_torus(_reduce_mp(p)) for row in seg.plane_samples_mp() for p in row]
    if len(base) > 1:
        D = _torus_pairwise(pts, pts)
        k = len(seg.parameters())
        owner = np.repeat(np.arange(len(base)), k)
        clash = (D < collision_tol) & (owner[:, None] != owner[None, :])
        if clash.any():
            warnings.warn("stable segments of distinct base points nearly collide", RuntimeWarning)
    return seg, FiniteCompactSet(tuple(dict.fromkeys(pts)))


@dataclass(frozen=True)
class CollapseRow:
    j: int
    hausdorff: float
    bound: float
    slack: float
    cdiam: float
    cdiam_radius: float


def segment_collapse_experiment(
    base: Sequence[PlanePoint], M: float, samples: int, j_max: int
) -> list[CollapseRow]:
    """Track d_H(t^j(base), t^j(C_M)) and cdiam(t^j(C_M)) for j = 0..j_max.

    Iterates are exact integer-matrix images reduced mod 1 in mpmath.
    The cdiam radius is 1.5 times the contracted sample spacing, which
    chains each segment into one cluster while keeping segments apart.
    """
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    seg = SegmentSet(tuple(base), float(M), samples)
    _, lm, _, _ = _eigen_mp()
    lm = float(lm)
    k = len(seg.parameters())
    space = torus_space()
    rows = []
    with mpmath.workdps(DPS):
        grid = [[_reduce_mp(p) for p in row] for row in seg.plane_samples_mp()]
        centre = (k - 1) // 2 if M > 0 else 0
        (m00, m01), (m10, m11) = MATRIX
        for j in range(j_max + 1):
            if j:
                grid = [[_reduce_mp((m00 * p[0] + m01 * p[1], m10 * p[0] + m11 * p[1])) for p in row] for row in grid]
            base_pts = [row[centre] for row in grid]
            flat = [p for row in grid for p in row]
            base_t = [_to_torus(p) for p in base_pts]
            flat_t = [_to_torus(p) for p in flat]
            # nearest base point found in double precision, distance re-measured in mpmath
            D = _torus_pairwise(flat_t, base_t)
            nearest = D.argmin(axis=1)
            worst = mpmath.mpf(0)
            for p, i in zip(flat, nearest):
                q = base_pts[i]
                dx = p[0] - q[0]
                dy = p[1] - q[1]
                dx -= mpmath.nint(dx)
                dy -= mpmath.nint(dy)
                worst = max(worst, mpmath.sqrt(dx * dx + dy * dy))
            spacing = (2 * M / (samples - 1) if M > 0 else 0.0) * lm ** j
            radius = 1.5 * spacing
            cset = FiniteCompactSet(tuple(dict.fromkeys(flat_t)))
            rows.append(CollapseRow(
                j=j, hausdorff=float(worst), bound=M * lm ** j,
                slack=(M / (samples - 1) if M > 0 else 0.0) * lm ** j,
                cdiam=cdiam(space, cset, radius), cdiam_radius=radius,
            ))
    return rows


def base_points(count: int, seed: int = 0) -> list[PlanePoint]:
    rng = np.random.default_rng(seed)
    return [PlanePoint(float(x), float(y)) for x, y in rng.random((count, 2))]


@dataclass(frozen=True)
class DiagonalizationReport:
    collapse_step: int | None
    cdiam_at_collapse: float | None
    best_step: int | None
    best_distance: float
    distances: tuple[float, ...]


def diagonalization_experiment(
    base: Sequence[PlanePoint], M: float, samples: int, target: FiniteCompactSet,
    eps: float, radius: float, horizon: int,
) -> DiagonalizationReport:
    """Iterate a segment set until its cdiam at ``radius`` drops below ``eps``,
    then keep iterating and record how close it comes to ``target``."""
    space = torus_space()
    _, cur = build_segment_set(base, M, samples)
    collapse, cd0 = None, None
    dists: list[float] = []
    best, best_j = math.inf, None
    for j in range(horizon + 1):
        if j:
            cur = FiniteCompactSet(tuple(dict.fromkeys(thom_apply(p) for p in cur.points)))
        if collapse is None:
            c = cdiam(space, cur, radius)
            if c < eps:
                collapse, cd0 = j, c
        if collapse is not None:
            d = hausdorff_distance(space, cur, target)
            dists.append(d)
            if d < best:
                best, best_j = d, j
    return DiagonalizationReport(collapse, cd0, best_j, best, tuple(dists))


__all__ = [
    "MATRIX", "DPS", "PlanePoint", "TorusPoint", "project", "torus_distance", "thom_apply",
    "thom_apply_plane", "torus_space", "ThomSystem", "eigen_data", "DecayRow", "stable_decay",
    "SegmentSet", "build_segment_set", "CollapseRow", "segment_collapse_experiment",
    "base_points", "DiagonalizationReport", "diagonalization_experiment",
]
