"""Radius-dependent rotation of the closed unit disc, f(r, theta) = (r, theta + r).

(D, f) is distal, yet the induced map on 2^D is not: the experiment below
builds a set A of points on rational radii r_n converging to an irrational
radius, and a set B' that the f_*-orbit of A approaches but whose own orbit
stays a fixed distance away from A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial.distance import cdist

from ..metric import REAL_TOL, FiniteCompactSet, SpaceHandle, hausdorff_distance, kdtree_dedup

TWO_PI = 2 * math.pi
#: irrational target radius used by the experiment
TARGET_RADIUS = math.sqrt(2) / 20


@dataclass(frozen=True)
class DiscPoint:
    r: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError("radius must lie in [0, 1]")
        object.__setattr__(self, "theta", self.theta % TWO_PI)

    def cartesian(self) -> tuple[float, float]:
        return (self.r * math.cos(self.theta), self.r * math.sin(self.theta))


def rotate_angle(theta: float, r: float, n: int = 1) -> float:
    """theta + n r mod 2 pi, for any real r."""
    return (theta + n * r) % TWO_PI


def disc_map(p: DiscPoint, n: int = 1) -> DiscPoint:
    return DiscPoint(p.r, rotate_angle(p.theta, p.r, n))


def disc_distance(p: DiscPoint, q: DiscPoint) -> float:
    (a, b), (c, d) = p.cartesian(), q.cartesian()
    return math.hypot(a - c, b - d)


def _xy(points) -> np.ndarray:
    return np.array([p.cartesian() for p in points], dtype=float).reshape(-1, 2)


def disc_space() -> SpaceHandle:
    return SpaceHandle(
        distance=disc_distance, map_f=disc_map, label="disc:rotation", dedup_tol=REAL_TOL,
        dedup=kdtree_dedup(REAL_TOL, coords=_xy),
        pairwise=lambda A, B: cdist(_xy(A), _xy(B)),
        format_point=lambda p: f"{p.r!r} {p.theta!r}",
        parse_point=lambda s: DiscPoint(*map(float, s.split())),
    )


def first_return(r: float, horizon: int, tol: float) -> int | None:
    """Least n in 1..horizon whose rotation n r is within tol of 0 mod 2 pi."""
    n = np.arange(1, horizon + 1)
    a = np.mod(n * r, TWO_PI)
    close = np.minimum(a, TWO_PI - a) < tol
    return int(n[close.argmax()]) if close.any() else None


# -- the non-minimality experiment ----------------------------------------------


def rational_radii(target: float, n_terms: int, spread: float = 1e-3, max_q: int = 1000) -> list[Fraction]:
    """Fractions p/q with 2 pi p/q approaching ``target``.

    The n-th radius aims at target + spread (n_terms + 1 - n)/n_terms, so the
    errors shrink linearly and the angles m r_n fan out over the circle
    for m near 2 pi n_terms / ((n_terms + 1) spread).
    """
    out = []
    for n in range(1, n_terms + 1):
        aim = (target + spread * (n_terms + 1 - n) / n_terms) / TWO_PI
        out.append(Fraction(aim).limit_denominator(max_q))
    return out


@dataclass
class DiscExperiment:
    target: float
    radii: list[Fraction]
    circle_samples: int
    A: FiniteCompactSet
    B_prime: FiniteCompactSet
    delta0: float
    initial_gap: float
    q1: float = math.nan
    q1_step: int | None = None
    q2: float = math.nan
    q2_step: int | None = None
    horizon: int = 0
    approximation: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.q1 < self.notes.get("q1_threshold", 0.05) and self.q2 >= self.delta0


def _build_sets(target: float, radii: list[Fraction], circle_samples: int):
    A = [DiscPoint(TWO_PI * float(f), 0.0) for f in radii] + [DiscPoint(target, 0.0)]
    orbits = [DiscPoint(TWO_PI * float(f), TWO_PI * k / f.denominator)
              for f in radii for k in range(f.denominator)]
    circle = [DiscPoint(target, TWO_PI * k / circle_samples) for k in range(circle_samples)]
    return A, orbits, circle


def _circle_gap_bound(A_xy: np.ndarray, target: float, circle_samples: int, grid: int = 4096) -> float:
    """Lower bound on d(f^m(circle sample), A) valid for every rotation.

    Some sample point always lies within half a sample gap of the circle
    point farthest from A, so the bound is that farthest distance minus
    the chord of half a gap.
    """
    th = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    circ = np.stack([target * np.cos(th), target * np.sin(th)], axis=1)
    far = cdist(circ, A_xy).min(axis=1).max()
    return float(far - 2 * target * math.sin(math.pi / (2 * circle_samples)))


def _rotated(r: np.ndarray, theta: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Cartesian coordinates, shape (len(m), len(r), 2), of f^m at each point."""
    ang = theta[None, :] + m[:, None] * r[None, :]
    return np.stack([r * np.cos(ang), r * np.sin(ang)], axis=2)


def _directed(fixed: np.ndarray, moving: np.ndarray, moving_first: bool) -> np.ndarray:
    """Per step, the directed Hausdorff distance moving -> fixed (or fixed -> moving).

    ``moving`` has shape (steps, k, 2).  Squared distances come from a
    matrix product; the rounding this introduces is far below the
    tolerance used when screening.
    """
    g = moving @ fixed.T
    d2 = (moving ** 2).sum(axis=2)[:, :, None] + (fixed ** 2).sum(axis=1)[None, None, :] - 2 * g
    d = np.sqrt(np.clip(d2, 0.0, None))
    if moving_first:
        return d.min(axis=2).max(axis=1)
    return d.min(axis=1).max(axis=1)


def _screened_min(lower, exact, steps: np.ndarray, tol: float = REAL_TOL) -> tuple[float, int]:
    """min over steps of exact(m) to within tol, visiting candidates by increasing lower bound."""
    lb = lower(steps)
    best, arg = math.inf, None
    for k in np.argsort(lb, kind="stable"):
        if lb[k] >= best - tol:
            break
        v = exact(int(steps[k]))
        if v < best:
            best, arg = v, int(steps[k])
    return best, arg


def disc_nonminimality_experiment(
    n_terms: int = 8, horizon: int = 100_000, eps: float = 0.05, circle_samples: int = 128,
    target: float = TARGET_RADIUS, spread: float = 1e-3, max_q: int = 1000, chunk: int = 4096,
) -> DiscExperiment:
    """Quantity (1): min_m d_H(f_*^m A, B'); quantity (2): min_m d_H(f_*^m B', A); m = 0..horizon.

    B' holds the full periodic orbit at each rational radius and an even
    sample of the circle at the target radius.  delta0 is fixed from the
    initial sets before any iteration.
    """
    if n_terms < 1 or horizon < 0:
        raise ValueError("need n_terms >= 1 and horizon >= 0")
    radii = rational_radii(target, n_terms, spread, max_q)
    A, orbits, circle = _build_sets(target, radii, circle_samples)
    Bp = orbits + circle
    A_r = np.array([p.r for p in A]); A_t = np.array([p.theta for p in A])
    B_r = np.array([p.r for p in Bp]); B_t = np.array([p.theta for p in Bp])
    C_r = np.array([p.r for p in circle]); C_t = np.array([p.theta for p in circle])
    A_xy, B_xy, C_xy = _xy(A), _xy(Bp), _xy(circle)

    delta0 = _circle_gap_bound(A_xy, target, circle_samples)
    space = disc_space()
    Aset, Bset = FiniteCompactSet.of(A), FiniteCompactSet.of(Bp)
    exp = DiscExperiment(
        target, radii, circle_samples, Aset, Bset, delta0,
        initial_gap=hausdorff_distance(space, Aset, Bset), horizon=horizon,
        approximation=f"full rational orbits (q <= {max_q}), {circle_samples}-point circle sample",
        notes={"q1_threshold": eps},
    )
    steps = np.arange(0, horizon + 1)

    def chunked(fn):
        return lambda ms: np.concatenate([fn(ms[i:i + chunk]) for i in range(0, len(ms), chunk)])

    # (1): the circle sample is a subset of B', so its directed distance to f^m(A) is a lower bound
    def lb1(ms):
        return _directed(C_xy, _rotated(A_r, A_t, ms), moving_first=False)

    def ex1(m):
        X = _rotated(A_r, A_t, np.array([m]))[0]
        D = cdist(X, B_xy)
        return float(max(D.min(axis=1).max(), D.min(axis=0).max()))

    exp.q1, exp.q1_step = _screened_min(chunked(lb1), ex1, steps)

    # (2): f^m(B') is the rotated circle sample plus the rational orbits, which
    # f maps onto themselves; both directed parts bound d_H from below
    O_xy = _xy(orbits)
    orbit_part = float(cdist(O_xy, A_xy).min(axis=1).max()) if orbits else 0.0

    def lb2(ms):
        return np.maximum(_directed(A_xy, _rotated(C_r, C_t, ms), moving_first=True), orbit_part)

    def ex2(m):
        X = _rotated(B_r, B_t, np.array([m]))[0]
        D = cdist(X, A_xy)
        return float(max(D.min(axis=1).max(), D.min(axis=0).max()))

    exp.q2, exp.q2_step = _screened_min(chunked(lb2), ex2, steps)
    return exp


__all__ = [
    "TWO_PI", "TARGET_RADIUS", "DiscPoint", "rotate_angle", "disc_map", "disc_distance", "disc_space",
    "first_return", "rational_radii", "DiscExperiment", "disc_nonminimality_experiment",
]
