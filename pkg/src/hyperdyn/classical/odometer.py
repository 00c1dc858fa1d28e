"""The adding machine on an inverse limit of cyclic groups, truncated at L levels.

A point is stored by its residue at the top level; residues at lower
levels are reductions of it, so compatibility holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..metric import FiniteCompactSet, SpaceHandle, hausdorff_distance


@dataclass(frozen=True)
class OdometerSpace:
    """Moduli n_1 | n_2 | ... | n_L."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli:
            raise ValueError("need at least one level")
        prev = 1
        for n in self.moduli:
            if n < 1 or n % prev:
                raise ValueError(f"moduli must form a divisibility chain, got {self.moduli}")
            prev = n

    @classmethod
    def dyadic(cls, levels: int = 8) -> "OdometerSpace":
        return cls(tuple(2 ** i for i in range(1, levels + 1)))

    @property
    def levels(self) -> int:
        return len(self.moduli)

    @property
    def top(self) -> int:
        return self.moduli[-1]

    def modulus(self, level: int) -> int:
        """n_level for 1-based level; level 0 is the trivial group."""
        return 1 if level == 0 else self.moduli[level - 1]


@dataclass(frozen=True)
class OdometerPoint:
    space: OdometerSpace
    value: int  # residue mod n_L

    def __post_init__(self):
        if not 0 <= self.value < self.space.top:
            raise ValueError("residue out of range for the top level")

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(self.value % n for n in self.space.moduli)

    def residue(self, level: int) -> int:
        return self.value % self.space.modulus(level)


def odometer_add_one(p: OdometerPoint) -> OdometerPoint:
    return OdometerPoint(p.space, (p.value + 1) % p.space.top)


def common_level(p: OdometerPoint, q: OdometerPoint) -> int:
    """Largest level at which the residues agree (0 if they differ at level 1)."""
    lvl = 0
    for n in p.space.moduli:
        if p.value % n != q.value % n:
            break
        lvl += 1
    return lvl


def odometer_distance(p: OdometerPoint, q: OdometerPoint) -> float:
    """2^-(common level); points agreeing at every stored level are equal."""
    lvl = common_level(p, q)
    return 0.0 if lvl == p.space.levels else 2.0 ** -lvl


def odometer_space(space: OdometerSpace) -> SpaceHandle:
    mods = np.array(space.moduli)

    def pairwise(A, B):
        a = np.array([p.value for p in A])[:, None, None]
        b = np.array([p.value for p in B])[None, :, None]
        agree = (a % mods) == (b % mods)
        lvl = np.cumprod(agree, axis=2).sum(axis=2)
        return np.where(lvl == len(mods), 0.0, 2.0 ** -lvl.astype(float))

    return SpaceHandle(
        distance=odometer_distance, map_f=odometer_add_one,
        label=f"odometer:{','.join(map(str, space.moduli))}", pairwise=pairwise,
        format_point=lambda p: str(p.value),
        parse_point=lambda s: OdometerPoint(space, int(s)),
    )


def cylinder(space: OdometerSpace, level: int, residue: int) -> list[OdometerPoint]:
    """All top-level points whose level-``level`` residue is ``residue``."""
    n = space.modulus(level)
    return [OdometerPoint(space, v) for v in range(residue % n, space.top, n)]


def clopen_set(space: OdometerSpace, level: int, residues: Iterable[int]) -> FiniteCompactSet:
    pts = [p for r in sorted(set(residues)) for p in cylinder(space, level, r)]
    return FiniteCompactSet.of(pts)


@dataclass(frozen=True)
class PeriodResult:
    period: int | None
    inconclusive: bool


def odometer_clopen_periodicity(space: OdometerSpace, level: int, residues: Iterable[int],
                                horizon: int) -> PeriodResult:
    """Least m <= horizon with S + m = S for S a set of level residues.

    Searching up to n_level always succeeds; a shorter horizon that finds
    nothing is reported as inconclusive.
    """
    n = space.modulus(level)
    S = frozenset(r % n for r in residues)
    if not S:
        raise ValueError("subset must be nonempty")
    for m in range(1, min(horizon, n) + 1):
        if frozenset((r + m) % n for r in S) == S:
            return PeriodResult(m, False)
    return PeriodResult(None, True)


@dataclass(frozen=True)
class DensityReport:
    ok: bool
    eps: float
    level: int
    worst: float
    periods: tuple[int, ...]


def odometer_periodic_density(space: OdometerSpace, eps_exp: int, points: Sequence[OdometerPoint]) -> DensityReport:
    """Each sampled {x} is within 2^-eps_exp of its level-eps_exp cylinder, a periodic clopen set.

    The cylinder's farthest points agree with x only up to level eps_exp,
    so the distance equals eps exactly; the comparison is <=.
    """
    if not 0 <= eps_exp <= space.levels:
        raise ValueError("eps exponent must lie between 0 and the number of levels")
    eps = 2.0 ** -eps_exp
    h = odometer_space(space)
    worst, periods = 0.0, []
    for x in points:
        r = x.residue(eps_exp)
        C = clopen_set(space, eps_exp, [r])
        d = hausdorff_distance(h, FiniteCompactSet((x,)), C)
        worst = max(worst, d)
        periods.append(odometer_clopen_periodicity(space, eps_exp, [r], space.modulus(eps_exp)).period)
    return DensityReport(worst <= eps, eps, eps_exp, worst, tuple(periods))


def union_approximation(space: OdometerSpace, eps_exp: int, A: Sequence[OdometerPoint]) -> tuple[float, int]:
    """(d_H(A, union of the level cylinders of A), t_*-period of that union)."""
    res = {x.residue(eps_exp) for x in A}
    C = clopen_set(space, eps_exp, res)
    d = hausdorff_distance(odometer_space(space), FiniteCompactSet.of(A), C)
    period = odometer_clopen_periodicity(space, eps_exp, res, space.modulus(eps_exp)).period
    return d, period


def random_points(space: OdometerSpace, count: int, seed: int = 0) -> list[OdometerPoint]:
    rng = np.random.default_rng(seed)
    return [OdometerPoint(space, int(v)) for v in rng.integers(0, space.top, count)]


__all__ = [
    "OdometerSpace", "OdometerPoint", "odometer_add_one", "common_level", "odometer_distance",
    "odometer_space", "cylinder", "clopen_set", "PeriodResult", "odometer_clopen_periodicity",
    "DensityReport", "odometer_periodic_density", "union_approximation", "random_points",
]
