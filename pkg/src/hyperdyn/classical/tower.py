"""Depth-2 hyperspace tower X -> 2^X -> 2^(2^X) and the union/action square."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..hyperspace import induced_map, union_map
from ..metric import FiniteCompactSet, Point, SpaceHandle
from ..symbolic.points import SymbolicPoint


@dataclass(frozen=True)
class TowerElement:
    """A point (level 0), a set (level 1) or a family of sets (level 2)."""

    level: int
    payload: object

    def __post_init__(self):
        if self.level == 0:
            if isinstance(self.payload, (FiniteCompactSet, frozenset, tuple)):
                raise TypeError("level 0 carries a single point")
        elif self.level == 1:
            if not isinstance(self.payload, FiniteCompactSet):
                raise TypeError("level 1 carries a FiniteCompactSet")
        elif self.level == 2:
            if not (isinstance(self.payload, frozenset) and self.payload
                    and all(isinstance(A, FiniteCompactSet) for A in self.payload)):
                raise TypeError("level 2 carries a nonempty frozenset of FiniteCompactSet")
        else:
            raise ValueError("levels are 0, 1 and 2")


def tower_map(space: SpaceHandle, e: TowerElement) -> TowerElement:
    """f, f_* or f_** according to the level."""
    if e.level == 0:
        return TowerElement(0, space.map_f(e.payload))
    if e.level == 1:
        return TowerElement(1, induced_map(space, e.payload))
    return TowerElement(2, frozenset(induced_map(space, A) for A in e.payload))


def tower_project(space: SpaceHandle, e: TowerElement) -> TowerElement:
    """One step down: the union map at level 2; level 1 has no projection to points."""
    if e.level != 2:
        raise ValueError("only level-2 elements project by union")
    return TowerElement(1, union_map(sorted(e.payload, key=repr), space))


@dataclass(frozen=True)
class TowerReport:
    ok: bool
    left: FiniteCompactSet    # union of f_** (family)
    right: FiniteCompactSet   # f_* of the union


def tower_check(space: SpaceHandle, family: Sequence[FiniteCompactSet]) -> TowerReport:
    """Does union o f_** equal f_* o union on ``family``?  Exact set equality."""
    if not family:
        raise ValueError("family must be nonempty")
    fam = TowerElement(2, frozenset(family))
    left = tower_project(space, tower_map(space, fam)).payload
    right = tower_map(space, tower_project(space, fam)).payload
    return TowerReport(left == right, left, right)


@dataclass(frozen=True)
class PeriodicUnionReport:
    period: int
    orbit: tuple[FiniteCompactSet, ...]
    union: FiniteCompactSet
    fixed: bool


def periodic_orbit_union(space: SpaceHandle, E: FiniteCompactSet, max_period: int) -> PeriodicUnionReport:
    """Follow E under f_* until it returns, then test that the orbit's union is f_*-fixed."""
    orbit = [E]
    cur = E
    for _ in range(max_period):
        cur = induced_map(space, cur)
        if cur == E:
            U = union_map(orbit, space)
            return PeriodicUnionReport(len(orbit), tuple(orbit), U, induced_map(space, U) == U)
        orbit.append(cur)
    raise ValueError(f"E did not return within {max_period} steps")


def random_symbolic_family(members: int, set_size: int, depth: int, rng: np.random.Generator,
                           alphabet: str = "01") -> list[FiniteCompactSet]:
    """``members`` random sets of up to ``set_size`` length-``depth`` windows."""
    out = []
    for _ in range(members):
        k = int(rng.integers(1, set_size + 1))
        pts: list[Point] = [
            SymbolicPoint("".join(rng.choice(list(alphabet), depth))) for _ in range(k)
        ]
        out.append(FiniteCompactSet.of(pts))
    return out


__all__ = [
    "TowerElement", "tower_map", "tower_project", "TowerReport", "tower_check",
    "PeriodicUnionReport", "periodic_orbit_union", "random_symbolic_family",
]
