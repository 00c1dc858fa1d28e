"""The induced systems (2^X, f_*) and (C(K,X), f_*).

Vietoris neighbourhoods, the union map, the closed relations INT/INC/EPS,
component diameter and the orbit predicates (transitive point, proximal,
asymptotic, Kronecker) all live here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .metric import (
    FiniteCompactSet,
    FunctionElement,
    Point,
    SpaceHandle,
    _distance_matrix,
    hausdorff_distance,
)


def induced_map(space: SpaceHandle, A: FiniteCompactSet) -> FiniteCompactSet:
    """f_*(A) = f(A), deduplicated."""
    return FiniteCompactSet.of((space.map_f(p) for p in A.points), space)


def induced_function_map(space: SpaceHandle, u: FunctionElement) -> FunctionElement:
    """f_*(u) = f o u on C(K, X)."""
    return FunctionElement(u.domain_atoms, tuple(space.map_f(x) for x in u.values))


@dataclass(frozen=True)
class OpenSet:
    predicate: Callable[[Point], bool]
    description: str = ""

    def __call__(self, p: Point) -> bool:
        return bool(self.predicate(p))


@dataclass(frozen=True)
class VietorisNbhd:
    """Basic Vietoris neighbourhood <U_1, ..., U_n>."""

    opens: tuple[OpenSet, ...]

    def __post_init__(self):
        if not self.opens:
            raise ValueError("a Vietoris neighbourhood needs at least one open set")

    @classmethod
    def from_predicates(cls, *preds: Callable[[Point], bool], descriptions: Sequence[str] | None = None):
        descriptions = descriptions or [""] * len(preds)
        return cls(tuple(OpenSet(p, d) for p, d in zip(preds, descriptions)))

    @classmethod
    def balls(cls, space: SpaceHandle, centers: Sequence[Point], radius: float) -> "VietorisNbhd":
        opens = tuple(
            OpenSet(lambda p, c=c: space.distance(p, c) < radius, f"B({space.format_point(c)}, {radius})")
            for c in centers
        )
        return cls(opens)

    def check_witnesses(self, samples: Sequence[Point]) -> list[str]:
        """Descriptions of open sets with no witness among ``samples``."""
        return [U.description for U in self.opens if not any(U(p) for p in samples)]


def vietoris_contains(nbhd: VietorisNbhd, E: FiniteCompactSet) -> bool:
    covered = all(any(U(p) for U in nbhd.opens) for p in E.points)
    if not covered:
        return False
    return all(any(U(p) for p in E.points) for U in nbhd.opens)


def union_map(family: Sequence[FiniteCompactSet], space: SpaceHandle | None = None) -> FiniteCompactSet:
    """The map 2^{2^X} -> 2^X sending a family to the union of its members."""
    if not family:
        raise ValueError("family must be nonempty")
    return FiniteCompactSet.of((p for A in family for p in A.points), space)


def singleton(p: Point) -> FiniteCompactSet:
    """The isometric inclusion X -> 2^X."""
    return FiniteCompactSet((p,))


class RelationTag(enum.Enum):
    INT = "INT"
    INC = "INC"
    EPS = "EPS"


def relation_member(tag: RelationTag, left, right: FiniteCompactSet) -> bool:
    """INT: left meets right; INC: left is contained in right; EPS: point in right."""
    if not isinstance(right, FiniteCompactSet):
        raise TypeError("right operand must be a FiniteCompactSet")
    if tag is RelationTag.EPS:
        if isinstance(left, FiniteCompactSet):
            raise TypeError("EPS takes a point on the left, not a set")
        return left in right
    if not isinstance(left, FiniteCompactSet):
        raise TypeError(f"{tag.value} takes a set on the left")
    if tag is RelationTag.INT:
        return not left._members.isdisjoint(right._members)
    return left._members <= right._members


def components(space: SpaceHandle, A: FiniteCompactSet, component_radius: float) -> list[tuple]:
    """Clusters of the graph joining points closer than ``component_radius``."""
    pts = A.points
    if component_radius <= 0 or len(pts) == 1:
        return [(p,) for p in pts]
    D = _distance_matrix(space, pts, pts)
    n_comp, labels = connected_components(csr_matrix(D < component_radius), directed=False)
    groups: list[list] = [[] for _ in range(n_comp)]
    for p, lab in zip(pts, labels):
        groups[lab].append(p)
    return [tuple(g) for g in groups]


def cdiam(space: SpaceHandle, A: FiniteCompactSet, component_radius: float) -> float:
    """Largest diameter among the radius-graph clusters of ``A``."""
    if component_radius < 0:
        raise ValueError("component_radius must be nonnegative")
    pts = A.points
    if component_radius == 0 or len(pts) == 1:
        return 0.0
    D = _distance_matrix(space, pts, pts)
    n_comp, labels = connected_components(csr_matrix(D < component_radius), directed=False)
    best = 0.0
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        if len(idx) > 1:
            best = max(best, float(D[np.ix_(idx, idx)].max()))
    return best


@dataclass
class OrbitRecord:
    base: FiniteCompactSet
    iterates: list[FiniteCompactSet] = field(default_factory=list)

    def __getitem__(self, n: int) -> FiniteCompactSet:
        return self.iterates[n]


def orbit_fstar(space: SpaceHandle, A: FiniteCompactSet, horizon: int) -> OrbitRecord:
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    its = [A]
    for _ in range(horizon):
        its.append(induced_map(space, its[-1]))
    return OrbitRecord(A, its)


@dataclass(frozen=True)
class TransitivityResult:
    ok: bool
    witnesses: tuple  # one shift per target, None when no witness was found

    def __bool__(self) -> bool:
        return self.ok


def transitive_point_test(
    space: SpaceHandle,
    A: FiniteCompactSet,
    targets: Sequence[FiniteCompactSet],
    eps: float,
    horizon: int,
) -> TransitivityResult:
    """Does the f_*-orbit of ``A`` come eps-close to every target?

    Witness shifts are taken from 1..horizon; the zeroth iterate does not
    count.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    witnesses: list = [None] * len(targets)
    current = A
    for n in range(1, horizon + 1):
        current = induced_map(space, current)
        for i, B in enumerate(targets):
            if witnesses[i] is None and hausdorff_distance(space, current, B) < eps:
                witnesses[i] = n
        if all(w is not None for w in witnesses):
            break
    return TransitivityResult(all(w is not None for w in witnesses), tuple(witnesses))


def _pair_distances(space: SpaceHandle, x: Point, y: Point, horizon: int):
    for n in range(horizon + 1):
        yield n, space.distance(x, y)
        x, y = space.map_f(x), space.map_f(y)


def proximal_test(space: SpaceHandle, x: Point, y: Point, eps: float, horizon: int) -> bool:
    """Some n <= horizon has d(f^n x, f^n y) < eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return any(d < eps for _, d in _pair_distances(space, x, y, horizon))


def asymptotic_test(space: SpaceHandle, x: Point, y: Point, eps: float, horizon: int) -> bool:
    """Every n in the second half of [0, horizon] has d(f^n x, f^n y) < eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    start = horizon // 2
    return all(d < eps for n, d in _pair_distances(space, x, y, horizon) if n >= start)


@dataclass(frozen=True)
class KroneckerResult:
    ok: bool
    witnesses: tuple

    def __bool__(self) -> bool:
        return self.ok


def kronecker_test(
    space: SpaceHandle,
    L: FiniteCompactSet,
    probes: Sequence[FunctionElement],
    eps: float,
    horizon: int,
) -> KroneckerResult:
    """Empirical density of {f^n|L} in C(L, X) against finitely many probes."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    for u in probes:
        if set(u.domain_atoms) != set(L.points):
            raise ValueError("each probe must assign a value to every point of L")
    atoms = list(L.points)
    targets = [[u.as_dict()[c] for c in atoms] for u in probes]
    witnesses: list = [None] * len(probes)
    current = atoms
    for n in range(1, horizon + 1):
        current = [space.map_f(c) for c in current]
        for i, tgt in enumerate(targets):
            if witnesses[i] is None and max(space.distance(a, b) for a, b in zip(current, tgt)) < eps:
                witnesses[i] = n
        if all(w is not None for w in witnesses):
            break
    return KroneckerResult(all(w is not None for w in witnesses), tuple(witnesses))


__all__ = [
    "induced_map", "induced_function_map", "OpenSet", "VietorisNbhd", "vietoris_contains",
    "union_map", "singleton", "RelationTag", "relation_member", "components", "cdiam",
    "OrbitRecord", "orbit_fstar", "TransitivityResult", "transitive_point_test",
    "proximal_test", "asymptotic_test", "KroneckerResult", "kronecker_test",
]
