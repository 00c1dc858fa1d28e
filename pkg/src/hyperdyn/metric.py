"""Metric spaces, finite compacta and the Hausdorff / sup metrics.

Points are opaque hashable payloads; a :class:`SpaceHandle` knows how to
measure them and how to move them.  Everything above this module (the
induced map, shift spaces, the torus, ...) is expressed through handles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

Point = Hashable

#: comparison tolerance used for real-valued distances throughout the package
REAL_TOL = 1e-12


class EmptySetError(ValueError):
    """Raised when an empty point list is offered as an element of 2^X."""


class IncomparablePartitionError(ValueError):
    """Raised when two function elements live on different atom lists."""


def _identity(p):
    return p


@dataclass(frozen=True)
class SpaceHandle:
    """A metric space together with the map of the dynamical system.

    ``pairwise`` is an optional vectorised distance matrix; ``resolve``
    optionally projects a point onto the finite resolution the distance
    actually sees (used by truncated symbolic spaces so that huge sets
    collapse before any quadratic work is done).
    """

    distance: Callable[[Point, Point], float]
    map_f: Callable[[Point], Point] = _identity
    label: str = "space"
    dedup_tol: float = 0.0
    pairwise: Callable[[Sequence[Point], Sequence[Point]], np.ndarray] | None = None
    resolve: Callable[[Point], Point] | None = None
    format_point: Callable[[Point], str] = str
    parse_point: Callable[[str], Point] | None = None
    dedup: Callable[[list], list] | None = None

    def with_map(self, map_f: Callable[[Point], Point], label: str | None = None) -> "SpaceHandle":
        from dataclasses import replace

        return replace(self, map_f=map_f, label=label or self.label)


def _greedy_dedup(points: list, space: SpaceHandle) -> list:
    kept: list = []
    for p in points:
        if all(space.distance(p, q) > space.dedup_tol for q in kept):
            kept.append(p)
    return kept


@dataclass(frozen=True, eq=False)
class FiniteCompactSet:
    """A nonempty finite set of points, standing for an element of 2^X.

    Equality and hashing ignore order.  Build instances with :meth:`of`,
    which deduplicates under the owning space's equality.
    """

    points: tuple

    def __post_init__(self):
        if len(self.points) == 0:
            raise EmptySetError("the empty set is not an element of the hyperspace")

    @classmethod
    def of(cls, points: Iterable[Point], space: SpaceHandle | None = None) -> "FiniteCompactSet":
        pts = list(dict.fromkeys(points))
        if not pts:
            raise EmptySetError("the empty set is not an element of the hyperspace")
        if space is not None and space.dedup_tol > 0 and len(pts) > 1:
            pts = space.dedup(pts) if space.dedup is not None else _greedy_dedup(pts, space)
        return cls(tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self._members

    @property
    def _members(self) -> frozenset:
        try:
            return self.__dict__["_fs"]
        except KeyError:
            fs = frozenset(self.points)
            object.__setattr__(self, "_fs", fs)
            return fs

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteCompactSet):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        body = ", ".join(repr(p) for p in self.points[:6])
        more = ", ..." if len(self.points) > 6 else ""
        return f"FiniteCompactSet({{{body}{more}}}, n={len(self.points)})"


@dataclass(frozen=True)
class FunctionElement:
    """A locally constant map K -> X: one value per atom of a clopen partition."""

    domain_atoms: tuple
    values: tuple

    def __post_init__(self):
        if len(self.domain_atoms) != len(self.values):
            raise ValueError("need exactly one value per atom")
        if len(set(self.domain_atoms)) != len(self.domain_atoms):
            raise ValueError("atoms must be distinct")

    @classmethod
    def from_mapping(cls, mapping: Mapping[Hashable, Point]) -> "FunctionElement":
        atoms = tuple(mapping)
        return cls(atoms, tuple(mapping[a] for a in atoms))

    def as_dict(self) -> dict:
        return dict(zip(self.domain_atoms, self.values))

    def image(self, space: SpaceHandle | None = None) -> FiniteCompactSet:
        return FiniteCompactSet.of(self.values, space)


# -- distances ---------------------------------------------------------------


def _distance_matrix(space: SpaceHandle, A: Sequence[Point], B: Sequence[Point]) -> np.ndarray:
    if space.pairwise is not None:
        return np.asarray(space.pairwise(A, B), dtype=float)
    return np.array([[space.distance(a, b) for b in B] for a in A], dtype=float)


def _resolved(space: SpaceHandle, A: FiniteCompactSet) -> tuple:
    if space.resolve is None:
        return A.points
    return tuple(dict.fromkeys(space.resolve(p) for p in A.points))


def hausdorff_distance(space: SpaceHandle, A: FiniteCompactSet, B: FiniteCompactSet) -> float:
    """Hausdorff distance between two finite compacta.

    The directed terms are read off a single distance matrix, so the
    result is exactly symmetric in ``A`` and ``B``.
    """
    if len(A) == 0 or len(B) == 0:
        raise EmptySetError("Hausdorff distance needs nonempty sets")
    pa, pb = _resolved(space, A), _resolved(space, B)
    D = _distance_matrix(space, pa, pb)
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


def directed_hausdorff(space: SpaceHandle, A: FiniteCompactSet, B: FiniteCompactSet) -> float:
    """max over a in A of dist(a, B)."""
    D = _distance_matrix(space, _resolved(space, A), _resolved(space, B))
    return float(D.min(axis=1).max())


def sup_distance(space: SpaceHandle, u: FunctionElement, v: FunctionElement) -> float:
    if set(u.domain_atoms) != set(v.domain_atoms) or len(u.domain_atoms) != len(v.domain_atoms):
        raise IncomparablePartitionError("function elements are defined on different partitions")
    vd = v.as_dict()
    return max(space.distance(x, vd[a]) for a, x in zip(u.domain_atoms, u.values))


def epsilon_net(sample: Sequence[Point], space: SpaceHandle, eps: float) -> FiniteCompactSet:
    """Greedy eps-net: each sample point ends up within ``eps`` of a kept point."""
    if len(sample) == 0:
        raise EmptySetError("cannot build a net of an empty sample")
    if eps <= 0:
        raise ValueError("eps must be positive")
    kept: list = []
    for p in sample:
        if not any(space.distance(p, q) <= eps for q in kept):
            kept.append(p)
    return FiniteCompactSet.of(kept, space)


def limsup_sets(space: SpaceHandle, seq: Sequence[FiniteCompactSet], tolerance: float) -> FiniteCompactSet:
    """Tail-recurrence approximation of the upper limit of a set sequence.

    The sequence is cut into quarters.  A point of the last quarter is kept
    when some point of each of the three trailing quarter blocks lies within
    ``tolerance`` of it; the survivors are thinned to a ``tolerance``-net.
    The first quarter is treated as transient.
    """
    if not seq:
        raise ValueError("sequence must be nonempty")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = len(seq)
    q = max(1, n // 4)
    blocks = [seq[max(0, n - (i + 1) * q): n - i * q] for i in range(3)]
    blocks = [b for b in blocks if b]
    block_points = [list(dict.fromkeys(p for A in b for p in A)) for b in blocks]
    candidates = block_points[0]
    survivors = [
        p for p in candidates
        if all(any(space.distance(p, r) <= tolerance for r in pts) for pts in block_points[1:])
    ]
    if not survivors:
        survivors = candidates
    return epsilon_net(survivors, space, tolerance)


# -- concrete real spaces ----------------------------------------------------


def _as_rows(points: Sequence) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    return arr.reshape(len(points), -1)


def _euclid(p, q) -> float:
    # same operation order as _euclid_pairwise, so both give identical bits
    if isinstance(p, tuple):
        acc = 0.0
        for a, b in zip(p, q):
            acc += (a - b) * (a - b)
        return math.sqrt(acc)
    return abs(p - q)


def _euclid_pairwise(A, B) -> np.ndarray:
    a, b = _as_rows(A), _as_rows(B)
    acc = np.zeros((len(a), len(b)))
    for k in range(a.shape[1]):
        diff = a[:, k, None] - b[None, :, k]
        acc += diff * diff
    return np.sqrt(acc)


def kdtree_dedup(tol: float, boxsize=None, coords: Callable[[Sequence], np.ndarray] = _as_rows):
    """Dedup that drops points within ``tol`` of an earlier kept point, via a k-d tree.

    ``coords`` maps the point list to an (n, d) array of Euclidean coordinates.
    """
    from scipy.spatial import cKDTree

    def run(points: list) -> list:
        arr = coords(points)
        if boxsize is not None:
            arr = np.mod(arr, boxsize)
        tree = cKDTree(arr, boxsize=boxsize)
        dropped = set()
        kept = []
        for i in range(len(points)):
            if i in dropped:
                continue
            kept.append(points[i])
            for j in tree.query_ball_point(arr[i], tol):
                if j > i:
                    dropped.add(j)
        return kept

    return run


def _format_real(p) -> str:
    if isinstance(p, tuple):
        return " ".join(repr(float(c)) for c in p)
    return repr(float(p))


def _parse_real(text: str):
    vals = tuple(float(t) for t in text.split())
    return vals[0] if len(vals) == 1 else vals


def real_line(map_f: Callable[[float], float] = _identity, label: str = "real") -> SpaceHandle:
    """The real line with |x - y|; points are plain floats."""
    return SpaceHandle(
        distance=_euclid, map_f=map_f, label=label, dedup_tol=REAL_TOL,
        pairwise=_euclid_pairwise, format_point=_format_real, parse_point=_parse_real,
        dedup=kdtree_dedup(REAL_TOL),
    )


def euclidean_space(map_f: Callable = _identity, label: str = "plane") -> SpaceHandle:
    """R^d with the Euclidean metric; points are tuples of floats."""
    return SpaceHandle(
        distance=_euclid, map_f=map_f, label=label, dedup_tol=REAL_TOL,
        pairwise=_euclid_pairwise, format_point=_format_real, parse_point=_parse_real,
        dedup=kdtree_dedup(REAL_TOL),
    )


def circle_space(map_f: Callable[[float], float] = _identity, label: str = "circle") -> SpaceHandle:
    """R/Z with the arc-length metric (period 1); points are floats in [0, 1)."""

    def dist(p, q):
        d = abs(p - q) % 1.0
        return min(d, 1.0 - d)

    def pairwise(A, B):
        d = np.abs(np.subtract.outer(np.asarray(A, float), np.asarray(B, float))) % 1.0
        return np.minimum(d, 1.0 - d)

    return SpaceHandle(
        distance=dist, map_f=map_f, label=label, dedup_tol=REAL_TOL, pairwise=pairwise,
        format_point=_format_real, parse_point=_parse_real, dedup=kdtree_dedup(REAL_TOL, boxsize=1.0),
    )


# -- serialization -----------------------------------------------------------


def dump_set(space: SpaceHandle, A: FiniteCompactSet) -> str:
    """Space label on the first line, then one point per line."""
    return "\n".join([space.label] + [space.format_point(p) for p in A.points]) + "\n"


def load_set(space: SpaceHandle, text: str) -> FiniteCompactSet:
    if space.parse_point is None:
        raise ValueError(f"space {space.label!r} has no point parser")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty input")
    if lines[0] != space.label:
        raise ValueError(f"label mismatch: file says {lines[0]!r}, space is {space.label!r}")
    return FiniteCompactSet.of([space.parse_point(ln) for ln in lines[1:]], space)


def dump_family(space: SpaceHandle, family: Sequence[FiniteCompactSet]) -> str:
    """Several sets in one document, separated by blank lines."""
    blocks = ["\n".join(space.format_point(p) for p in A.points) for A in family]
    return space.label + "\n" + "\n\n".join(blocks) + "\n"


def load_family(space: SpaceHandle, text: str) -> list[FiniteCompactSet]:
    if space.parse_point is None:
        raise ValueError(f"space {space.label!r} has no point parser")
    lines = text.splitlines()
    if not lines or lines[0].strip() != space.label:
        raise ValueError("missing or mismatched space label")
    family, current = [], []
    for ln in lines[1:] + [""]:
        if ln.strip():
            current.append(space.parse_point(ln.strip()))
        elif current:
            family.append(FiniteCompactSet.of(current, space))
            current = []
    if not family:
        raise ValueError("family is empty")
    return family


__all__ = [
    "REAL_TOL", "EmptySetError", "IncomparablePartitionError", "SpaceHandle",
    "FiniteCompactSet", "FunctionElement", "hausdorff_distance", "directed_hausdorff",
    "sup_distance", "epsilon_net", "limsup_sets", "real_line", "euclidean_space",
    "circle_space", "kdtree_dedup", "dump_set", "load_set", "dump_family", "load_family",
]
