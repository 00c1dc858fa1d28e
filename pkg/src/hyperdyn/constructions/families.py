"""Truncated families of sequences and the n-decomposability check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from ..metric import FiniteCompactSet
from ..symbolic.points import SymbolicPoint


@dataclass(frozen=True)
class TruncatedSetFamily:
    """Finite-window shadow of an element of 2^X.

    One-sided members cover coordinates 0..depth-1; two-sided members
    cover -depth..depth.
    """

    depth: int
    members: frozenset
    generator: str
    two_sided: bool = False

    def __len__(self) -> int:
        return len(self.members)

    def windows(self) -> set[str]:
        return {m.window for m in self.members}

    def as_set(self) -> FiniteCompactSet:
        return FiniteCompactSet.of(sorted(self.members, key=lambda p: (p.start, p.window)))

    @property
    def lo(self) -> int:
        return -self.depth if self.two_sided else 0

    def dump(self) -> str:
        head = f"# {self.generator} depth={self.depth} two_sided={self.two_sided} members={len(self)}"
        body = sorted(str(m) for m in self.members)
        return "\n".join([head] + body) + "\n"


def asymptotic_extension(B: TruncatedSetFamily, N: int, depth: int | None = None) -> TruncatedSetFamily:
    """Free every coordinate below N, keep each member's coordinates >= N.

    Two-sided windows only; coordinates below the window's left edge are
    not represented, so N at or below the edge leaves B unchanged.
    """
    if not B.two_sided:
        raise ValueError("asymptotic extension is defined on two-sided families")
    depth = depth or B.depth
    lo, hi = -depth, depth + 1
    if not lo <= N <= hi:
        raise ValueError("N must lie within the window range")
    tails = {m.segment(N, hi) for m in B.members}
    free = N - lo
    members = frozenset(
        SymbolicPoint("".join(head) + t, lo)
        for head in product("01", repeat=free)
        for t in tails
    )
    return TruncatedSetFamily(depth, members, f"extension(N={N}) of {B.generator}", True)


# -- decomposability -----------------------------------------------------------


class DecompositionError(ValueError):
    """Fewer separable accumulation clusters than the requested number of pieces."""

    def __init__(self, n: int, found: int, resolution: int):
        self.n, self.found, self.resolution = n, found, resolution
        super().__init__(
            f"an {n}-decomposable transitive point has at least {n} accumulation points, "
            f"but only {found} non-singleton cluster(s) appear at resolution {resolution}"
        )


def _key(m: SymbolicPoint, r: int, two_sided: bool) -> str:
    return m.segment(-r, r + 1) if two_sided else m.segment(0, r)


def clopen_partition(family: TruncatedSetFamily, n: int, resolution: int | None = None) -> list[TruncatedSetFamily]:
    """Split a family into n pieces along cylinders of the given resolution.

    Members sharing their coordinates up to ``resolution`` form a cluster;
    only clusters with more than one member can carry accumulation points.
    The first n-1 such clusters become pieces and everything else goes to
    the last piece.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    r = resolution if resolution is not None else (family.depth // 2 if family.two_sided else 1)
    clusters: dict[str, list] = {}
    for m in sorted(family.members, key=lambda p: (p.start, p.window)):
        clusters.setdefault(_key(m, r, family.two_sided), []).append(m)
    rich = [k for k in sorted(clusters) if len(clusters[k]) > 1]
    if len(rich) < n:
        raise DecompositionError(n, len(rich), r)
    if n == 1:
        return [family]
    pieces = [frozenset(clusters[k]) for k in rich[: n - 1]]
    rest = frozenset(family.members) - frozenset().union(*pieces)
    pieces.append(rest)
    return [TruncatedSetFamily(family.depth, p, f"piece {i} of {family.generator}", family.two_sided)
            for i, p in enumerate(pieces)]


@dataclass(frozen=True)
class DecomposabilityResult:
    ok: bool
    n: int
    witnesses: dict          # target tuple -> shift m
    failures: tuple          # target tuples with no common shift
    pieces_disjoint: bool


def _window_words(piece: TruncatedSetFamily, m: int, p: int) -> frozenset:
    if piece.two_sided:
        return frozenset(x.segment(m, m + p) for x in piece.members)
    return frozenset(w[m:m + p] for w in piece.windows())


def decomposability_check(
    family: TruncatedSetFamily | Sequence[TruncatedSetFamily],
    n: int,
    targets: Sequence[Sequence[str]],
    horizon: int,
    resolution: int | None = None,
) -> DecomposabilityResult:
    """Product transitivity test for a partition (C_1, ..., C_n).

    ``targets`` lists Vietoris neighbourhoods, each given by the words of
    equal length p spanning it.  Every n-tuple of targets must be hit
    simultaneously: some shift m in 1..horizon puts the length-p words of
    sigma^m(C_i) exactly onto the i-th target, for each i.  A single
    family is first split with :func:`clopen_partition`, which raises
    :class:`DecompositionError` when too few accumulation clusters exist.
    """
    if isinstance(family, TruncatedSetFamily):
        pieces = clopen_partition(family, n, resolution)
    else:
        pieces = list(family)
        if len(pieces) != n:
            raise ValueError(f"expected {n} pieces, got {len(pieces)}")
    if not targets:
        raise ValueError("need at least one target")
    p = len(targets[0][0])
    tsets = [frozenset(t) for t in targets]
    if any(len(w) != p for t in targets for w in t):
        raise ValueError("all target words must share one length")
    disjoint = all(a.members.isdisjoint(b.members) for i, a in enumerate(pieces) for b in pieces[i + 1:])
    span = pieces[0].depth + (1 if pieces[0].two_sided else 0)
    last = min(horizon, span - p)
    profiles = [[_window_words(c, m, p) for c in pieces] for m in range(1, last + 1)]
    witnesses, failures = {}, []
    for combo in product(range(len(tsets)), repeat=n):
        want = [tsets[i] for i in combo]
        hit = next((m + 1 for m, prof in enumerate(profiles) if prof == want), None)
        key = tuple(tuple(sorted(tsets[i])) for i in combo)
        if hit is None:
            failures.append(key)
        else:
            witnesses[key] = hit
    return DecomposabilityResult(not failures, n, witnesses, tuple(failures), disjoint)


__all__ = [
    "TruncatedSetFamily", "asymptotic_extension", "DecompositionError", "clopen_partition",
    "DecomposabilityResult", "decomposability_check",
]
