"""Block-schedule construction of a transitive point of (2^X, sigma_*) on {0,1}^N.

Members of the set are concatenations of segments laid out by a
:class:`SlotSchedule`:

* ``PERM(n)``: 2^n consecutive blocks, each listing all length-n words in
  some order chosen per member and per block;
* ``LEX(n)``: all length-n words once, in lexicographic order;
* ``PICK(n, k, j)``: one length-n word chosen from the j-th k-subset of
  the length-n words.

For m = 1, 2, ... the schedule runs PERM(2m-1), LEX(2m) and then all
PICK(2m, k, j), k = 2..4^m, j in lexicographic order of subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from ..symbolic.points import SymbolicPoint
from ..symbolic.subshift import CylinderSet, full_shift
from .families import TruncatedSetFamily

PERM_MODES = ("independent", "tour")


def words(n: int, alphabet: str = "01") -> list[str]:
    return ["".join(t) for t in product(alphabet, repeat=n)]


@lru_cache(maxsize=None)
def subsets(n: int, k: int) -> tuple[tuple[str, ...], ...]:
    """The k-subsets of length-n words; index j - 1 holds U_j^{n,k}."""
    return tuple(combinations(words(n), k))


@dataclass(frozen=True)
class Segment:
    kind: str          # "PERM", "LEX" or "PICK"
    n: int
    offset: int
    length: int
    k: int = 0
    j: int = 0

    def units(self) -> Iterator[tuple[int, int]]:
        """(offset, length) of each independent choice unit inside the segment."""
        if self.kind == "PERM":
            block = self.n * 2 ** self.n
            for b in range(2 ** self.n):
                yield self.offset + b * block, block
        else:
            yield self.offset, self.length


@dataclass(frozen=True)
class SlotSchedule:
    max_n: int
    segments: tuple[Segment, ...]
    perm_mode: str = "independent"

    @property
    def total_length(self) -> int:
        s = self.segments[-1]
        return s.offset + s.length

    def find(self, kind: str, n: int, k: int = 0, j: int = 0) -> Segment:
        for s in self.segments:
            if (s.kind, s.n, s.k, s.j) == (kind, n, k, j):
                return s
        raise KeyError(f"no segment {kind}({n},{k},{j}) in schedule up to n={self.max_n}")

    def member_count(self) -> int:
        total = 1
        for s in self.segments:
            if s.kind == "PERM" and self.perm_mode == "independent":
                total *= math.factorial(2 ** s.n) ** (2 ** s.n)
            elif s.kind == "PICK":
                total *= s.k
        return total


def build_block_schedule(max_n: int, perm_mode: str = "independent") -> SlotSchedule:
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    if perm_mode not in PERM_MODES:
        raise ValueError(f"perm_mode must be one of {PERM_MODES}")
    segs: list[Segment] = []
    pos = 0
    m = 1
    while 2 * m - 1 <= max_n:
        n = 2 * m - 1
        length = (2 ** n) * (2 ** n) * n
        segs.append(Segment("PERM", n, pos, length))
        pos += length
        n = 2 * m
        if n <= max_n:
            segs.append(Segment("LEX", n, pos, n * 2 ** n))
            pos += n * 2 ** n
            for k in range(2, 2 ** n + 1):
                for j in range(1, math.comb(2 ** n, k) + 1):
                    segs.append(Segment("PICK", n, pos, n, k, j))
                    pos += n
        m += 1
    return SlotSchedule(max_n, tuple(segs), perm_mode)


def _perm_prefixes(ws: Sequence[str], t: int) -> set[str]:
    """Distinct length-t prefixes of concatenations of permutations of ``ws``."""
    out: set[str] = set()

    def grow(prefix: str, remaining: tuple[str, ...]):
        if len(prefix) >= t:
            out.add(prefix[:t])
            return
        seen = set()
        for i, w in enumerate(remaining):
            if w in seen:
                continue
            seen.add(w)
            grow(prefix + w, remaining[:i] + remaining[i + 1:])

    grow("", tuple(ws))
    return out


def _tour_block(n: int, b: int) -> str:
    """Block b of the fixed tour: the b-th permutation of the words in lexicographic order."""
    ws = words(n)
    for i, perm in enumerate(permutations(ws)):
        if i == b:
            return "".join(perm)
    raise IndexError(b)


def unit_options(schedule: SlotSchedule, seg: Segment, unit_offset: int, t: int) -> set[str]:
    """Possible contents of the first t symbols of a choice unit."""
    if seg.kind == "LEX":
        return {"".join(words(seg.n))[:t]}
    if seg.kind == "PICK":
        return {w[:t] for w in subsets(seg.n, seg.k)[seg.j - 1]}
    if schedule.perm_mode == "tour":
        b = (unit_offset - seg.offset) // (seg.n * 2 ** seg.n)
        return {_tour_block(seg.n, b)[:t]}
    return _perm_prefixes(words(seg.n), t)


def iter_C_windows(schedule: SlotSchedule, depth: int) -> set[str]:
    """All length-``depth`` prefixes of members, as strings."""
    if depth > schedule.total_length:
        raise ValueError(
            f"depth {depth} exceeds schedule length {schedule.total_length}; increase max_n"
        )
    windows = {""}
    for seg in schedule.segments:
        for off, ln in seg.units():
            if off >= depth:
                return windows
            t = min(ln, depth - off)
            opts = unit_options(schedule, seg, off, t)
            windows = {w + o for w in windows for o in opts}
    return windows


def enumerate_C_prefixes(schedule: SlotSchedule, depth: int) -> TruncatedSetFamily:
    wins = iter_C_windows(schedule, depth)
    return TruncatedSetFamily(
        depth=depth,
        members=frozenset(SymbolicPoint(w) for w in wins),
        generator=f"block_schedule(max_n={schedule.max_n}, perm_mode={schedule.perm_mode})",
        two_sided=False,
    )


@dataclass(frozen=True)
class TransitivityWitness:
    targets: tuple[str, ...]
    h: int
    segment: Segment
    observed: tuple[str, ...]
    ok: bool


def verify_block_transitivity(
    schedule: SlotSchedule,
    targets: Sequence[CylinderSet | str],
    depth: int | None = None,
    windows: set[str] | None = None,
) -> TransitivityWitness:
    """Locate the shift h for a family of depth-p cylinders and check the landing.

    The check enumerates all member windows up to h + p and confirms that
    the length-p words at coordinate h are exactly the targets, i.e. that
    sigma_*^h of the set lies in the Vietoris neighbourhood of the targets.
    """
    tw = [t.base_word if isinstance(t, CylinderSet) else t for t in targets]
    if not tw:
        raise ValueError("need at least one target")
    p = len(tw[0])
    if any(len(w) != p for w in tw):
        raise ValueError("targets must share one depth")
    S = full_shift(2)
    for w in tw:
        if not S.admissible(w):
            raise ValueError(f"target word {w!r} is not admissible")
    if p % 2 or p > schedule.max_n:
        raise ValueError(f"target depth must be even and at most max_n={schedule.max_n}")
    fam = tuple(sorted(set(tw)))
    q = len(fam)
    if q > 2 ** p:
        raise ValueError("too many targets")
    if q == 1:
        seg = schedule.find("LEX", p)
        h = seg.offset + words(p).index(fam[0]) * p
    else:
        j = subsets(p, q).index(fam) + 1
        seg = schedule.find("PICK", p, q, j)
        h = seg.offset
    need = depth if depth is not None else h + p
    if need < h + p:
        raise ValueError("depth does not reach the landing coordinate")
    wins = windows if windows is not None else iter_C_windows(schedule, need)
    observed = tuple(sorted({w[h:h + p] for w in wins}))
    return TransitivityWitness(fam, h, seg, observed, observed == fam)


def shifted_disjointness(windows: set[str], m: int) -> bool:
    """sigma^m(C) and C share no window (compared on their common length)."""
    depth = len(next(iter(windows)))
    L = depth - m
    if L <= 0:
        raise ValueError("shift exceeds window length")
    shifted = {w[m:m + L] for w in windows}
    heads = {w[:L] for w in windows}
    return shifted.isdisjoint(heads)


__all__ = [
    "PERM_MODES", "words", "subsets", "Segment", "SlotSchedule", "build_block_schedule",
    "iter_C_windows", "enumerate_C_prefixes", "TransitivityWitness",
    "verify_block_transitivity", "shifted_disjointness",
]
