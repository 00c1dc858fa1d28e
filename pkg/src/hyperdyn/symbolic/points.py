"""Truncated sequences and the first-disagreement metric on shift spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..metric import SpaceHandle


class TruncationError(ValueError):
    """A comparison needed a coordinate outside a point's window."""


def _primitive_root(cycle: str) -> str:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class SymbolicPoint:
    """A sequence known on a finite window of coordinates.

    One-sided points start at coordinate 0 and may carry an eventually
    periodic tail ``cycle`` repeated forever after the window; such points
    are known everywhere.  Two-sided points cover ``start .. start+len-1``.
    The constructor normalises the tail (primitive cycle, window suffix
    absorbed into it) so equal sequences compare equal.
    """

    window: str
    start: int = 0
    cycle: str = ""

    def __post_init__(self):
        if self.cycle:
            if self.start != 0:
                raise ValueError("periodic tails are only supported on one-sided points")
            w, c = self.window, _primitive_root(self.cycle)
            while w and w[-1] == c[-1]:
                w, c = w[:-1], c[-1] + c[:-1]
            object.__setattr__(self, "window", w)
            object.__setattr__(self, "cycle", c)

    @classmethod
    def periodic(cls, cycle: str) -> "SymbolicPoint":
        return cls("", 0, cycle)

    @property
    def stop(self) -> int | None:
        """One past the last known coordinate, None when known forever."""
        return None if self.cycle else self.start + len(self.window)

    def symbol_at(self, i: int) -> str | None:
        j = i - self.start
        if 0 <= j < len(self.window):
            return self.window[j]
        if self.cycle and j >= len(self.window):
            return self.cycle[(j - len(self.window)) % len(self.cycle)]
        return None

    def segment(self, lo: int, hi: int) -> str:
        """Symbols on coordinates lo..hi-1; raises if any is unknown."""
        out = []
        for i in range(lo, hi):
            s = self.symbol_at(i)
            if s is None:
                raise TruncationError(f"coordinate {i} outside window of {self}")
            out.append(s)
        return "".join(out)

    def shift_one_sided(self) -> "SymbolicPoint":
        if self.window:
            return SymbolicPoint(self.window[1:], 0, self.cycle)
        if self.cycle:
            return SymbolicPoint("", 0, self.cycle[1:] + self.cycle[0])
        raise TruncationError("cannot shift an empty window")

    def shift_two_sided(self, n: int = 1) -> "SymbolicPoint":
        return SymbolicPoint(self.window, self.start - n, "")

    def __str__(self) -> str:
        if self.cycle:
            return f"{self.window}({self.cycle})"
        if self.start:
            return f"{self.start}:{self.window}"
        return self.window


def parse_point(text: str) -> SymbolicPoint:
    """Inverse of ``str``: ``word``, ``start:word`` or ``word(cycle)``."""
    text = text.strip()
    if text.endswith(")") and "(" in text:
        w, c = text[:-1].split("(", 1)
        return SymbolicPoint(w, 0, c)
    if ":" in text:
        s, w = text.split(":", 1)
        return SymbolicPoint(w, int(s))
    return SymbolicPoint(text)


def coordinate_order(depth: int, two_sided: bool) -> Iterator[int]:
    """Coordinates in order of increasing |k|, up to the resolution."""
    if not two_sided:
        yield from range(depth)
        return
    yield 0
    for k in range(1, depth + 1):
        yield k
        yield -k


def shift_distance(x: SymbolicPoint, y: SymbolicPoint, depth: int, two_sided: bool) -> float:
    """2^-|k| for the least |k| of disagreement among the resolved coordinates."""
    for k in coordinate_order(depth, two_sided):
        a, b = x.symbol_at(k), y.symbol_at(k)
        if a is None or b is None:
            raise TruncationError(f"coordinate {k} is not covered by both windows")
        if a != b:
            return 2.0 ** -abs(k)
    return 0.0


def resolution_key(x: SymbolicPoint, depth: int, two_sided: bool) -> SymbolicPoint:
    """The part of ``x`` the distance at this depth can see."""
    if two_sided:
        return SymbolicPoint(x.segment(-depth, depth + 1), -depth)
    return SymbolicPoint(x.segment(0, depth))


def shift_space(depth: int, two_sided: bool = False, label: str | None = None) -> SpaceHandle:
    """Space handle for a shift space compared on a finite coordinate range.

    One-sided distances look at coordinates 0..depth-1, two-sided ones at
    -depth..depth.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    shift = (lambda p: p.shift_two_sided()) if two_sided else (lambda p: p.shift_one_sided())
    return SpaceHandle(
        distance=lambda x, y: shift_distance(x, y, depth, two_sided),
        map_f=shift,
        label=label or f"shift:{'two' if two_sided else 'one'}-sided:depth={depth}",
        dedup_tol=0.0,
        resolve=lambda x: resolution_key(x, depth, two_sided),
        format_point=str,
        parse_point=parse_point,
    )


__all__ = [
    "TruncationError", "SymbolicPoint", "parse_point", "coordinate_order", "shift_distance",
    "resolution_key", "shift_space",
]
