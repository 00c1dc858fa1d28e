"""Grid search for regionally proximal pairs.

A positive answer exhibits x', y' within grid_eps of x, y and a time k
with d(f^k x', f^k y') < grid_eps.  That is evidence at one resolution,
never a certificate, and the verdict says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from ..metric import Point, SpaceHandle
from ..symbolic.points import SymbolicPoint

Perturb = Callable[[Point, Point, float], Iterable[tuple[Point, Point]]]


@dataclass(frozen=True)
class RPVerdict:
    ok: bool
    resolution: str
    witness: tuple | None = None   # (x', y', k)

    def __bool__(self) -> bool:
        return self.ok


def symbolic_splices(x: SymbolicPoint, y: SymbolicPoint, eps: float) -> Iterable[tuple]:
    """Pairs keeping the first d coordinates of x and y and sharing a common tail.

    d is the least prefix length that forces distance < eps on a one-sided
    shift, so x' and y' stay inside the eps-balls.
    """
    d = max(0, math.floor(-math.log2(eps)) + 1)
    px, py = x.segment(0, d), y.segment(0, d)
    tails = [_tail(x, d), _tail(y, d), SymbolicPoint.periodic("0"), SymbolicPoint.periodic("1")]
    for t in tails:
        yield _splice(px, t), _splice(py, t)


def _tail(p: SymbolicPoint, d: int) -> SymbolicPoint:
    for _ in range(d):
        p = p.shift_one_sided()
    return p


def _splice(prefix: str, tail: SymbolicPoint) -> SymbolicPoint:
    return SymbolicPoint(prefix + tail.window, 0, tail.cycle)


def grid_offsets(eps: float, steps: int = 4) -> list[float]:
    """Offsets strictly inside (-eps, eps): k eps / (steps + 1) for |k| <= steps."""
    return [k * eps / (steps + 1) for k in range(-steps, steps + 1)]


def real_grid(x, y, eps: float, steps: int = 4) -> Iterable[tuple]:
    """Grid perturbations for floats (offsets added) or coordinate tuples (added per axis)."""
    offs = grid_offsets(eps, steps)
    if isinstance(x, tuple):
        dim = len(x)
        # diagonal scaling keeps the Euclidean offset below eps
        offs = [o / math.sqrt(dim) for o in offs]
        shifts = list(product(offs, repeat=dim))
        for a in shifts:
            for b in shifts:
                yield tuple(c + o for c, o in zip(x, a)), tuple(c + o for c, o in zip(y, b))
    else:
        for a in offs:
            for b in offs:
                yield x + a, y + b


def rp_test(space: SpaceHandle, x: Point, y: Point, grid_eps: float, horizon: int,
            perturb: Perturb | None = None) -> RPVerdict:
    """Search perturbations and times k <= horizon with d(f^k x', f^k y') < grid_eps."""
    if grid_eps <= 0:
        raise ValueError("grid_eps must be positive")
    if perturb is None:
        perturb = symbolic_splices if isinstance(x, SymbolicPoint) else real_grid
    label = f"evidence at grid_eps={grid_eps}, horizon={horizon}"
    for xp, yp in perturb(x, y, grid_eps):
        if space.distance(xp, x) >= grid_eps or space.distance(yp, y) >= grid_eps:
            continue
        a, b = xp, yp
        for k in range(horizon + 1):
            if space.distance(a, b) < grid_eps:
                return RPVerdict(True, label, (xp, yp, k))
            a, b = space.map_f(a), space.map_f(b)
    return RPVerdict(False, label, None)


__all__ = ["RPVerdict", "symbolic_splices", "grid_offsets", "real_grid", "rp_test"]
