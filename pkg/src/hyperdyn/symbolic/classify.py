"""Horizon-bounded dynamical classification of subshifts.

Every verdict here is computed from hitting sets up to a finite horizon
and from depth-D cylinder covers, so a positive answer is a certificate
at that resolution and a negative answer is a refutation only up to the
horizon.  Results carry that label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..hyperspace import induced_map
from ..metric import FiniteCompactSet
from .points import SymbolicPoint, shift_space
from .subshift import Subshift, as_pattern, hitting_set
from .petersen import petersen_condition


@dataclass
class WeakMixingCertificate:
    ok: bool
    depth: int
    horizon: int
    witnesses: dict = field(default_factory=dict)   # (U, V) -> n
    failures: list = field(default_factory=list)    # (U, V, reason)
    horizon_bounded: bool = True

    def __bool__(self) -> bool:
        return self.ok

    @property
    def verdict(self) -> str:
        if self.ok:
            return "weak mixing condition holds on all cylinder pairs"
        return f"refuted up to horizon {self.horizon} (horizon-bounded)"


def weak_mixing_check(S: Subshift, depth: int, horizon: int) -> WeakMixingCertificate:
    """N(U,V) & N(U,U) nonempty for every pair of depth-``depth`` cylinders?"""
    if depth < 1 or horizon < 1:
        raise ValueError("depth and horizon must be at least 1")
    cyls = S.cylinders(depth)
    cert = WeakMixingCertificate(True, depth, horizon)
    for U in cyls:
        naa = hitting_set(S, U, U, horizon, check=False).as_set()
        for V in cyls:
            common = naa & hitting_set(S, U, V, horizon, check=False).as_set()
            if common:
                cert.witnesses[(U.base_word, V.base_word)] = min(common)
            else:
                _, why = petersen_condition(S, U, V, horizon)
                cert.failures.append((U.base_word, V.base_word, why))
    cert.ok = not cert.failures
    return cert


def _meets(S: Subshift, a, b) -> bool:
    m = as_pattern(a).meet(as_pattern(b))
    return m is not None and S.feasible(m)


def image_of_cylinder(S: Subshift, U, n: int, D: int) -> list[str]:
    """Depth-D words w whose cylinder meets sigma^n(U); n = 0 gives U's own cover."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    pu = as_pattern(U)
    return [w for w in S.words_of_length(D) if _meets(S, pu, as_pattern(w).shift(n))]


def periodic_test_points(S: Subshift, max_period: int) -> list[str]:
    """Cycles c (all rotations, primitive, length <= max_period) with c^inf in S."""
    out = []
    for q in range(1, max_period + 1):
        for t in product(S.alphabet, repeat=q):
            c = "".join(t)
            if _is_primitive(c) and S.admits_periodic(c):
                out.append(c)
    return out


def _is_primitive(c: str) -> bool:
    n = len(c)
    return all(c[:d] * (n // d) != c for d in range(1, n) if n % d == 0)


def point_in_image(S: Subshift, U, cycle: str, n: int) -> bool:
    """Is the periodic point with period word ``cycle`` in sigma^n(U)?

    Two-sided: sigma^-n of the point must lie in U.  One-sided: U must
    meet sigma^-n of a long enough block of the point.
    """
    pu = as_pattern(U)
    if S.two_sided:
        q = len(cycle)
        return all(cycle[(p - n) % q] in allowed for p, allowed in pu.constraints)
    m = getattr(S.scanner, "m", 1)
    reps = max(2, -(-(2 * m + 2) // len(cycle)) + 1)
    block = as_pattern(cycle * reps).shift(n)
    return _meets(S, pu, block)


@dataclass
class Classification:
    transitive: bool
    weak_mixing: bool
    exact: bool
    backward_minimal: bool
    depth: int
    horizon: int
    cover_depth: int
    witnesses: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    horizon_bounded: bool = True

    def flags(self) -> dict:
        return {
            "transitive": self.transitive,
            "weak_mixing": self.weak_mixing,
            "exact": self.exact,
            "backward_minimal": self.backward_minimal,
        }


def classify(
    S: Subshift, depth: int = 2, horizon: int = 32, cover_depth: int | None = None, test_period: int = 3
) -> Classification:
    """Transitivity, weak mixing, exactness and backward minimality at finite scale.

    Images are compared through depth-``cover_depth`` cylinder covers and
    through the periodic points of period <= ``test_period``; the latter
    are what distinguish the invertible full shift (whose cylinder images
    still cover every cylinder) from a genuinely exact system.
    """
    D = cover_depth or depth
    cyls = [c for d in range(1, depth + 1) for c in S.cylinders(d)]
    all_words = set(S.words_of_length(D))
    tests = periodic_test_points(S, test_period)
    res = Classification(True, True, True, True, depth, horizon, D)

    trans_fail = []
    for U in cyls:
        for V in cyls:
            if not hitting_set(S, U, V, horizon, check=False).members:
                trans_fail.append((str(U), str(V)))
    res.transitive = not trans_fail
    if trans_fail:
        res.failures["transitive"] = trans_fail

    wm = weak_mixing_check(S, depth, horizon)
    res.weak_mixing = wm.ok
    if not wm.ok:
        res.failures["weak_mixing"] = wm.failures

    exact_w, exact_fail, bm_w, bm_fail = {}, [], {}, []
    for U in cyls:
        covered: set[str] = set()
        points_hit: set[str] = set()
        exact_n = None
        for n in range(1, horizon + 1):
            cover = set(image_of_cylinder(S, U, n, D))
            pts = {c for c in tests if point_in_image(S, U, c, n)}
            covered |= cover
            points_hit |= pts
            if exact_n is None and cover == all_words and len(pts) == len(tests):
                exact_n = n
                break
        if exact_n is not None:
            exact_w[str(U)] = exact_n
            covered, points_hit = all_words, set(tests)
        else:
            exact_fail.append(str(U))
        if covered == all_words and points_hit == set(tests):
            bm_w[str(U)] = True
        else:
            bm_fail.append((str(U), sorted(all_words - covered), sorted(set(tests) - points_hit)))
    res.exact = not exact_fail
    res.backward_minimal = not bm_fail
    res.witnesses = {"weak_mixing": wm.witnesses, "exact": exact_w}
    if exact_fail:
        res.failures["exact"] = exact_fail
    if bm_fail:
        res.failures["backward_minimal"] = bm_fail
    return res


# -- fixed points of the induced map -------------------------------------------


def _is_lyndon(c: str) -> bool:
    return all(c < c[i:] + c[:i] for i in range(1, len(c)))


def enumerate_fstar_fixed_points(S: Subshift, max_period: int, limit: int | None = None) -> list[FiniteCompactSet]:
    """Periodic orbits of period <= max_period, each as a sigma_*-fixed set.

    One set per orbit, ordered by period then by the orbit's least word.
    Each returned set is checked to be fixed by the induced map.
    """
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    if S.two_sided:
        raise ValueError("fixed-point enumeration is implemented for one-sided shifts")
    space = shift_space(max_period, False)
    out: list[FiniteCompactSet] = []
    for q in range(1, max_period + 1):
        for t in product(S.alphabet, repeat=q):
            c = "".join(t)
            if not (_is_lyndon(c) and S.admits_periodic(c)):
                continue
            orbit = FiniteCompactSet.of(SymbolicPoint.periodic(c[i:] + c[:i]) for i in range(q))
            if induced_map(space, orbit) != orbit:
                raise AssertionError(f"orbit of {c} is not fixed by the induced map")
            out.append(orbit)
            if limit is not None and len(out) >= limit:
                return out
    return out


def necklace_count(k: int, n: int) -> int:
    """Number of aperiodic necklaces of length n over k symbols (Moebius inversion)."""

    def mobius(d: int) -> int:
        res, x, p = 1, d, 2
        while p * p <= x:
            if x % p == 0:
                x //= p
                if x % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if x > 1 else res

    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


__all__ = [
    "WeakMixingCertificate", "weak_mixing_check", "image_of_cylinder", "periodic_test_points",
    "point_in_image", "Classification", "classify", "enumerate_fstar_fixed_points", "necklace_count",
]
