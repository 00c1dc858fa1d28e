"""Step-by-step construction of U3, V3 with N(U3,V3) inside N(U1,V1) & N(U2,V2).

The construction follows Petersen's strengthening of the Furstenberg
intersection argument: pick n1 with U1 meeting f^-n1 V1, refine by U2 at a
time n2, then find n0 with both the return of the refined set to itself
and its visit to f^-(n1+n2) V2, and glue at n = n0 + n2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .subshift import (
    CylinderSet,
    Pattern,
    Subshift,
    expand_pattern,
    hitting_set,
    intersect,
    preimage,
)


class PetersenHypothesisError(ValueError):
    """N(A,B) and N(A,A) failed to meet (up to the horizon) for some pair."""

    def __init__(self, left, right, horizon: int, detail: str):
        self.left, self.right, self.horizon, self.detail = left, right, horizon, detail
        super().__init__(f"hypothesis fails for ({left}, {right}) up to n={horizon}: {detail}")


@dataclass
class PetersenResult:
    n1: int
    n2: int
    n0: int
    n: int
    U3: Pattern
    V3: Pattern
    U3_cylinders: list[CylinderSet]
    V3_cylinders: list[CylinderSet]
    horizon: int
    n_u3v3: tuple[int, ...]
    n_target: tuple[int, ...]
    inclusion_holds: bool
    violations: tuple[int, ...] = field(default=())


def petersen_condition(S: Subshift, A, B, horizon: int) -> tuple[bool, str]:
    """Check N(A,B) & N(A,A) nonempty up to ``horizon``; returns (ok, detail)."""
    nab = hitting_set(S, A, B, horizon, check=False).as_set()
    naa = hitting_set(S, A, A, horizon, check=False).as_set()
    if not nab:
        return False, f"N({A},{B}) is empty"
    if not naa:
        return False, f"N({A},{A}) is empty"
    common = nab & naa
    if not common:
        return False, f"N({A},{B}) and N({A},{A}) are disjoint"
    return True, f"witness n={min(common)}"


def _first(S: Subshift, A, B, horizon: int, what: str) -> int:
    h = hitting_set(S, A, B, horizon, check=False)
    if not h.members:
        raise PetersenHypothesisError(A, B, horizon, f"{what}: N({A},{B}) is empty")
    return h.members[0]


def petersen_construct(
    S: Subshift, U1, V1, U2, V2, horizon: int = 64, search_horizon: int | None = None
) -> PetersenResult:
    """Build (U3, V3) and verify the inclusion of hitting sets up to ``horizon``.

    Raises :class:`PetersenHypothesisError` naming the first pair of input
    cylinders (or the internal pair) for which the return-time hypothesis
    fails within ``search_horizon``.
    """
    search_horizon = search_horizon or horizon
    pats = {name: S.check_cylinder(c) for name, c in (("U1", U1), ("V1", V1), ("U2", U2), ("V2", V2))}
    labels = {"U1": U1, "V1": V1, "U2": U2, "V2": V2}
    seen = set()
    for a, b in permutations(pats, 2):
        key = (pats[a], pats[b])
        if key in seen:
            continue
        seen.add(key)
        ok, detail = petersen_condition(S, pats[a], pats[b], search_horizon)
        if not ok:
            raise PetersenHypothesisError(labels[a], labels[b], search_horizon, detail)

    pu1, pv1, pu2, pv2 = pats["U1"], pats["V1"], pats["U2"], pats["V2"]
    n1 = _first(S, pu1, pv1, search_horizon, "choosing n1")
    U0 = intersect(pu1, preimage(pv1, n1))
    n2 = _first(S, U0, pu2, search_horizon, "choosing n2")
    U = intersect(U0, preimage(pu2, n2))
    W = preimage(pv2, n1 + n2)
    ok, detail = petersen_condition(S, U, W, search_horizon)
    if not ok:
        raise PetersenHypothesisError(U, W, search_horizon, detail)
    common = hitting_set(S, U, U, search_horizon, check=False).as_set() & \
        hitting_set(S, U, W, search_horizon, check=False).as_set()
    n0 = min(common)
    n = n0 + n2
    U3 = intersect(pu1, preimage(pu2, n))
    V3 = intersect(pv1, preimage(pv2, n))
    if U3 is None or V3 is None or not S.feasible(U3) or not S.feasible(V3):
        raise PetersenHypothesisError(U3, V3, search_horizon, "constructed sets are empty")

    n3 = hitting_set(S, U3, V3, horizon, check=False).members
    target = set(hitting_set(S, pu1, pv1, horizon, check=False).members) & \
        set(hitting_set(S, pu2, pv2, horizon, check=False).members)
    violations = tuple(k for k in n3 if k not in target)
    return PetersenResult(
        n1=n1, n2=n2, n0=n0, n=n, U3=U3, V3=V3,
        U3_cylinders=expand_pattern(S, U3), V3_cylinders=expand_pattern(S, V3),
        horizon=horizon, n_u3v3=tuple(n3), n_target=tuple(sorted(target)),
        inclusion_holds=not violations, violations=violations,
    )


__all__ = ["PetersenHypothesisError", "PetersenResult", "petersen_condition", "petersen_construct"]
