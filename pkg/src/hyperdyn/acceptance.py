"""The fifteen acceptance checks, grouped into suites.

Each check takes a seed and returns one or more :class:`Case` records.
Oracles used here are deliberately naive (Python loops, brute-force
necklace enumeration, window DFS) so that they share no code path with
the implementations they judge.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

import numpy as np

from .classical.disc import disc_nonminimality_experiment
from .classical.odometer import (
    OdometerSpace,
    odometer_clopen_periodicity,
    odometer_periodic_density,
    random_points,
)
from .classical.tower import periodic_orbit_union, random_symbolic_family, tower_check
from .constructions.el_tower import (
    build_el_tower,
    build_el_set_family,
    isolation_radius,
    last_disagreement,
    window_words,
)
from .constructions.block_schedule import (
    build_block_schedule,
    iter_C_windows,
    shifted_disjointness,
    verify_block_transitivity,
    words,
)
from .hyperspace import singleton, union_map
from .metric import FiniteCompactSet, FunctionElement, euclidean_space, hausdorff_distance, sup_distance
from .report import Case, Report, status_of
from .symbolic.classify import (
    enumerate_fstar_fixed_points,
    image_of_cylinder,
    periodic_test_points,
    point_in_image,
)
from .symbolic.oracle import brute_force_hitting_set, oracle_for
from .symbolic.petersen import petersen_construct
from .symbolic.points import SymbolicPoint, shift_space
from .symbolic.subshift import (
    gap_three_subshift,
    full_shift,
    golden_mean,
    hitting_set,
    product_pattern,
    product_subshift,
)
from .torus import base_points, eigen_data, segment_collapse_experiment, stable_decay, PlanePoint

TOL = 1e-12


def _random_set(rng: np.random.Generator, max_size: int = 8) -> FiniteCompactSet:
    k = int(rng.integers(1, max_size + 1))
    return FiniteCompactSet(tuple(tuple(map(float, p)) for p in rng.random((k, 2))))


def _cylinders_upto(S, depth: int):
    return [c for d in range(1, depth + 1) for c in S.cylinders(d)]


# -- metric suite ---------------------------------------------------------------


def check_metric_axioms(seed: int) -> list[Case]:
    rng = np.random.default_rng(seed)
    E = euclidean_space()
    asym, worst = 0, 0.0
    for _ in range(10_000):
        A, B, C = _random_set(rng), _random_set(rng), _random_set(rng)
        ab, ba = hausdorff_distance(E, A, B), hausdorff_distance(E, B, A)
        asym += ab != ba
        worst = max(worst, hausdorff_distance(E, A, C) - ab - hausdorff_distance(E, B, C))
    return [
        Case("01a-hausdorff-symmetry", status_of(asym == 0), asym, 0, 0, "asymmetric pairs out of 10000"),
        Case("01b-hausdorff-triangle", status_of(worst <= TOL), worst, 0.0, TOL, "max triangle excess"),
    ]


def _eps_cover(dist, A, B, eps: float) -> bool:
    """Every point of A within eps of B and every point of B within eps of A."""
    def within(X, Y):
        return all(any(dist(x, y) < eps for y in Y) for x in X)
    return within(A.points, B.points) and within(B.points, A.points)


def check_eps_characterisation(seed: int) -> list[Case]:
    rng = np.random.default_rng(seed + 1)
    E = euclidean_space()
    mismatch = 0
    for i in range(1000):
        A, B = _random_set(rng), _random_set(rng)
        d = hausdorff_distance(E, A, B)
        # a third of the cases probe eps exactly at the distance
        eps = d if i % 3 == 0 else float(rng.uniform(0.0, 1.5)) or 1e-3
        mismatch += (d < eps) != _eps_cover(E.distance, A, B, eps)
    return [Case("02-hausdorff-eps-cover", status_of(mismatch == 0), mismatch, 0, 0, "disagreements out of 1000")]


def check_lipschitz(seed: int) -> list[Case]:
    rng = np.random.default_rng(seed + 2)
    E = euclidean_space()
    worst_im, worst_union = -math.inf, -math.inf
    for _ in range(1000):
        k = int(rng.integers(1, 9))
        atoms = tuple(range(k))
        u = FunctionElement(atoms, tuple(tuple(map(float, p)) for p in rng.random((k, 2))))
        v = FunctionElement(atoms, tuple(tuple(map(float, p)) for p in rng.random((k, 2))))
        gap = hausdorff_distance(E, u.image(), v.image()) - sup_distance(E, u, v)
        worst_im = max(worst_im, gap)
    for _ in range(1000):
        m = int(rng.integers(1, 5))
        As = [_random_set(rng) for _ in range(m)]
        Bs = [_random_set(rng) for _ in range(m)]
        lhs = hausdorff_distance(E, union_map(As), union_map(Bs))
        rhs = max(hausdorff_distance(E, a, b) for a, b in zip(As, Bs))
        worst_union = max(worst_union, lhs - rhs)
    return [
        Case("03a-image-lipschitz", status_of(worst_im <= TOL), worst_im, 0.0, TOL,
             "max of d_H(Im u, Im v) - d_sup(u, v)"),
        Case("03b-union-lipschitz", status_of(worst_union <= TOL), worst_union, 0.0, TOL,
             "max of d_H(union A, union B) - max d_H(A_i, B_i)"),
    ]


def check_union_identity(seed: int) -> list[Case]:
    rng = np.random.default_rng(seed + 3)
    bad = 0
    for _ in range(100):
        A = _random_set(rng)
        bad += union_map([singleton(p) for p in A.points]) != A
    return [Case("04-union-of-singletons", status_of(bad == 0), bad, 0, 0, "mismatches out of 100")]


# -- symbolic suite -------------------------------------------------------------


def check_hitting_oracle(seed: int) -> list[Case]:
    mismatches, pairs = 0, 0
    for S in (full_shift(2), golden_mean()):
        alphabet, pred, ext = oracle_for(S)
        cyl = _cylinders_upto(S, 3)
        for U, V in product(cyl, repeat=2):
            pairs += 1
            fast = hitting_set(S, U, V, 32).members
            slow = brute_force_hitting_set(alphabet, pred, U, V, 32, ext)
            mismatches += fast != slow
    F, G = full_shift(2), golden_mean()
    P = product_subshift(F, G)
    prod_bad, prod_pairs = 0, 0
    for U1, V1 in product(_cylinders_upto(F, 2), repeat=2):
        n1 = hitting_set(F, U1, V1, 32).as_set()
        for U2, V2 in product(_cylinders_upto(G, 2), repeat=2):
            n2 = hitting_set(G, U2, V2, 32).as_set()
            both = hitting_set(P, product_pattern(F, G, U1, U2), product_pattern(F, G, V1, V2), 32, check=False)
            prod_pairs += 1
            prod_bad += both.as_set() != (n1 & n2)
    return [
        Case("05a-hitting-set-oracle", status_of(mismatches == 0), mismatches, 0, 0,
             f"mismatches over {pairs} cylinder pairs, horizon 32"),
        Case("05b-hitting-set-product-rule", status_of(prod_bad == 0), prod_bad, 0, 0,
             f"mismatches over {prod_pairs} product pairs (full:2 x golden), horizon 32"),
    ]


def check_petersen(seed: int) -> list[Case]:
    S = full_shift(2)
    cyl = S.cylinders(2)
    bad = 0
    for U1, V1, U2, V2 in product(cyl, repeat=4):
        res = petersen_construct(S, U1, V1, U2, V2, horizon=64)
        bad += not res.inclusion_holds
    return [Case("06-petersen-construction", status_of(bad == 0), bad, 0, 0,
                 "quadruples violating N(U3,V3) within N(U1,V1) & N(U2,V2), of 256")]


def check_gap_three(seed: int) -> list[Case]:
    S = gap_three_subshift()
    a = hitting_set(S, "001", "1", 243).as_set()
    b = hitting_set(S, "010", "1", 243).as_set()
    both = sorted(a & b)
    cyl = S.cylinders(3)
    all_words = {c.base_word for c in cyl}
    tests = set(periodic_test_points(S, 4))
    witnesses, missing = {}, []
    for U in cyl:
        words_hit, points_hit = set(), set()
        for n in range(1, 301):
            words_hit |= set(image_of_cylinder(S, U, n, 3))
            points_hit |= {c for c in tests - points_hit if point_in_image(S, U, c, n)}
            if words_hit == all_words and points_hit == tests:
                witnesses[U.base_word] = n
                break
        else:
            missing.append(U.base_word)
    return [
        Case("07a-gap-three-refutation-pair", status_of(not both), len(both), 0, 0,
             "n <= 243 in both N([001],[1]) and N([010],[1])"),
        Case("07b-gap-three-backward-minimal-cover", status_of(not missing), witnesses, 300, 0,
             "least N such that the images sigma^n(U), n <= N, meet every depth-3 cylinder "
             f"and contain the periodic points {sorted(tests)}" + (f"; none for {missing}" if missing else "")),
    ]


# -- constructions suite --------------------------------------------------------


def check_block_schedule(seed: int) -> list[Case]:
    sched = build_block_schedule(2)
    wins = iter_C_windows(sched, sched.total_length)
    fams, bad = 0, []
    for q in range(1, 5):
        for fam in combinations(words(2), q):
            fams += 1
            w = verify_block_transitivity(sched, fam, windows=wins)
            if not w.ok:
                bad.append(fam)
    overlap = [m for m in range(1, 9) if not shifted_disjointness(wins, m)]
    return [
        Case("08a-block-schedule-transitivity", status_of(not bad), fams - len(bad), fams, 0,
             "target families landed" + (f"; failed {bad}" if bad else "")),
        Case("08b-block-schedule-shift-disjoint", status_of(not overlap), overlap, [], 0,
             "shifts m in 1..8 where sigma^m(C) meets C"),
    ]


def check_el_tower(seed: int) -> list[Case]:
    T = build_el_tower(6, max_len=3)
    depth = T.N(6)
    C = build_el_set_family(T, depth)
    card = [k for k in range(1, 6) if len(T.B_list[k]) != len(T.B_list[k - 1]) + len(T.A_list[k]) - 1]
    win = [k for k in range(1, 6)
           if window_words(C, T.N(k) + T.ell(k + 1) + 1, T.ell(k + 1)) != set(T.A_list[k])]
    members = sorted(C.members, key=lambda p: p.window)
    word = {x: x.segment(1, depth + 1) for x in members}

    def tail_start(x):
        blocks = T.nonspecial_blocks(word[x])
        return T.N(max(blocks)) if blocks else 0

    not_asym = [
        (word[x], word[y]) for x, y in combinations(members, 2)
        if (last_disagreement(x, y, -depth, depth + 1) or 0) > max(tail_start(x), tail_start(y))
    ]
    not_iso = []
    for x in members:
        blocks = T.nonspecial_blocks(word[x])
        if blocks:
            r = isolation_radius(x, C)
            if r is None or r > T.N(blocks[0]):
                not_iso.append(word[x])
    return [
        Case("09a-el-cardinality", status_of(not card), card, [], 0, "k with |B_k+1| != |B_k| + |A_k+1| - 1"),
        Case("09b-el-window-property", status_of(not win), win, [], 0, "k whose window misses A_k+1"),
        Case("09c-el-asymptotic-pairs", status_of(not not_asym), len(not_asym), 0, 0,
             f"pairs disagreeing past their last non-special block, of {len(members) * (len(members) - 1) // 2}"),
        Case("09d-el-isolated-members", status_of(not not_iso), not_iso, [], 0,
             "non-special members not isolated within their block"),
    ]


# -- torus suite ----------------------------------------------------------------


def check_stable_decay(seed: int) -> list[Case]:
    rng = np.random.default_rng(seed + 10)
    e = eigen_data()
    worst_ratio, above = 0.0, 0
    for _ in range(100):
        a = PlanePoint(*map(float, rng.random(2)))
        s = float(rng.uniform(-1.0, 1.0))
        for row in stable_decay(a, s, 15)[1:]:
            worst_ratio = max(worst_ratio, abs(row.measured / row.predicted - 1.0))
            above += not row.measured < row.bound
    prod_err = abs(e.lambda_plus * e.lambda_minus - 1.0)
    return [
        Case("10a-stable-decay-ratio", status_of(worst_ratio <= 1e-9), worst_ratio, 0.0, 1e-9,
             "max |measured / (|s| lambda_-^j) - 1| over 100 draws, j = 1..15"),
        Case("10b-stable-decay-bound", status_of(above == 0), above, 0, 0, "rows with measured >= |s| 2^-j"),
        Case("10c-eigenvalues", status_of(prod_err <= TOL and 4 < e.lambda_plus < 5),
             [e.lambda_plus, e.lambda_minus], [4, 5], TOL, "lambda_+ lambda_- = 1 and 4 < lambda_+ < 5"),
    ]


def check_segment_collapse(seed: int) -> list[Case]:
    rows = segment_collapse_experiment(base_points(16, seed), 1.0, 33, 20)
    excess = max(r.hausdorff - (r.bound + r.slack) for r in rows)
    cd10 = rows[10].cdiam
    return [
        Case("11a-segment-hausdorff", status_of(excess <= TOL), excess, 0.0, TOL,
             "max over j <= 20 of d_H - (lambda_-^j + slack)"),
        Case("11b-segment-cdiam", status_of(cd10 < 1e-5), cd10, 1e-5, 0, "cdiam at j = 10"),
    ]


# -- classical suite ------------------------------------------------------------


def check_odometer(seed: int) -> list[Case]:
    S = OdometerSpace.dyadic(8)
    bad = []
    for mask in range(1, 256):
        res = [r for r in range(8) if mask >> r & 1]
        p = odometer_clopen_periodicity(S, 3, res, 8)
        if p.inconclusive or 8 % p.period:
            bad.append(res)
    dens = odometer_periodic_density(S, 3, random_points(S, 64, seed))
    return [
        Case("12a-odometer-clopen-periods", status_of(not bad), len(bad), 0, 0,
             "level-3 clopen sets whose period does not divide 8, of 255"),
        Case("12b-odometer-periodic-density", status_of(dens.ok), dens.worst, dens.eps, 0,
             "max d_H({x}, level-3 cylinder of x) over 64 samples; compared with <="),
    ]


def check_disc(seed: int) -> list[Case]:
    e = disc_nonminimality_experiment(n_terms=8, horizon=100_000, eps=0.05)
    return [
        Case("13a-disc-orbit-approaches", status_of(e.q1 < 0.05), e.q1, 0.05, 0,
             f"min d_H(f^m A, B'), attained at m={e.q1_step}"),
        Case("13b-disc-orbit-stays-away", status_of(e.q2 >= e.delta0), e.q2, e.delta0, 0,
             f"min d_H(f^m B', A) against delta0 fixed before iterating; {e.approximation}"),
    ]


def check_tower(seed: int) -> list[Case]:
    rng = np.random.default_rng(seed + 14)
    sp = shift_space(6)
    bad = sum(not tower_check(sp, random_symbolic_family(int(rng.integers(1, 6)), 4, 6, rng)).ok
              for _ in range(100))
    sp_long = shift_space(12)
    cycles = [("0", "1"), ("01", "001"), ("011", "0001"), ("1", "01011")]
    not_fixed = []
    for c in cycles:
        E = FiniteCompactSet.of([SymbolicPoint.periodic(w) for w in c])
        if not periodic_orbit_union(sp_long, E, 64).fixed:
            not_fixed.append(c)
    return [
        Case("14a-tower-square", status_of(bad == 0), bad, 0, 0, "families where the square fails, of 100"),
        Case("14b-tower-periodic-union", status_of(not not_fixed), not_fixed, [], 0,
             "periodic orbits whose union is not fixed"),
    ]


def _necklaces_brute(n: int) -> int:
    """Primitive binary necklaces of length n, by listing least rotations."""
    reps = set()
    for t in product("01", repeat=n):
        w = "".join(t)
        rots = {w[i:] + w[:i] for i in range(n)}
        if len(rots) == n:
            reps.add(min(rots))
    return len(reps)


def check_fixed_points(seed: int) -> list[Case]:
    S = full_shift(2)
    counts = [len(enumerate_fstar_fixed_points(S, P)) for P in range(1, 7)]
    oracle = list(np.cumsum([_necklaces_brute(n) for n in range(1, 7)]).tolist())
    increasing = all(a < b for a, b in zip(counts, counts[1:]))
    return [Case("15-fixed-point-growth", status_of(counts == oracle and increasing), counts, oracle, 0,
                 "orbit counts for max_period 1..6 against brute-force necklaces")]


# -- registry ---------------------------------------------------------------------


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    suite: str
    run: Callable[[int], list[Case]]
    time_limit_s: float | None = None


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "metric axioms", "metric", check_metric_axioms, 5.0),
    Criterion(2, "Hausdorff eps characterisation", "metric", check_eps_characterisation),
    Criterion(3, "Lipschitz bounds", "metric", check_lipschitz),
    Criterion(4, "union of singletons", "metric", check_union_identity),
    Criterion(5, "hitting-set oracle and product rule", "symbolic", check_hitting_oracle),
    Criterion(6, "Petersen construction", "symbolic", check_petersen, 30.0),
    Criterion(7, "gap-power-of-three subshift", "symbolic", check_gap_three),
    Criterion(8, "block-schedule transitive set", "constructions", check_block_schedule),
    Criterion(9, "EL tower", "constructions", check_el_tower),
    Criterion(10, "stable contraction", "torus", check_stable_decay, 1.0),
    Criterion(11, "segment collapse", "torus", check_segment_collapse),
    Criterion(12, "odometer", "classical", check_odometer),
    Criterion(13, "disc non-minimality", "classical", check_disc),
    Criterion(14, "tower square", "classical", check_tower),
    Criterion(15, "fixed-point growth", "symbolic", check_fixed_points),
)

SUITES = ("metric", "symbolic", "constructions", "torus", "classical")


def run_criterion(c: Criterion, seed: int = 0) -> tuple[list[Case], float]:
    """Cases for one criterion plus its wall time; over-limit runs fail."""
    t0 = time.perf_counter()
    cases = c.run(seed)
    elapsed = time.perf_counter() - t0
    if c.time_limit_s is not None:
        cases.append(Case(f"{c.number:02d}z-runtime", status_of(elapsed < c.time_limit_s),
                          None, c.time_limit_s, 0, f"wall time limit {c.time_limit_s} s"))
    return cases, elapsed


def run_suite(suite: str, seed: int = 0) -> Report:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    rep = Report(suite, seed)
    t0 = time.perf_counter()
    for c in CRITERIA:
        if suite == "all" or c.suite == suite:
            cases, _ = run_criterion(c, seed)
            for case in cases:
                rep.add(case)
    rep.runtime_ms = (time.perf_counter() - t0) * 1000
    return rep


__all__ = ["CRITERIA", "SUITES", "Criterion", "run_criterion", "run_suite"]
