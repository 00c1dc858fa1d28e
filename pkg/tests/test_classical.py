import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdyn.classical.disc import (
    TARGET_RADIUS,
    TWO_PI,
    DiscPoint,
    disc_distance,
    disc_map,
    disc_nonminimality_experiment,
    disc_space,
    first_return,
    rotate_angle,
)
from hyperdyn.classical.odometer import (
    OdometerPoint,
    OdometerSpace,
    clopen_set,
    odometer_add_one,
    odometer_clopen_periodicity,
    odometer_distance,
    odometer_periodic_density,
    odometer_space,
    random_points,
    union_approximation,
)
from hyperdyn.classical.rp import rp_test
from hyperdyn.classical.tower import (
    TowerElement,
    periodic_orbit_union,
    random_symbolic_family,
    tower_check,
)
from hyperdyn.hyperspace import induced_map, proximal_test
from hyperdyn.metric import FiniteCompactSet, circle_space, hausdorff_distance
from hyperdyn.symbolic.points import SymbolicPoint, shift_space

DY = OdometerSpace.dyadic(8)


# -- odometer ----------------------------------------------------------------

def test_add_one_from_zero():
    assert odometer_add_one(OdometerPoint(DY, 0)).residues == (1,) * 8


def test_add_one_wraps_at_level_three():
    p = OdometerPoint(DY, 7)
    assert p.residue(3) == 7
    assert odometer_add_one(p).residue(3) == 0


@pytest.mark.parametrize("level", range(1, 9))
def test_translation_order(level):
    n = DY.modulus(level)
    for v in (0, 5, 77, 255):
        p = q = OdometerPoint(DY, v)
        for _ in range(n):
            q = odometer_add_one(q)
        assert q.residue(level) == p.residue(level)


def test_moduli_must_divide():
    with pytest.raises(ValueError):
        OdometerSpace((2, 6, 9))


def test_clopen_periodicity_examples():
    assert odometer_clopen_periodicity(DY, 3, range(8), 100).period == 1
    assert odometer_clopen_periodicity(DY, 3, [5], 100).period == 8
    n1 = DY.modulus(1)
    assert odometer_clopen_periodicity(DY, 2, [1, 3], 100).period == n1
    short = odometer_clopen_periodicity(DY, 3, [5], 4)
    assert short.period is None and short.inconclusive


@given(st.integers(1, 8), st.sets(st.integers(0, 255), min_size=1, max_size=8))
def test_clopen_period_divides_modulus(level, residues):
    n = DY.modulus(level)
    res = odometer_clopen_periodicity(DY, level, residues, n)
    assert n % res.period == 0
    S = clopen_set(DY, level, residues)
    T = S
    h = odometer_space(DY)
    for _ in range(res.period):
        T = induced_map(h, T)
    assert T == S


odo_points = st.integers(0, DY.top - 1).map(lambda v: OdometerPoint(DY, v))


@given(odo_points, odo_points, odo_points)
def test_odometer_ultrametric(x, y, z):
    assert odometer_distance(x, z) <= max(odometer_distance(x, y), odometer_distance(y, z))
    assert odometer_distance(x, y) == odometer_distance(y, x)


def test_odometer_pairwise_matches_scalar():
    h = odometer_space(DY)
    pts = random_points(DY, 40, seed=3)
    M = h.pairwise(pts, pts)
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            assert M[i, j] == odometer_distance(p, q)


def test_periodic_density_examples():
    pts = random_points(DY, 50, seed=1)
    whole = odometer_periodic_density(DY, 0, pts)
    assert whole.ok and set(whole.periods) == {1}
    rep = odometer_periodic_density(DY, 3, pts)
    # the cylinder's farthest members split from x right after level 3
    assert rep.ok and rep.worst == 2.0 ** -3 and set(rep.periods) == {8}


def test_union_of_cylinders_approximates_sets():
    A = random_points(DY, 6, seed=9)
    for k in range(1, 9):
        d, period = union_approximation(DY, k, A)
        assert d <= 2.0 ** -k
        assert DY.modulus(k) % period == 0


# -- disc --------------------------------------------------------------------

def test_centre_is_fixed():
    p = DiscPoint(0.0, 1.3)
    assert disc_map(p) == p


def test_quarter_turn_returns_after_four_steps():
    theta = 0.7
    assert rotate_angle(theta, math.pi / 2, 4) == pytest.approx(theta, abs=1e-12)
    assert rotate_angle(theta, math.pi / 2, 2) != pytest.approx(theta, abs=1e-3)


def test_irrational_radius_has_no_early_return():
    r, H = TARGET_RADIUS, 5000
    a = np.mod(np.arange(1, H + 1) * r, TWO_PI)
    gaps = np.minimum(a, TWO_PI - a)
    closest = float(gaps.min())
    assert first_return(r, H, closest / 2) is None
    assert first_return(r, H, closest * 1.0001) == int(np.flatnonzero(gaps < closest * 1.0001)[0]) + 1


def test_rational_radius_returns():
    r = TWO_PI * 3 / 7
    assert first_return(r, 100, 1e-9) == 7


disc_points = st.builds(DiscPoint, st.floats(0, 1), st.floats(0, TWO_PI))


@given(disc_points, st.integers(0, 500))
def test_disc_map_preserves_radius(p, n):
    assert disc_map(p, n).r == p.r


@settings(max_examples=200)
@given(st.floats(0, 1), st.floats(0, TWO_PI), st.floats(0, TWO_PI), st.integers(0, 200))
def test_same_radius_distance_is_invariant(r, t1, t2, n):
    p, q = DiscPoint(r, t1), DiscPoint(r, t2)
    assert disc_distance(disc_map(p, n), disc_map(q, n)) == pytest.approx(disc_distance(p, q), abs=1e-9)


def test_no_proximal_pairs_on_a_circle():
    D = disc_space()
    rng = np.random.default_rng(0)
    for t1, t2 in rng.uniform(0, TWO_PI, (20, 2)):
        p, q = DiscPoint(0.4, t1), DiscPoint(0.4, t2)
        d0 = disc_distance(p, q)
        if d0 > 1e-3:
            assert not proximal_test(D, p, q, d0 / 2, 300)


def test_experiment_horizon_zero():
    exp = disc_nonminimality_experiment(horizon=0)
    assert exp.q1 == exp.initial_gap > 0
    assert exp.q1_step == 0


def test_experiment_quantity_one_decreases():
    q = [disc_nonminimality_experiment(horizon=h).q1 for h in (0, 500, 20_000)]
    assert q[0] >= q[1] >= q[2]
    assert q[2] < q[0]


def test_experiment_screening_matches_brute_force():
    H = 60
    exp = disc_nonminimality_experiment(horizon=H)
    D = disc_space()
    A, B = exp.A, exp.B_prime
    q1 = q2 = math.inf
    for _ in range(H + 1):
        q1 = min(q1, hausdorff_distance(D, A, exp.B_prime))
        q2 = min(q2, hausdorff_distance(D, B, exp.A))
        A, B = induced_map(D, A), induced_map(D, B)
    assert exp.q1 == pytest.approx(q1, abs=1e-9)
    assert exp.q2 == pytest.approx(q2, abs=1e-9)


def test_experiment_lower_bound_computed_from_initial_sets():
    exp = disc_nonminimality_experiment(horizon=1000)
    assert 0 < exp.delta0 <= exp.initial_gap
    assert exp.q2 >= exp.delta0


def test_disc_point_validation():
    with pytest.raises(ValueError):
        DiscPoint(1.5, 0.0)


# -- regional proximality ----------------------------------------------------

def test_rp_identical_points():
    C = circle_space(lambda x: (x + 0.3) % 1.0)
    assert rp_test(C, 0.2, 0.2, 1e-3, 10)


def test_rp_rotation_separates_distinct_points():
    C = circle_space(lambda x: (x + math.sqrt(2) - 1) % 1.0)
    v = rp_test(C, 0.1, 0.4, 1e-3, 500)
    assert not v and "evidence" in v.resolution


def test_rp_full_shift_common_future():
    X = shift_space(8)
    x = SymbolicPoint("0110", 0, "10")
    y = SymbolicPoint("1011", 0, "0")
    v = rp_test(X, x, y, 2.0 ** -3, 20)
    assert v.ok
    xp, yp, k = v.witness
    assert X.distance(xp, x) < 2.0 ** -3 and X.distance(yp, y) < 2.0 ** -3


def test_rp_rejects_nonpositive_resolution():
    with pytest.raises(ValueError):
        rp_test(circle_space(), 0.1, 0.2, 0.0, 5)


# -- depth-two tower ---------------------------------------------------------

def test_tower_singleton_family():
    X = shift_space(4)
    A = FiniteCompactSet.of([SymbolicPoint("01101"), SymbolicPoint("11000")], X)
    rep = tower_check(X, [A])
    assert rep.ok and rep.left == rep.right == induced_map(X, A)


def test_periodic_orbit_union_is_fixed():
    X = shift_space(6)
    E = FiniteCompactSet.of([SymbolicPoint.periodic("001"), SymbolicPoint.periodic("01")])
    rep = periodic_orbit_union(X, E, 12)
    assert rep.period == 6 and rep.fixed
    assert induced_map(X, rep.union) == rep.union


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_tower_square_commutes(seed):
    X = shift_space(5)
    fam = random_symbolic_family(3, 4, 6, np.random.default_rng(seed))
    assert tower_check(X, fam).ok


def test_tower_element_shapes():
    with pytest.raises(TypeError):
        TowerElement(1, SymbolicPoint("0"))
    with pytest.raises(TypeError):
        TowerElement(2, frozenset())
    with pytest.raises(ValueError):
        TowerElement(3, None)
