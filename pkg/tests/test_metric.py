import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdyn.metric import (
    EmptySetError,
    FiniteCompactSet,
    FunctionElement,
    IncomparablePartitionError,
    REAL_TOL,
    circle_space,
    directed_hausdorff,
    dump_family,
    dump_set,
    epsilon_net,
    euclidean_space,
    hausdorff_distance,
    limsup_sets,
    load_family,
    load_set,
    real_line,
    sup_distance,
)

R = real_line()
P = euclidean_space()


def S(*pts):
    return FiniteCompactSet.of(pts, R)


# -- hausdorff ---------------------------------------------------------------

def test_hausdorff_identity():
    assert hausdorff_distance(R, S(0.3), S(0.3)) == 0.0


def test_hausdorff_hand_values():
    assert hausdorff_distance(R, S(0.0, 2.0), S(1.0)) == 1.0
    assert hausdorff_distance(R, S(0.0), S(0.0, 3.0)) == 3.0


def test_hausdorff_directed_parts():
    assert directed_hausdorff(R, S(0.0), S(0.0, 3.0)) == 0.0
    assert directed_hausdorff(R, S(0.0, 3.0), S(0.0)) == 3.0


def test_empty_set_rejected():
    with pytest.raises(EmptySetError):
        FiniteCompactSet.of([], R)
    with pytest.raises(EmptySetError):
        FiniteCompactSet(())


def test_set_equality_ignores_order_and_duplicates():
    assert S(1.0, 2.0, 1.0) == S(2.0, 1.0)
    assert len(S(1.0, 1.0 + 1e-14)) == 1
    assert hash(S(1.0, 2.0)) == hash(S(2.0, 1.0))


# -- sup distance ------------------------------------------------------------

def test_sup_distance_examples():
    u = FunctionElement(("a",), (0.0,))
    v = FunctionElement(("a",), (1.0,))
    assert sup_distance(R, u, u) == 0.0
    assert sup_distance(R, u, v) == 1.0
    u2 = FunctionElement(("a", "b"), (0.0, 0.0))
    v2 = FunctionElement(("a", "b"), (0.2, 0.7))
    assert sup_distance(R, u2, v2) == pytest.approx(0.7, abs=REAL_TOL)


def test_sup_distance_rejects_mismatched_atoms():
    with pytest.raises(IncomparablePartitionError):
        sup_distance(R, FunctionElement(("a",), (0.0,)), FunctionElement(("b",), (0.0,)))


def test_function_element_validation():
    with pytest.raises(ValueError):
        FunctionElement(("a", "a"), (0.0, 1.0))
    with pytest.raises(ValueError):
        FunctionElement(("a",), (0.0, 1.0))


# -- limsup ------------------------------------------------------------------

def test_limsup_constant_sequence():
    A = S(0.0, 1.0)
    assert limsup_sets(R, [A] * 12, 1e-6) == A


def test_limsup_alternating():
    seq = [S(0.0) if i % 2 == 0 else S(1.0) for i in range(40)]
    assert limsup_sets(R, seq, 1e-6) == S(0.0, 1.0)


def test_limsup_clusters_at_zero():
    seq = [S(1.0 / n) for n in range(1, 10_001)]
    L = limsup_sets(R, seq, 1e-3)
    assert hausdorff_distance(R, L, S(0.0)) <= 1e-3


def test_limsup_rejects_bad_input():
    with pytest.raises(ValueError):
        limsup_sets(R, [], 0.1)
    with pytest.raises(ValueError):
        limsup_sets(R, [S(0.0)], 0.0)


# -- epsilon net -------------------------------------------------------------

def test_epsilon_net_examples():
    assert epsilon_net([0.5], R, 0.1) == S(0.5)
    net = epsilon_net([0.0, 0.1, 1.0], R, 0.2)
    assert len(net) == 2
    assert all(min(abs(p - q) for q in net) <= 0.2 for p in [0.0, 0.1, 1.0])
    assert len(epsilon_net([0.0, 0.1, 0.3], R, 5.0)) == 1


@given(st.lists(st.floats(-10, 10), min_size=1, max_size=30), st.floats(0.01, 5))
def test_epsilon_net_covers_sample(sample, eps):
    net = epsilon_net(sample, R, eps)
    for p in sample:
        assert min(abs(p - q) for q in net) <= eps + REAL_TOL


# -- metric axioms on the unit square ----------------------------------------

def _random_sets(rng, count):
    for _ in range(count):
        yield FiniteCompactSet.of([tuple(p) for p in rng.random((rng.integers(1, 6), 2))], P)


def test_hausdorff_triangle_on_random_square_subsets():
    rng = np.random.default_rng(12)
    sets = list(_random_sets(rng, 10_002))
    worst = 0.0
    for A, B, C in zip(sets[0::3], sets[1::3], sets[2::3]):
        ab, bc, ac = (hausdorff_distance(P, X, Y) for X, Y in ((A, B), (B, C), (A, C)))
        worst = max(worst, ac - ab - bc)
        assert hausdorff_distance(P, B, A) == ab
        assert hausdorff_distance(P, A, A) == 0.0
    assert worst <= REAL_TOL


points2 = st.tuples(st.floats(0, 1), st.floats(0, 1))
square_sets = st.lists(points2, min_size=1, max_size=6).map(lambda ps: FiniteCompactSet.of(ps, P))


@settings(max_examples=300)
@given(square_sets, square_sets, square_sets)
def test_hausdorff_is_a_metric(A, B, C):
    ab = hausdorff_distance(P, A, B)
    assert ab == hausdorff_distance(P, B, A)
    assert hausdorff_distance(P, A, A) == 0.0
    assert hausdorff_distance(P, A, C) <= ab + hausdorff_distance(P, B, C) + REAL_TOL


@settings(max_examples=300)
@given(square_sets, square_sets, st.floats(0.01, 1.0))
def test_hausdorff_below_eps_iff_mutual_cover(A, B, eps):
    def covered(X, Y):
        return all(any(math.dist(x, y) < eps for y in Y) for x in X)

    assert (hausdorff_distance(P, A, B) < eps) == (covered(A, B) and covered(B, A))


@settings(max_examples=200)
@given(st.lists(st.tuples(points2, points2), min_size=1, max_size=6))
def test_sup_distance_dominates_image_hausdorff(pairs):
    atoms = tuple(range(len(pairs)))
    u = FunctionElement(atoms, tuple(a for a, _ in pairs))
    v = FunctionElement(atoms, tuple(b for _, b in pairs))
    assert hausdorff_distance(P, u.image(P), v.image(P)) <= sup_distance(P, u, v) + REAL_TOL


def test_singleton_inclusion_is_isometric():
    rng = np.random.default_rng(3)
    for x, y in rng.random((200, 2, 2)):
        x, y = tuple(x), tuple(y)
        assert hausdorff_distance(P, FiniteCompactSet((x,)), FiniteCompactSet((y,))) == P.distance(x, y)


def test_circle_distance_wraps():
    C = circle_space()
    assert C.distance(0.9, 0.1) == pytest.approx(0.2, abs=REAL_TOL)
    assert hausdorff_distance(C, FiniteCompactSet.of([0.95], C), FiniteCompactSet.of([0.05], C)) == pytest.approx(0.1)


# -- serialization -----------------------------------------------------------

def test_set_round_trip():
    A = FiniteCompactSet.of([(0.25, 0.5), (1.0 / 3.0, 0.1)], P)
    text = dump_set(P, A)
    assert text.splitlines()[0] == "plane"
    assert load_set(P, text) == A


def test_family_round_trip():
    fam = [S(0.0, 1.5), S(-2.0)]
    assert load_family(R, dump_family(R, fam)) == fam


def test_load_set_rejects_wrong_label():
    with pytest.raises(ValueError):
        load_set(R, "plane\n0.0 1.0\n")


def test_pairwise_matches_scalar_distance_bitwise():
    rng = np.random.default_rng(5)
    A = [tuple(p) for p in rng.random((30, 2))]
    B = [tuple(p) for p in rng.random((20, 2))]
    M = P.pairwise(A, B)
    for (i, a), (j, b) in itertools.product(enumerate(A), enumerate(B)):
        assert M[i, j] == P.distance(a, b)
