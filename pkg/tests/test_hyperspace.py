import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdyn.hyperspace import (
    RelationTag,
    VietorisNbhd,
    asymptotic_test,
    cdiam,
    components,
    induced_function_map,
    induced_map,
    kronecker_test,
    orbit_fstar,
    proximal_test,
    relation_member,
    singleton,
    transitive_point_test,
    union_map,
    vietoris_contains,
)
from hyperdyn.metric import (
    REAL_TOL,
    FiniteCompactSet,
    FunctionElement,
    circle_space,
    euclidean_space,
    hausdorff_distance,
    real_line,
)
from hyperdyn.symbolic.points import SymbolicPoint, shift_space
from hyperdyn.torus import PlanePoint, eigen_data, project, torus_space

R = real_line()
P = euclidean_space()
SQRT2 = math.sqrt(2.0)


def S(*pts, space=R):
    return FiniteCompactSet.of(pts, space)


def doubling():
    return circle_space(lambda x: (2.0 * x) % 1.0, "circle:doubling")


def rotation(alpha):
    return circle_space(lambda x: (x + alpha) % 1.0, "circle:rotation")


# -- induced map -------------------------------------------------------------

def test_induced_map_singleton():
    D = doubling()
    assert induced_map(D, S(0.3, space=D)) == S(0.6, space=D)


def test_induced_map_doubling_dedups():
    D = doubling()
    assert induced_map(D, S(0.0, 0.25, 0.5, space=D)) == S(0.0, 0.5, space=D)


def test_induced_map_on_shift_drops_first_symbol():
    X = shift_space(2)
    A = FiniteCompactSet.of([SymbolicPoint("011"), SymbolicPoint("110")], X)
    assert induced_map(X, A) == FiniteCompactSet.of([SymbolicPoint("11"), SymbolicPoint("10")], X)


def test_induced_function_map_composes():
    D = doubling()
    u = FunctionElement(("a", "b"), (0.25, 0.75))
    assert induced_function_map(D, u).values == (0.5, 0.5)


# -- Vietoris neighbourhoods -------------------------------------------------

def _intervals(*bounds):
    return VietorisNbhd.from_predicates(*[(lambda p, a=a, b=b: a < p < b) for a, b in bounds])


def test_vietoris_whole_space():
    nb = VietorisNbhd.from_predicates(lambda p: True)
    assert vietoris_contains(nb, S(-5.0, 0.0, 100.0))


def test_vietoris_two_clauses():
    nb = _intervals((0, 1), (2, 3))
    assert vietoris_contains(nb, S(0.5, 2.5))
    assert not vietoris_contains(nb, S(0.5))
    assert not vietoris_contains(nb, S(0.5, 1.5))


def test_vietoris_needs_an_open_set():
    with pytest.raises(ValueError):
        VietorisNbhd(())


def test_vietoris_balls_and_witnesses():
    nb = VietorisNbhd.balls(R, [0.0, 1.0], 0.1)
    assert vietoris_contains(nb, S(0.05, 0.95))
    assert nb.check_witnesses([0.0]) == [nb.opens[1].description]


def test_vietoris_removing_points_never_breaks_cover():
    nb = _intervals((0, 1), (2, 3))
    grid = [0.5, 0.7, 2.5, 1.5]
    for k in range(1, 5):
        for E in itertools.combinations(grid, k):
            full = S(*E)
            cover = all(any(U(p) for U in nb.opens) for p in E)
            meet = all(any(U(p) for p in E) for U in nb.opens)
            assert vietoris_contains(nb, full) == (cover and meet)
            for drop in range(k if k > 1 else 0):
                sub = E[:drop] + E[drop + 1:]
                sub_cover = all(any(U(p) for U in nb.opens) for p in sub)
                sub_meet = all(any(U(p) for p in sub) for U in nb.opens)
                if cover:
                    assert sub_cover
                if not meet:
                    assert not sub_meet


# -- union map ---------------------------------------------------------------

def test_union_of_singleton_family_is_identity():
    A = S(0.0, 1.0, 2.5)
    assert union_map([A], R) == A


def test_union_of_points():
    assert union_map([S(0.0), S(1.0)], R) == S(0.0, 1.0)


def test_union_rejects_empty_family():
    with pytest.raises(ValueError):
        union_map([])


square = st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=5).map(
    lambda ps: FiniteCompactSet.of(ps, P)
)


@settings(max_examples=300)
@given(square, square, square, square)
def test_union_is_lipschitz(A1, A2, B1, B2):
    lhs = hausdorff_distance(P, union_map([A1, A2], P), union_map([B1, B2], P))
    rhs = max(hausdorff_distance(P, A1, B1), hausdorff_distance(P, A2, B2))
    assert lhs <= rhs + REAL_TOL


@settings(max_examples=200)
@given(st.lists(st.lists(st.text("01", min_size=4, max_size=4), min_size=1, max_size=4), min_size=1, max_size=4))
def test_induced_map_commutes_with_union(words):
    X = shift_space(3)
    fam = [FiniteCompactSet.of([SymbolicPoint(w) for w in ws], X) for ws in words]
    assert induced_map(X, union_map(fam, X)) == union_map([induced_map(X, A) for A in fam], X)


# -- relations ---------------------------------------------------------------

def test_relations():
    A = S(0.0, 1.0)
    assert relation_member(RelationTag.INT, A, A)
    assert relation_member(RelationTag.INC, S(0.0), A)
    assert not relation_member(RelationTag.INC, A, S(0.0))
    assert relation_member(RelationTag.EPS, 1.0, A)
    assert not relation_member(RelationTag.EPS, 2.0, A)


def test_relation_operand_shapes():
    with pytest.raises(TypeError):
        relation_member(RelationTag.EPS, S(0.0), S(0.0))
    with pytest.raises(TypeError):
        relation_member(RelationTag.INT, 0.0, S(0.0))


@given(st.lists(st.integers(0, 15), min_size=1, max_size=5), st.lists(st.integers(0, 15), min_size=1, max_size=5))
def test_induced_map_preserves_intersection(a, b):
    D = doubling()
    A = S(*[k / 16 for k in a], space=D)
    B = S(*[k / 16 for k in b], space=D)
    if relation_member(RelationTag.INT, A, B):
        assert relation_member(RelationTag.INT, induced_map(D, A), induced_map(D, B))


# -- component diameter ------------------------------------------------------

def test_cdiam_examples():
    assert cdiam(R, S(0.0, 0.5, 3.0), 0.0) == 0.0
    assert cdiam(R, S(0.0, 0.01, 5.0), 0.1) == pytest.approx(0.01)
    M = 0.75
    seg = S(*np.linspace(-M, M, 301))
    assert cdiam(R, seg, 0.01) == pytest.approx(2 * M)


def test_components_split_far_points():
    comps = components(R, S(0.0, 0.01, 5.0), 0.1)
    assert sorted(len(c) for c in comps) == [1, 2]


def test_cdiam_rejects_negative_radius():
    with pytest.raises(ValueError):
        cdiam(R, S(0.0), -1.0)


# -- orbits and transitivity -------------------------------------------------

def test_orbit_fstar_basics():
    D = doubling()
    A = S(0.125, space=D)
    orb = orbit_fstar(D, A, 1)
    assert orb.iterates == [A, S(0.25, space=D)]
    fixed = S(0.0, space=D)
    assert all(B == fixed for B in orbit_fstar(D, fixed, 5).iterates)
    with pytest.raises(ValueError):
        orbit_fstar(D, A, 0)


def test_orbit_fstar_on_shift_prefixes():
    X = shift_space(2)
    A = FiniteCompactSet.of([SymbolicPoint("0110"), SymbolicPoint("1011")], X)
    orb = orbit_fstar(X, A, 2)
    assert orb[2] == FiniteCompactSet.of([SymbolicPoint("10"), SymbolicPoint("11")], X)


def test_transitive_point_fixed_set_revisits_itself():
    A = S(0.2, 0.7)
    res = transitive_point_test(R, A, [A], 0.1, 3)
    assert res.ok and res.witnesses == (1,)


def test_transitive_point_invariant_set_misses_disjoint_target():
    X = shift_space(4)
    A = FiniteCompactSet.of([SymbolicPoint.periodic("01"), SymbolicPoint.periodic("10")], X)
    target = FiniteCompactSet.of([SymbolicPoint.periodic("0")], X)
    res = transitive_point_test(X, A, [target], 0.5, 50)
    assert not res.ok and res.witnesses == (None,)


# -- proximality and asymptoticity -------------------------------------------

def test_equal_points_are_proximal_and_asymptotic():
    D = doubling()
    assert proximal_test(D, 0.3, 0.3, 1e-9, 10)
    assert asymptotic_test(D, 0.3, 0.3, 1e-9, 10)


def test_stable_line_pair_is_asymptotic():
    T = torus_space()
    sysd = eigen_data()
    a = PlanePoint(0.2, 0.3)
    s = 0.1
    b = PlanePoint(a.x + s * sysd.v_minus[0], a.y + s * sysd.v_minus[1])
    assert asymptotic_test(T, project(a), project(b), 1e-3, 12)


def test_distinct_fixed_points_neither():
    assert not proximal_test(R, 0.0, 1.0, 0.5, 20)
    assert not asymptotic_test(R, 0.0, 1.0, 0.5, 20)


# -- Kronecker probes --------------------------------------------------------

ALPHA = SQRT2 - 1.0


def test_kronecker_single_point_reduces_to_orbit_density():
    C = rotation(ALPHA)
    L = FiniteCompactSet.of([0.0], C)
    probes = [FunctionElement((0.0,), (t,)) for t in (0.1, 0.5, 0.9)]
    res = kronecker_test(C, L, probes, 0.01, 2000)
    assert res.ok and all(w is not None for w in res.witnesses)


def test_kronecker_swap_fails_for_isometry():
    C = rotation(ALPHA)
    L = FiniteCompactSet.of([0.0, 0.3], C)
    swap = FunctionElement((0.0, 0.3), (0.3, 0.0))
    assert not kronecker_test(C, L, [swap], 0.05, 2000).ok


def test_kronecker_inclusion_probe_needs_near_return():
    C = rotation(ALPHA)
    L = FiniteCompactSet.of([0.0, 0.3], C)
    inclusion = FunctionElement((0.0, 0.3), (0.0, 0.3))
    res = kronecker_test(C, L, [inclusion], 0.01, 2000)
    assert res.ok
    n = res.witnesses[0]
    assert min(n * ALPHA % 1.0, 1 - n * ALPHA % 1.0) < 0.01


def test_kronecker_probe_must_cover_L():
    C = rotation(ALPHA)
    L = FiniteCompactSet.of([0.0, 0.3], C)
    with pytest.raises(ValueError):
        kronecker_test(C, L, [FunctionElement((0.0,), (0.1,))], 0.1, 5)


def test_singleton_inclusion():
    assert singleton(0.4) == S(0.4)
