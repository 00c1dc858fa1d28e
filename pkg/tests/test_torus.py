import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdyn.metric import FiniteCompactSet, hausdorff_distance
from hyperdyn.torus import (
    MATRIX,
    PlanePoint,
    TorusPoint,
    base_points,
    build_segment_set,
    diagonalization_experiment,
    eigen_data,
    project,
    segment_collapse_experiment,
    stable_decay,
    thom_apply,
    thom_apply_plane,
    torus_distance,
    torus_space,
)

# (5 +- sqrt 21) / 2 evaluated with decimal at 40 digits
LAMBDA_PLUS = 4.791287847477920003294
LAMBDA_MINUS = 0.208712152522079996706
LAMBDA_MINUS_POW10 = 1.5684741710732027e-7


def test_torus_distance_examples():
    p = TorusPoint(0.3, 0.7)
    assert torus_distance(p, p) == 0.0
    assert torus_distance(TorusPoint(0, 0), TorusPoint(0.5, 0)) == pytest.approx(0.5, abs=1e-12)
    assert torus_distance(TorusPoint(0.9, 0), TorusPoint(0.1, 0)) == pytest.approx(0.2, abs=1e-12)


def test_torus_point_must_be_reduced():
    with pytest.raises(ValueError):
        TorusPoint(1.0, 0.0)
    assert project(PlanePoint(1.25, -0.5)) == TorusPoint(0.25, 0.5)


def test_thom_examples():
    assert thom_apply(TorusPoint(0.0, 0.0)) == TorusPoint(0.0, 0.0)
    assert thom_apply_plane(PlanePoint(0.5, 0.0)) == PlanePoint(1.5, 2.5)
    assert thom_apply(TorusPoint(0.5, 0.0)) == TorusPoint(0.5, 0.5)
    (a, b), (c, d) = MATRIX
    assert a * d - b * c == 1
    assert eigen_data().determinant == 1


def test_eigen_data():
    e = eigen_data()
    assert e.lambda_plus == pytest.approx(LAMBDA_PLUS, rel=1e-15)
    assert e.lambda_minus == pytest.approx(LAMBDA_MINUS, rel=1e-15)
    assert abs(e.lambda_plus * e.lambda_minus - 1.0) <= 1e-12
    assert 0 < e.lambda_minus < 0.5
    A = np.array(MATRIX, dtype=float)
    for lam, v in ((e.lambda_plus, e.v_plus), (e.lambda_minus, e.v_minus)):
        assert np.all(np.abs(A @ np.array(v) - lam * np.array(v)) < 1e-12)
        assert math.hypot(*v) == pytest.approx(1.0, abs=1e-15)
        assert v[0] > 0


def test_stable_decay_zero_offset():
    assert all(r.measured == 0.0 for r in stable_decay(PlanePoint(0.3, 0.4), 0.0, 10))


def test_stable_decay_matches_prediction_and_bound():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = PlanePoint(*map(float, rng.random(2)))
        s = float(rng.uniform(-1, 1))
        rows = stable_decay(a, s, 15)
        for r in rows[1:]:
            assert r.measured / (abs(s) * LAMBDA_MINUS ** r.j) == pytest.approx(1.0, abs=1e-9)
            assert r.measured < abs(s) * 2.0 ** -r.j


def test_stable_decay_guards():
    with pytest.raises(ValueError):
        stable_decay(PlanePoint(0, 0), 1.0, -1)
    with pytest.raises(OverflowError):
        stable_decay(PlanePoint(0, 0), 1.0, 10_000)


def test_projection_is_lipschitz():
    rng = np.random.default_rng(21)
    pts = rng.uniform(-3, 3, (10_000, 4))
    for x1, y1, x2, y2 in pts:
        d = torus_distance(project(PlanePoint(x1, y1)), project(PlanePoint(x2, y2)))
        assert d <= math.hypot(x1 - x2, y1 - y2) + 1e-12


@settings(max_examples=200)
@given(st.floats(0, 0.999), st.floats(0, 0.999), st.floats(0, 0.999), st.floats(0, 0.999))
def test_torus_pairwise_matches_scalar(x1, y1, x2, y2):
    a, b = TorusPoint(x1, y1), TorusPoint(x2, y2)
    M = torus_space().pairwise([a], [b])
    assert M[0, 0] == pytest.approx(torus_distance(a, b), abs=1e-12)


# -- segment sets ------------------------------------------------------------

def test_segment_set_zero_length_is_base():
    base = base_points(5, seed=2)
    _, C = build_segment_set(base, 0.0, 7)
    assert C == FiniteCompactSet.of([project(p) for p in base])


def test_segment_set_three_samples():
    a = PlanePoint(0.4, 0.3)
    v = eigen_data().v_minus
    _, C = build_segment_set([a], 1.0, 3)
    expect = [project(PlanePoint(a.x + s * v[0], a.y + s * v[1])) for s in (-1.0, 0.0, 1.0)]
    T = torus_space()
    assert len(C) == 3
    assert hausdorff_distance(T, C, FiniteCompactSet.of(expect)) < 1e-12


def test_segment_set_count():
    seg, C = build_segment_set(base_points(6, seed=4), 0.5, 9)
    assert len(C) == 6 * 9 == len(seg.base) * len(seg.parameters())


def test_segment_set_warns_on_collision():
    a = PlanePoint(0.1, 0.1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        build_segment_set([a, PlanePoint(1.1, 0.1)], 0.2, 3)
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)


def test_collapse_experiment():
    rows = segment_collapse_experiment(base_points(4, seed=1), 1.0, 17, 20)
    assert rows[0].hausdorff <= 1.0 + 1e-12
    assert rows[10].bound == pytest.approx(LAMBDA_MINUS_POW10, rel=1e-12)
    assert rows[10].hausdorff <= rows[10].bound * (1 + 1e-9)
    for r in rows:
        assert r.hausdorff <= r.bound + r.slack
    for r in rows[1:]:
        # once shorter than 1/2 a segment no longer wraps, so each stays one
        # cluster whose diameter is its plane length 2 M lambda^j
        assert r.cdiam == pytest.approx(2.0 * LAMBDA_MINUS ** r.j, rel=1e-6)


def test_diagonalization_reaches_collapse():
    base = base_points(3, seed=5)
    target = FiniteCompactSet.of([TorusPoint(0.5, 0.5)])
    rep = diagonalization_experiment(base, 0.5, 9, target, eps=1e-3, radius=0.2, horizon=8)
    assert rep.collapse_step is not None and rep.cdiam_at_collapse < 1e-3
    assert rep.best_distance == min(rep.distances)
