import numpy as np
import pytest
from hypothesis import given, strategies as st

from momhull import Interval, MomentPoint, Parity, evaluate, lift
from momhull.errors import InvalidShape, NotInterior
from momhull.oracle import (
    GridSpec,
    boundary_band,
    continuity_probe,
    lp_membership,
    lp_residual,
    naming_distance,
    near_boundary,
    oracle_check,
    phase_one,
    random_naming,
)
from momhull.principal import Verdict, membership

from conftest import UNIT, WIDE

GRID = GridSpec(2001, 1e-6)


def test_lp_examples():
    ts = np.linspace(0, 1, GRID.points)
    assert lp_membership(lift(ts[137], 3), UNIT, GRID)
    assert not lp_membership(MomentPoint.of([0.5, 0.6]), UNIT, GRID)
    assert lp_membership(MomentPoint.of([0.5, 0.3]), UNIT, GRID)


def test_phase_one_small():
    # x1 + x2 = 1, x1 - x2 = 0 -> x = (1/2, 1/2)
    r, x = phase_one(np.array([[1.0, 1.0], [1.0, -1.0]]), np.array([1.0, 0.0]))
    assert r == pytest.approx(0.0, abs=1e-14) and np.allclose(x, [0.5, 0.5])
    r, _ = phase_one(np.array([[1.0, 1.0]]), np.array([-1.0]))
    assert r == pytest.approx(1.0)


def test_phase_one_degenerate_does_not_cycle():
    # a classic cycling example for most-negative pricing, as a feasibility system
    A = np.array([[0.5, -5.5, -2.5, 9.0, 1, 0, 0], [0.5, -1.5, -0.5, 1.0, 0, 1, 0], [1.0, 0, 0, 0, 0, 0, 1]])
    r, x = phase_one(A, np.array([0.0, 0.0, 1.0]))
    assert r == pytest.approx(0.0, abs=1e-12)
    assert np.all(x >= -1e-12) and np.allclose(A @ x, [0, 0, 1], atol=1e-12)


def test_grid_spec_validation():
    with pytest.raises(InvalidShape):
        GridSpec(1)
    with pytest.raises(InvalidShape):
        GridSpec(10, 0.0)
    with pytest.raises(InvalidShape):
        lp_residual(lift(0.5, 8), UNIT, GridSpec(5))


def test_random_naming_examples():
    a = random_naming(4, UNIT, 3, seed=9)
    b = random_naming(4, UNIT, 3, seed=9)
    assert a == b
    P = random_naming(2, WIDE, 1, seed=3)
    assert P.parity is Parity.HALF and len(P.atoms) == 2 and P.atoms[0].t == WIDE.t_min


@given(st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_random_naming_inside_grid_hull(n, k, seed):
    P = random_naming(n, UNIT, k, seed)
    v = evaluate(P)
    assert membership(v, UNIT).in_hull
    grid = GridSpec(2001, 1e-6)
    assert lp_residual(v, UNIT, grid) <= boundary_band(n, UNIT, grid) * (n + 1)


def test_band_is_conservative_for_curve_points():
    """Midpoints between grid nodes are the worst case for the grid hull."""
    grid = GridSpec(101, 1e-9)
    for I in (UNIT, WIDE):
        h = I.width / (grid.points - 1)
        band = boundary_band(4, I, grid)
        for j in range(0, 100, 7):
            t = I.t_min + (j + 0.5) * h
            assert lp_residual(lift(t, 4), I, grid) <= band * 5


def test_oracle_check_and_near_boundary():
    assert oracle_check(MomentPoint.of([0.5, 0.3]), UNIT) == (True, True, "agree")
    assert oracle_check(MomentPoint.of([0.5, 0.6]), UNIT) == (False, False, "agree")
    assert near_boundary(MomentPoint.of([0.5, 0.5 - 1e-9]), UNIT, 1e-6)
    assert not near_boundary(MomentPoint.of([0.5, 0.3]), UNIT, 1e-6)


def test_probe_examples():
    v = MomentPoint.of([0.5, 0.3125, 0.21875])
    assert continuity_probe(v, UNIT, 0.0, 64, seed=0) == 0.0
    small = continuity_probe(v, UNIT, 1e-6, 64, seed=0)
    large = continuity_probe(v, UNIT, 2e-6, 64, seed=0)
    assert small <= large
    with pytest.raises(NotInterior):
        continuity_probe(MomentPoint.of([0.5, 0.6]), UNIT, 1e-6, 8, seed=0)
    with pytest.raises(NotInterior):
        continuity_probe(lift(0.5, 3), UNIT, 1e-6, 8, seed=0)


@given(st.integers(0, 2**16))
def test_probe_monotone_in_radius(seed):
    v = MomentPoint.of([0.5, 0.3125, 0.21875])
    a = continuity_probe(v, UNIT, 1e-7, 16, seed)
    b = continuity_probe(v, UNIT, 2e-7, 16, seed)
    assert a <= b


def test_naming_distance():
    from momhull import Naming

    a = Naming.build(UNIT, 3, [(0.25, 0.5), (0.75, 0.5)], Parity.INTEGER)
    b = Naming.build(UNIT, 3, [(0.25, 0.4), (0.8, 0.6)], Parity.INTEGER)
    c = Naming.build(UNIT, 3, [(0.5, 1.0)], Parity.INTEGER)
    assert naming_distance(a, b, 7.0) == pytest.approx(0.05 + 0.1)
    assert naming_distance(a, c, 7.0) == 7.0


@given(st.integers(1, 5), st.lists(st.floats(-1.0, 3.0), min_size=5, max_size=5), st.sampled_from([UNIT, WIDE]))
def test_lp_residual_matches_highs(n, raw, I):
    """Our hand-written simplex against scipy's HiGHS on the same L1 problem."""
    from scipy.optimize import linprog

    from momhull.oracle import grid_matrix

    grid = GridSpec(41, 1e-6)
    v = MomentPoint(n, raw[:n])
    A = grid_matrix(n, I, grid.points)
    m, k = A.shape
    res = linprog(
        np.concatenate([np.zeros(k), np.ones(2 * m)]),
        A_eq=np.hstack([A, np.eye(m), -np.eye(m)]),
        b_eq=v.lifted(),
        bounds=(0, None),
        method="highs",
    )
    assert res.status == 0
    # HiGHS works to its 1e-7 feasibility tolerance
    assert lp_residual(v, I, grid) == pytest.approx(res.fun, rel=1e-6, abs=1e-7)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_probe_matches_linearization(n):
    """The probe measures the inverse map's own sensitivity, not solver noise."""
    from momhull.oracle import linearized_probe

    from test_acceptance import interior_points

    for j, v in enumerate(interior_points(n, UNIT, 4, [11, n])):
        got = continuity_probe(v, UNIT, 1e-6, 32, seed=j)
        want = linearized_probe(v, UNIT, 1e-6, 32, seed=j)
        assert got == pytest.approx(want, rel=0.05 if n <= 4 else 0.25)


def test_jacobian_matches_finite_differences():
    from momhull import Naming
    from momhull.oracle import naming_jacobian

    P = Naming.build(UNIT, 4, [(0.0, 0.2), (0.3, 0.5), (0.8, 0.3)], Parity.HALF)
    J = naming_jacobian(P)
    h = 1e-7
    cols = []
    for j in (1, 2):  # t of the free atoms
        a = [list(x) for x in P.atoms]
        a[j][0] += h
        cols.append((evaluate(P.replace_atoms(a)).v - evaluate(P).v) / h)
    for j in (1, 2):  # weight moves from the t_min atom to atom j
        a = [list(x) for x in P.atoms]
        a[j][1] += h
        a[0][1] -= h
        cols.append((evaluate(P.replace_atoms(a)).v - evaluate(P).v) / h)
    assert np.allclose(J, np.array(cols).T, atol=1e-6)
