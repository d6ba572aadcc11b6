import numpy as np
import pytest

from conftest import random_state
from tripartite.errors import NonSmoothPoint
from tripartite.inequalities import octet_from_settings
from tripartite.optimizer import (Objective, Parameterization, finite_difference_check,
                                  nelder_mead, numerical_gradient, objective_value, optimize)
from tripartite.quantum import ghz, w

DEG = np.pi / 180
S4_POINT = np.array([0, 90, 0, 90, 135, 225]) * DEG


def w_orbit(theta, theta_p, independent_shifts=False):
    """Symmetry images of a symmetric x-z setting that preserve the objective's
    magnitude: shift both angles by pi, reflect, swap primed and unprimed.
    Every M' term has an odd number of unprimed factors, so for M' each angle
    may also be shifted by pi on its own."""
    points = {(theta, theta_p)}
    for _ in range(4):
        new = set()
        for a, b in points:
            new |= {(a + np.pi, b + np.pi), (-a, -b), (b, a)}
            if independent_shifts:
                new |= {(a + np.pi, b), (a, b + np.pi)}
        points |= {(np.mod(a, 2 * np.pi), np.mod(b, 2 * np.pi)) for a, b in new}
    return [np.array(p) for p in points]


def near_orbit(angles, reference, tol=1e-3, independent_shifts=False):
    for p in w_orbit(*reference, independent_shifts=independent_shifts):
        diff = np.angle(np.exp(1j * (angles - p)))
        if np.max(np.abs(diff)) < tol:
            return True
    return False


class TestParameterization:
    @pytest.mark.parametrize("param, dim", [("xy", 6), ("xz", 6), ("xz-symmetric", 2), ("full", 12)])
    def test_dimension(self, param, dim):
        assert Parameterization(param).dimension == dim

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            Parameterization.XY_PLANAR.settings([0.0] * 5)

    def test_symmetric_shares_angles(self):
        h = Parameterization.XZ_SYMMETRIC.settings([0.3, 1.1])
        assert h.a == h.b == h.c and h.a_prime == h.b_prime == h.c_prime
        np.testing.assert_allclose(h.a.n, [np.sin(0.3), 0, np.cos(0.3)])

    def test_objective_matches_octet(self, rng):
        for param in Parameterization:
            angles = rng.uniform(0, 2 * np.pi, param.dimension)
            state = random_state(rng)
            octet = octet_from_settings(state, param.settings(angles))
            for obj in Objective:
                assert objective_value(state, obj, param, angles) == pytest.approx(
                    obj.coefficients @ octet.e, abs=1e-12)


def test_nelder_mead_quadratic():
    x, f, ok = nelder_mead(lambda p: np.sum((p - np.array([1.0, -2.0, 0.5])) ** 2), np.zeros(3))
    assert ok
    np.testing.assert_allclose(x, [1.0, -2.0, 0.5], atol=1e-9)
    assert f < 1e-18


class TestOptimize:
    def test_ghz_svetlichny(self):
        r = optimize(ghz(), "sv", "xy", restarts=64, seed=0)
        assert r.best_value == pytest.approx(4 * np.sqrt(2), abs=1e-6)
        assert r.converged
        # Optimal manifold: every correlator has magnitude 1/sqrt 2.
        octet = octet_from_settings(ghz(), r.best_settings)
        np.testing.assert_allclose(np.abs(octet.e), 1 / np.sqrt(2), atol=1e-6)
        for d, dp in r.best_settings.pairs():
            assert abs(d.n @ dp.n) < 1e-4

    def test_w_svetlichny(self):
        r = optimize(w(), Objective.ABS_SV, Parameterization.XZ_SYMMETRIC, 64, 0)
        assert r.best_value == pytest.approx(4.354, abs=5e-3)
        assert near_orbit(r.best_angles, (35.264 * DEG, 144.736 * DEG))

    def test_w_mermin(self):
        r = optimize(w(), Objective.ABS_M_PRIME, Parameterization.XZ_SYMMETRIC, 64, 0)
        assert r.best_value == pytest.approx(3.046, abs=5e-3)
        assert near_orbit(r.best_angles, (54.032 * DEG, 156.106 * DEG), independent_shifts=True)

    def test_value_matches_settings(self):
        r = optimize(w(), "sv", "xz", restarts=4, seed=3)
        report_value = abs(r.report.s_v)
        assert r.best_value == pytest.approx(report_value, abs=1e-9)
        assert np.all((0 <= r.best_angles) & (r.best_angles < 2 * np.pi))

    def test_bounds_on_random_states(self, rng):
        for _ in range(5):
            state = random_state(rng)
            assert optimize(state, "sv", "full", restarts=2, seed=1).best_value <= 4 * np.sqrt(2) + 1e-9
            assert optimize(state, "m", "full", restarts=2, seed=1).best_value <= 4 + 1e-9
            assert optimize(state, "mprime", "xz", restarts=2, seed=1).best_value <= 4 + 1e-9

    def test_restart_monotonicity(self, rng):
        state = random_state(rng)
        values = [optimize(state, "sv", "xy", restarts=k, seed=11).best_value for k in (1, 2, 4, 8)]
        assert values == sorted(values)

    def test_deterministic(self):
        a = optimize(w(), "sv", "xz-symmetric", restarts=8, seed=5)
        b = optimize(w(), "sv", "xz-symmetric", restarts=8, seed=5)
        np.testing.assert_array_equal(a.best_angles, b.best_angles)

    def test_rejects_zero_restarts(self):
        with pytest.raises(ValueError):
            optimize(ghz(), "sv", "xy", restarts=0)


class TestFiniteDifferences:
    def test_smooth_at_ghz_optimum(self):
        assert abs(objective_value(ghz(), Objective.ABS_SV, Parameterization.XY_PLANAR, S4_POINT)) \
            == pytest.approx(4 * np.sqrt(2))
        assert finite_difference_check(ghz(), "sv", "xy", S4_POINT) < 1e-6

    def test_zero_direction(self):
        assert finite_difference_check(ghz(), "sv", "xy", S4_POINT, np.zeros(6)) < 1e-10

    def test_irrelevant_coordinate(self):
        # With polar angle 0 the azimuth of A has no effect.
        point = np.array([0, 0.3, 1.0, 0.2, 1.2, 0.4, 0.7, 0.9, 0.5, 0.1, 1.4, 0.8])
        e = np.zeros(12)
        e[1] = 1.0
        assert finite_difference_check(w(), "sv", "full", point, e) < 1e-10

    def test_w_mermin_stationary(self):
        point = np.array([54.032, 156.106]) * DEG
        grad = numerical_gradient(w(), "mprime", "xz-symmetric", point)
        assert np.linalg.norm(grad) < 1e-4
        assert finite_difference_check(w(), "mprime", "xz-symmetric", point) < 1e-6

    def test_kink_rejected(self):
        s1_point = np.array([0, 90, 0, 90, 0, 90]) * DEG  # M = 0 here
        with pytest.raises(NonSmoothPoint):
            finite_difference_check(ghz(), "m", "xy", s1_point)
