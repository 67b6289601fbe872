import math

import numpy as np
import pytest

from sindybench import (
    best_fit_r2,
    coefficient_error,
    description_length,
    largest_lyapunov,
    monomial_basis,
    nonlinearity_score,
    rmse_error,
    scale_separation,
    stability_census,
)
from sindybench.simulate import Trajectory
from sindybench.systems import PolynomialSystem, coefficients_from_equations


def linear_system(a, name="linear", period=1.0):
    """d-dimensional linear ODE dx/dt = A x with reference IC at the origin."""
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    basis = monomial_basis(d, 2)
    coeffs = np.zeros((len(basis.terms), d))
    for j in range(d):
        for i in range(d):
            e = [0] * d
            e[i] = 1
            coeffs[basis.index_of(e), j] = a[j, i]
    return PolynomialSystem(name, basis, coeffs, [[0.0] * d], period)


class TestErrorMetrics:
    def test_coefficient_error_cases(self):
        truth = np.array([[1.0, 2.0], [0.0, -1.0]])
        assert coefficient_error(truth, truth) == 0.0
        assert coefficient_error(truth, np.zeros_like(truth)) == 1.0
        assert coefficient_error(truth, 2.0 * truth) == pytest.approx(1.0)

    def test_rmse_error_cases(self):
        dx = np.array([[1.0, -2.0], [3.0, 0.5]])
        assert rmse_error(dx, dx) == 0.0
        assert rmse_error(dx, np.zeros_like(dx)) == 1.0
        assert rmse_error(dx, -dx) == pytest.approx(2.0)

    def test_scale_invariance(self):
        rng = np.random.default_rng(0)
        truth = rng.normal(size=(6, 2))
        fitted = rng.normal(size=(6, 2))
        base = coefficient_error(truth, fitted)
        assert coefficient_error(7.5 * truth, 7.5 * fitted) == pytest.approx(base)

    def test_zero_truth_rejected(self):
        with pytest.raises(ValueError):
            coefficient_error(np.zeros((3, 2)), np.ones((3, 2)))


class TestStabilityCensus:
    def test_true_system_is_stable(self, lorenz):
        census = stability_census(lorenz, lorenz, n_trials=10, seed=1)
        assert census.n_trials == 10
        assert census.n_stable == 10
        assert census.unstable_times == ()

    def test_zero_model_is_stable(self, lorenz):
        zero = PolynomialSystem(
            "zero", lorenz.basis, np.zeros_like(lorenz.coefficients),
            lorenz.reference_ics, lorenz.dominant_period,
        )
        census = stability_census(zero, lorenz, n_trials=5, seed=2)
        assert census.n_stable == 5

    def test_spurious_quartic_destabilizes(self, lorenz):
        corrupted = lorenz.coefficients.copy()
        corrupted[lorenz.basis.index_of((4, 0, 0)), 0] = 10.0
        bad = PolynomialSystem(
            "corrupted", lorenz.basis, corrupted,
            lorenz.reference_ics, lorenz.dominant_period,
        )
        census = stability_census(
            bad, lorenz, n_trials=10, perturbation=1.0, seed=3
        )
        assert census.n_stable < 10
        assert all(t > 0 and math.isfinite(t) for t in census.unstable_times)


class TestLargestLyapunov:
    def test_scalar_decay(self):
        system = linear_system([[-1.0]], period=1.0)
        value = largest_lyapunov(system, t_total=120.0, renorm_interval=0.5, seed=0)
        assert value == pytest.approx(-1.0, abs=0.01)

    def test_lorenz_reference_value(self, lorenz):
        value = largest_lyapunov(
            lorenz, t_total=300.0, renorm_interval=0.25, seed=4
        )
        assert value == pytest.approx(0.906, abs=0.03)

    def test_random_linear_eigenvalue_agreement(self):
        rng = np.random.default_rng(5)
        checked = 0
        while checked < 8:
            a = rng.normal(size=(3, 3))
            target = float(np.max(np.linalg.eigvals(a).real))
            if abs(target) < 0.3 or abs(target) > 3.0:
                continue
            system = linear_system(a, period=1.0)
            value = largest_lyapunov(
                system, t_total=400.0, renorm_interval=0.5, seed=checked
            )
            assert value == pytest.approx(target, abs=0.01 * max(1.0, abs(target)))
            checked += 1

    def test_convergence_in_t_total(self, lorenz):
        short = largest_lyapunov(lorenz, 200 * lorenz.dominant_period,
                                 renorm_interval=0.25, seed=6)
        long = largest_lyapunov(lorenz, 400 * lorenz.dominant_period,
                                renorm_interval=0.25, seed=6)
        assert abs(long - short) / abs(long) < 0.02

    def test_t_total_precondition(self, lorenz):
        with pytest.raises(ValueError):
            largest_lyapunov(lorenz, t_total=10.0)


def tone_trajectory(freqs_amps, dt=0.05, n=4096):
    # whole numbers of cycles keep tones on FFT bins (no leakage)
    t = dt * np.arange(n)
    span = n * dt
    x = sum(
        a * np.sin(2 * np.pi * (round(f * span) / span) * t)
        for f, a in freqs_amps
    )
    return Trajectory(0.0, dt, x.reshape(-1, 1))


class TestScaleSeparation:
    def test_pure_tone(self):
        traj = tone_trajectory([(0.5, 1.0)])
        assert scale_separation(traj, seed=1) == pytest.approx(1.0)

    def test_two_tones_ratio_ten(self):
        traj = tone_trajectory([(0.09765625, 1.0), (0.9765625, 0.5)])
        value = scale_separation(traj, seed=2)
        bin_width = 1.0 / (4096 * 0.05)
        assert value == pytest.approx(10.0, abs=10 * bin_width / 0.097 + 1e-9)

    def test_constant_flagged(self):
        traj = Trajectory(0.0, 0.01, np.full((512, 2), 3.25))
        with pytest.warns(RuntimeWarning):
            assert scale_separation(traj, seed=3) == 1.0

    def test_amplitude_invariance(self):
        traj = tone_trajectory([(0.1, 1.0), (0.7, 0.3)])
        scaled = Trajectory(traj.t0, traj.dt, 250.0 * traj.states)
        a = scale_separation(traj, seed=4)
        b = scale_separation(scaled, seed=4)
        assert a == pytest.approx(b)

    def test_preconditions(self):
        traj = tone_trajectory([(0.5, 1.0)], n=100)
        with pytest.raises(ValueError):
            scale_separation(traj)


class TestDescriptionLength:
    def test_zero_matrix(self):
        assert description_length(np.zeros((35, 3))) == 0.0

    def test_single_unit_entry(self):
        coeffs = np.zeros((35, 3))
        coeffs[4, 1] = 1.0
        expected = math.log2(105) + 1 + math.ceil(math.log2(1 + 1.0 / 1e-3))
        value = description_length(coeffs)
        assert value == pytest.approx(expected, abs=1e-12)
        assert value == pytest.approx(17.71, abs=0.01)

    def test_monotone_in_magnitude_and_support(self):
        rng = np.random.default_rng(7)
        coeffs = np.zeros((10, 2))
        coeffs[2, 0] = 0.5
        base = description_length(coeffs)
        bigger = coeffs.copy()
        bigger[2, 0] = 50.0
        assert description_length(bigger) >= base
        denser = coeffs.copy()
        denser[7, 1] = 0.1
        assert description_length(denser) >= base


class TestNonlinearityScore:
    def test_zero_system(self, lorenz):
        zero = PolynomialSystem(
            "zero", lorenz.basis, np.zeros_like(lorenz.coefficients),
            lorenz.reference_ics, 1.0,
        )
        assert nonlinearity_score(zero) == 0

    def test_lorenz_value(self, lorenz):
        # 5 linear terms (weight 2) + 2 quadratic terms (weight 3)
        assert nonlinearity_score(lorenz) == 16

    def test_constant_system(self):
        basis = monomial_basis(3, 4)
        coeffs = np.zeros((len(basis.terms), 3))
        coeffs[0] = [1.0, -2.0, 0.5]
        system = PolynomialSystem("const", basis, coeffs, [[0.0] * 3], 1.0)
        assert nonlinearity_score(system) == 3

    def test_permutation_invariance(self):
        basis = monomial_basis(3, 4)
        eqs = (
            {(1, 0, 0): -1.0, (0, 2, 0): 2.0},
            {(0, 0, 3): 4.0},
            {(1, 1, 1): -0.5, (0, 0, 0): 1.0},
        )
        original = PolynomialSystem(
            "a", basis, coefficients_from_equations(basis, eqs), [[0.0] * 3], 1.0
        )
        # permute state variables (x, y, z) -> (z, x, y)
        perm = [2, 0, 1]
        permuted_eqs = []
        for j in range(3):
            eq = {}
            for exps, value in eqs[perm[j]].items():
                new = tuple(exps[perm[i]] for i in range(3))
                eq[new] = value
            permuted_eqs.append(eq)
        permuted = PolynomialSystem(
            "b", basis, coefficients_from_equations(basis, permuted_eqs),
            [[0.0] * 3], 1.0,
        )
        assert nonlinearity_score(original) == nonlinearity_score(permuted)


class TestBestFitR2:
    def test_exact_line(self):
        x = np.linspace(1, 10, 20)
        fit = best_fit_r2(x, 2.0 * x + 1.0)
        assert fit.family == "linear"
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)

    def test_exact_power_law(self):
        x = np.linspace(0.5, 9.0, 25)
        fit = best_fit_r2(x, x**2)
        assert fit.family == "log_log"
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.slope == pytest.approx(2.0)

    def test_exact_exponential(self):
        x = np.linspace(0.0, 3.0, 25)
        fit = best_fit_r2(x, np.exp(3.0 * x))
        assert fit.family == "log_linear"
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.slope == pytest.approx(3.0)

    def test_constant_targets(self):
        fit = best_fit_r2([1.0, 2.0, 3.0, 4.0], [5.0, 5.0, 5.0, 5.0])
        assert fit.r_squared == 0.0

    def test_log_fits_drop_nonpositive(self):
        x = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        y = np.array([-1.0, 4.0, 9.0, 16.0, 25.0])
        fit = best_fit_r2(x, y)
        if fit.family in ("log_linear", "log_log"):
            assert fit.n_points_used == 4

    def test_returned_family_maximizes_r2(self):
        rng = np.random.default_rng(11)
        x = np.abs(rng.normal(size=30)) + 0.1
        y = np.abs(rng.normal(size=30)) + 0.1
        best = best_fit_r2(x, y)
        from sindybench.metrics import _ols_r2

        candidates = {
            "linear": _ols_r2(x, y)[2],
            "log_linear": _ols_r2(x, np.log(y))[2],
            "log_log": _ols_r2(np.log(x), np.log(y))[2],
        }
        assert best.r_squared >= max(candidates.values()) - 1e-12

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            best_fit_r2([1.0, 2.0], [1.0, 2.0])
