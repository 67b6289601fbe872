import itertools
import math
import time

import numpy as np
import pytest

from sindybench import (
    OptimizerConfig,
    coefficient_error,
    exhaustive_best_subset,
    fit,
    lasso_cd,
    miosr,
    monomial_basis,
    sr3,
    stlsq,
)
from sindybench.features import RegressionProblem
from sindybench.optimizers import (
    ZERO_TOL,
    NormalEquations,
    _cd_sweeps,
    _cd_sweeps_fast,
    _sr3_column,
)


def random_problem(seed, n=30, basis=None, d=2, signal=None):
    """Random dense regression problem; basis fixes the feature count."""
    rng = np.random.default_rng(seed)
    basis = basis or monomial_basis(3, 2)  # 10 terms
    p = len(basis.terms)
    features = rng.normal(size=(n, p))
    if signal is not None:
        targets = features @ signal + 0.01 * rng.normal(size=(n, signal.shape[1]))
    else:
        targets = rng.normal(size=(n, d))
    return RegressionProblem(features, targets, basis, "pointwise")


def residual(problem, coefficients, dim):
    r = problem.features @ coefficients[:, dim] - problem.targets[:, dim]
    return float(r @ r)


class TestStlsq:
    def test_single_relevant_column(self):
        basis = monomial_basis(1, 1)
        x = np.linspace(-2, 2, 40).reshape(-1, 1)
        features = np.hstack([np.ones_like(x), x])
        problem = RegressionProblem(features, -2.0 * x, basis, "pointwise")
        result = stlsq(problem, OptimizerConfig(variant="stlsq", threshold=0.5))
        assert result.support == ((1,),)
        assert result.coefficients[1, 0] == pytest.approx(-2.0, abs=1e-10)

    def test_zero_threshold_full_support(self):
        problem = random_problem(0)
        result = stlsq(problem, OptimizerConfig(variant="stlsq", threshold=0.0))
        ls, *_ = np.linalg.lstsq(problem.features, problem.targets, rcond=None)
        np.testing.assert_allclose(result.coefficients, ls, rtol=1e-8, atol=1e-10)

    def test_huge_threshold_empty_model(self):
        problem = random_problem(1)
        result = stlsq(problem, OptimizerConfig(variant="stlsq", threshold=1e9))
        assert np.all(result.coefficients == 0.0)
        assert result.support == ((), ())

    def test_threshold_floor_always_holds(self):
        for seed in range(20):
            problem = random_problem(seed)
            threshold = 0.05 * (seed + 1)
            result = stlsq(
                problem, OptimizerConfig(variant="stlsq", threshold=threshold)
            )
            nonzero = result.coefficients[result.coefficients != 0.0]
            assert np.all(np.abs(nonzero) >= threshold)

    def test_orthogonal_exact_recovery(self):
        rng = np.random.default_rng(5)
        q, _ = np.linalg.qr(rng.normal(size=(40, 10)))
        basis = monomial_basis(3, 2)
        signal = np.zeros((10, 1))
        signal[[2, 5, 7], 0] = [3.0, -1.5, 0.8]
        problem = RegressionProblem(q, q @ signal, basis, "pointwise")
        result = stlsq(problem, OptimizerConfig(variant="stlsq", threshold=0.5))
        assert result.support == ((2, 5, 7),)
        np.testing.assert_allclose(result.coefficients, signal, atol=1e-10)


class TestLasso:
    def test_zero_alpha_is_least_squares(self):
        problem = random_problem(2, n=50)
        cfg = OptimizerConfig(
            variant="lasso", l1_alpha=0.0, convergence_tol=1e-13,
            max_iterations=20000,
        )
        result = lasso_cd(problem, cfg)
        ls, *_ = np.linalg.lstsq(problem.features, problem.targets, rcond=None)
        np.testing.assert_allclose(result.coefficients, ls, atol=1e-8)

    def test_alpha_max_zeroes_everything(self):
        problem = random_problem(3)
        alpha = float(np.max(np.abs(problem.features.T @ problem.targets)))
        result = lasso_cd(
            problem, OptimizerConfig(variant="lasso", l1_alpha=alpha * 1.0001)
        )
        assert np.all(result.coefficients == 0.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_kkt_conditions(self, seed):
        rng = np.random.default_rng(seed)
        basis = monomial_basis(7, 1)  # 8 terms
        features = rng.normal(size=(20, 8))
        targets = rng.normal(size=(20, 1))
        problem = RegressionProblem(features, targets, basis, "pointwise")
        alpha = 0.3 * float(np.max(np.abs(features.T @ targets)))
        cfg = OptimizerConfig(
            variant="lasso", l1_alpha=alpha, convergence_tol=1e-12,
            max_iterations=50000,
        )
        result = lasso_cd(problem, cfg)
        xi = result.coefficients[:, 0]
        grad = features.T @ (features @ xi - targets[:, 0])
        for j in range(8):
            if xi[j] == 0.0:
                assert abs(grad[j]) <= alpha + 1e-6
            else:
                assert abs(grad[j] + alpha * np.sign(xi[j])) <= 1e-6

    def test_fast_kernel_matches_reference(self):
        rng = np.random.default_rng(8)
        features = rng.normal(size=(25, 10))
        y = rng.normal(size=25)
        gram, xty = features.T @ features, features.T @ y
        alpha = 0.5
        xi_ref, xi_fast = np.zeros(10), np.zeros(10)
        _cd_sweeps(gram, xty, alpha, xi_ref, 500, 1e-12)
        _cd_sweeps_fast(gram, xty, alpha, xi_fast, 500, 1e-12)
        np.testing.assert_allclose(xi_ref, xi_fast, rtol=0, atol=1e-14)


class TestSr3:
    def test_zero_threshold_is_least_squares(self):
        problem = random_problem(4, n=50)
        result = sr3(
            problem,
            OptimizerConfig(variant="sr3", threshold=0.0, nu=1.0),
        )
        ls, *_ = np.linalg.lstsq(problem.features, problem.targets, rcond=None)
        np.testing.assert_allclose(result.coefficients, ls, rtol=1e-6, atol=1e-6)

    @pytest.mark.parametrize("seed", range(10))
    def test_objective_monotone(self, seed):
        rng = np.random.default_rng(seed)
        features = rng.normal(size=(40, 10))
        signal = np.zeros(10)
        signal[rng.choice(10, size=3, replace=False)] = rng.normal(
            scale=2.0, size=3
        )
        y = features @ signal + 0.05 * rng.normal(size=40)
        gram, xty, yty = features.T @ features, features.T @ y, float(y @ y)
        trace = []
        _sr3_column(
            gram, xty, yty, threshold=0.05, nu=0.5, max_iterations=300,
            tol=1e-14, trace=trace,
        )
        assert len(trace) >= 2
        diffs = np.diff(np.array(trace))
        assert np.all(diffs <= 1e-9 * (1.0 + abs(trace[0])))

    def test_recovers_lorenz_support_for_some_threshold(
        self, lorenz, lorenz_problem, lorenz_true_support
    ):
        from sindybench import hyperparameter_grid

        grid = hyperparameter_grid("sr3", 40, lorenz_problem)
        hits = []
        for threshold in grid:
            result = sr3(
                lorenz_problem,
                OptimizerConfig(variant="sr3", threshold=threshold, nu=1.0),
            )
            if result.support == lorenz_true_support:
                hits.append(threshold)
        assert hits, "no SR3 threshold recovered the true support"


class TestMiosr:
    def test_budget_equals_p_is_least_squares(self):
        problem = random_problem(6, n=40)
        p = problem.n_features
        result = miosr(
            problem, OptimizerConfig(variant="miosr", sparsity_budgets=(p, p))
        )
        ls, *_ = np.linalg.lstsq(problem.features, problem.targets, rcond=None)
        np.testing.assert_allclose(result.coefficients, ls, rtol=1e-6, atol=1e-8)
        assert all(result.proved_optimal)

    def test_budget_too_large_rejected(self):
        problem = random_problem(7)
        p = problem.n_features
        with pytest.raises(ValueError):
            miosr(
                problem,
                OptimizerConfig(variant="miosr", sparsity_budgets=(p + 1, 2)),
            )

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_exhaustive_oracle(self, seed):
        rng = np.random.default_rng(100 + seed)
        basis = monomial_basis(3, 2)  # p = 10
        features = rng.normal(size=(25, 10))
        targets = rng.normal(size=(25, 2))
        problem = RegressionProblem(features, targets, basis, "pointwise")
        k = 1 + seed % 4
        result = miosr(
            problem, OptimizerConfig(variant="miosr", sparsity_budgets=(k, k))
        )
        for dim in range(2):
            assert result.proved_optimal[dim]
            assert len(result.support[dim]) <= k
            oracle = exhaustive_best_subset(problem, k, dim)
            assert residual(problem, result.coefficients, dim) <= (
                oracle.residual + 1e-9
            )

    def test_never_worse_than_stlsq_at_same_sparsity(self):
        for seed in range(10):
            problem = random_problem(seed + 40, n=40)
            st = stlsq(problem, OptimizerConfig(variant="stlsq", threshold=0.3))
            budgets = tuple(max(1, len(s)) for s in st.support)
            mi = miosr(
                problem,
                OptimizerConfig(variant="miosr", sparsity_budgets=budgets),
            )
            for dim in range(problem.n_targets):
                if not mi.proved_optimal[dim]:
                    continue
                assert residual(problem, mi.coefficients, dim) <= (
                    residual(problem, st.coefficients, dim) + 1e-9
                )

    def test_lorenz_budgets_recover_true_support(
        self, lorenz_problem, lorenz_true_support
    ):
        start = time.perf_counter()
        result = miosr(
            lorenz_problem,
            OptimizerConfig(variant="miosr", sparsity_budgets=(2, 3, 2)),
        )
        elapsed = time.perf_counter() - start
        assert result.support == lorenz_true_support
        assert all(result.proved_optimal)
        assert elapsed < 15.0  # 5 s per state variable

    def test_time_limit_returns_incumbent(self):
        problem = random_problem(77, n=60)
        cfg = OptimizerConfig(
            variant="miosr", sparsity_budgets=(4, 4), time_limit_per_dim=1e-5
        )
        result = miosr(problem, cfg)
        assert not all(result.proved_optimal)
        assert all(len(s) <= 4 for s in result.support)


class TestExhaustive:
    def test_orthonormal_k1_picks_max_correlation(self):
        rng = np.random.default_rng(12)
        q, _ = np.linalg.qr(rng.normal(size=(30, 10)))
        basis = monomial_basis(3, 2)
        y = rng.normal(size=(30, 1))
        problem = RegressionProblem(q, y, basis, "pointwise")
        oracle = exhaustive_best_subset(problem, 1, 0)
        assert oracle.support == (int(np.argmax(np.abs(q.T @ y[:, 0]))),)

    def test_full_budget_is_least_squares(self):
        basis = monomial_basis(4, 1)  # p = 5
        rng = np.random.default_rng(13)
        features = rng.normal(size=(20, 5))
        y = rng.normal(size=(20, 1))
        problem = RegressionProblem(features, y, basis, "pointwise")
        oracle = exhaustive_best_subset(problem, 5, 0)
        ls, *_ = np.linalg.lstsq(features, y[:, 0], rcond=None)
        np.testing.assert_allclose(oracle.coefficients, ls, rtol=1e-9, atol=1e-12)

    def test_budget_guard(self):
        problem = random_problem(14, basis=monomial_basis(3, 4))  # p = 35
        with pytest.raises(ValueError):
            exhaustive_best_subset(problem, 20, 0)


class TestFitResultContracts:
    def test_support_matches_nonzeros(self):
        for seed in range(5):
            problem = random_problem(seed + 60)
            result = stlsq(problem, OptimizerConfig(variant="stlsq", threshold=0.2))
            for dim, support in enumerate(result.support):
                observed = tuple(np.flatnonzero(result.coefficients[:, dim]))
                assert support == observed
            nonzero = np.abs(result.coefficients[result.coefficients != 0.0])
            assert np.all(nonzero >= ZERO_TOL)

    @pytest.mark.parametrize("variant", ["stlsq", "lasso", "sr3", "miosr"])
    def test_column_permutation_equivariance(self, variant):
        problem = random_problem(70, n=40, d=3)
        kwargs = {"variant": variant, "threshold": 0.3, "l1_alpha": 2.0}
        if variant == "miosr":
            kwargs["sparsity_budgets"] = (3, 3, 3)
        base = fit(problem, OptimizerConfig(**kwargs))
        perm = [2, 0, 1]
        permuted_problem = RegressionProblem(
            problem.features, problem.targets[:, perm], problem.basis, "pointwise"
        )
        permuted = fit(permuted_problem, OptimizerConfig(**kwargs))
        np.testing.assert_array_equal(
            permuted.coefficients, base.coefficients[:, perm]
        )

    @pytest.mark.parametrize("variant", ["stlsq", "lasso", "sr3", "miosr"])
    def test_determinism(self, variant):
        problem = random_problem(80, n=40, d=2)
        kwargs = {"variant": variant, "threshold": 0.25, "l1_alpha": 1.0}
        if variant == "miosr":
            kwargs["sparsity_budgets"] = (3, 3)
        first = fit(problem, OptimizerConfig(**kwargs))
        second = fit(problem, OptimizerConfig(**kwargs))
        np.testing.assert_array_equal(first.coefficients, second.coefficients)
        assert first.support == second.support


class TestOptimizerConfig:
    def test_variant_validation(self):
        with pytest.raises(ValueError):
            OptimizerConfig(variant="nope")

    def test_negative_threshold(self):
        with pytest.raises(ValueError):
            OptimizerConfig(variant="stlsq", threshold=-1.0)

    def test_miosr_needs_budgets(self):
        problem = random_problem(90)
        with pytest.raises(ValueError):
            miosr(problem, OptimizerConfig(variant="miosr"))
