"""Model selection: subsampled ensembles, corrected AIC, Pareto scans.

The scan sweeps a sparsity hyperparameter, fits an ensemble of models on
row-subsampled data at every grid point, scores members with the
finite-sample-corrected AIC on clean test data, and returns the ensemble
with the minimal member-mean AIC.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, replace

import numpy as np

from ._seeding import derive_seed
from .features import POINTWISE, RegressionProblem, evaluate_library
from .metrics import coefficient_error, rmse_error
from .optimizers import (
    LASSO,
    MIOSR,
    SR3,
    STLSQ,
    FitResult,
    NormalEquations,
    OptimizerConfig,
    _fit_cached,
    _gram_solve,
)
from .systems import PolynomialSystem

RESIDUAL_FLOOR = 1e-300  # clamp before the log so exact fits stay finite


@dataclass(frozen=True)
class EnsembleResult:
    """Models fit on independent row subsamples at one hyperparameter."""

    members: tuple[FitResult | None, ...]  # None marks a failed member
    hyperparameter: float | tuple[int, ...]
    member_seeds: tuple[int, ...]

    def ok_members(self) -> tuple[FitResult, ...]:
        return tuple(m for m in self.members if m is not None)


@dataclass(frozen=True)
class ScanRecord:
    """Member-mean scores for one hyperparameter grid point."""

    hyperparameter: float | tuple[int, ...]
    mean_aic: float
    mean_e_coef: float
    mean_e_rmse: float
    mean_k: float
    valid: bool


@dataclass(frozen=True)
class ParetoScanResult:
    records: tuple[ScanRecord, ...]
    best_index: int
    best_ensemble: EnsembleResult

    @property
    def best_record(self) -> ScanRecord:
        return self.records[self.best_index]


def write_scan_csv(result: ParetoScanResult, path: str | os.PathLike) -> None:
    """Export scan records: hyperparameter,mean_aic,...,valid per grid point."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("hyperparameter,mean_aic,mean_e_coef,mean_e_rmse,mean_k,valid\n")
        writer = csv.writer(fh)
        for r in result.records:
            hyper = r.hyperparameter
            if isinstance(hyper, tuple):
                hyper = hyper[0]
            writer.writerow(
                [
                    repr(float(hyper)) if not isinstance(hyper, int) else hyper,
                    repr(float(r.mean_aic)),
                    "" if math.isnan(r.mean_e_coef) else repr(float(r.mean_e_coef)),
                    "" if math.isnan(r.mean_e_rmse) else repr(float(r.mean_e_rmse)),
                    "" if math.isnan(r.mean_k) else repr(float(r.mean_k)),
                    "true" if r.valid else "false",
                ]
            )


def subsample_rows(
    problem: RegressionProblem, fraction: float, seed: int
) -> RegressionProblem:
    """Restrict to floor(fraction*N) distinct rows drawn without replacement."""
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    n = problem.n_rows
    m = int(math.floor(fraction * n))
    if m < problem.n_features:
        raise ValueError(
            f"subsample of {m} rows is smaller than the library ({problem.n_features})"
        )
    idx = np.random.default_rng(seed).permutation(n)[:m]
    return RegressionProblem(
        features=problem.features[idx],
        targets=problem.targets[idx],
        basis=problem.basis,
        form=problem.form,
        row_weights=None if problem.row_weights is None else problem.row_weights[idx],
    )


def _member_seeds(master_seed: int, n_models: int) -> tuple[int, ...]:
    return tuple(
        derive_seed(master_seed, "ensemble-member", i) for i in range(n_models)
    )


def fit_ensemble(
    problem: RegressionProblem,
    cfg: OptimizerConfig,
    n_models: int,
    fraction: float,
    master_seed: int,
) -> EnsembleResult:
    """Fit ``n_models`` on independent subsamples; failures stay recorded.

    Member seeds derive from the master seed alone, so identical inputs
    give identical ensembles regardless of scheduling.
    """
    if n_models < 1:
        raise ValueError("n_models must be positive")
    seeds = _member_seeds(master_seed, n_models)
    members: list[FitResult | None] = []
    for seed in seeds:
        try:
            sub = subsample_rows(problem, fraction, seed)
            members.append(_fit_cached(NormalEquations(sub), cfg))
        except (ValueError, np.linalg.LinAlgError):
            members.append(None)
    return EnsembleResult(
        members=tuple(members),
        hyperparameter=_hyperparameter_of(cfg),
        member_seeds=seeds,
    )


def _hyperparameter_of(cfg: OptimizerConfig):
    if cfg.variant == LASSO:
        return cfg.l1_alpha
    if cfg.variant == MIOSR:
        return cfg.sparsity_budgets
    return cfg.threshold


def aic_c(model: FitResult, test_problem: RegressionProblem) -> float:
    """Finite-sample-corrected Akaike information criterion.

    k counts nonzeros across all target columns; the squared residual is
    clamped below at 1e-300 before the log, and the correction term's
    pole (M - k - 1 <= 0) maps to +inf.
    """
    if test_problem.form != POINTWISE:
        raise ValueError("AIC scoring requires a pointwise test problem")
    k = model.total_nonzeros()
    m = test_problem.n_rows
    if m - k - 1 <= 0:
        return math.inf
    diff = test_problem.targets - test_problem.features @ model.coefficients
    residual_sq = max(float(np.sum(diff * diff)), RESIDUAL_FLOOR)
    return m * math.log(residual_sq) + 2.0 * k + 2.0 * k * (k + 1) / (m - k - 1)


def exact_pointwise_problem(
    trajs, truth: PolynomialSystem, basis=None
) -> RegressionProblem:
    """Clean test problem whose targets are the exact right-hand side.

    Removes differentiation error from model comparison: scoring uses
    Theta(X_test) against f_true(X_test).
    """
    basis = basis or truth.basis
    states = np.vstack([t.states for t in trajs])
    features = evaluate_library(basis, states)
    targets = evaluate_library(truth.basis, states) @ truth.coefficients
    return RegressionProblem(features, targets, basis, POINTWISE)


def hyperparameter_grid(
    variant: str,
    n_points: int,
    problem: RegressionProblem,
    budget_max: int = 10,
) -> list:
    """Sweep values for one optimizer family.

    Thresholded variants get log-spaced levels up to the largest
    unregularized least-squares coefficient; lasso gets log-spaced
    penalties up to the smallest all-zero alpha; miosr gets integer
    budgets 1..min(budget_max, p) (``n_points`` is ignored).
    """
    if variant == MIOSR:
        return list(range(1, min(budget_max, problem.n_features) + 1))
    if n_points < 1:
        raise ValueError("n_points must be positive")
    if variant == LASSO:
        alpha_max = float(np.max(np.abs(problem.features.T @ problem.targets)))
        if alpha_max <= 0:
            alpha_max = 1.0
        return list(np.geomspace(1e-6 * alpha_max, alpha_max, n_points))
    if variant in (STLSQ, SR3):
        cache = NormalEquations(problem)
        coef, _ = _gram_solve(cache.gram, cache.xty)
        c = float(np.max(np.abs(coef)))
        if c <= 0:
            c = 1.0
        return list(np.geomspace(1e-4 * c, c, n_points))
    raise ValueError(f"unknown optimizer variant {variant!r}")


def _score_member(member, test_cache, truth):
    diff = test_cache.problem.targets - test_cache.problem.features @ member.coefficients
    residual_sq = max(float(np.sum(diff * diff)), RESIDUAL_FLOOR)
    k = member.total_nonzeros()
    m = test_cache.problem.n_rows
    aic = math.inf
    if m - k - 1 > 0:
        aic = m * math.log(residual_sq) + 2.0 * k + 2.0 * k * (k + 1) / (m - k - 1)
    e_coef = coefficient_error(truth.coefficients, member.coefficients)
    e_rmse = rmse_error(
        test_cache.problem.targets,
        test_cache.problem.features @ member.coefficients,
    )
    return aic, e_coef, e_rmse, k


def pareto_scan(
    train: RegressionProblem,
    test: RegressionProblem,
    truth: PolynomialSystem,
    cfg_template: OptimizerConfig,
    grid,
    n_models: int,
    fraction: float,
    master_seed: int,
) -> ParetoScanResult:
    """Fit an ensemble at every grid point and return the min-AIC ensemble.

    Subsampled member problems are shared across grid points (their seeds
    depend only on the master seed), which keeps a 300-point scan with 10
    members per point inside the paper's timing envelope. AIC ties break
    toward the sparser grid point: the larger threshold for thresholded
    variants, the smaller budget for best-subset.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("hyperparameter grid must be nonempty")
    seeds = _member_seeds(master_seed, n_models)
    caches: list[NormalEquations | None] = []
    for seed in seeds:
        try:
            caches.append(NormalEquations(subsample_rows(train, fraction, seed)))
        except ValueError:
            caches.append(None)
    test_cache = NormalEquations(test)
    d = train.n_targets

    records: list[ScanRecord] = []
    ensembles: list[EnsembleResult] = []
    for value in grid:
        if cfg_template.variant == MIOSR:
            cfg = replace(
                cfg_template, sparsity_budgets=(int(value),) * d
            )
            hyper = cfg.sparsity_budgets
        elif cfg_template.variant == LASSO:
            cfg = replace(cfg_template, l1_alpha=float(value))
            hyper = cfg.l1_alpha
        else:
            cfg = replace(cfg_template, threshold=float(value))
            hyper = cfg.threshold
        members: list[FitResult | None] = []
        scores = []
        for cache in caches:
            if cache is None:
                members.append(None)
                continue
            try:
                member = _fit_cached(cache, cfg)
            except (ValueError, np.linalg.LinAlgError):
                members.append(None)
                continue
            members.append(member)
            scores.append(_score_member(member, test_cache, truth))
        ensembles.append(
            EnsembleResult(tuple(members), hyper, seeds)
        )
        if scores:
            arr = np.array(scores)
            records.append(
                ScanRecord(
                    hyperparameter=hyper,
                    mean_aic=float(np.mean(arr[:, 0])),
                    mean_e_coef=float(np.mean(arr[:, 1])),
                    mean_e_rmse=float(np.mean(arr[:, 2])),
                    mean_k=float(np.mean(arr[:, 3])),
                    valid=True,
                )
            )
        else:
            records.append(
                ScanRecord(hyper, math.inf, math.nan, math.nan, math.nan, False)
            )

    valid_idx = [i for i, r in enumerate(records) if r.valid]
    if not valid_idx:
        raise ValueError("every grid point failed; no valid ensemble")
    best_aic = min(records[i].mean_aic for i in valid_idx)
    ties = [i for i in valid_idx if records[i].mean_aic == best_aic]
    # sparser tie-break: budgets grow with index, thresholds shrink sparsity
    best_index = min(ties) if cfg_template.variant == MIOSR else max(ties)
    return ParetoScanResult(
        records=tuple(records),
        best_index=best_index,
        best_ensemble=ensembles[best_index],
    )
