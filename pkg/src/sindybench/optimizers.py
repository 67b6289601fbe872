"""Sparse regression solvers for the model-identification objective.

Four routes to a sparse coefficient matrix: sequentially thresholded
least squares, l1 coordinate descent, SR3 relax-and-split, and exact
best-subset selection by branch and bound with a per-dimension time
limit. All solvers fit target columns independently and work from the
normal equations (Gram matrix), which makes hyperparameter sweeps cheap.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .features import RegressionProblem

ZERO_TOL = 1e-10  # support-counting tolerance, shared by every optimizer

STLSQ = "stlsq"
LASSO = "lasso"
SR3 = "sr3"
MIOSR = "miosr"
VARIANTS = (STLSQ, LASSO, SR3, MIOSR)


@dataclass(frozen=True)
class OptimizerConfig:
    """Variant selector plus the union of per-variant hyperparameters."""

    variant: str
    threshold: float = 0.1  # stlsq / sr3 hard-threshold level
    ridge: float = 0.0  # optional stlsq ridge penalty (absolute)
    l1_alpha: float = 1.0  # lasso penalty
    nu: float = 1.0  # sr3 relaxation weight
    sparsity_budgets: tuple[int, ...] | None = None  # miosr, one per dimension
    time_limit_per_dim: float = 5.0  # miosr wall-clock budget, seconds
    max_iterations: int = 500
    convergence_tol: float = 1e-8

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.threshold < 0 or self.ridge < 0 or self.l1_alpha < 0:
            raise ValueError("threshold, ridge, and l1_alpha must be nonnegative")
        if self.nu <= 0:
            raise ValueError("nu must be positive")
        if self.time_limit_per_dim <= 0:
            raise ValueError("time_limit_per_dim must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be positive")


@dataclass(frozen=True)
class FitResult:
    """Sparse coefficient matrix plus per-dimension fit diagnostics."""

    coefficients: np.ndarray  # (p, d); entries below ZERO_TOL are exact zeros
    support: tuple[tuple[int, ...], ...]
    iterations: tuple[int, ...]
    proved_optimal: tuple[bool, ...]
    runtime_seconds: float
    warnings: tuple[str, ...] = ()

    def total_nonzeros(self) -> int:
        return sum(len(s) for s in self.support)


def _finalize(columns, iterations, proved, runtime, warnings) -> FitResult:
    coeffs = np.column_stack(columns)
    coeffs[np.abs(coeffs) < ZERO_TOL] = 0.0
    coeffs.setflags(write=False)
    support = tuple(
        tuple(int(i) for i in np.flatnonzero(coeffs[:, j]))
        for j in range(coeffs.shape[1])
    )
    return FitResult(
        coefficients=coeffs,
        support=support,
        iterations=tuple(iterations),
        proved_optimal=tuple(proved),
        runtime_seconds=float(runtime),
        warnings=tuple(dict.fromkeys(warnings)),
    )


class NormalEquations:
    """Precomputed Gram data for one regression problem.

    Sharing this across the hyperparameter grid is what keeps a
    300-point scan with 10 ensemble members in the seconds range.
    """

    def __init__(self, problem: RegressionProblem):
        self.problem = problem
        self.features = problem.features
        self.targets = problem.targets
        self.gram = problem.features.T @ problem.features
        self.xty = problem.features.T @ problem.targets
        self.yty = np.einsum("ij,ij->j", problem.targets, problem.targets)

    @property
    def n_features(self) -> int:
        return self.gram.shape[0]

    @property
    def n_targets(self) -> int:
        return self.targets.shape[1]


def _gram_solve(gram, rhs, ridge: float = 0.0):
    """Solve (G + ridge I) x = rhs, symmetrically equilibrated.

    Polynomial-library column norms span many decades, which alone can
    push the Gram past float64's usable condition range; scaling the
    system to a unit diagonal before the solve (and back-scaling the
    solution) is an exact reparametrization that restores most of that
    headroom without touching the regression semantics. Falls back to a
    pseudoinverse when singular.
    """
    mat = gram + ridge * np.eye(gram.shape[0]) if ridge > 0 else gram
    d = np.sqrt(np.diag(mat).clip(min=0.0))
    d[d == 0.0] = 1.0
    scaled = mat / d[:, None] / d[None, :]
    scaled_rhs = rhs / d if rhs.ndim == 1 else rhs / d[:, None]
    try:
        solution = np.linalg.solve(scaled, scaled_rhs)
        warn = None
    except np.linalg.LinAlgError:
        solution = np.linalg.pinv(scaled) @ scaled_rhs
        warn = "rank_deficient_normal_equations"
    return (solution / d if rhs.ndim == 1 else solution / d[:, None]), warn


# ---------------------------------------------------------------------------
# STLSQ
# ---------------------------------------------------------------------------

def _stlsq_column(gram, xty_col, threshold, ridge, max_iterations):
    p = gram.shape[0]
    active = np.arange(p)
    warnings = []
    coef_active = np.zeros(0)
    converged = False
    iterations = 0
    for _ in range(max_iterations):
        iterations += 1
        coef_active, warn = _gram_solve(
            gram[np.ix_(active, active)], xty_col[active], ridge
        )
        if warn:
            warnings.append(warn)
        keep = np.abs(coef_active) >= threshold
        if np.all(keep):
            converged = True
            break
        active = active[keep]
        if active.size == 0:
            coef_active = np.zeros(0)
            converged = True
            break
    if not converged:
        # support still shrinking at the cap: enforce the threshold floor
        # without a refit so returned nonzeros satisfy |xi| >= threshold
        keep = np.abs(coef_active) >= threshold
        active, coef_active = active[keep], coef_active[keep]
        warnings.append("stlsq_iteration_cap")
    coef = np.zeros(p)
    coef[active] = coef_active
    return coef, iterations, warnings


# ---------------------------------------------------------------------------
# Lasso by cyclic coordinate descent (covariance updates)
# ---------------------------------------------------------------------------

def _cd_sweeps(gram, xty_col, alpha, xi, max_iterations, tol):
    """Cyclic soft-threshold sweeps on the normal equations, in place."""
    p = gram.shape[0]
    for sweep in range(max_iterations):
        max_delta = 0.0
        for j in range(p):
            gjj = gram[j, j]
            if gjj <= 0.0:
                xi[j] = 0.0
                continue
            rho = xty_col[j] - np.dot(gram[j], xi) + gjj * xi[j]
            if rho > alpha:
                new = (rho - alpha) / gjj
            elif rho < -alpha:
                new = (rho + alpha) / gjj
            else:
                new = 0.0
            delta = abs(new - xi[j])
            if delta > max_delta:
                max_delta = delta
            xi[j] = new
        if max_delta < tol:
            return sweep + 1, True
    return max_iterations, False


try:  # jit the inner sweeps when numba is available; fallback is identical
    import numba

    _cd_sweeps_fast = numba.njit(cache=True)(_cd_sweeps)
except ImportError:  # pragma: no cover - exercised only without numba
    _cd_sweeps_fast = _cd_sweeps


def _lasso_column(gram, xty_col, alpha, max_iterations, tol):
    xi = np.zeros(gram.shape[0])
    iterations, converged = _cd_sweeps_fast(
        gram, xty_col, float(alpha), xi, int(max_iterations), float(tol)
    )
    warnings = [] if converged else ["lasso_iteration_cap"]
    return xi, iterations, warnings


# ---------------------------------------------------------------------------
# SR3 relax-and-split
# ---------------------------------------------------------------------------

def _sr3_column(
    gram, xty_col, yty_col, threshold, nu, max_iterations, tol, trace=None
):
    """Alternate a ridge-relaxed solve with hard thresholding.

    ``trace``, when a list, collects the relax-and-split objective
    0.5||Theta xi - y||^2 + lambda ||w||_0 + ||xi - w||^2 / (2 nu)
    after every iteration (used by the monotonicity oracle).
    """
    p = gram.shape[0]
    relaxed = gram + np.eye(p) / nu
    level = math.sqrt(2.0 * threshold * nu)
    w = np.zeros(p)
    warnings = []
    # the relaxed matrix is constant across iterations: equilibrate and
    # factor it once (SPD by construction), then iterate with back-solves
    d = np.sqrt(np.diag(relaxed).clip(min=0.0))
    d[d == 0.0] = 1.0
    scaled = relaxed / d[:, None] / d[None, :]
    try:
        factor = scipy.linalg.cho_factor(scaled)

        def solve(rhs):
            return scipy.linalg.cho_solve(factor, rhs / d) / d, None

    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):

        def solve(rhs):
            return _gram_solve(relaxed, rhs)

    iterations = 0
    for _ in range(max_iterations):
        iterations += 1
        xi, warn = solve(xty_col + w / nu)
        if warn:
            warnings.append(warn)
        w_new = np.where(np.abs(xi) >= level, xi, 0.0)
        if trace is not None:
            fit_half = 0.5 * (yty_col - 2.0 * xi @ xty_col + xi @ gram @ xi)
            penalty = threshold * np.count_nonzero(w_new)
            proximity = float(np.sum((xi - w_new) ** 2)) / (2.0 * nu)
            trace.append(fit_half + penalty + proximity)
        delta = float(np.linalg.norm(w_new - w))
        w = w_new
        if delta < tol:
            break
    else:
        warnings.append("sr3_iteration_cap")
    # refit the sparse variable on its support so it is exactly sparse
    support = np.flatnonzero(np.abs(w) > 0)
    coef = np.zeros(p)
    if support.size:
        sol, warn = _gram_solve(gram[np.ix_(support, support)], xty_col[support])
        if warn:
            warnings.append(warn)
        coef[support] = sol
    return coef, iterations, warnings


# ---------------------------------------------------------------------------
# Best-subset selection
# ---------------------------------------------------------------------------

def _subset_gram(gram, xty_col, yty_col, support):
    """Least-squares coefficients and residual on a support, Gram route."""
    if len(support) == 0:
        return np.zeros(0), float(yty_col)
    idx = np.asarray(support, dtype=int)
    coef, _ = _gram_solve(gram[np.ix_(idx, idx)], xty_col[idx])
    resid = float(yty_col) - float(xty_col[idx] @ coef)
    return coef, max(resid, 0.0)


def _subset_lstsq(features, y, support):
    """Least-squares coefficients and residual on a support, QR route."""
    if len(support) == 0:
        return np.zeros(0), float(y @ y)
    cols = features[:, list(support)]
    coef, _, _, _ = np.linalg.lstsq(cols, y, rcond=None)
    r = y - cols @ coef
    return coef, float(r @ r)


def _omp_support(gram, xty_col, k):
    """Greedy correlation pursuit used to seed the incumbent."""
    p = gram.shape[0]
    norms = np.sqrt(np.maximum(np.diag(gram), 1e-300))
    support: list[int] = []
    for _ in range(min(k, p)):
        if support:
            beta, _ = _gram_solve(
                gram[np.ix_(support, support)], xty_col[support]
            )
            corr = xty_col - gram[:, support] @ beta
        else:
            corr = xty_col.copy()
        corr = np.abs(corr) / norms
        corr[support] = -np.inf
        j = int(np.argmax(corr))
        if not np.isfinite(corr[j]) or corr[j] <= 0:
            break
        support.append(j)
    return support


def _stlsq_budget_support(gram, xty_col, k, max_iterations):
    """Bisect the STLSQ threshold until the support fits the budget."""
    coef_ls, _ = _gram_solve(gram, xty_col)
    hi = float(np.max(np.abs(coef_ls))) * (1.0 + 1e-9) + 1e-300
    lo = 0.0
    best = None
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        coef, _, _ = _stlsq_column(gram, xty_col, mid, 0.0, max_iterations)
        nnz = np.flatnonzero(np.abs(coef) > 0)
        if nnz.size <= k:
            best = list(int(i) for i in nnz)
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-12 * (1.0 + hi):
            break
    return best if best is not None else []


def _miosr_column(cache, xty_col, yty_col, k, deadline, max_iterations):
    """Branch and bound over supports of size <= k for one target column.

    Nodes carry (forced-in tuple, excluded bitmask). The lower bound is
    the unconstrained least-squares residual on the node's allowed
    feature set; branching follows the feature most correlated with the
    current in-set residual. Exploration order is fixed, so results are
    deterministic. On deadline expiry the incumbent is returned with
    ``proved_optimal = False``.
    """
    gram = cache.gram
    p = gram.shape[0]
    k = min(k, p)

    candidates = [_omp_support(gram, xty_col, k)]
    stlsq_support = _stlsq_budget_support(gram, xty_col, k, max_iterations)
    if stlsq_support:
        extended = list(stlsq_support)
        for j in _omp_support(gram, xty_col, k):
            if len(extended) >= k:
                break
            if j not in extended:
                extended.append(j)
        candidates.append(extended)
    best_support: tuple[int, ...] = ()
    best_resid = float(yty_col)
    for cand in candidates:
        _, resid = _subset_gram(gram, xty_col, yty_col, cand)
        if resid < best_resid:
            best_resid, best_support = resid, tuple(sorted(cand))

    gap = 1e-12 * (1.0 + float(yty_col))
    full = (1 << p) - 1
    nodes_visited = 0
    proved = True
    # stack entries: (forced_in tuple, excluded bitmask, inherited bound)
    stack: list[tuple[tuple[int, ...], int, float | None]] = [((), 0, None)]
    while stack:
        if time.monotonic() > deadline:
            proved = False
            break
        forced_in, excluded, bound = stack.pop()
        nodes_visited += 1
        allowed_mask = full & ~excluded
        allowed = [j for j in range(p) if allowed_mask >> j & 1]
        if bound is None:
            _, bound = _subset_gram(gram, xty_col, yty_col, allowed)
        if bound >= best_resid - gap:
            continue
        free = [j for j in allowed if j not in forced_in]
        if len(forced_in) == k or not free:
            _, resid = _subset_gram(gram, xty_col, yty_col, forced_in)
            if resid < best_resid:
                best_resid, best_support = resid, tuple(sorted(forced_in))
            continue
        # the in-set fit doubles as a feasible incumbent and gives the
        # residual correlations that pick the branching feature
        if forced_in:
            beta, in_resid = _subset_gram(gram, xty_col, yty_col, forced_in)
            corr = xty_col - gram[:, list(forced_in)] @ beta
        else:
            in_resid = float(yty_col)
            corr = xty_col.copy()
        if in_resid < best_resid:
            best_resid, best_support = in_resid, tuple(sorted(forced_in))
        scores = np.abs(corr[free]) / np.sqrt(
            np.maximum(np.diag(gram)[free], 1e-300)
        )
        branch = free[int(np.argmax(scores))]
        stack.append((forced_in, excluded | (1 << branch), None))
        stack.append((forced_in + (branch,), excluded, bound))

    return best_support, best_resid, nodes_visited, proved


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def _fit_cached(cache: NormalEquations, cfg: OptimizerConfig) -> FitResult:
    start = time.perf_counter()
    p, d = cache.n_features, cache.n_targets
    columns, iterations, proved, warnings = [], [], [], []

    if cfg.variant == MIOSR:
        budgets = cfg.sparsity_budgets
        if budgets is None:
            raise ValueError("miosr requires sparsity_budgets")
        if len(budgets) != d:
            raise ValueError(
                f"sparsity_budgets must have length {d}, got {len(budgets)}"
            )
        for k in budgets:
            if not 1 <= k <= p:
                raise ValueError(
                    f"sparsity budget {k} out of range [1, {p}]"
                )

    for j in range(d):
        xty_col = cache.xty[:, j]
        yty_col = cache.yty[j]
        if cfg.variant == STLSQ:
            coef, its, warns = _stlsq_column(
                cache.gram, xty_col, cfg.threshold, cfg.ridge, cfg.max_iterations
            )
            ok = True
        elif cfg.variant == LASSO:
            coef, its, warns = _lasso_column(
                cache.gram, xty_col, cfg.l1_alpha, cfg.max_iterations,
                cfg.convergence_tol,
            )
            ok = True
        elif cfg.variant == SR3:
            coef, its, warns = _sr3_column(
                cache.gram, xty_col, yty_col, cfg.threshold, cfg.nu,
                cfg.max_iterations, cfg.convergence_tol,
            )
            ok = True
        else:  # MIOSR
            deadline = time.monotonic() + cfg.time_limit_per_dim
            support, _, nodes, ok = _miosr_column(
                cache, xty_col, yty_col, cfg.sparsity_budgets[j], deadline,
                cfg.max_iterations,
            )
            refit, _ = _subset_lstsq(cache.features, cache.targets[:, j], support)
            coef = np.zeros(p)
            coef[list(support)] = refit
            its, warns = nodes, [] if ok else ["miosr_time_limit"]
        columns.append(coef)
        iterations.append(its)
        proved.append(ok)
        warnings.extend(warns)

    return _finalize(
        columns, iterations, proved, time.perf_counter() - start, warnings
    )


def fit(problem: RegressionProblem, cfg: OptimizerConfig) -> FitResult:
    """Solve the sparse regression problem with the configured variant."""
    return _fit_cached(NormalEquations(problem), cfg)


def stlsq(problem: RegressionProblem, cfg: OptimizerConfig) -> FitResult:
    """Sequentially thresholded least squares.

    Per dimension: alternate a ridge solve on the active set with hard
    thresholding at ``cfg.threshold`` until the support stabilizes; every
    returned nonzero satisfies |coef| >= threshold.
    """
    if cfg.variant != STLSQ:
        cfg = replace(cfg, variant=STLSQ)
    return fit(problem, cfg)


def lasso_cd(problem: RegressionProblem, cfg: OptimizerConfig) -> FitResult:
    """l1-penalized regression by cyclic coordinate descent."""
    if cfg.variant != LASSO:
        cfg = replace(cfg, variant=LASSO)
    return fit(problem, cfg)


def sr3(problem: RegressionProblem, cfg: OptimizerConfig) -> FitResult:
    """Relax-and-split sparse regression; returns the refit sparse variable."""
    if cfg.variant != SR3:
        cfg = replace(cfg, variant=SR3)
    return fit(problem, cfg)


def miosr(problem: RegressionProblem, cfg: OptimizerConfig) -> FitResult:
    """Exact best-subset selection under per-dimension budgets."""
    if cfg.variant != MIOSR:
        cfg = replace(cfg, variant=MIOSR)
    return fit(problem, cfg)


@dataclass(frozen=True)
class SubsetFit:
    """One target column's exhaustive best-subset solution."""

    coefficients: np.ndarray  # (p,)
    support: tuple[int, ...]
    residual: float


def exhaustive_best_subset(
    problem: RegressionProblem, k: int, dim: int
) -> SubsetFit:
    """Enumerate every support of size <= k; the verification oracle.

    Independent of the branch-and-bound path: supports are scanned in
    combination order and each is solved by dense least squares on the
    raw feature columns.
    """
    p = problem.n_features
    if not 1 <= k <= p:
        raise ValueError(f"k must lie in [1, {p}]")
    if math.comb(p, k) > 10**6:
        raise ValueError(
            f"C({p}, {k}) exceeds the 1e6 enumeration budget"
        )
    if not 0 <= dim < problem.n_targets:
        raise ValueError(f"dim must index a target column (0..{problem.n_targets - 1})")
    y = problem.targets[:, dim]
    best_support: tuple[int, ...] = ()
    best_coef = np.zeros(0)
    best_resid = float(y @ y)
    for size in range(1, k + 1):
        for support in itertools.combinations(range(p), size):
            coef, resid = _subset_lstsq(problem.features, y, support)
            if resid < best_resid:
                best_support, best_coef, best_resid = support, coef, resid
    coefficients = np.zeros(p)
    if best_support:
        coefficients[list(best_support)] = best_coef
    coefficients[np.abs(coefficients) < ZERO_TOL] = 0.0
    return SubsetFit(
        coefficients=coefficients,
        support=tuple(int(i) for i in np.flatnonzero(coefficients)),
        residual=best_resid,
    )
