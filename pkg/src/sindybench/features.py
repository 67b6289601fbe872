"""Regression-problem assembly: feature library, derivatives, weak form.

The pointwise route pairs library evaluations with finite-difference
derivatives. The weak route integrates the ODE against compactly
supported polynomial test functions over random subdomains, trading
derivative estimation for quadrature.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .simulate import Trajectory
from .systems import MonomialBasis, evaluate_terms

POINTWISE = "pointwise"
WEAK = "weak"


@dataclass(frozen=True, eq=False)
class RegressionProblem:
    """Feature matrix, target matrix, and their provenance."""

    features: np.ndarray  # (N, p)
    targets: np.ndarray  # (N, d)
    basis: MonomialBasis
    form: str
    row_weights: np.ndarray | None = None

    def __post_init__(self):
        features = np.asarray(self.features, dtype=float)
        targets = np.asarray(self.targets, dtype=float)
        if features.ndim != 2 or targets.ndim != 2:
            raise ValueError("features and targets must be matrices")
        if features.shape[0] != targets.shape[0]:
            raise ValueError("features and targets must have equal row counts")
        if features.shape[1] != len(self.basis.terms):
            raise ValueError(
                f"feature count {features.shape[1]} != basis term count "
                f"{len(self.basis.terms)}"
            )
        if not (np.all(np.isfinite(features)) and np.all(np.isfinite(targets))):
            raise ValueError("regression problem contains non-finite entries")
        if self.form not in (POINTWISE, WEAK):
            raise ValueError(f"form must be '{POINTWISE}' or '{WEAK}'")
        if self.row_weights is not None:
            weights = np.asarray(self.row_weights, dtype=float)
            if weights.shape != (features.shape[0],) or np.any(weights <= 0):
                raise ValueError("row_weights must be positive, one per row")
            object.__setattr__(self, "row_weights", weights)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "targets", targets)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_targets(self) -> int:
        return self.targets.shape[1]


@dataclass(frozen=True)
class WeakConfig:
    """Weak-form assembly parameters.

    ``test_order`` is the (even) polynomial order of the bump test
    function; ``subdomain_fraction`` is each subdomain's length as a
    fraction of the host trajectory's time span. Orders below 6 leave a
    nonzero second derivative of the bump at the subdomain endpoints,
    which dominates the trapezoid quadrature error; 6 keeps the
    integration-by-parts identity at the 1e-4 level on protocol grids.
    """

    n_subdomains: int = 200
    test_order: int = 6
    subdomain_fraction: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.n_subdomains < 1:
            raise ValueError("n_subdomains must be >= 1")
        if self.test_order < 2 or self.test_order % 2 != 0:
            raise ValueError("test_order must be a positive even integer")
        if not 0 < self.subdomain_fraction <= 0.5:
            raise ValueError("subdomain_fraction must lie in (0, 0.5]")


def problem_to_csv(problem: RegressionProblem, path: str | os.PathLike) -> None:
    """Dump features and targets side by side, for debugging."""
    names = problem.basis.term_names()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [f"theta:{n}" for n in names]
            + [f"target:x{j + 1}" for j in range(problem.n_targets)]
        )
        for feat, tgt in zip(problem.features, problem.targets):
            writer.writerow([f"{v:.17g}" for v in feat]
                            + [f"{v:.17g}" for v in tgt])


def evaluate_library(basis: MonomialBasis, states: np.ndarray) -> np.ndarray:
    """Evaluate the monomial library at every sample row."""
    states = np.asarray(states, dtype=float)
    if not np.all(np.isfinite(states)):
        raise ValueError("states contain non-finite entries")
    return evaluate_terms(basis, states)


def finite_difference(traj: Trajectory) -> np.ndarray:
    """Second-order derivatives: central interior, one-sided endpoints."""
    x = traj.states
    if x.shape[0] < 3:
        raise ValueError("finite differences need at least 3 samples")
    dt = traj.dt
    dx = np.empty_like(x)
    dx[1:-1] = (x[2:] - x[:-2]) / (2.0 * dt)
    dx[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * dt)
    dx[-1] = (3.0 * x[-1] - 4.0 * x[-2] + x[-3]) / (2.0 * dt)
    return dx


def _check_shared_dimension(trajs) -> int:
    if not trajs:
        raise ValueError("at least one trajectory is required")
    dims = {t.dimension for t in trajs}
    if len(dims) != 1:
        raise ValueError(f"trajectories disagree on dimension: {sorted(dims)}")
    return dims.pop()


def assemble_pointwise(trajs, basis: MonomialBasis) -> RegressionProblem:
    """Stack library rows against finite-difference targets.

    Differentiation stencils never cross trajectory boundaries: each
    trajectory contributes its own endpoint rows.
    """
    d = _check_shared_dimension(trajs)
    if d != basis.dimension:
        raise ValueError(
            f"trajectory dimension {d} != basis dimension {basis.dimension}"
        )
    features = np.vstack([evaluate_library(basis, t.states) for t in trajs])
    targets = np.vstack([finite_difference(t) for t in trajs])
    return RegressionProblem(features, targets, basis, POINTWISE)


def _bump(t: np.ndarray, a: float, b: float, order: int):
    """Polynomial bump on [a, b] vanishing at both ends, and its derivative."""
    half = (b - a) / 2.0
    q = order // 2
    u = (t - a) * (b - t) / half**2
    phi = u**q
    dphi = q * u ** (q - 1) * (a + b - 2.0 * t) / half**2
    return phi, dphi


def assemble_weak(trajs, basis: MonomialBasis, cfg: WeakConfig) -> RegressionProblem:
    """Integral (weak) formulation over random trapezoid-quadrature subdomains.

    Each of the K subdomains [a, b] lives inside one trajectory, with
    endpoints snapped to sample times. The target row is
    -integral(phi' x dt) and feature column j is integral(phi theta_j dt),
    which by parts equates to integral(phi x' dt) since phi(a)=phi(b)=0.
    """
    d = _check_shared_dimension(trajs)
    if d != basis.dimension:
        raise ValueError(
            f"trajectory dimension {d} != basis dimension {basis.dimension}"
        )
    rng = np.random.default_rng(cfg.seed)
    p = len(basis.terms)
    features = np.empty((cfg.n_subdomains, p))
    targets = np.empty((cfg.n_subdomains, d))
    libraries = [evaluate_library(basis, t.states) for t in trajs]

    for row in range(cfg.n_subdomains):
        ti = int(rng.integers(len(trajs))) if len(trajs) > 1 else 0
        traj = trajs[ti]
        span = (traj.n_samples - 1) * traj.dt
        length = cfg.subdomain_fraction * span
        n_sub = int(round(length / traj.dt))
        if n_sub + 1 < 5:
            raise ConfigurationError(
                "each weak-form subdomain must contain at least 5 samples; "
                f"got {n_sub + 1} (fraction {cfg.subdomain_fraction}, "
                f"{traj.n_samples} samples)"
            )
        start = float(rng.uniform(0.0, span - length))
        i0 = int(round(start / traj.dt))
        i1 = min(i0 + n_sub, traj.n_samples - 1)
        i0 = i1 - n_sub
        times = traj.t0 + traj.dt * np.arange(i0, i1 + 1)
        a, b = times[0], times[-1]
        phi, dphi = _bump(times, a, b, cfg.test_order)
        window = traj.states[i0 : i1 + 1]
        targets[row] = -np.trapezoid(dphi[:, None] * window, dx=traj.dt, axis=0)
        features[row] = np.trapezoid(
            phi[:, None] * libraries[ti][i0 : i1 + 1], dx=traj.dt, axis=0
        )
    return RegressionProblem(features, targets, basis, WEAK)
