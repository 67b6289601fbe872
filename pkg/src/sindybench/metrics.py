"""Model-quality metrics and dynamical-property estimators.

Covers the normalized coefficient/derivative errors, a trajectory
stability census for fitted models, the largest Lyapunov exponent by
tangent-space renormalization, spectral scale separation with surrogate
significance testing, a bit-count description length, a degree-weighted
nonlinearity score, and the pick-the-best-family correlation fits.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DivergenceError
from .simulate import Trajectory, integrate, sample_trajectory
from .systems import PolynomialSystem, compiled_jacobian, compiled_rhs

LINEAR = "linear"
LOG_LINEAR = "log_linear"
LOG_LOG = "log_log"


@dataclass(frozen=True)
class ModelErrors:
    e_coef: float
    e_rmse: float


@dataclass(frozen=True)
class StabilityCensus:
    """Outcome of integrating a model from perturbed attractor points."""

    n_trials: int
    n_stable: int
    unstable_times: tuple[float, ...]


@dataclass(frozen=True)
class PropertyRecord:
    """The four dynamical properties used in the correlation analysis."""

    lyapunov_max: float
    scale_separation: float
    description_length: float
    nonlinearity_score: int


@dataclass(frozen=True)
class CorrelationFit:
    family: str  # linear | log_linear | log_log
    intercept: float
    slope: float
    r_squared: float
    n_points_used: int


def coefficient_error(truth: np.ndarray, fit: np.ndarray) -> float:
    """Frobenius-norm error of the fitted coefficients, relative to truth."""
    truth = np.asarray(truth, dtype=float)
    fit = np.asarray(fit, dtype=float)
    if truth.shape != fit.shape:
        raise ValueError(f"shape mismatch: {truth.shape} vs {fit.shape}")
    denom = float(np.linalg.norm(truth))
    if denom == 0.0:
        raise ValueError("true coefficient matrix has zero norm")
    return float(np.linalg.norm(truth - fit)) / denom


def rmse_error(dx_true: np.ndarray, dx_fit: np.ndarray) -> float:
    """Relative Frobenius error between true and predicted derivatives."""
    dx_true = np.asarray(dx_true, dtype=float)
    dx_fit = np.asarray(dx_fit, dtype=float)
    if dx_true.shape != dx_fit.shape:
        raise ValueError(f"shape mismatch: {dx_true.shape} vs {dx_fit.shape}")
    denom = float(np.linalg.norm(dx_true))
    if denom == 0.0:
        raise ValueError("true derivative matrix has zero norm")
    return float(np.linalg.norm(dx_true - dx_fit)) / denom


def stability_census(
    model: PolynomialSystem,
    truth: PolynomialSystem,
    n_trials: int = 10,
    perturbation: float = 0.05,
    horizon_periods: int = 10,
    seed: int = 0,
) -> StabilityCensus:
    """Integrate the model from perturbed attractor points and count blow-ups.

    Initial conditions are random samples of a clean truth trajectory
    plus Gaussian perturbations scaled to the trajectory rms. A trial is
    unstable when the state norm exceeds 100x the largest training-state
    norm or the integrator's step size underflows.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be positive")
    base = sample_trajectory(truth, 0, periods=10, points_per_period=100)
    rms = float(np.sqrt(np.mean(base.states**2)))
    blow_up = 100.0 * float(np.max(np.linalg.norm(base.states, axis=1)))
    horizon = horizon_periods * truth.dominant_period
    rng = np.random.default_rng(seed)
    unstable_times = []
    for _ in range(n_trials):
        row = int(rng.integers(base.n_samples))
        ic = base.states[row] + rng.normal(
            0.0, perturbation * rms, size=truth.dimension
        )
        try:
            integrate(model, ic, horizon, max_norm=blow_up)
        except DivergenceError as exc:
            unstable_times.append(exc.time)
    return StabilityCensus(
        n_trials=n_trials,
        n_stable=n_trials - len(unstable_times),
        unstable_times=tuple(unstable_times),
    )


def largest_lyapunov(
    system: PolynomialSystem,
    t_total: float,
    renorm_interval: float = 0.5,
    seed: int = 0,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-11,
) -> float:
    """Largest Lyapunov exponent by tangent-vector renormalization.

    Co-integrates the state with one tangent vector driven by the exact
    Jacobian, renormalizing every ``renorm_interval``; the estimate is
    the mean log growth rate after discarding the first 10% of intervals
    as transient.
    """
    if t_total < 100.0 * system.dominant_period:
        raise ValueError("t_total must span at least 100 dominant periods")
    if renorm_interval <= 0:
        raise ValueError("renorm_interval must be positive")
    d = system.dimension
    rng = np.random.default_rng(seed)
    v = rng.normal(size=d)
    v /= np.linalg.norm(v)
    x = np.array(system.reference_ics[0], dtype=float)
    f = compiled_rhs(system)
    jac = compiled_jacobian(system)

    def rhs(t, z):
        state, tangent = z[:d], z[d:]
        return np.concatenate([f(state), jac(state) @ tangent])

    n_intervals = int(round(t_total / renorm_interval))
    log_growth = np.empty(n_intervals)
    for i in range(n_intervals):
        with np.errstate(over="ignore", invalid="ignore"):
            sol = solve_ivp(
                rhs,
                (0.0, renorm_interval),
                np.concatenate([x, v]),
                method="RK45",
                rtol=rel_tol,
                atol=abs_tol,
            )
        if sol.status != 0:
            raise DivergenceError(
                f"{system.name or 'system'}: tangent integration failed",
                time=i * renorm_interval + sol.t[-1],
            )
        x = sol.y[:d, -1]
        v = sol.y[d:, -1]
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not np.isfinite(norm):
            raise DivergenceError(
                f"{system.name or 'system'}: tangent vector degenerated",
                time=(i + 1) * renorm_interval,
            )
        log_growth[i] = math.log(norm)
        v /= norm
        if not np.all(np.isfinite(x)):
            raise DivergenceError(
                f"{system.name or 'system'}: state diverged",
                time=(i + 1) * renorm_interval,
            )
    skip = int(math.ceil(0.1 * n_intervals))
    kept = log_growth[skip:]
    return float(np.sum(kept) / (kept.size * renorm_interval))


def scale_separation(
    traj: Trajectory,
    n_surrogates: int = 100,
    quantile: float = 0.95,
    seed: int = 0,
) -> float:
    """Ratio of the highest significant frequency to the dominant one.

    Per channel, the periodogram peak sets the dominant frequency; a
    frequency is significant when its power exceeds the pointwise
    ``quantile`` level of shuffled surrogates (temporal structure
    destroyed, value distribution kept). The result is the max over
    channels, floored at 1. Degenerate channels (no variance, nothing
    significant) yield 1 with a RuntimeWarning.
    """
    if traj.n_samples < 256:
        raise ValueError("scale separation needs at least 256 samples")
    if n_surrogates < 20:
        raise ValueError("need at least 20 surrogates")
    if not 0 < quantile < 1:
        raise ValueError("quantile must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    freqs = np.fft.rfftfreq(traj.n_samples, d=traj.dt)[1:]
    best = 0.0
    any_significant = False
    for c in range(traj.dimension):
        x = traj.states[:, c] - float(np.mean(traj.states[:, c]))
        scale = float(np.max(np.abs(x)))
        if scale == 0.0:
            continue
        power = np.abs(np.fft.rfft(x))[1:] ** 2
        f_dom = freqs[int(np.argmax(power))]
        surrogate_power = np.empty((n_surrogates, power.size))
        for s in range(n_surrogates):
            surrogate_power[s] = np.abs(np.fft.rfft(rng.permutation(x)))[1:] ** 2
        level = np.quantile(surrogate_power, quantile, axis=0)
        significant = power > level
        if not np.any(significant):
            continue
        any_significant = True
        f_max = float(freqs[np.flatnonzero(significant)[-1]])
        best = max(best, f_max / f_dom)
    if not any_significant:
        _warnings.warn(
            "no spectrally significant frequency in any channel",
            RuntimeWarning,
            stacklevel=2,
        )
        return 1.0
    return max(best, 1.0)


QUANTIZATION = 1e-3  # coefficient quantization step for the bit count


def description_length(coefficients: np.ndarray) -> float:
    """Bits to index, sign, and quantize every nonzero coefficient."""
    coefficients = np.asarray(coefficients, dtype=float)
    total_slots = coefficients.size
    nonzero = coefficients[coefficients != 0.0]
    if nonzero.size == 0:
        return 0.0
    index_bits = math.log2(total_slots)
    magnitude_bits = np.ceil(np.log2(1.0 + np.abs(nonzero) / QUANTIZATION))
    return float(nonzero.size * (index_bits + 1.0) + np.sum(magnitude_bits))


def nonlinearity_score(system: PolynomialSystem) -> int:
    """Count of equation terms weighted by polynomial degree + 1."""
    if system.basis.max_degree > 4:
        raise ValueError("nonlinearity score is defined for degree <= 4")
    degrees = system.basis.term_degrees()
    weights = degrees + 1
    nonzero = system.coefficients != 0.0
    return int(np.sum(weights[:, None] * nonzero))


def _ols_r2(x: np.ndarray, y: np.ndarray):
    n = x.size
    xm, ym = float(np.mean(x)), float(np.mean(y))
    sxx = float(np.sum((x - xm) ** 2))
    sst = float(np.sum((y - ym) ** 2))
    if sxx == 0.0:
        return ym, 0.0, 0.0
    slope = float(np.sum((x - xm) * (y - ym))) / sxx
    intercept = ym - slope * xm
    if sst == 0.0:
        return intercept, slope, 0.0
    ssr = float(np.sum((y - intercept - slope * x) ** 2))
    return intercept, slope, max(0.0, 1.0 - ssr / sst)


def best_fit_r2(xs, ys) -> CorrelationFit:
    """Best of linear, log-linear, and log-log OLS fits by R-squared.

    Log fits drop non-positive values and record how many points they
    used; R-squared is computed in each family's own transformed space,
    and constant targets define R-squared = 0.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("xs and ys must be 1-D sequences of equal length")
    finite = np.isfinite(x) & np.isfinite(y)
    x, y = x[finite], y[finite]
    if x.size < 3:
        raise ValueError("need at least 3 finite points")

    fits = []
    fits.append((LINEAR, x, y))
    pos_y = y > 0
    if np.count_nonzero(pos_y) >= 3:
        fits.append((LOG_LINEAR, x[pos_y], np.log(y[pos_y])))
    pos_xy = (x > 0) & (y > 0)
    if np.count_nonzero(pos_xy) >= 3:
        fits.append((LOG_LOG, np.log(x[pos_xy]), np.log(y[pos_xy])))

    best: CorrelationFit | None = None
    for family, fx, fy in fits:
        intercept, slope, r2 = _ols_r2(fx, fy)
        fit = CorrelationFit(
            family=family,
            intercept=intercept,
            slope=slope,
            r_squared=r2,
            n_points_used=int(fx.size),
        )
        if best is None or fit.r_squared > best.r_squared:
            best = fit
    assert best is not None
    return best
