"""Trajectory generation: adaptive integration, resampling, noise.

Training and testing data follow one protocol: integrate from a reference
initial condition, discard a burn-in, then resample the dense solution on
a uniform grid tied to the system's dominant period.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DivergenceError
from .systems import PolynomialSystem, compiled_rhs

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
BLOWUP_NORM = 1e6


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled states of one system run."""

    t0: float
    dt: float
    states: np.ndarray  # (M, d)
    system_name: str = ""

    def __post_init__(self):
        states = np.array(self.states, dtype=float)
        if states.ndim != 2 or states.shape[0] < 2:
            raise ValueError("states must be an (M>=2, d) matrix")
        if not np.all(np.isfinite(states)):
            raise ValueError("states contain non-finite entries")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        states.setflags(write=False)
        object.__setattr__(self, "states", states)

    @property
    def n_samples(self) -> int:
        return self.states.shape[0]

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_samples)


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian measurement noise: std = percent/100 of the signal rms."""

    percent: float
    seed: int = 0

    def __post_init__(self):
        if self.percent < 0:
            raise ValueError("noise percent must be nonnegative")


class DenseSolution:
    """Continuous ODE solution, queryable at any time in [0, t_end]."""

    def __init__(self, interpolant, t_end: float):
        self._interpolant = interpolant
        self.t_end = float(t_end)

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = self._interpolant(t)
        return out.T if t.ndim else out


def integrate(
    system: PolynomialSystem,
    x0,
    t_end: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    max_norm: float = BLOWUP_NORM,
) -> DenseSolution:
    """Integrate ``system`` with an embedded adaptive RK 5(4) pair.

    Returns a dense solution interpolated between accepted steps. Raises
    :class:`DivergenceError` when the state norm exceeds ``max_norm`` or
    the step size underflows, reporting the failure time.
    """
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (system.dimension,):
        raise ValueError(f"x0 must have length {system.dimension}")
    if not np.all(np.isfinite(x0)):
        raise ValueError("x0 contains non-finite entries")
    for tol in (rel_tol, abs_tol):
        if not 0 < tol <= 1e-2:
            raise ValueError("tolerances must lie in (0, 1e-2]")
    if not t_end > 0:
        raise ValueError("t_end must be positive")

    f = compiled_rhs(system)

    def rhs(t, x):
        return f(x)

    def blow_up(t, x):
        return max_norm - np.linalg.norm(x)

    blow_up.terminal = True

    # blow-ups are an expected, handled outcome: trial steps may overflow
    # before the terminal event brackets the crossing
    with np.errstate(over="ignore", invalid="ignore"):
        sol = solve_ivp(
            rhs,
            (0.0, float(t_end)),
            x0,
            method="RK45",
            rtol=rel_tol,
            atol=abs_tol,
            dense_output=True,
            events=blow_up,
        )
    if sol.status == 1:
        raise DivergenceError(
            f"{system.name or 'system'}: state norm exceeded {max_norm:g}",
            time=sol.t_events[0][0],
        )
    if sol.status != 0:
        raise DivergenceError(
            f"{system.name or 'system'}: integrator failed ({sol.message})",
            time=sol.t[-1],
        )
    return DenseSolution(sol.sol, t_end)


def sample_trajectory(
    system: PolynomialSystem,
    ic_index: int,
    periods: int,
    points_per_period: int,
    burn_in_periods: int = 10,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> Trajectory:
    """Sample ``periods`` dominant periods at ``points_per_period`` each.

    The burn-in integrates from the stored reference IC and is discarded,
    so sampling starts on the attractor. The returned grid has
    ``M = periods * points_per_period`` samples spaced
    ``dominant_period / points_per_period`` apart, starting at t=0.
    """
    if not 0 <= ic_index < len(system.reference_ics):
        raise ValueError(
            f"ic_index {ic_index} out of range "
            f"(system has {len(system.reference_ics)} reference ICs)"
        )
    if periods < 1 or points_per_period < 1:
        raise ValueError("periods and points_per_period must be positive")
    if burn_in_periods < 0:
        raise ValueError("burn_in_periods must be nonnegative")
    n_samples = periods * points_per_period
    if n_samples < 2:
        raise ValueError("need at least two samples per trajectory")

    period = system.dominant_period
    x0 = np.array(system.reference_ics[ic_index], dtype=float)
    if burn_in_periods > 0:
        t_burn = burn_in_periods * period
        x0 = integrate(system, x0, t_burn, rel_tol, abs_tol)(t_burn)
    dt = period / points_per_period
    t_end = (n_samples - 1) * dt
    solution = integrate(system, x0, t_end, rel_tol, abs_tol)
    states = solution(np.arange(n_samples) * dt)
    return Trajectory(t0=0.0, dt=dt, states=states, system_name=system.name)


def add_noise(traj: Trajectory, spec: NoiseSpec) -> Trajectory:
    """Add i.i.d. zero-mean Gaussian noise to every entry.

    The standard deviation is percent/100 times the root-mean-square of
    the trajectory's entries; output is deterministic in the seed, and
    percent=0 returns the input states unchanged.
    """
    if spec.percent == 0:
        return replace(traj, states=traj.states)
    sigma = (spec.percent / 100.0) * float(np.sqrt(np.mean(traj.states**2)))
    rng = np.random.default_rng(spec.seed)
    noisy = traj.states + rng.normal(0.0, sigma, size=traj.states.shape)
    return replace(traj, states=noisy)


def write_trajectory_csv(traj: Trajectory, path: str | os.PathLike) -> None:
    """Write `t,x1,...,xd` rows with 17-significant-digit floats."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"x{i + 1}" for i in range(traj.dimension)])
        for t, row in zip(traj.times(), traj.states):
            writer.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in row])


def read_trajectory_csv(path: str | os.PathLike, system_name: str = "") -> Trajectory:
    """Read a trajectory written by :func:`write_trajectory_csv`."""
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "t":
            raise ValueError(f"{path}: expected header starting with 't'")
        rows = [[float(v) for v in row] for row in reader if row]
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least two samples")
    data = np.array(rows)
    t = data[:, 0]
    dt = (t[-1] - t[0]) / (len(t) - 1)
    return Trajectory(t0=t[0], dt=dt, states=data[:, 1:], system_name=system_name)
