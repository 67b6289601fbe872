"""Benchmark orchestration, report files, plots, and the CLI.

``run_benchmark`` executes the full protocol for a configuration:
generate train/test trajectories, inject noise into training data only,
assemble pointwise (and weak) regression problems, Pareto-scan every
requested optimizer, score the winning ensembles against the truth, and
correlate errors with dynamical properties. Reports are deterministic in
(config, master_seed); wall-clock totals live only in summary.json.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ._seeding import derive_seed
from .errors import ConfigurationError, SindyBenchError
from .features import WeakConfig, assemble_pointwise, assemble_weak
from .metrics import (
    PropertyRecord,
    best_fit_r2,
    coefficient_error,
    description_length,
    largest_lyapunov,
    nonlinearity_score,
    rmse_error,
    scale_separation,
)
from .optimizers import LASSO, MIOSR, SR3, STLSQ, OptimizerConfig
from .selection import (
    aic_c,
    exact_pointwise_problem,
    hyperparameter_grid,
    pareto_scan,
)
from .simulate import (
    NoiseSpec,
    add_noise,
    sample_trajectory,
    write_trajectory_csv,
)
from .systems import PolynomialSystem, builtin_registry, get_system

OPTIMIZER_NAMES = ("stlsq", "lasso", "sr3_nu1", "sr3_nu01", "miosr", "weak_stlsq")
PROPERTY_NAMES = (
    "lyapunov_max",
    "scale_separation",
    "description_length",
    "nonlinearity_score",
)

DETAILS_HEADER = (
    "system,optimizer,noise_percent,hyperparameter,member,e_coef,e_rmse,"
    "k,aic,runtime_s,proved_optimal,valid"
)


@dataclass(frozen=True)
class BenchmarkConfig:
    """Protocol constants for one benchmark run."""

    systems: tuple[str, ...] | str = "all-builtin"
    optimizers: tuple[str, ...] = OPTIMIZER_NAMES
    noise_percents: tuple[float, ...] = (0.0, 0.1, 1.0)
    n_train_trajectories: int = 5
    n_test_trajectories: int = 5
    periods: int = 10
    points_per_period: int = 100
    n_models: int = 10
    subsample_fraction: float = 0.5
    grid_points: int = 300
    weak: WeakConfig = field(default_factory=WeakConfig)
    master_seed: int = 0
    output_dir: str = "benchmark_out"
    burn_in_periods: int = 10
    miosr_budget_max: int = 10
    miosr_time_limit_s: float = 5.0


def validate_config(cfg: BenchmarkConfig) -> None:
    for name in (
        "n_train_trajectories",
        "n_test_trajectories",
        "periods",
        "points_per_period",
        "n_models",
        "grid_points",
        "miosr_budget_max",
    ):
        if getattr(cfg, name) < 1:
            raise ConfigurationError(f"{name} must be positive")
    if not 0 < cfg.subsample_fraction <= 1:
        raise ConfigurationError("subsample_fraction must lie in (0, 1]")
    if cfg.burn_in_periods < 0:
        raise ConfigurationError("burn_in_periods must be nonnegative")
    if cfg.miosr_time_limit_s <= 0:
        raise ConfigurationError("miosr_time_limit_s must be positive")
    for opt in cfg.optimizers:
        if opt not in OPTIMIZER_NAMES:
            raise ConfigurationError(
                f"unknown optimizer {opt!r}; choose from {OPTIMIZER_NAMES}"
            )
    if not cfg.optimizers:
        raise ConfigurationError("at least one optimizer is required")
    for noise in cfg.noise_percents:
        if noise < 0:
            raise ConfigurationError("noise percents must be nonnegative")


def load_config(path: str | os.PathLike) -> BenchmarkConfig:
    """Read a TOML run configuration mirroring BenchmarkConfig fields."""
    try:
        import tomllib
    except ImportError:  # python < 3.11
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid TOML ({exc})") from exc
    weak = WeakConfig(**raw.pop("weak", {}))
    known = {f for f in BenchmarkConfig.__dataclass_fields__ if f != "weak"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigurationError(f"{path}: unknown config keys {sorted(unknown)}")
    for key in ("systems", "optimizers", "noise_percents"):
        if key in raw and isinstance(raw[key], list):
            raw[key] = tuple(raw[key])
    cfg = BenchmarkConfig(weak=weak, **raw)
    validate_config(cfg)
    return cfg


def _resolve_systems(cfg: BenchmarkConfig) -> tuple[PolynomialSystem, ...]:
    if cfg.systems == "all-builtin":
        return builtin_registry()
    return tuple(get_system(name) for name in cfg.systems)


def _variant_for(optimizer: str) -> str:
    return {
        "stlsq": STLSQ,
        "weak_stlsq": STLSQ,
        "lasso": LASSO,
        "sr3_nu1": SR3,
        "sr3_nu01": SR3,
        "miosr": MIOSR,
    }[optimizer]


def _template_for(optimizer: str, cfg: BenchmarkConfig) -> OptimizerConfig:
    variant = _variant_for(optimizer)
    kwargs = {"variant": variant, "time_limit_per_dim": cfg.miosr_time_limit_s}
    if optimizer == "sr3_nu1":
        kwargs["nu"] = 1.0
    elif optimizer == "sr3_nu01":
        kwargs["nu"] = 0.1
    if variant == SR3:
        # support stabilizes within ~100 alternations; the refit on the
        # final support makes longer inner runs indistinguishable
        kwargs["max_iterations"] = 100
    elif variant == LASSO:
        # coordinate descent on correlated polynomial features needs a
        # tight tolerance to reach the small-penalty end of the grid
        kwargs["max_iterations"] = 4000
        kwargs["convergence_tol"] = 1e-12
    return OptimizerConfig(**kwargs)


@dataclass(frozen=True)
class DetailRow:
    """One ensemble member of the Pareto-optimal ensemble."""

    system: str
    optimizer: str
    noise_percent: float
    hyperparameter: object
    member: int
    e_coef: float
    e_rmse: float
    k: int
    aic: float
    runtime_s: float
    proved_optimal: bool
    valid: bool


@dataclass(frozen=True)
class CorrelationRow:
    optimizer: str
    noise_percent: float
    property_name: str
    e_rmse_family: str
    e_rmse_r2: float
    e_rmse_slope: float
    e_rmse_intercept: float
    e_coef_family: str
    e_coef_r2: float
    e_coef_slope: float
    e_coef_intercept: float


@dataclass
class BenchmarkReport:
    detail_rows: list[DetailRow]
    summary: dict[str, dict]
    properties: dict[str, PropertyRecord]
    correlations: list[CorrelationRow]


def _worker_count(n_tasks: int) -> int:
    env = os.environ.get("SINDYBENCH_THREADS", "").strip()
    try:
        cap = int(env) if env else (os.cpu_count() or 1)
    except ValueError:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))


def _system_properties(system: PolynomialSystem, train0, master_seed: int) -> PropertyRecord:
    period = system.dominant_period
    lyap = largest_lyapunov(
        system,
        t_total=120.0 * period,
        renorm_interval=period / 4.0,
        seed=derive_seed(master_seed, "lyapunov", system.name),
    )
    sep = scale_separation(
        train0, seed=derive_seed(master_seed, "scale-separation", system.name)
    )
    return PropertyRecord(
        lyapunov_max=lyap,
        scale_separation=sep,
        description_length=description_length(system.coefficients),
        nonlinearity_score=nonlinearity_score(system),
    )


def run_benchmark(cfg: BenchmarkConfig, progress: bool = False) -> BenchmarkReport:
    """Execute the full protocol; deterministic in (config, master_seed)."""
    validate_config(cfg)
    systems = _resolve_systems(cfg)
    seed = cfg.master_seed

    def log(msg: str) -> None:
        if progress:
            print(msg, file=sys.stderr, flush=True)

    # phase 1: per-system clean data and dynamical properties
    def prepare(system: PolynomialSystem):
        n_train, n_test = cfg.n_train_trajectories, cfg.n_test_trajectories
        if n_train + n_test > len(system.reference_ics):
            raise ConfigurationError(
                f"{system.name}: needs {n_train + n_test} reference ICs, "
                f"has {len(system.reference_ics)}"
            )
        train = [
            sample_trajectory(
                system, i, cfg.periods, cfg.points_per_period, cfg.burn_in_periods
            )
            for i in range(n_train)
        ]
        test = [
            sample_trajectory(
                system,
                n_train + i,
                cfg.periods,
                cfg.points_per_period,
                cfg.burn_in_periods,
            )
            for i in range(n_test)
        ]
        test_problem = exact_pointwise_problem(test, system)
        props = _system_properties(system, train[0], seed)
        log(f"prepared {system.name}")
        return system.name, (system, train, test_problem, props)

    with ThreadPoolExecutor(_worker_count(len(systems))) as pool:
        prepared = dict(pool.map(prepare, systems))

    # phase 2: per-(system, optimizer, noise) Pareto scans
    tasks = [
        (system.name, optimizer, float(noise))
        for system in systems
        for optimizer in cfg.optimizers
        for noise in cfg.noise_percents
    ]

    def scan_task(task):
        sys_name, optimizer, noise = task
        system, train, test_problem, _ = prepared[sys_name]
        started = time.perf_counter()
        rows: list[DetailRow] = []
        try:
            noisy = [
                add_noise(
                    traj,
                    NoiseSpec(
                        noise, derive_seed(seed, "noise", sys_name, noise, i)
                    ),
                )
                for i, traj in enumerate(train)
            ]
            if optimizer == "weak_stlsq":
                weak_cfg = replace(
                    cfg.weak, seed=derive_seed(seed, "weak", sys_name, noise)
                )
                problem = assemble_weak(noisy, system.basis, weak_cfg)
            else:
                problem = assemble_pointwise(noisy, system.basis)
            grid = hyperparameter_grid(
                _variant_for(optimizer),
                cfg.grid_points,
                problem,
                budget_max=cfg.miosr_budget_max,
            )
            scan = pareto_scan(
                problem,
                test_problem,
                system,
                _template_for(optimizer, cfg),
                grid,
                cfg.n_models,
                cfg.subsample_fraction,
                derive_seed(seed, "scan", sys_name, optimizer, noise),
            )
        except (SindyBenchError, ValueError, np.linalg.LinAlgError) as exc:
            log(f"FAILED {sys_name}/{optimizer}/noise={noise}: {exc}")
            for m in range(cfg.n_models):
                rows.append(
                    DetailRow(
                        sys_name, optimizer, noise, "", m,
                        math.nan, math.nan, 0, math.nan, 0.0, False, False,
                    )
                )
            return task, rows, time.perf_counter() - started

        hyper = scan.best_record.hyperparameter
        if isinstance(hyper, tuple):  # uniform miosr budgets print as one int
            hyper = hyper[0]
        for m, member in enumerate(scan.best_ensemble.members):
            if member is None:
                rows.append(
                    DetailRow(
                        sys_name, optimizer, noise, hyper, m,
                        math.nan, math.nan, 0, math.nan, 0.0, False, False,
                    )
                )
                continue
            e_coef = coefficient_error(system.coefficients, member.coefficients)
            e_rmse = rmse_error(
                test_problem.targets,
                test_problem.features @ member.coefficients,
            )
            rows.append(
                DetailRow(
                    system=sys_name,
                    optimizer=optimizer,
                    noise_percent=noise,
                    hyperparameter=hyper,
                    member=m,
                    e_coef=e_coef,
                    e_rmse=e_rmse,
                    k=member.total_nonzeros(),
                    aic=aic_c(member, test_problem),
                    runtime_s=0.0,  # suppressed: reports must be reproducible
                    proved_optimal=all(member.proved_optimal),
                    valid=True,
                )
            )
        log(f"done {sys_name}/{optimizer}/noise={noise}")
        return task, rows, time.perf_counter() - started

    with ThreadPoolExecutor(_worker_count(len(tasks))) as pool:
        results = {task: (rows, rt) for task, rows, rt in pool.map(scan_task, tasks)}

    detail_rows: list[DetailRow] = []
    for task in tasks:  # config order, independent of completion order
        detail_rows.extend(results[task][0])

    summary: dict[str, dict] = {}
    for optimizer in cfg.optimizers:
        for noise in cfg.noise_percents:
            combo = [
                r
                for r in detail_rows
                if r.optimizer == optimizer and r.noise_percent == noise and r.valid
            ]
            runtime = sum(
                rt
                for (s, o, n), (_, rt) in results.items()
                if o == optimizer and n == noise
            )
            key = f"{optimizer}/{float(noise)!r}"
            if combo:
                e_coefs = np.array([r.e_coef for r in combo])
                e_rmses = np.array([r.e_rmse for r in combo])
                summary[key] = {
                    "mean_e_coef": float(np.mean(e_coefs)),
                    "median_e_coef": float(np.median(e_coefs)),
                    "mean_e_rmse": float(np.mean(e_rmses)),
                    "median_e_rmse": float(np.median(e_rmses)),
                    "total_runtime_s": runtime,
                }
            else:
                summary[key] = {
                    "mean_e_coef": None,
                    "median_e_coef": None,
                    "mean_e_rmse": None,
                    "median_e_rmse": None,
                    "total_runtime_s": runtime,
                }

    properties = {name: prepared[name][3] for name in prepared}
    correlations = _correlate(cfg, detail_rows, properties)
    return BenchmarkReport(detail_rows, summary, properties, correlations)


def _mean_errors_by_system(detail_rows, optimizer, noise):
    by_system: dict[str, list[DetailRow]] = {}
    for r in detail_rows:
        if r.optimizer == optimizer and r.noise_percent == noise and r.valid:
            by_system.setdefault(r.system, []).append(r)
    names = sorted(by_system)
    e_rmse = [float(np.mean([r.e_rmse for r in by_system[n]])) for n in names]
    e_coef = [float(np.mean([r.e_coef for r in by_system[n]])) for n in names]
    return names, e_rmse, e_coef


def _correlate(cfg, detail_rows, properties) -> list[CorrelationRow]:
    noises = sorted({r.noise_percent for r in detail_rows})
    optimizers = [o for o in cfg.optimizers]
    rows: list[CorrelationRow] = []
    for optimizer in optimizers:
        for noise in noises:
            names, e_rmse, e_coef = _mean_errors_by_system(
                detail_rows, optimizer, noise
            )
            for prop in PROPERTY_NAMES:
                xs = [getattr(properties[n], prop) for n in names]
                fits = []
                for ys in (e_rmse, e_coef):
                    try:
                        fit = best_fit_r2(xs, ys)
                        fits.append(
                            (fit.family, fit.r_squared, fit.slope, fit.intercept)
                        )
                    except ValueError:
                        fits.append(("none", math.nan, math.nan, math.nan))
                rows.append(
                    CorrelationRow(
                        optimizer, noise, prop,
                        *fits[0], *fits[1],
                    )
                )
    return rows


# ---------------------------------------------------------------------------
# Report files
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)  # numpy scalars repr as np.float64(...)
        if math.isnan(value):
            return ""
        return repr(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_reports(report: BenchmarkReport, out_dir: str | os.PathLike) -> list[Path]:
    """Emit details.csv, summary.json, properties.csv, correlations.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    details = out / "details.csv"
    try:
        with details.open("w", newline="", encoding="utf-8") as fh:
            fh.write(DETAILS_HEADER + "\n")
            writer = csv.writer(fh)
            for r in report.detail_rows:
                writer.writerow(
                    [
                        r.system,
                        r.optimizer,
                        _fmt(float(r.noise_percent)),
                        _fmt(r.hyperparameter),
                        r.member,
                        _fmt(r.e_coef),
                        _fmt(r.e_rmse),
                        r.k,
                        _fmt(r.aic),
                        _fmt(r.runtime_s),
                        _fmt(r.proved_optimal),
                        _fmt(r.valid),
                    ]
                )
    except OSError as exc:
        raise OSError(f"failed writing {details}: {exc}") from exc
    written.append(details)

    summary = out / "summary.json"
    with summary.open("w", encoding="utf-8") as fh:
        json.dump(report.summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(summary)

    properties = out / "properties.csv"
    with properties.open("w", newline="", encoding="utf-8") as fh:
        fh.write("system," + ",".join(PROPERTY_NAMES) + "\n")
        writer = csv.writer(fh)
        for name in sorted(report.properties):
            p = report.properties[name]
            writer.writerow(
                [
                    name,
                    _fmt(p.lyapunov_max),
                    _fmt(p.scale_separation),
                    _fmt(p.description_length),
                    p.nonlinearity_score,
                ]
            )
    written.append(properties)

    correlations = out / "correlations.csv"
    _write_correlations(report.correlations, correlations)
    written.append(correlations)
    return written


def _write_correlations(rows, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        fh.write(
            "optimizer,noise_percent,property,"
            "e_rmse_family,e_rmse_r2,e_rmse_slope,e_rmse_intercept,"
            "e_coef_family,e_coef_r2,e_coef_slope,e_coef_intercept\n"
        )
        writer = csv.writer(fh)
        for r in rows:
            writer.writerow(
                [
                    r.optimizer,
                    _fmt(float(r.noise_percent)),
                    r.property_name,
                    r.e_rmse_family,
                    _fmt(r.e_rmse_r2),
                    _fmt(r.e_rmse_slope),
                    _fmt(r.e_rmse_intercept),
                    r.e_coef_family,
                    _fmt(r.e_coef_r2),
                    _fmt(r.e_coef_slope),
                    _fmt(r.e_coef_intercept),
                ]
            )


# ---------------------------------------------------------------------------
# Plots
# ---------------------------------------------------------------------------

def _noise_tag(noise: float) -> str:
    return repr(float(noise)).replace(".", "p")


def render_plots(report: BenchmarkReport, out_dir: str | os.PathLike) -> list[Path]:
    """Emit standalone SVG plots: error distributions and property scatters."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.fonttype"] = "none"  # keep legend text selectable
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    combos = sorted(
        {(r.optimizer, r.noise_percent) for r in report.detail_rows if r.valid}
    )
    markers = ["o", "s", "^", "D", "v", "P", "X", "*"]
    optimizers = sorted({opt for opt, _ in combos})

    for optimizer, noise in combos:
        rows = [
            r
            for r in report.detail_rows
            if r.optimizer == optimizer and r.noise_percent == noise and r.valid
        ]
        if not rows:
            continue
        e_coef = [max(r.e_coef, 1e-16) for r in rows]
        e_rmse = [max(r.e_rmse, 1e-16) for r in rows]
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.boxplot([e_coef, e_rmse], tick_labels=["E_coef", "E_RMSE"])
        jitter = np.linspace(-0.08, 0.08, len(e_coef))
        ax.plot(1 + jitter, e_coef, ".", alpha=0.5, label=optimizer)
        ax.plot(2 + jitter, e_rmse, ".", alpha=0.5)
        ax.set_yscale("log")
        ax.set_ylabel("relative error")
        ax.set_title(f"{optimizer} at {noise}% noise")
        ax.legend(loc="best")
        path = out / f"errors_{optimizer}_noise{_noise_tag(noise)}.svg"
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)

    if report.properties:
        # per-degree census of nonzero terms across the benchmarked systems
        counts: dict[int, int] = {}
        for name in sorted(report.properties):
            try:
                system = get_system(name)
            except KeyError:
                continue
            degrees = system.basis.term_degrees()
            nonzero = system.coefficients != 0.0
            for degree in range(system.basis.max_degree + 1):
                n = int(np.sum(nonzero[degrees == degree]))
                counts[degree] = counts.get(degree, 0) + n
        if counts:
            fig, ax = plt.subplots(figsize=(5, 4))
            ax.bar(list(counts), [counts[d] for d in counts])
            ax.set_xlabel("polynomial degree")
            ax.set_ylabel("total nonzero terms")
            ax.set_title("term census across benchmarked systems")
            path = out / "nonlinearity_summary.svg"
            fig.savefig(path, format="svg", metadata={"Date": None})
            plt.close(fig)
            written.append(path)

    noises = sorted({noise for _, noise in combos})
    corr = {
        (r.optimizer, r.noise_percent, r.property_name): r
        for r in report.correlations
    }
    for noise in noises:
        fig, axes = plt.subplots(2, 2, figsize=(10, 8))
        for ax, prop in zip(axes.ravel(), PROPERTY_NAMES):
            for i, optimizer in enumerate(optimizers):
                if (optimizer, noise) not in combos:
                    continue
                names, e_rmse, _ = _mean_errors_by_system(
                    report.detail_rows, optimizer, noise
                )
                xs = np.array(
                    [getattr(report.properties[n], prop) for n in names], dtype=float
                )
                ys = np.array(e_rmse, dtype=float)
                ax.plot(
                    xs, ys, markers[i % len(markers)], label=optimizer, alpha=0.7
                )
                fit = corr.get((optimizer, noise, prop))
                if fit is None or fit.e_rmse_family == "none" or len(xs) < 2:
                    continue
                line = _fit_line(
                    fit.e_rmse_family, fit.e_rmse_intercept, fit.e_rmse_slope, xs
                )
                if line is not None:
                    gx, gy = line
                    ax.plot(gx, gy, "-", alpha=0.6)
                    ax.annotate(
                        f"{optimizer}: {fit.e_rmse_family} "
                        f"slope={fit.e_rmse_slope:.3g} R2={fit.e_rmse_r2:.2f}",
                        xy=(0.02, 0.02 + 0.06 * i),
                        xycoords="axes fraction",
                        fontsize=7,
                    )
            ax.set_xlabel(prop)
            ax.set_ylabel("mean E_RMSE")
            ax.set_yscale("log")
            if prop in ("scale_separation", "description_length"):
                ax.set_xscale("log")
        handles, labels = axes[0, 0].get_legend_handles_labels()
        if handles:
            fig.legend(handles, labels, loc="upper center", ncol=len(labels))
        path = out / f"properties_noise{_noise_tag(noise)}.svg"
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)
    return written


def _fit_line(family: str, intercept: float, slope: float, xs: np.ndarray):
    """Evaluate a stored correlation fit over the data's x-range."""
    if not (np.isfinite(intercept) and np.isfinite(slope)):
        return None
    if family == "log_log":
        xs = xs[xs > 0]
        if xs.size < 2:
            return None
        gx = np.geomspace(xs.min(), xs.max(), 50)
        return gx, np.exp(intercept) * gx**slope
    if xs.size < 2 or xs.min() == xs.max():
        return None
    gx = np.linspace(xs.min(), xs.max(), 50)
    if family == "log_linear":
        return gx, np.exp(intercept + slope * gx)
    return gx, intercept + slope * gx


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def _cmd_list_systems(args) -> int:
    for system in builtin_registry():
        print(
            f"{system.name:18s} d={system.dimension} "
            f"terms={system.nonzero_count():3d} "
            f"period={system.dominant_period:.4f}  {system.citation}"
        )
    return 0


def _cmd_simulate(args) -> int:
    system = get_system(args.system)
    traj = sample_trajectory(
        system, args.ic, args.periods, args.points_per_period
    )
    if args.noise > 0:
        traj = add_noise(traj, NoiseSpec(args.noise, args.seed))
    out = args.out or f"{args.system}.csv"
    write_trajectory_csv(traj, out)
    print(f"wrote {traj.n_samples} samples to {out}")
    return 0


def _cmd_fit(args) -> int:
    system = get_system(args.system)
    cfg = BenchmarkConfig(
        systems=(args.system,),
        optimizers=(args.optimizer if not args.weak else "weak_stlsq",),
        noise_percents=(args.noise,),
        grid_points=args.grid_points,
        n_models=args.n_models,
        master_seed=args.seed,
    )
    validate_config(cfg)
    report = run_benchmark(cfg, progress=args.verbose)
    rows = [r for r in report.detail_rows if r.valid]
    if not rows:
        print("fit failed; no valid ensemble", file=sys.stderr)
        return 2
    mean_e_coef = float(np.mean([r.e_coef for r in rows]))
    mean_e_rmse = float(np.mean([r.e_rmse for r in rows]))
    print(f"system        : {system.name}")
    print(f"optimizer     : {cfg.optimizers[0]}")
    print(f"noise percent : {args.noise}")
    print(f"hyperparameter: {rows[0].hyperparameter}")
    print(f"mean E_coef   : {mean_e_coef:.6g}")
    print(f"mean E_RMSE   : {mean_e_rmse:.6g}")
    return 0


def _cmd_benchmark(args) -> int:
    cfg = load_config(args.config)
    report = run_benchmark(cfg, progress=not args.quiet)
    out = Path(cfg.output_dir)
    write_reports(report, out)
    render_plots(report, out)
    n_invalid = sum(1 for r in report.detail_rows if not r.valid)
    print(f"wrote reports to {out} ({n_invalid} invalid rows)")
    return 2 if n_invalid else 0


def _cmd_analyze(args) -> int:
    report = read_report(args.report)
    path = Path(args.report) / "correlations.csv"
    _write_correlations(report.correlations, path)
    render_plots(report, args.report)
    print(f"rendered plots; refreshed {path}")
    return 0


def read_report(report_dir: str | os.PathLike) -> BenchmarkReport:
    """Rehydrate a report from details.csv + properties.csv for analysis."""
    out = Path(report_dir)
    detail_rows: list[DetailRow] = []
    with (out / "details.csv").open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            valid = row["valid"] == "true"
            detail_rows.append(
                DetailRow(
                    system=row["system"],
                    optimizer=row["optimizer"],
                    noise_percent=float(row["noise_percent"]),
                    hyperparameter=row["hyperparameter"],
                    member=int(row["member"]),
                    e_coef=float(row["e_coef"]) if row["e_coef"] else math.nan,
                    e_rmse=float(row["e_rmse"]) if row["e_rmse"] else math.nan,
                    k=int(row["k"]),
                    aic=float(row["aic"]) if row["aic"] else math.nan,
                    runtime_s=float(row["runtime_s"]) if row["runtime_s"] else 0.0,
                    proved_optimal=row["proved_optimal"] == "true",
                    valid=valid,
                )
            )
    properties: dict[str, PropertyRecord] = {}
    with (out / "properties.csv").open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            properties[row["system"]] = PropertyRecord(
                lyapunov_max=float(row["lyapunov_max"]),
                scale_separation=float(row["scale_separation"]),
                description_length=float(row["description_length"]),
                nonlinearity_score=int(row["nonlinearity_score"]),
            )

    class _Cfg:
        optimizers = tuple(sorted({r.optimizer for r in detail_rows}))

    correlations = _correlate(_Cfg, detail_rows, properties)
    return BenchmarkReport(detail_rows, {}, properties, correlations)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sindybench",
        description="Sparse ODE identification benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-systems", help="print the built-in system registry")

    p_sim = sub.add_parser("simulate", help="sample one trajectory to CSV")
    p_sim.add_argument("system")
    p_sim.add_argument("--noise", type=float, default=0.0, help="noise percent")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", default=None)
    p_sim.add_argument("--ic", type=int, default=0, help="reference IC index")
    p_sim.add_argument("--periods", type=int, default=10)
    p_sim.add_argument("--points-per-period", type=int, default=100)

    p_fit = sub.add_parser("fit", help="Pareto-scan one system, print the result")
    p_fit.add_argument("system")
    p_fit.add_argument(
        "--optimizer", default="stlsq", choices=[o for o in OPTIMIZER_NAMES]
    )
    p_fit.add_argument("--weak", action="store_true", help="use the weak form")
    p_fit.add_argument("--noise", type=float, default=0.0)
    p_fit.add_argument("--seed", type=int, default=0)
    p_fit.add_argument("--grid-points", type=int, default=300)
    p_fit.add_argument("--n-models", type=int, default=10)
    p_fit.add_argument("--verbose", action="store_true")

    p_bench = sub.add_parser("benchmark", help="run a full benchmark from TOML")
    p_bench.add_argument("--config", required=True)
    p_bench.add_argument("--quiet", action="store_true")

    p_an = sub.add_parser("analyze", help="recompute plots from report files")
    p_an.add_argument("--report", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "list-systems": _cmd_list_systems,
        "simulate": _cmd_simulate,
        "fit": _cmd_fit,
        "benchmark": _cmd_benchmark,
        "analyze": _cmd_analyze,
    }
    try:
        return handlers[args.command](args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
