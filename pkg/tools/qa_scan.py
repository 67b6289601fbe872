#!/usr/bin/env python3
"""Per-system fit-quality QA: STLSQ Pareto scan at protocol scale.

Checks the clean-data recovery targets (mean E_coef < 0.01,
mean E_RMSE < 0.10, wall time <= 60 s) for every registry system.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np  # noqa: E402

from sindybench import (  # noqa: E402
    OptimizerConfig,
    assemble_pointwise,
    builtin_registry,
    exact_pointwise_problem,
    hyperparameter_grid,
    pareto_scan,
    sample_trajectory,
)

GRID_POINTS = int(sys.argv[1]) if len(sys.argv) > 1 else 300
ONLY = sys.argv[2] if len(sys.argv) > 2 else None


def main():
    for system in builtin_registry():
        if ONLY and system.name != ONLY:
            continue
        t0 = time.perf_counter()
        train = [sample_trajectory(system, i, 10, 100) for i in range(5)]
        test = [sample_trajectory(system, 5 + i, 10, 100) for i in range(5)]
        t_data = time.perf_counter() - t0

        t0 = time.perf_counter()
        problem = assemble_pointwise(train, system.basis)
        test_problem = exact_pointwise_problem(test, system)
        grid = hyperparameter_grid("stlsq", GRID_POINTS, problem)
        scan = pareto_scan(
            problem, test_problem, system,
            OptimizerConfig(variant="stlsq"), grid,
            n_models=10, fraction=0.5, master_seed=7,
        )
        t_scan = time.perf_counter() - t0
        rec = scan.best_record
        ok = "OK " if rec.mean_e_coef < 0.01 and rec.mean_e_rmse < 0.10 else "BAD"
        print(
            f"{ok} {system.name:18s} e_coef={rec.mean_e_coef:.3e} "
            f"e_rmse={rec.mean_e_rmse:.3e} k={rec.mean_k:5.1f} "
            f"thr={rec.hyperparameter:9.3g} data={t_data:5.1f}s scan={t_scan:5.1f}s"
        )


if __name__ == "__main__":
    main()
