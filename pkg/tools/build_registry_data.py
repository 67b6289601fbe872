#!/usr/bin/env python3
"""Regenerate sindybench/_registry_data.py.

For every candidate system definition:
  1. integrate a long run and locate the dominant spectral peak, whose
     inverse is the dominant (sampling) period;
  2. burn in 60 periods from the seed IC, then collect 12 reference ICs
     spaced 7.31 periods apart along the attractor;
  3. sanity-check that every reference IC yields a bounded 10-period
     trajectory under the standard sampling protocol.

Run from the repository root:  python tools/build_registry_data.py
"""

from __future__ import annotations

import pprint
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sindybench import simulate, systems  # noqa: E402
from sindybench.systems import (  # noqa: E402
    _SYSTEM_DEFS,
    PolynomialSystem,
    REGISTRY_MAX_DEGREE,
    coefficients_from_equations,
    monomial_basis,
)

N_ICS = 12
IC_SPACING_PERIODS = 7.31
BURN_IN_PERIODS = 60.0


def provisional_system(spec) -> PolynomialSystem:
    basis = monomial_basis(spec.dimension, REGISTRY_MAX_DEGREE)
    return PolynomialSystem(
        name=spec.name,
        basis=basis,
        coefficients=coefficients_from_equations(basis, spec.equations),
        reference_ics=np.array([spec.seed_ic], dtype=float),
        dominant_period=1.0,
        citation=spec.citation,
    )


def dominant_period(system, t_span: float, n_samples: int = 2**14) -> float:
    """Spectral-peak period of a long post-transient run."""
    sol = simulate.integrate(system, system.reference_ics[0], t_span,
                             rel_tol=1e-9, abs_tol=1e-11)
    times = np.linspace(0.5 * t_span, t_span, n_samples)
    states = sol(times)
    dt = times[1] - times[0]
    freqs = np.fft.rfftfreq(n_samples, d=dt)[1:]
    window = np.hanning(n_samples)
    best_power, best_freq = -np.inf, None
    for c in range(states.shape[1]):
        x = states[:, c] - states[:, c].mean()
        power = np.abs(np.fft.rfft(x * window))[1:] ** 2
        k = int(np.argmax(power))
        if power[k] > best_power:
            best_power, best_freq = power[k], freqs[k]
    return 1.0 / best_freq


def sampling_period(system, peak_period: float) -> float:
    """Shrink the sampling period until the fastest significant scale resolves.

    At 100 samples per period, a dominant period more than ~4x the
    smallest significant timescale leaves too few points per fast cycle
    for second-order differencing; the returned period guarantees at
    least ~25 samples on the fastest significant frequency.
    """
    from sindybench.metrics import scale_separation

    probe = PolynomialSystem(
        name=system.name,
        basis=system.basis,
        coefficients=system.coefficients,
        reference_ics=system.reference_ics,
        dominant_period=peak_period,
    )
    traj = simulate.sample_trajectory(
        probe, 0, periods=10, points_per_period=256, burn_in_periods=40,
        rel_tol=1e-9, abs_tol=1e-11,
    )
    separation = scale_separation(traj, seed=12345)
    return peak_period * min(1.0, 4.0 / separation)


def collect_ics(system, period: float) -> np.ndarray:
    t_burn = BURN_IN_PERIODS * period
    x = simulate.integrate(system, system.reference_ics[0], t_burn,
                           rel_tol=1e-9, abs_tol=1e-11)(t_burn)
    spacing = IC_SPACING_PERIODS * period
    t_total = N_ICS * spacing
    sol = simulate.integrate(system, x, t_total, rel_tol=1e-9, abs_tol=1e-11)
    return sol(spacing * (1 + np.arange(N_ICS)))


def qa(system) -> str:
    worst = 0.0
    for i in range(len(system.reference_ics)):
        traj = simulate.sample_trajectory(system, i, 10, 100, 10)
        worst = max(worst, float(np.max(np.abs(traj.states))))
    return f"max|x|={worst:.3g}"


def main() -> int:
    data = {}
    for spec in _SYSTEM_DEFS:
        sys_prov = provisional_system(spec)
        try:
            rough = dominant_period(sys_prov, t_span=200.0)
            if rough > 4.0:  # slow system: redo with enough periods in view
                rough = dominant_period(sys_prov, t_span=80.0 * rough)
            period = float(sampling_period(sys_prov, float(rough)))
            period *= spec.period_scale
            ics = collect_ics(sys_prov, period)
            final = PolynomialSystem(
                name=spec.name,
                basis=sys_prov.basis,
                coefficients=sys_prov.coefficients,
                reference_ics=ics,
                dominant_period=period,
                citation=spec.citation,
            )
            note = qa(final)
        except Exception as exc:  # noqa: BLE001 - report and skip
            print(f"{spec.name:18s} FAILED: {exc}")
            continue
        print(f"{spec.name:18s} period={period:9.4f}  {note}")
        data[spec.name] = {
            "dominant_period": period,
            "reference_ics": [[float(v) for v in ic] for ic in ics],
        }

    out = Path(__file__).resolve().parents[1] / "src/sindybench/_registry_data.py"
    body = pprint.pformat(data, width=100, sort_dicts=True)
    out.write_text(
        '"""Precomputed registry constants: dominant periods and reference ICs.\n'
        "\n"
        "Regenerated by ``tools/build_registry_data.py``: periods come from the\n"
        "spectral peak of a long integration, reference ICs are attractor samples\n"
        "taken after a long burn-in, spaced several periods apart.\n"
        '"""\n\n'
        f"REGISTRY_DATA: dict = {body}\n"
    )
    print(f"\nwrote {out} ({len(data)} systems)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
