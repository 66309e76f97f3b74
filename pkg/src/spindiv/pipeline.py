"""End-to-end runs: rates, evolution, and the divisibility measure.

The CLI and the test suite both drive these functions; keeping them out
of the CLI makes every run reproducible from plain Python.
"""

from dataclasses import dataclass

import numpy as np

from .bath import RateTable, rate_table
from .config import RunConfig
from .divisibility import DivisibilityReport, g_numeric, n_rhp
from .evolve import Trajectory, evolve
from .generator import GeneratorSnapshot, snapshot_from_table
from .spin import SpinModel, build_model


def model_from_config(cfg: RunConfig) -> SpinModel:
    return build_model(cfg.spin, cfg.drive, cfg.coupling)


def stage_table(cfg: RunConfig, model: SpinModel) -> RateTable:
    """Rates on the half-step grid required by the RK4 propagator."""
    return rate_table(cfg.spin, cfg.drive, cfg.spectral_density, cfg.bath,
                      cfg.grid.stage_times(), cfg.quadrature)


def grid_table(cfg: RunConfig) -> RateTable:
    """Rates on the plain output grid (for the `rates` subcommand)."""
    return rate_table(cfg.spin, cfg.drive, cfg.spectral_density, cfg.bath,
                      cfg.grid.times(), cfg.quadrature)


@dataclass
class EvolveRun:
    model: SpinModel
    table: RateTable
    trajectory: Trajectory


@dataclass
class MeasureRun:
    model: SpinModel
    table: RateTable
    trajectory: Trajectory
    snapshots: list
    g_samples: np.ndarray
    report: DivisibilityReport


def run_evolve(cfg: RunConfig) -> EvolveRun:
    model = model_from_config(cfg)
    table = stage_table(cfg, model)
    max_step = cfg.grid.max_step_factor / max(cfg.drive.omega_s, cfg.spectral_density.omega_c)
    traj = evolve(cfg.initial_state, model, table, max_step=max_step)
    return EvolveRun(model=model, table=table, trajectory=traj)


def effective_rate_floor(snap: GeneratorSnapshot):
    """Smallest Lindblad-form rate entering the generator at this time:
    the dephasing weight and every transition weight."""
    d = snap.d
    g0 = snap.gamma[d - 1] + snap.gamma_tilde[d - 1]
    rates = [g0] if np.any(np.abs(np.diag(snap.c)) > 0) else []
    for i in range(d):
        for jj in range(d):
            if i == jj:
                continue
            w = snap._flow[jj, i]
            if abs(snap.c[i, jj]) > 0 or abs(snap.c[jj, i]) > 0:
                rates.append(w)
    return min(rates) if rates else 0.0


def run_measure(cfg: RunConfig) -> MeasureRun:
    ev = run_evolve(cfg)
    grid_idx = range(0, ev.table.times.size, 2)
    snapshots = [snapshot_from_table(ev.model, ev.table, i) for i in grid_idx]
    g_samples = np.array([g_numeric(s) for s in snapshots])
    min_rate = min(effective_rate_floor(s) for s in snapshots)
    report = n_rhp(g_samples, ev.trajectory.times, min_rate_seen=min_rate)
    return MeasureRun(model=ev.model, table=ev.table, trajectory=ev.trajectory,
                      snapshots=snapshots, g_samples=g_samples, report=report)
