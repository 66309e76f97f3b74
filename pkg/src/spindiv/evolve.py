"""Propagation of the interaction-picture state on a uniform grid.

Classic fixed-step RK4 with the generator evaluated at exact stage times;
the rate table is expected on the half-step grid [t0, t0+h/2, t0+h, ...]
so no rate interpolation is ever needed.  Positivity is monitored, never
enforced: the TCL2 map may transiently leave the state space, and the
divisibility machinery is the designed detector for that.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .bath import RateTable
from .errors import DimensionMismatchError, StepSizeError
from .generator import GeneratorSnapshot, apply_generator, snapshot_from_table
from .linalg import as_matrix, hermitian_eigenvalues
from .spin import DriveParameters, EigenFrame, SpinModel

DEFAULT_MAX_STEP_FACTOR = 0.05
_TRACE_DRIFT_LIMIT = 1e-6
_POSITIVITY_WARN = -1e-6


class StateKind(enum.Enum):
    EIGENBASIS_PURE = "eigenbasis_pure"
    MAXIMALLY_MIXED = "maximally_mixed"
    COHERENT_SUPERPOSITION = "coherent_superposition"
    CUSTOM = "custom"


@dataclass(frozen=True)
class InitialState:
    """Initial density matrix specified symbolically or as an explicit matrix."""

    kind: StateKind
    index: int = 0
    indices: tuple = ()
    amplitudes: tuple = ()
    matrix: np.ndarray | None = None

    @classmethod
    def eigenbasis_pure(cls, index):
        return cls(kind=StateKind.EIGENBASIS_PURE, index=int(index))

    @classmethod
    def maximally_mixed(cls):
        return cls(kind=StateKind.MAXIMALLY_MIXED)

    @classmethod
    def coherent_superposition(cls, indices, amplitudes):
        return cls(
            kind=StateKind.COHERENT_SUPERPOSITION,
            indices=tuple(int(i) for i in indices),
            amplitudes=tuple(complex(a) for a in amplitudes),
        )

    @classmethod
    def custom(cls, matrix):
        return cls(kind=StateKind.CUSTOM, matrix=as_matrix(matrix))

    def resolve(self, d):
        """The d x d density matrix, validated Hermitian / unit trace / PSD."""
        if self.kind is StateKind.MAXIMALLY_MIXED:
            rho = np.eye(d, dtype=np.complex128) / d
        elif self.kind is StateKind.EIGENBASIS_PURE:
            if not 0 <= self.index < d:
                raise ValueError(f"pure-state index {self.index} outside 0..{d-1}")
            rho = np.zeros((d, d), dtype=np.complex128)
            rho[self.index, self.index] = 1.0
        elif self.kind is StateKind.COHERENT_SUPERPOSITION:
            psi = np.zeros(d, dtype=np.complex128)
            if len(self.indices) != len(self.amplitudes) or not self.indices:
                raise ValueError("superposition needs matching non-empty indices/amplitudes")
            for i, a in zip(self.indices, self.amplitudes):
                if not 0 <= i < d:
                    raise ValueError(f"superposition index {i} outside 0..{d-1}")
                psi[i] += a
            norm = np.linalg.norm(psi)
            if norm == 0.0:
                raise ValueError("superposition amplitudes are all zero")
            psi /= norm
            rho = np.outer(psi, psi.conj())
        else:
            rho = as_matrix(self.matrix)
            if rho.shape != (d, d):
                raise DimensionMismatchError(f"custom state must be {d}x{d}, got {rho.shape}")
        _validate_density(rho)
        return rho


def _validate_density(rho):
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(rho))):
        raise ValueError("initial state is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-12 or abs(np.trace(rho).imag) > 1e-12:
        raise ValueError("initial state trace differs from 1 beyond 1e-12")
    if hermitian_eigenvalues(0.5 * (rho + rho.conj().T)).min() < -1e-12:
        raise ValueError("initial state has an eigenvalue below -1e-12")


@dataclass
class Trajectory:
    """States on the grid plus per-point diagnostics."""

    times: np.ndarray
    states: np.ndarray             # (n_t, d, d)
    min_eigenvalue: np.ndarray
    trace_error: np.ndarray
    positivity_warnings: list = field(default_factory=list)

    @property
    def final_state(self):
        return self.states[-1]


def _grid_from_table(table: RateTable):
    times = table.times
    if times.size < 3 or times.size % 2 == 0:
        raise ValueError("rate table must cover the half-step grid (odd point count >= 3)")
    h = times[2] - times[0]
    expect = times[0] + 0.5 * h * np.arange(times.size)
    if np.max(np.abs(times - expect)) > 1e-9 * h:
        raise ValueError("rate table times are not the uniform half-step grid")
    return times[::2].copy(), float(h)


def evolve(rho0, model: SpinModel, table: RateTable, max_step=None) -> Trajectory:
    """RK4 propagation over the grid embedded in the rate table.

    ``rho0`` may be an InitialState or an explicit matrix.  ``max_step``
    bounds the step size (default 0.05/omega_s; pass the tighter
    0.05/max(omega_s, omega_c) when the cutoff is the fast scale).
    """
    grid, h = _grid_from_table(table)
    if max_step is None:
        max_step = DEFAULT_MAX_STEP_FACTOR / model.drive.omega_s
    if h > max_step * (1.0 + 1e-12):
        raise StepSizeError(
            f"step {h:.3e} exceeds the limit {max_step:.3e}; increase grid.steps"
        )
    d = model.d
    if isinstance(rho0, InitialState):
        rho = rho0.resolve(d)
    else:
        rho = InitialState.custom(rho0).resolve(d)

    n_steps = grid.size - 1
    states = np.empty((grid.size, d, d), dtype=np.complex128)
    min_eig = np.empty(grid.size)
    trace_err = np.empty(grid.size)
    warnings = []

    def diagnose(i, state):
        states[i] = state
        w = hermitian_eigenvalues(0.5 * (state + state.conj().T))
        min_eig[i] = w[-1]
        trace_err[i] = abs(np.trace(state).real - 1.0) + abs(np.trace(state).imag)
        if w[-1] < _POSITIVITY_WARN:
            warnings.append((float(grid[i]), float(w[-1])))
        if trace_err[i] > _TRACE_DRIFT_LIMIT:
            raise StepSizeError(
                f"trace drift {trace_err[i]:.2e} at t={grid[i]:.4g} exceeds 1e-6; halve the step"
            )

    diagnose(0, rho)
    snap_t = snapshot_from_table(model, table, 0)
    for k in range(n_steps):
        snap_mid = snapshot_from_table(model, table, 2 * k + 1)
        snap_end = snapshot_from_table(model, table, 2 * k + 2)
        k1 = apply_generator(rho, snap_t)
        k2 = apply_generator(rho + 0.5 * h * k1, snap_mid)
        k3 = apply_generator(rho + 0.5 * h * k2, snap_mid)
        k4 = apply_generator(rho + h * k3, snap_end)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        diagnose(k + 1, rho)
        snap_t = snap_end
    return Trajectory(
        times=grid, states=states, min_eigenvalue=min_eig, trace_error=trace_err,
        positivity_warnings=warnings,
    )


def schrodinger_frame(traj: Trajectory, frame: EigenFrame, drive: DriveParameters) -> Trajectory:
    """Undo the interaction picture: rho_sch(t) = e^{-i H t} rho(t) e^{+i H t}
    with H the diagonal ladder omega_s * m in the dressed basis."""
    d = frame.u.shape[0]
    m_vals = ((d - 1) - 2.0 * np.arange(d)) / 2.0  # S, S-1, ..., -S
    phases = drive.omega_s * m_vals
    states = np.empty_like(traj.states)
    for i, t in enumerate(traj.times):
        u = np.exp(-1j * phases * t)
        states[i] = (u[:, None] * traj.states[i]) * np.conj(u)[None, :]
    return Trajectory(
        times=traj.times.copy(), states=states,
        min_eigenvalue=traj.min_eigenvalue.copy(), trace_error=traj.trace_error.copy(),
        positivity_warnings=list(traj.positivity_warnings),
    )
