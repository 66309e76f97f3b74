"""RHP indivisibility machinery.

The witness g(t) is the one-sided derivative of the trace norm of

    epsilon(t, t1) = [(I + t1 L_t) (x) I] P_d^+,

the maximally entangled state propagated through the instantaneous map on
its first tensor factor.  A completely positive increment keeps the trace
norm at one; any negative eigenvalue of epsilon signals an indivisible
(non-Markovian) step.  The measure is N = I/(I+1) with I the time
integral of g.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError
from .generator import GeneratorSnapshot, Spin1Rates, apply_generator
from .linalg import hermitian_eigenvalues, is_hermitian

DEFAULT_T1_REL = 1e-6
_EPSILON_HERM_RTOL = 1e-9
_TAIL_FRACTION = 1e-4


def max_entangled(d):
    """Projector onto (1/sqrt(d)) sum_j |j,j> in the d x d product space."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    v = np.zeros(d * d, dtype=np.complex128)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return np.outer(v, v.conj())


@dataclass(frozen=True)
class ChoiProbe:
    """epsilon(t, t1) with its construction parameters."""

    epsilon: np.ndarray
    t: float
    t1: float

    def __post_init__(self):
        eps = self.epsilon
        if not is_hermitian(eps, rtol=_EPSILON_HERM_RTOL):
            raise NotHermitianError("epsilon matrix failed the Hermiticity check")
        tr = np.trace(eps)
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"epsilon trace {tr} differs from 1 beyond 1e-10")


def epsilon_general(snap: GeneratorSnapshot, t1, d=None) -> ChoiProbe:
    """Apply (I + t1 L_t) to the first factor of the maximally entangled state.

    Each block sigma_{j,n} of P_d^+ is replaced by
    sigma_{j,n} + t1 * L_t[sigma_{j,n}].
    """
    if d is None:
        d = snap.d
    if d != snap.d:
        raise DimensionMismatchError(f"snapshot has d={snap.d}, requested {d}")
    eps = np.zeros((d * d, d * d), dtype=np.complex128)
    basis = np.zeros((d, d), dtype=np.complex128)
    for jj in range(d):
        for n in range(d):
            basis[jj, n] = 1.0
            x = basis + t1 * apply_generator(basis, snap)
            basis[jj, n] = 0.0
            eps[jj::d, n::d] = x / d
    return ChoiProbe(epsilon=eps, t=snap.time, t1=float(t1))


def epsilon_spin1_closed_form(rates: Spin1Rates, t1) -> ChoiProbe:
    """The 9x9 epsilon of the spin-1 master equation, written out entrywise."""
    g0, gp, gm = rates.gamma_0, rates.gamma_plus, rates.gamma_minus
    y = 0.5 * g0 + 0.5 * gp + gm
    v = 0.5 * gp + 0.5 * gm + 2.0 * g0
    w = 0.5 * g0 + 0.5 * gm + gp
    e = np.zeros((9, 9), dtype=np.complex128)
    e[0, 0] = 1.0 - t1 * gm
    e[0, 4] = e[4, 0] = 1.0 - t1 * y
    e[0, 8] = e[8, 0] = 1.0 - t1 * v
    e[1, 1] = t1 * gp
    e[3, 3] = t1 * gm
    e[4, 4] = 1.0 - t1 * (gp + gm)
    e[4, 8] = e[8, 4] = 1.0 - t1 * w
    e[5, 5] = t1 * gp
    e[7, 7] = t1 * gm
    e[8, 8] = 1.0 - t1 * gp
    return ChoiProbe(epsilon=e / 3.0, t=np.nan, t1=float(t1))


# eigenvalues below this (times the spectral scale) cannot be resolved by the
# eigensolver; treating them as zero keeps the h(t1) samples on the clean
# linear branch that the Richardson step assumes
_EIG_RESOLUTION = 8e-15


def _trace_norm_excess(eps):
    """||eps||_1 - 1 evaluated as (tr(eps) - 1) + 2 sum max(0, -w).

    Algebraically identical to trace_norm(eps) - 1 (the eigenvalue sum is
    the trace) but avoids amplifying the 1-1 cancellation, which matters
    because this quantity is divided by a tiny t1.  Negative eigenvalues
    at the rounding floor are dropped: a genuine first-order
    indivisibility signal sits orders of magnitude above it.
    """
    w = hermitian_eigenvalues(0.5 * (eps + eps.conj().T))
    floor = _EIG_RESOLUTION * max(1.0, float(np.max(np.abs(w))))
    neg = np.maximum(0.0, -w)
    neg[neg < floor] = 0.0
    return float((np.trace(eps).real - 1.0) + 2.0 * np.sum(neg))


def _choi_rate_matrix(snap: GeneratorSnapshot, d):
    """E = (1/d) sum_jn L[sigma_jn] (x) sigma_jn, the t1-coefficient of epsilon."""
    e = np.zeros((d * d, d * d), dtype=np.complex128)
    basis = np.zeros((d, d), dtype=np.complex128)
    for jj in range(d):
        for n in range(d):
            basis[jj, n] = 1.0
            e[jj::d, n::d] = apply_generator(basis, snap) / d
            basis[jj, n] = 0.0
    return e


def g_numeric(snap: GeneratorSnapshot, d=None):
    """The divisibility witness at the snapshot time.

    epsilon(t, t1) = P + t1 E is exactly linear in t1, so the one-sided
    limit of (||epsilon||_1 - 1)/t1 equals twice the negative part of the
    spectrum of E deflated against the entangled-state direction (the
    first-order shifts of epsilon's zero eigenvalues; the unit eigenvalue
    cannot cross zero).  Evaluating the limit this way instead of by a
    finite difference keeps the noise floor at ~1e-14: diagonalizing
    epsilon itself buries the O(t1) eigenvalues under the rounding of the
    O(1) block.  ``g_finite_difference`` retains the difference-quotient
    construction for cross-checks.
    """
    if d is None:
        d = snap.d
    e = _choi_rate_matrix(snap, d)
    scale = float(np.max(np.abs(e)))
    if scale == 0.0:
        return 0.0
    omega = np.zeros(d * d, dtype=np.complex128)
    omega[:: d + 1] = 1.0 / np.sqrt(d)
    ev = e @ omega
    b = e - np.outer(omega, ev.conj()) - np.outer(ev, omega.conj())
    b += np.vdot(omega, ev) * np.outer(omega, omega.conj())
    mu = hermitian_eigenvalues(0.5 * (b + b.conj().T))
    floor = _EIG_RESOLUTION * max(1.0, float(np.max(np.abs(mu))))
    neg = np.maximum(0.0, -mu)
    neg[neg < floor] = 0.0
    return float(2.0 * np.sum(neg))


def g_finite_difference(snap: GeneratorSnapshot, d=None, t1_rel=DEFAULT_T1_REL):
    """Difference-quotient witness: h(t1) = (||epsilon(t, t1)||_1 - 1)/t1
    sampled at t1 = t1_rel/max|M| and t1/2, Richardson extrapolated and
    floored at zero.

    Accuracy is representation-limited to roughly 1e-8 * max|M| in
    absolute terms (the O(t1) eigenvalues of epsilon carry the rounding
    of its O(1) block); use ``g_numeric`` for the exact limit.
    """
    if d is None:
        d = snap.d
    scale = float(np.max(np.abs(snap.superop)))
    if scale == 0.0:
        return 0.0
    t1 = t1_rel / scale

    def h(x):
        probe = epsilon_general(snap, x, d)
        return _trace_norm_excess(probe.epsilon) / x

    g = 2.0 * h(0.5 * t1) - h(t1)
    return max(0.0, g)


def g_analytic_spin1(rates: Spin1Rates):
    """Closed-form witness for spin 1: -(4/3) * sum of negative parts."""
    return -(4.0 / 3.0) * sum(min(0.0, x) for x in rates.as_tuple())


@lru_cache(maxsize=None)
def f_dim(d):
    """Dimension factor from the seeds f(2)=1, f(3)=4, f(4)=10 and
    f(d+3) = 3[f(d+2) - f(d+1)] + f(d) + 1."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"f is defined for integer d >= 2, got {d!r}")
    if d == 2:
        return 1
    if d == 3:
        return 4
    if d == 4:
        return 10
    return 3 * (f_dim(d - 1) - f_dim(d - 2)) + f_dim(d - 3) + 1


def g_analytic_degenerate(d, alpha, gamma0, gamma0_tilde):
    """Witness in the near-diagonal coupling limit:
    -(f(d)/d) cos^2(alpha) [Phi(Gamma_0) + Phi(tilde-Gamma_0)]."""
    neg = min(0.0, gamma0) + min(0.0, gamma0_tilde)
    return -(f_dim(d) / d) * np.cos(alpha) ** 2 * neg


@dataclass(frozen=True)
class DivisibilityReport:
    """Sampled witness, its integral, and the normalized measure."""

    t_samples: np.ndarray
    g_values: np.ndarray
    integral: float
    n_rhp: float
    min_rate_seen: float
    truncation_flag: bool


def n_rhp(g_samples, time_grid, convergence_window=None, min_rate_seen=np.nan) -> DivisibilityReport:
    """Trapezoidal I = int g dt over the sampled horizon and N = I/(I+1).

    ``truncation_flag`` is set when the trailing ``convergence_window``
    samples still contribute more than 1e-4 of I, signaling an
    unconverged tail rather than silently truncating the infinite
    integral.
    """
    g = np.asarray(g_samples, dtype=np.float64)
    t = np.asarray(time_grid, dtype=np.float64)
    if g.shape != t.shape or g.ndim != 1 or g.size < 2:
        raise ValueError("g samples and time grid must be matching 1-D arrays")
    dt = np.diff(t)
    if np.any(dt <= 0) or np.max(np.abs(dt - dt[0])) > 1e-9 * dt[0]:
        raise ValueError("time grid must be uniform and increasing")
    if np.any(g < 0.0):
        raise ValueError("g samples must be non-negative")
    integral = float(np.trapezoid(g, t))
    if convergence_window is None:
        convergence_window = max(2, g.size // 20)
    convergence_window = int(convergence_window)
    if not 2 <= convergence_window <= g.size:
        raise ValueError(f"convergence window {convergence_window} outside [2, {g.size}]")
    tail = float(np.trapezoid(g[-convergence_window:], t[-convergence_window:]))
    flag = bool(integral > 0.0 and tail > _TAIL_FRACTION * integral)
    return DivisibilityReport(
        t_samples=t.copy(),
        g_values=g.copy(),
        integral=integral,
        n_rhp=integral / (integral + 1.0),
        min_rate_seen=float(min_rate_seen),
        truncation_flag=flag,
    )
