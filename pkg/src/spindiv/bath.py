"""Ohmic-family spectral densities, thermal occupation, and TCL2 decay rates.

The decay rates are double integrals over bath frequency and elapsed time.
The inner time integral is performed analytically, leaving

    Lambda_q(t) = int_0^inf dw J(w) * weight(w) * (e^{i(w - q ws) t} - 1)/(i(w - q ws))

with weight = r (thermal occupation) or r + 1.  The frequency integral is
evaluated by composite Gauss-Legendre quadrature on panels of width
omega_c / panel_width_factor up to a tail-criterion cutoff, with extra
panel refinement around the resonance w = q*omega_s (q > 0) where the
kernel develops structure of width ~1/t.  The first panel is mapped
through w = u^2 so integrable w^(s-1) endpoint behavior of J*r at small
w (sub-Ohmic exponents) does not degrade the quadrature.

Rates can be transiently negative; nothing here clamps them.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .errors import NonPositiveFrequencyError, QuadratureError
from .spin import DriveParameters, SpinQuantumNumber

R = "r"
R_PLUS_ONE = "r+1"

_TAIL_SCAN_POINTS = 2048
_TAIL_SCAN_SPAN = 8.0  # scan [omega_c/256, 8*omega_c] for the envelope peak


@dataclass(frozen=True)
class SpectralDensity:
    """J(w) = eta * w^s * omega_c^(1-s) * exp(-w/omega_c) for w >= 0."""

    eta: float
    exponent_s: float
    omega_c: float

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not self.exponent_s > 0:
            raise ValueError(f"exponent_s must be > 0, got {self.exponent_s}")
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be > 0, got {self.omega_c}")

    def __call__(self, omega):
        w = np.asarray(omega, dtype=np.float64)
        out = np.zeros_like(w)
        pos = w > 0
        out[pos] = (
            self.eta
            * np.power(w[pos], self.exponent_s)
            * self.omega_c ** (1.0 - self.exponent_s)
            * np.exp(-w[pos] / self.omega_c)
        )
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class BathState:
    """Thermal environment at temperature T (k_B = 1); T = 0 allowed."""

    temperature: float

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")


def thermal_occupation(omega, bath: BathState):
    """Mean occupation 1/(e^{w/T} - 1); zero at T = 0."""
    if not omega > 0:
        raise NonPositiveFrequencyError(f"thermal occupation needs omega > 0, got {omega}")
    t = bath.temperature
    if t == 0.0:
        return 0.0
    x = omega / t
    if x > 700.0:
        return 0.0
    return 1.0 / np.expm1(x)


def _occupation_array(omega, temperature):
    if temperature == 0.0:
        return np.zeros_like(omega)
    x = omega / temperature
    small = x < 700.0
    out = np.zeros_like(omega)
    out[small] = 1.0 / np.expm1(x[small])
    return out


@dataclass(frozen=True)
class QuadratureSettings:
    nodes_per_panel: int = 64
    panel_width_factor: float = 4.0
    tail_cut: float = 1e-14
    resonance_refine: int = 4
    resonance_halfwidth: float = 10.0
    max_tail_multiples: int = 1000


DEFAULT_QUADRATURE = QuadratureSettings()


@lru_cache(maxsize=32)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_nodes(lo, hi, n, sqrt_map=False):
    """Gauss-Legendre nodes/weights on [lo, hi]; optionally through w = u^2."""
    x, w = _leggauss(n)
    if sqrt_map:
        uhi = np.sqrt(hi)
        ulo = np.sqrt(lo)
        u = 0.5 * (uhi - ulo) * x + 0.5 * (uhi + ulo)
        return u * u, w * (0.5 * (uhi - ulo)) * 2.0 * u
    nodes = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    return nodes, w * (0.5 * (hi - lo))


@lru_cache(maxsize=64)
def _static_quadrature(j: SpectralDensity, bath: BathState, settings: QuadratureSettings):
    """Tail cutoff, base panel edges, and cached J*weight values on base nodes."""
    wc = j.omega_c
    scan = np.linspace(wc / 256.0, _TAIL_SCAN_SPAN * wc, _TAIL_SCAN_POINTS)
    envelope = j(scan) * (_occupation_array(scan, bath.temperature) + 1.0)
    peak = float(envelope.max())
    if peak <= 0.0:
        # eta == 0: a single dummy panel, all rates vanish
        edges = np.array([0.0, wc])
    else:
        edge = None
        for k in range(1, settings.max_tail_multiples + 1):
            val = j(np.array([k * wc]))[0] * (
                _occupation_array(np.array([k * wc]), bath.temperature)[0] + 1.0
            )
            if val < settings.tail_cut * peak:
                edge = k * wc
                break
        if edge is None:
            raise QuadratureError(
                f"tail criterion not met within {settings.max_tail_multiples} cutoff multiples"
            )
        width = wc / settings.panel_width_factor
        n_panels = max(1, int(round(edge / width)))
        edges = np.linspace(0.0, edge, n_panels + 1)

    panels = []
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        nodes, weights = _panel_nodes(lo, hi, settings.nodes_per_panel, sqrt_map=(i == 0))
        jw = j(nodes)
        occ = _occupation_array(nodes, bath.temperature)
        panels.append(
            {
                "lo": lo,
                "hi": hi,
                "nodes": nodes,
                "coeff_r": weights * jw * occ,
                "coeff_r1": weights * jw * (occ + 1.0),
            }
        )
    return panels


def _refined_panel(j, bath, settings, lo, hi, first):
    sub_edges = np.linspace(lo, hi, settings.resonance_refine + 1)
    nodes_list, coeff_r, coeff_r1 = [], [], []
    for i in range(settings.resonance_refine):
        nodes, weights = _panel_nodes(
            sub_edges[i], sub_edges[i + 1], settings.nodes_per_panel,
            sqrt_map=(first and i == 0),
        )
        jw = j(nodes)
        occ = _occupation_array(nodes, bath.temperature)
        nodes_list.append(nodes)
        coeff_r.append(weights * jw * occ)
        coeff_r1.append(weights * jw * (occ + 1.0))
    return (
        np.concatenate(nodes_list),
        np.concatenate(coeff_r),
        np.concatenate(coeff_r1),
    )


@lru_cache(maxsize=4096)
def _assembled(j, bath, settings, i0, i1):
    """Concatenated node/coefficient arrays with panels [i0, i1) refined.

    Keyed by the refined index range rather than by t: the resonance
    window shrinks with t, so only a handful of distinct ranges occur
    along a trajectory and the assembly cost amortizes away.
    """
    panels = _static_quadrature(j, bath, settings)
    nodes, cr, cr1 = [], [], []
    for i, p in enumerate(panels):
        if i0 <= i < i1:
            n_, r_, r1_ = _refined_panel(j, bath, settings, p["lo"], p["hi"], first=(i == 0))
            nodes.append(n_)
            cr.append(r_)
            cr1.append(r1_)
        else:
            nodes.append(p["nodes"])
            cr.append(p["coeff_r"])
            cr1.append(p["coeff_r1"])
    return np.concatenate(nodes), np.concatenate(cr), np.concatenate(cr1)


def _assemble(j, bath, settings, q, t, omega_s):
    """Node and coefficient arrays for one (q, t) evaluation, both weights."""
    if q > 0 and t > 0.0:
        panels = _static_quadrature(j, bath, settings)
        edges = np.array([p["lo"] for p in panels] + [panels[-1]["hi"]])
        win_lo = q * omega_s - settings.resonance_halfwidth / t
        win_hi = q * omega_s + settings.resonance_halfwidth / t
        i0 = max(0, int(np.searchsorted(edges, win_lo, side="right")) - 1)
        i1 = min(len(panels), int(np.searchsorted(edges, win_hi, side="left")))
        if i1 > i0:
            return _assembled(j, bath, settings, i0, i1)
    return _assembled(j, bath, settings, -1, -1)


def lambda_rate(q, t, j: SpectralDensity, bath: BathState, omega_s,
                weight=R, settings: QuadratureSettings = DEFAULT_QUADRATURE):
    """Complex decay rate Lambda_q(t) (weight=r) or its tilde partner (weight=r+1)."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if weight not in (R, R_PLUS_ONE):
        raise ValueError(f"weight must be {R!r} or {R_PLUS_ONE!r}, got {weight!r}")
    if t == 0.0:
        return 0.0 + 0.0j
    if weight == R and bath.temperature == 0.0:
        return 0.0 + 0.0j
    if j.eta == 0.0:
        return 0.0 + 0.0j
    nodes, coeff_r, coeff_r1 = _assemble(j, bath, settings, q, t, omega_s)
    coeff = coeff_r if weight == R else coeff_r1
    return kernels.kernel_reduce(nodes - q * omega_s, coeff, t)


@dataclass(frozen=True)
class RateTable:
    """Decay rates on a time grid, indexed by the transition number q = l - m.

    gamma / gamma_tilde are exactly 2*Re of the stored complex rates.
    """

    times: np.ndarray
    q_values: np.ndarray
    lam: np.ndarray         # shape (n_q, n_t), complex
    lam_tilde: np.ndarray   # shape (n_q, n_t), complex
    gamma: np.ndarray
    gamma_tilde: np.ndarray

    @classmethod
    def from_rates(cls, times, q_values, lam, lam_tilde):
        times = np.asarray(times, dtype=np.float64)
        q_values = np.asarray(q_values, dtype=np.int64)
        lam = np.asarray(lam, dtype=np.complex128)
        lam_tilde = np.asarray(lam_tilde, dtype=np.complex128)
        if lam.shape != (q_values.size, times.size) or lam_tilde.shape != lam.shape:
            raise ValueError("rate arrays must have shape (n_q, n_t)")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(lam_tilde))):
            raise ValueError("rate table contains non-finite entries")
        return cls(
            times=times,
            q_values=q_values,
            lam=lam,
            lam_tilde=lam_tilde,
            gamma=2.0 * lam.real,
            gamma_tilde=2.0 * lam_tilde.real,
        )

    def q_index(self, q):
        qmax = int(self.q_values.max())
        if not -qmax <= q <= qmax:
            raise KeyError(f"q={q} outside [{-qmax}, {qmax}]")
        return q + qmax

    def at(self, q, which="gamma"):
        """Rate samples over the whole grid for one q."""
        return getattr(self, which)[self.q_index(q)]


# nodes closer to the resonance than this (in units of omega_s) bypass the
# phase recurrence and use the series kernel directly
_SINGULAR_DELTA = 1e-8


def _series_kernel_columns(delta, coeff_a, coeff_b, times):
    """Kernel contributions of near-resonant nodes, vectorized over times.

    |delta * t| stays far below the series switch for these nodes, so the
    cubic expansion is exact to rounding.
    """
    x = np.outer(times, delta)
    tcol = times[:, None]
    k = tcol * (1.0 - x * x / 6.0) + 1j * (tcol * 0.5 * x)
    return k @ coeff_a, k @ coeff_b


def _uniform_spacing(times):
    if times.size < 2:
        return None
    dt = float(times[1] - times[0])
    if dt <= 0.0:
        return None
    if np.max(np.abs(np.diff(times) - dt)) > 1e-9 * dt:
        return None
    return dt


def _refine_runs(j, bath, settings, q, omega_s, times):
    """Contiguous index runs of the time grid sharing one refined panel range."""
    panels = _static_quadrature(j, bath, settings)
    edges = np.array([p["lo"] for p in panels] + [panels[-1]["hi"]])
    n_panels = len(panels)
    nt = times.size
    keys = np.empty((nt, 2), dtype=np.int64)
    keys[:] = (-1, -1)
    if q > 0:
        pos = times > 0.0
        tpos = times[pos]
        half = settings.resonance_halfwidth / tpos
        i0 = np.clip(np.searchsorted(edges, q * omega_s - half, side="right") - 1, 0, n_panels)
        i1 = np.clip(np.searchsorted(edges, q * omega_s + half, side="left"), 0, n_panels)
        valid = i1 > i0
        keys[pos] = np.where(valid[:, None], np.stack([i0, i1], axis=1), (-1, -1))
        if nt > 1:
            keys[0] = keys[1]  # t = 0 evaluates to exactly zero under any panel set
    runs = []
    start = 0
    for k in range(1, nt):
        if keys[k, 0] != keys[start, 0] or keys[k, 1] != keys[start, 1]:
            runs.append((start, k, (int(keys[start, 0]), int(keys[start, 1]))))
            start = k
    runs.append((start, nt, (int(keys[start, 0]), int(keys[start, 1]))))
    return runs


def _tabulate_q(j, bath, settings, q, omega_s, times, dt):
    """Lambda_q and tilde-Lambda_q on a uniform grid via the phase recurrence."""
    nt = times.size
    lam = np.zeros(nt, dtype=np.complex128)
    lam_tilde = np.zeros(nt, dtype=np.complex128)
    for start, stop, key in _refine_runs(j, bath, settings, q, omega_s, times):
        nodes, cr, cr1 = _assembled(j, bath, settings, key[0], key[1])
        delta = nodes - q * omega_s
        sing = np.abs(delta) < _SINGULAR_DELTA * omega_s
        reg = ~sing
        n_run = stop - start
        out_a, out_b = kernels.kernel_reduce_grid(
            delta[reg], cr[reg], cr1[reg], float(times[start]), dt, n_run
        )
        if np.any(sing):
            add_a, add_b = _series_kernel_columns(
                delta[sing], cr[sing], cr1[sing], times[start:stop]
            )
            out_a = out_a + add_a
            out_b = out_b + add_b
        lam[start:stop] = out_a
        lam_tilde[start:stop] = out_b
    return lam, lam_tilde


def rate_table(s: SpinQuantumNumber, drive: DriveParameters, j: SpectralDensity,
               bath: BathState, time_grid,
               settings: QuadratureSettings = DEFAULT_QUADRATURE) -> RateTable:
    """Tabulate Lambda_q, tilde-Lambda_q (and their 2*Re) for q in [-2S, 2S].

    Uniform grids take a fast path that advances the oscillatory kernel by
    a phase recurrence over time instead of re-evaluating it; non-uniform
    grids fall back to one quadrature per (q, t).
    """
    times = np.asarray(time_grid, dtype=np.float64)
    if times.size == 0 or times[0] != 0.0 or np.any(np.diff(times) <= 0.0):
        raise ValueError("time grid must start at 0 and be strictly increasing")
    qmax = s.twice_s
    q_values = np.arange(-qmax, qmax + 1)
    lam = np.zeros((q_values.size, times.size), dtype=np.complex128)
    lam_tilde = np.zeros_like(lam)
    dt = _uniform_spacing(times)
    if j.eta == 0.0:
        return RateTable.from_rates(times, q_values, lam, lam_tilde)
    for qi, q in enumerate(q_values):
        if dt is not None:
            lam[qi], lam_tilde[qi] = _tabulate_q(
                j, bath, settings, q, drive.omega_s, times, dt
            )
            if bath.temperature == 0.0:
                lam[qi] = 0.0  # weight r vanishes identically at T = 0
        else:
            for ti, t in enumerate(times):
                lam[qi, ti] = lambda_rate(q, t, j, bath, drive.omega_s, R, settings)
                lam_tilde[qi, ti] = lambda_rate(q, t, j, bath, drive.omega_s, R_PLUS_ONE, settings)
    return RateTable.from_rates(times, q_values, lam, lam_tilde)
