"""Pure-Python (numpy) implementations of the hot numerical kernels.

This module mirrors the API of the compiled extension ``spindiv._core_cy``
and is used as a fallback when the extension is not built, or when
``SPINDIV_FORCE_PYTHON=1`` is set.  Both backends are exercised against
each other in the test suite and in ``benchmarks/bench_kernels.py``.
"""

import numpy as np

BACKEND_NAME = "python"

# Switch to the Taylor expansion of (e^{i x} - 1)/(i x) below this |x|;
# keeps the relative kernel error under 1e-12.
SERIES_SWITCH = 1e-4


def jacobi_hermitian(a, tol=1e-15, max_sweeps=100):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Parameters
    ----------
    a : (n, n) complex ndarray
        Hermitian input (symmetrized by the caller; only the values are used).
    tol : float
        Convergence threshold on the largest off-diagonal magnitude,
        relative to the largest input magnitude.
    max_sweeps : int
        Sweep budget.

    Returns
    -------
    w : (n,) float ndarray
        Eigenvalues, unsorted.
    v : (n, n) complex ndarray
        Unitary accumulation, columns are eigenvectors matching ``w``.
    sweeps : int
        Number of sweeps used, or -1 if the budget was exhausted.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n < 2:
        return a.real.diagonal().copy(), v, 0
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return np.zeros(n), v, 0
    thresh = tol * scale

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r > off:
                    off = r
                if r <= thresh:
                    continue
                # phase-fold the pivot so the 2x2 problem is real symmetric
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - np.conj(sp) * col_q
                a[:, q] = sp * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = np.conj(sp) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - np.conj(sp) * vq
                v[:, q] = sp * vp + c * vq
        if off <= thresh:
            return a.diagonal().real.copy(), v, sweep + 1
    return a.diagonal().real.copy(), v, -1


def kernel_reduce(delta, coeff, t):
    """Weighted sum of the elapsed-time kernel over quadrature nodes.

    Computes ``sum_i coeff[i] * K(delta[i], t)`` with
    ``K(d, t) = (e^{i d t} - 1)/(i d)``, i.e. the inner time integral
    ``int_0^t e^{i d u} du`` done analytically.  The removable singularity
    at ``d -> 0`` is handled by the series ``t + i d t^2/2 - d^2 t^3/6``.
    """
    delta = np.asarray(delta, dtype=np.float64)
    coeff = np.asarray(coeff, dtype=np.float64)
    x = delta * t
    small = np.abs(x) < SERIES_SWITCH
    safe = np.where(small, 1.0, delta)
    # e^{ix} - 1 written as -2 sin^2(x/2) + i sin x to avoid cancellation
    re = np.sin(x) / safe
    im = 2.0 * np.sin(0.5 * x) ** 2 / safe
    series_re = t * (1.0 - x * x / 6.0)
    series_im = t * (0.5 * x)
    re = np.where(small, series_re, re)
    im = np.where(small, series_im, im)
    return complex(np.dot(coeff, re), np.dot(coeff, im))


def kernel_reduce_grid(delta, coeff_a, coeff_b, t0, dt, nt, renorm_every=128):
    """Kernel reduction on a uniform time grid t0 + k*dt, two weight vectors.

    Propagates z = e^{i delta t} by multiplicative phase recurrence
    (re-initialized from exp every ``renorm_every`` steps to cap drift) and
    folds the kernel into two complex dot products per time.  The caller
    must route nodes with |delta| ~ 0 through the series path instead.
    """
    delta = np.asarray(delta, dtype=np.float64)
    pref_a = coeff_a / (1j * delta)
    pref_b = coeff_b / (1j * delta)
    ones = np.ones_like(delta)
    base_a = np.dot(pref_a, ones)
    base_b = np.dot(pref_b, ones)
    step = np.exp(1j * delta * dt)
    out_a = np.empty(nt, dtype=np.complex128)
    out_b = np.empty(nt, dtype=np.complex128)
    z = None
    for k in range(nt):
        if k % renorm_every == 0:
            z = np.exp(1j * delta * (t0 + k * dt))
        else:
            z = z * step
        out_a[k] = np.dot(pref_a, z) - base_a
        out_b[k] = np.dot(pref_b, z) - base_b
    return out_a, out_b
