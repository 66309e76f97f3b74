# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numerical kernels.

Same API as ``spindiv._core_py``; selected at import time by
``spindiv._backend``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, sin, sqrt

cnp.import_array()

BACKEND_NAME = "compiled"

SERIES_SWITCH = 1e-4

cdef double _SERIES_SWITCH = 1e-4


def jacobi_hermitian(a, double tol=1e-15, int max_sweeps=100):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns ``(w, v, sweeps)`` with unsorted eigenvalues ``w``, the unitary
    ``v`` and the number of sweeps used (-1 when the budget is exhausted).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] m = np.array(a, dtype=np.complex128)
    cdef int n = m.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.eye(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n, dtype=np.float64)
    cdef int i, p, q, sweep
    cdef double scale = 0.0, thresh, off, r, tau, t, c, s
    cdef double complex apq, phase, sp, spc, xp, xq

    if n < 2:
        for i in range(n):
            w[i] = m[i, i].real
        return w, v, 0
    for p in range(n):
        for q in range(n):
            r = abs(m[p, q])
            if r > scale:
                scale = r
    if scale == 0.0:
        w[:] = 0.0
        return w, v, 0
    thresh = tol * scale

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                r = abs(apq)
                if r > off:
                    off = r
                if r <= thresh:
                    continue
                phase = apq / r
                tau = (m[q, q].real - m[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()

                for i in range(n):
                    xp = m[i, p]
                    xq = m[i, q]
                    m[i, p] = c * xp - spc * xq
                    m[i, q] = sp * xp + c * xq
                for i in range(n):
                    xp = m[p, i]
                    xq = m[q, i]
                    m[p, i] = c * xp - sp * xq
                    m[q, i] = spc * xp + c * xq
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp - spc * xq
                    v[i, q] = sp * xp + c * xq
        if off <= thresh:
            for i in range(n):
                w[i] = m[i, i].real
            return w, v, sweep + 1
    for i in range(n):
        w[i] = m[i, i].real
    return w, v, -1


def kernel_reduce(delta, coeff, double t):
    """Weighted sum of ``(e^{i d t} - 1)/(i d)`` over quadrature nodes."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(delta, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cf = np.ascontiguousarray(coeff, dtype=np.float64)
    cdef Py_ssize_t i, n = d.shape[0]
    cdef double x, sh, re, im, acc_re = 0.0, acc_im = 0.0
    for i in range(n):
        x = d[i] * t
        if fabs(x) < _SERIES_SWITCH:
            re = t * (1.0 - x * x / 6.0)
            im = t * (0.5 * x)
        else:
            sh = sin(0.5 * x)
            re = sin(x) / d[i]
            im = 2.0 * sh * sh / d[i]
        acc_re += cf[i] * re
        acc_im += cf[i] * im
    return complex(acc_re, acc_im)


def kernel_reduce_grid(delta, coeff_a, coeff_b, double t0, double dt, Py_ssize_t nt,
                       Py_ssize_t renorm_every=128):
    """Kernel reduction on a uniform time grid t0 + k*dt, two weight vectors.

    Propagates z = e^{i delta t} by multiplicative phase recurrence
    (re-initialized from exp every ``renorm_every`` steps) and folds the
    kernel into two complex dot products per time.  Nodes with |delta| ~ 0
    must be routed through the series path by the caller.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(delta, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ca = np.ascontiguousarray(coeff_a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cb = np.ascontiguousarray(coeff_b, dtype=np.float64)
    cdef Py_ssize_t i, k, n = d.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out_a = np.empty(nt, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out_b = np.empty(nt, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zi = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] si = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pai = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pbi = np.empty(n, dtype=np.float64)
    cdef double base_ai = 0.0, base_bi = 0.0
    cdef double t, xr, xi, acc_ar, acc_ai, acc_br, acc_bi

    for i in range(n):
        # 1/(i d) = -i/d, so coeff/(i d) is purely imaginary
        pai[i] = -ca[i] / d[i]
        pbi[i] = -cb[i] / d[i]
        base_ai += pai[i]
        base_bi += pbi[i]
        sr[i] = cos(d[i] * dt)
        si[i] = sin(d[i] * dt)

    for k in range(nt):
        acc_ar = 0.0
        acc_ai = 0.0
        acc_br = 0.0
        acc_bi = 0.0
        if k % renorm_every == 0:
            t = t0 + k * dt
            for i in range(n):
                xr = cos(d[i] * t)
                xi = sin(d[i] * t)
                zr[i] = xr
                zi[i] = xi
                acc_ar -= pai[i] * xi
                acc_ai += pai[i] * xr
                acc_br -= pbi[i] * xi
                acc_bi += pbi[i] * xr
        else:
            for i in range(n):
                xr = zr[i] * sr[i] - zi[i] * si[i]
                xi = zr[i] * si[i] + zi[i] * sr[i]
                zr[i] = xr
                zi[i] = xi
                acc_ar -= pai[i] * xi
                acc_ai += pai[i] * xr
                acc_br -= pbi[i] * xi
                acc_bi += pbi[i] * xr
        out_a[k] = complex(acc_ar, acc_ai - base_ai)
        out_b[k] = complex(acc_br, acc_bi - base_bi)
    return out_a, out_b
