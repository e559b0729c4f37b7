# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Cyclic Jacobi diagonalization kernel for dense complex Hermitian matrices.

Real and imaginary parts travel in separate float64 arrays so this kernel and
the pure-Python fallback in ``_jacobi_py`` execute the same IEEE-754 operation
sequence (no complex-arithmetic library calls, no FMA contraction).
"""

from libc.math cimport sqrt


def jacobi_cycle(double[:, ::1] ar, double[:, ::1] ai,
                 double[:, ::1] vr, double[:, ::1] vi,
                 int max_sweeps, double off_threshold):
    """Diagonalize ``ar + 1j*ai`` in place by cyclic Jacobi sweeps.

    ``vr + 1j*vi`` must start as the identity and accumulates the unitary
    whose columns are eigenvectors. Returns the number of sweeps used, or
    -1 if the off-diagonal norm did not drop below ``off_threshold`` within
    ``max_sweeps`` sweeps.
    """
    cdef int d = ar.shape[0]
    cdef int sweep, p, q, i
    cdef double thr2 = off_threshold * off_threshold
    cdef double off2, hr, hi, h2, h, ur, ui, app, aqq, tau, t, c, s
    cdef double xr, xi, wr, wi, yr, yi

    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off2 += ar[p, q] * ar[p, q] + ai[p, q] * ai[p, q]
        if off2 <= thr2:
            return sweep
        for p in range(d - 1):
            for q in range(p + 1, d):
                hr = ar[p, q]
                hi = ai[p, q]
                h2 = hr * hr + hi * hi
                if h2 == 0.0:
                    continue
                h = sqrt(h2)
                ur = hr / h
                ui = hi / h
                app = ar[p, p]
                aqq = ar[q, q]
                tau = (aqq - app) / (2.0 * h)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (sqrt(1.0 + tau * tau) - tau)
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # Rotate rows/columns p and q; conj(u)*A[i,q] expanded as (wr, wi).
                for i in range(d):
                    if i == p or i == q:
                        continue
                    xr = ar[i, p]
                    xi = ai[i, p]
                    wr = ur * ar[i, q] + ui * ai[i, q]
                    wi = ur * ai[i, q] - ui * ar[i, q]
                    yr = c * xr - s * wr
                    yi = c * xi - s * wi
                    ar[i, q] = s * xr + c * wr
                    ai[i, q] = s * xi + c * wi
                    ar[i, p] = yr
                    ai[i, p] = yi
                    ar[p, i] = yr
                    ai[p, i] = -yi
                    ar[q, i] = ar[i, q]
                    ai[q, i] = -ai[i, q]
                ar[p, p] = app - t * h
                ar[q, q] = aqq + t * h
                ai[p, p] = 0.0
                ai[q, q] = 0.0
                ar[p, q] = 0.0
                ai[p, q] = 0.0
                ar[q, p] = 0.0
                ai[q, p] = 0.0
                for i in range(d):
                    xr = vr[i, p]
                    xi = vi[i, p]
                    wr = ur * vr[i, q] + ui * vi[i, q]
                    wi = ur * vi[i, q] - ui * vr[i, q]
                    vr[i, p] = c * xr - s * wr
                    vi[i, p] = c * xi - s * wi
                    vr[i, q] = s * xr + c * wr
                    vi[i, q] = s * xi + c * wi
    return -1
