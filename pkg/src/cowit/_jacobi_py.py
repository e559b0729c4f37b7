"""Pure-Python fallback for the cyclic Jacobi kernel.

Statement-for-statement mirror of ``_jacobi.pyx`` (same IEEE-754 operation
order), used when the compiled extension is unavailable or when the
environment forces ``COWIT_BACKEND=python``. Slow but exact.
"""

from math import sqrt


def jacobi_cycle(ar, ai, vr, vi, max_sweeps, off_threshold):
    """See ``cowit._jacobi.jacobi_cycle``; operates on float64 2-D arrays."""
    d = ar.shape[0]
    thr2 = off_threshold * off_threshold
    # Nested lists of Python floats: much faster than ndarray scalar indexing.
    a_r = ar.tolist()
    a_i = ai.tolist()
    v_r = vr.tolist()
    v_i = vi.tolist()

    result = -1
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(d - 1):
            rp_r = a_r[p]
            rp_i = a_i[p]
            for q in range(p + 1, d):
                off2 += rp_r[q] * rp_r[q] + rp_i[q] * rp_i[q]
        if off2 <= thr2:
            result = sweep
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                hr = a_r[p][q]
                hi = a_i[p][q]
                h2 = hr * hr + hi * hi
                if h2 == 0.0:
                    continue
                h = sqrt(h2)
                ur = hr / h
                ui = hi / h
                app = a_r[p][p]
                aqq = a_r[q][q]
                tau = (aqq - app) / (2.0 * h)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (sqrt(1.0 + tau * tau) - tau)
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(d):
                    if i == p or i == q:
                        continue
                    ri_r = a_r[i]
                    ri_i = a_i[i]
                    xr = ri_r[p]
                    xi = ri_i[p]
                    wr = ur * ri_r[q] + ui * ri_i[q]
                    wi = ur * ri_i[q] - ui * ri_r[q]
                    yr = c * xr - s * wr
                    yi = c * xi - s * wi
                    ri_r[q] = s * xr + c * wr
                    ri_i[q] = s * xi + c * wi
                    ri_r[p] = yr
                    ri_i[p] = yi
                    a_r[p][i] = yr
                    a_i[p][i] = -yi
                    a_r[q][i] = ri_r[q]
                    a_i[q][i] = -ri_i[q]
                a_r[p][p] = app - t * h
                a_r[q][q] = aqq + t * h
                a_i[p][p] = 0.0
                a_i[q][q] = 0.0
                a_r[p][q] = 0.0
                a_i[p][q] = 0.0
                a_r[q][p] = 0.0
                a_i[q][p] = 0.0
                for i in range(d):
                    vi_r = v_r[i]
                    vi_i = v_i[i]
                    xr = vi_r[p]
                    xi = vi_i[p]
                    wr = ur * vi_r[q] + ui * vi_i[q]
                    wi = ur * vi_i[q] - ui * vi_r[q]
                    vi_r[p] = c * xr - s * wr
                    vi_i[p] = c * xi - s * wi
                    vi_r[q] = s * xr + c * wr
                    vi_i[q] = s * xi + c * wi

    ar[:] = a_r
    ai[:] = a_i
    vr[:] = v_r
    vi[:] = v_i
    return result
