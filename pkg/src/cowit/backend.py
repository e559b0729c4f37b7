"""Eigensolver backend selection and shared post-processing.

The compiled Cython kernel is preferred; the pure-Python mirror is used when
the extension is missing or when ``COWIT_BACKEND=python`` is set. Both run
the same cyclic-Jacobi operation sequence, so results agree to the last bit
on a given platform.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NonConvergenceError

# Off-diagonal Frobenius norm (upper triangle) must fall below this multiple
# of the input Frobenius norm before a sweep counts as converged.
_OFF_FACTOR = 1e-14
_SWEEP_BUDGET_PER_DIM2 = 10

_requested = os.environ.get("COWIT_BACKEND", "").strip().lower() or None
if _requested not in (None, "cython", "python"):
    raise ImportError(f"COWIT_BACKEND must be 'cython' or 'python', got {_requested!r}")

if _requested == "python":
    from ._jacobi_py import jacobi_cycle as _jacobi_cycle

    BACKEND = "python"
else:
    try:
        from ._jacobi import jacobi_cycle as _jacobi_cycle

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from ._jacobi_py import jacobi_cycle as _jacobi_cycle

        BACKEND = "python"


def eigh_with_kernel(kernel, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Run one Jacobi diagonalization with an explicit kernel (benchmark hook).

    ``a`` must already be Hermitian. Returns eigenvalues sorted ascending and
    the matching eigenvector columns, each column's largest-modulus component
    made real and positive.
    """
    a = np.asarray(a, dtype=np.complex128)
    d = a.shape[0]
    ar = np.ascontiguousarray(a.real, dtype=np.float64).copy()
    ai = np.ascontiguousarray(a.imag, dtype=np.float64).copy()
    vr = np.eye(d, dtype=np.float64)
    vi = np.zeros((d, d), dtype=np.float64)
    threshold = _OFF_FACTOR * float(np.linalg.norm(a))
    sweeps = kernel(ar, ai, vr, vi, _SWEEP_BUDGET_PER_DIM2 * d * d, threshold)
    if sweeps < 0:
        raise NonConvergenceError(
            f"Jacobi sweeps exceeded {_SWEEP_BUDGET_PER_DIM2 * d * d} for dim {d}"
        )
    w = ar.diagonal().copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = (vr + 1j * vi)[:, order]
    anchors = np.argmax(np.abs(v), axis=0)
    for j in range(d):
        z = v[anchors[j], j]
        m = abs(z)
        if m > 0.0:
            v[:, j] *= z.conjugate() / m
    return w, v


def jacobi_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix with the selected backend."""
    return eigh_with_kernel(_jacobi_cycle, a)
