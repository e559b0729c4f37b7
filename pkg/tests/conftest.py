"""Shared generators for randomized tests."""

import numpy as np
import pytest

from cowit import GEQ, GT, TraceClass, min_eigenvalue


def rand_hermitian(rng, dim, scale=1.0):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (g + g.conj().T) / 2.0


def rand_witness_matrix(rng, dim, x, nontrivial=False, tol=1e-9):
    """Random member of the witness candidates of class ``x``.

    With ``nontrivial`` the matrix is resampled until its bottom eigenvalue
    clears -10*tol, so class checks stay robust under the global tolerance.
    """
    while True:
        h = rand_hermitian(rng, dim)
        off = h - np.diag(np.diag(h))
        diag = np.abs(rng.standard_normal(dim))
        if x.kind == "fixed":
            if x.value == 0.0:
                diag = np.zeros(dim)
            else:
                diag = diag * (x.value / diag.sum())
        elif x.kind == "gt":
            diag = diag + 0.05
        m = off + np.diag(diag.astype(np.complex128))
        if not nontrivial or min_eigenvalue(m) < -10.0 * tol:
            return m


def rand_incoherent(rng, dim):
    return np.diag(rng.dirichlet(np.ones(dim)).astype(np.complex128))


def hs_state(rng, dim):
    """Hilbert-Schmidt random density matrix drawn from an existing rng."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def rand_coherent(rng, dim, floor=1e-6):
    while True:
        rho = hs_state(rng, dim)
        mags = np.abs(rho - np.diag(np.diag(rho)))
        if mags.max() > floor:
            return rho


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


ALL_CLASSES = (TraceClass.fixed(0.0), TraceClass.fixed(1.0), GT, GEQ)
