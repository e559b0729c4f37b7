"""Dense complex Hermitian linear algebra: construction, spectra, positivity,
dephasing and state sampling. Numerical substrate for every other module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import jacobi_eigh
from .config import DEFAULT, Tolerances
from .errors import DimensionMismatchError, NotAStateError, NotHermitianError


def _as_square_complex(entries) -> np.ndarray:
    a = np.asarray(entries, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitianError("matrix entries must be finite")
    return a


class HermitianMatrix:
    """A d x d complex Hermitian matrix, symmetrized at construction.

    Asymmetry up to ``tols.asym`` is absorbed by (W + W†)/2 so that I/O
    rounding never leaks downstream; anything larger is rejected as a bug.
    The stored array is read-only.
    """

    __slots__ = ("_data",)

    def __init__(self, entries, *, tols: Tolerances = DEFAULT):
        a = _as_square_complex(entries)
        asym = float(np.abs(a - a.conj().T).max())
        if asym > tols.asym:
            raise NotHermitianError(f"asymmetry {asym:.3e} exceeds tolerance {tols.asym:.1e}")
        h = (a + a.conj().T) / 2.0
        h.setflags(write=False)
        self._data = h

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    def trace(self) -> float:
        return float(np.trace(self._data).real)

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim})"


def as_matrix(value) -> np.ndarray:
    """Underlying complex array of a HermitianMatrix/DensityMatrix/ndarray."""
    if isinstance(value, HermitianMatrix):
        return value.data
    if isinstance(value, DensityMatrix):
        return value.data
    return HermitianMatrix(value).data


def identity(dim: int) -> HermitianMatrix:
    return HermitianMatrix(np.eye(dim, dtype=np.complex128))


def zeros(dim: int) -> HermitianMatrix:
    return HermitianMatrix(np.zeros((dim, dim), dtype=np.complex128))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted ascending with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def spectral_decompose(w) -> SpectralDecomposition:
    """Full eigensystem of a Hermitian matrix.

    Deterministic: cyclic sweep order, ascending eigenvalues with stable
    ties, and each eigenvector's largest-modulus component real-positive.
    """
    vals, vecs = jacobi_eigh(as_matrix(w))
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(vals, vecs)


def min_eigenvalue(w) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(spectral_decompose(w).eigenvalues[0])


def is_psd(w, tol: float | None = None, *, tols: Tolerances = DEFAULT) -> bool:
    """True iff the smallest eigenvalue is >= -tol (tol defaults to tols.psd)."""
    if tol is None:
        tol = tols.psd
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    return min_eigenvalue(w) >= -tol


def dephase(w) -> HermitianMatrix:
    """Diagonal part of an operator in the computational basis."""
    m = as_matrix(w)
    return HermitianMatrix(np.diag(np.diag(m)))


class DensityMatrix:
    """Unit-trace positive semidefinite Hermitian matrix."""

    __slots__ = ("_op",)

    def __init__(self, op, *, tols: Tolerances = DEFAULT):
        if not isinstance(op, HermitianMatrix):
            op = HermitianMatrix(op, tols=tols)
        tr = op.trace()
        if abs(tr - 1.0) > tols.density_trace:
            raise NotAStateError(f"trace {tr!r} is not 1 within {tols.density_trace:.1e}")
        lo = min_eigenvalue(op)
        if lo < -tols.density_eig:
            raise NotAStateError(f"minimum eigenvalue {lo:.3e} is negative beyond tolerance")
        self._op = op

    @property
    def op(self) -> HermitianMatrix:
        return self._op

    @property
    def data(self) -> np.ndarray:
        return self._op.data

    @property
    def dim(self) -> int:
        return self._op.dim

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def pure_state(vector) -> DensityMatrix:
    """Projector |v><v| onto a (normalized) state vector."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ValueError("zero vector")
    v = v / n
    return DensityMatrix(np.outer(v, v.conj()))


def sample_density(dim: int, seed: int) -> DensityMatrix:
    """Hilbert-Schmidt random state: G G†/Tr with G i.i.d. complex Gaussian."""
    if dim < 1:
        raise DimensionMismatchError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def expectation_value(w, rho) -> float:
    """Tr[W rho] for Hermitian W and rho (a real number)."""
    a = as_matrix(w)
    b = as_matrix(rho)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.einsum("ij,ji->", a, b).real)
