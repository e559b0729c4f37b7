"""Constructive procedures: witnesses detecting a given coherent state, the
finitely-complete pair-witness families, zero-expectation interior states,
and evading states that defeat any finite witness set of the fixed-positive
or strictly-positive trace classes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .criteria import GEQ, GT, TraceClass, Witness, validate_witness, witness
from .errors import (
    DimensionMismatchError,
    NotAWitnessError,
    NotCoherentError,
    NotNontrivialError,
    UnsupportedClassError,
)
from .operators import (
    DensityMatrix,
    HermitianMatrix,
    as_matrix,
    dephase,
    expectation_value,
    pure_state,
    spectral_decompose,
)


def pair_witness(dim: int, j: int, k: int, part: str, sign: int = 1) -> HermitianMatrix:
    """Traceless pair witness on basis indices j < k (0-based).

    part "R": sign * (|j><k| + |k><j|)/2, whose expectation on rho is
    sign * Re(rho_jk). part "I": sign * i(|j><k| - |k><j|)/2, expectation
    sign * Im(rho_jk).
    """
    if not (0 <= j < k < dim):
        raise DimensionMismatchError(f"need 0 <= j < k < dim, got j={j}, k={k}, dim={dim}")
    if part not in ("R", "I") or sign not in (1, -1):
        raise ValueError(f"bad pair-witness label ({part!r}, {sign!r})")
    m = np.zeros((dim, dim), dtype=np.complex128)
    if part == "R":
        m[j, k] = 0.5 * sign
        m[k, j] = 0.5 * sign
    else:
        m[j, k] = 0.5j * sign
        m[k, j] = -0.5j * sign
    return HermitianMatrix(m)


@dataclass(frozen=True)
class FamilyMember:
    j: int
    k: int
    part: str
    sign: int
    matrix: HermitianMatrix

    @property
    def label(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}W{self.part}[{self.j},{self.k}]"


@dataclass(frozen=True)
class PairWitnessFamily:
    """Finite witness family covering every coherent state of one dimension."""

    dim: int
    trace_class: TraceClass
    members: tuple[FamilyMember, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def witnesses(self) -> list[Witness]:
        return [Witness(m.matrix, self.trace_class) for m in self.members]


def complete_family(dim: int, x: TraceClass) -> PairWitnessFamily:
    """The finite family detecting all coherent states of dimension ``dim``.

    Only the zero-trace and nonnegative-trace classes are finitely
    completable: zero trace needs one R and one I member per index pair
    (d(d-1) matrices, detection by nonzero expectation), nonnegative trace
    needs both signs as well (2d(d-1) matrices, detection by negative
    expectation).
    """
    if dim < 2:
        raise DimensionMismatchError("dim must be >= 2")
    zero_trace = x.kind == "fixed" and x.value == 0.0
    if not zero_trace and x != GEQ:
        raise UnsupportedClassError(
            f"class {x.label()} is not finitely completable; no finite family exists"
        )
    signs = (1,) if zero_trace else (1, -1)
    members = []
    for j in range(dim - 1):
        for k in range(j + 1, dim):
            for part in ("R", "I"):
                for sign in signs:
                    members.append(
                        FamilyMember(j, k, part, sign, pair_witness(dim, j, k, part, sign))
                    )
    return PairWitnessFamily(dim, x, tuple(members))


def _dominant_offdiagonal(rho: np.ndarray) -> tuple[int, int]:
    d = rho.shape[0]
    mags = np.abs(rho).copy()
    mags[np.tril_indices(d)] = -1.0
    flat = int(np.argmax(mags))  # row-major argmax = lowest (m, n) on ties
    return flat // d, flat % d


def synthesize_witness(rho: DensityMatrix, x: TraceClass, *,
                       tols: Tolerances = DEFAULT) -> Witness:
    """Construct a witness of class ``x`` that detects the coherent ``rho``.

    Picks the strongest off-diagonal entry (m, n), evaluates the four
    candidates +-WR[m,n], +-WI[m,n] and keeps the most negative expectation;
    the strictly-positive class then adds eps*I with eps = -Tr[W rho]/2, and
    a fixed positive trace r rescales that by r/Tr[W + eps*I] (giving
    expectation exactly -r/d).
    """
    r = rho.data
    m, n = _dominant_offdiagonal(r)
    if abs(r[m, n]) <= tols.coherence:
        raise NotCoherentError(
            f"largest off-diagonal modulus {abs(r[m, n]):.3e} is below the "
            f"coherence threshold {tols.coherence:.1e}"
        )
    re, im = float(r[m, n].real), float(r[m, n].imag)
    best = None
    for part, sign, e in (("R", 1, re), ("R", -1, -re), ("I", 1, im), ("I", -1, -im)):
        if best is None or e < best[2]:
            best = (part, sign, e)
    part, sign, e0 = best
    base = pair_witness(rho.dim, m, n, part, sign)

    if x.kind == "fixed" and x.value == 0.0:
        return witness(base, x, tols=tols)
    if x == GEQ:
        return witness(base, x, tols=tols)
    eps = -e0 / 2.0
    lifted = base.data + eps * np.eye(rho.dim)
    if x == GT:
        return witness(lifted, x, tols=tols)
    scaled = (x.value / (rho.dim * eps)) * lifted
    return witness(scaled, x, tols=tols)


@dataclass(frozen=True)
class ZeroExpectationPair:
    """A detecting projector and a positive-definite zero-expectation state."""

    detector: DensityMatrix
    interior: DensityMatrix


def zero_expectation_state(w, *, tols: Tolerances = DEFAULT) -> ZeroExpectationPair:
    """States pinned to a non-PSD witness candidate W.

    detector: bottom-eigenvector projector, expectation equal to the most
    negative eigenvalue. interior: with alpha the sum of positive and beta
    the magnitude-sum of negative eigenvalues, reweight eigenprojectors by
    beta/alpha/1 (positive/negative/null) and normalize; the two sums cancel
    exactly, giving a positive-definite state of zero expectation.
    """
    m = as_matrix(w)
    tol = tols.psd
    if float(np.min(np.diag(m).real)) < -tol:
        raise NotAWitnessError("negative diagonal entry: not a witness candidate")
    dec = spectral_decompose(m)
    vals, vecs = dec.eigenvalues, dec.eigenvectors
    if vals[0] >= -tol:
        raise NotAWitnessError("matrix is positive semidefinite; no state to construct")
    detector = pure_state(vecs[:, 0])

    alpha = float(vals[vals > 0.0].sum())
    beta = float(-vals[vals < 0.0].sum())
    weights = np.where(vals > 0.0, beta, np.where(vals < 0.0, alpha, 1.0))
    q = (vecs * weights) @ vecs.conj().T
    interior = DensityMatrix(q / np.trace(q).real, tols=tols)
    return ZeroExpectationPair(detector, interior)


@dataclass(frozen=True)
class EvasionConstants:
    """Ingredients of the evading-state construction.

    response_bound: max |Tr[(W - diag(W)) H]| over the witness set, plus one.
    min_trace: smallest witness trace (strictly-positive class only).
    epsilon: perturbation weight, always in (0, 1/d).
    perturbation: the fixed Hermitian direction |0><1| + |1><0|.
    """

    response_bound: float
    min_trace: float | None
    epsilon: float
    perturbation: HermitianMatrix


def _check_witness_set(witnesses, x: TraceClass, *, tols: Tolerances) -> int:
    if not witnesses:
        raise ValueError("witness list must be nonempty")
    dim = witnesses[0].dim
    for w in witnesses:
        if w.dim != dim:
            raise DimensionMismatchError("witnesses have mixed dimensions")
        if not validate_witness(w.matrix, x, tols=tols).nontrivial:
            raise NotNontrivialError(
                f"input is not a nontrivial witness of class {x.label()}"
            )
    return dim


def evasion_constants(witnesses: list[Witness], x: TraceClass, *,
                      tols: Tolerances = DEFAULT) -> EvasionConstants:
    """Constants for the evading state of a finite witness set."""
    fixed_positive = x.kind == "fixed" and x.value > 0.0
    if not fixed_positive and x != GT:
        raise UnsupportedClassError(
            f"class {x.label()} is finitely completable; its complete family "
            "admits no evading state"
        )
    dim = _check_witness_set(witnesses, x, tols=tols)
    if dim < 2:
        raise DimensionMismatchError("evasion needs dim >= 2")
    h = np.zeros((dim, dim), dtype=np.complex128)
    h[0, 1] = 1.0
    h[1, 0] = 1.0
    perturbation = HermitianMatrix(h)
    response = max(
        abs(expectation_value(w.matrix.data - dephase(w.matrix).data, h)) for w in witnesses
    )
    bound = response + 1.0
    if fixed_positive:
        eps = min(x.value / (2 * dim * bound), 1.0 / (2 * dim))
        min_trace = None
    else:
        min_trace = min(w.matrix.trace() for w in witnesses)
        eps = min(min_trace / (2 * dim * bound), 1.0 / (2 * dim))
    return EvasionConstants(bound, min_trace, eps, perturbation)


def evading_state(witnesses: list[Witness], x: TraceClass, *,
                  tols: Tolerances = DEFAULT) -> DensityMatrix:
    """A coherent state no witness in the set detects under class ``x``.

    Returns I/d + eps*H with H = |0><1| + |1><0|; eps is small enough that
    every expectation stays strictly inside the incoherent interval, proving
    the finite set incomplete.
    """
    consts = evasion_constants(witnesses, x, tols=tols)
    dim = witnesses[0].dim
    rho = np.eye(dim, dtype=np.complex128) / dim + consts.epsilon * consts.perturbation.data
    return DensityMatrix(rho, tols=tols)
