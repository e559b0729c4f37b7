"""Decision procedures over witness sets: empty-intersection certificates,
common-coherent-state construction for the zero-trace class, detection-region
inclusion/equivalence, and the dimension of the zero-expectation span.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .backend import jacobi_eigh
from .config import DEFAULT, Tolerances
from .criteria import GEQ, GT, TraceClass, Witness, detect, validate_witness
from .errors import (
    ClassMismatchError,
    DimensionMismatchError,
    NotNontrivialError,
    TooManyWitnessesError,
    UnsupportedClassError,
)
from .operators import (
    DensityMatrix,
    HermitianMatrix,
    expectation_value,
    pure_state,
    sample_density,
    spectral_decompose,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort algorithm)."""
    n = v.size
    u = np.sort(v)[::-1]
    css = (np.cumsum(u) - 1.0) / np.arange(1, n + 1)
    k = np.nonzero(u > css)[0][-1]
    return np.maximum(v - css[k], 0.0)


def _min_eig_pair(m: np.ndarray) -> tuple[float, np.ndarray]:
    # Internal fast path: m is Hermitian by construction (real-weighted
    # combinations of Hermitian matrices), so skip re-validation.
    vals, vecs = jacobi_eigh(m)
    return float(vals[0]), vecs[:, 0]


def _golden_max(f, lo: float, hi: float, width: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _simplex_max_min_eig(mats: np.ndarray, *, floor: float = 0.0, seed: int = 0,
                         restarts: int = 20, iterations: int = 2000,
                         stop_above: float | None = None) -> tuple[np.ndarray, float]:
    """Maximize the minimum eigenvalue of sum_i t_i W_i over the simplex.

    The objective is concave. With two matrices the one-dimensional problem
    is solved by golden-section line search directly; otherwise projected
    subgradient ascent with random restarts runs first and pairwise
    golden-section passes polish the best point. ``floor`` restricts to
    weights >= floor (open-simplex approximation). Returns the weights on
    the original simplex and the exactly re-evaluated objective.
    """
    n = len(mats)
    if not 0.0 <= n * floor < 1.0:
        raise ValueError(f"floor {floor!r} infeasible for {n} weights")
    span = 1.0 - n * floor
    base = floor * mats.sum(axis=0)

    def combo(u: np.ndarray) -> np.ndarray:
        return base + span * np.tensordot(u, mats, axes=1)

    def value(u: np.ndarray) -> float:
        return _min_eig_pair(combo(u))[0]

    if n == 1:
        t = np.ones(1)
        return t, value(t)

    def polish(u: np.ndarray, best: float) -> tuple[np.ndarray, float]:
        # Gauss-Seidel over coordinate pairs; each pair is a concave
        # one-dimensional slice solved by golden section.
        for _ in range(4):
            improved = False
            for i in range(n - 1):
                for j in range(i + 1, n):
                    mass = u[i] + u[j]
                    if mass <= 0.0:
                        continue

                    def slice_val(s, i=i, j=j, mass=mass, u=u):
                        cand = u.copy()
                        cand[i] = s * mass
                        cand[j] = (1.0 - s) * mass
                        return value(cand)

                    s_star, v_star = _golden_max(slice_val, 0.0, 1.0, 1e-12)
                    if v_star > best + 1e-13:
                        u = u.copy()
                        u[i] = s_star * mass
                        u[j] = (1.0 - s_star) * mass
                        best = v_star
                        improved = True
            if not improved:
                break
        return u, best

    if n == 2:
        s_star, v_star = _golden_max(
            lambda s: value(np.array([s, 1.0 - s])), 0.0, 1.0, 1e-12
        )
        u_best = np.array([s_star, 1.0 - s_star])
        best = v_star
    else:
        rng = np.random.default_rng(seed)
        scale = max(float(np.linalg.norm(m)) for m in mats)
        step0 = 1.0 / max(scale, 1.0)
        u_best, best = None, -np.inf
        for restart in range(restarts):
            u = np.full(n, 1.0 / n) if restart == 0 else rng.dirichlet(np.ones(n))
            for k in range(1, iterations + 1):
                val, vec = _min_eig_pair(combo(u))
                if val > best:
                    best, u_best = val, u.copy()
                grad = span * np.einsum("i,nij,j->n", vec.conj(), mats, vec).real
                u = _project_to_simplex(u + (step0 / math.sqrt(k)) * grad)
                if stop_above is not None and best >= stop_above:
                    break
            if stop_above is not None and best >= stop_above:
                break
        if stop_above is None or best < stop_above:
            u_best, best = polish(u_best, best)

    t = floor + span * u_best
    t = np.maximum(t, 0.0)
    t /= t.sum()
    final = _min_eig_pair(np.tensordot(t, mats, axes=1))[0]
    return t, final


@dataclass(frozen=True)
class SimplexCertificate:
    """Convex weights whose witness combination is PSD, proving the
    detection regions share no state."""

    weights: np.ndarray
    combined_min_eigenvalue: float


class IntersectionStatus(enum.Enum):
    PROVED_EMPTY = "proved_empty"
    FOUND_COMMON_STATE = "found_common_state"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class IntersectionVerdict:
    status: IntersectionStatus
    certificate: SimplexCertificate | None = None
    state: DensityMatrix | None = None


def _validated_stack(witnesses: list[Witness], x: TraceClass, *,
                     tols: Tolerances) -> np.ndarray:
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
    return np.stack([w.matrix.data for w in witnesses])


def decide_intersection(witnesses: list[Witness], x: TraceClass, *, seed: int = 0,
                        restarts: int = 20, iterations: int = 2000,
                        search_samples: int = 2000,
                        tols: Tolerances = DEFAULT) -> IntersectionVerdict:
    """Decide whether the detection regions of ray-class witnesses intersect.

    Maximizes the minimum eigenvalue of the convex witness combinations. A
    maximum >= -tol yields a PSD certificate (empty intersection). Otherwise
    the bottom eigenvector of the optimal combination detects every witness
    at an interior optimum and is returned as a common state, with seeded
    random search as fallback. If neither side certifies, the verdict is
    honest: undecided.
    """
    if x not in (GT, GEQ):
        raise UnsupportedClassError(
            "intersection certificates apply to the ray classes only; for a "
            "fixed positive trace use disjointness_sufficient"
        )
    mats = _validated_stack(witnesses, x, tols=tols)
    tol = tols.psd
    t, val = _simplex_max_min_eig(
        mats, seed=seed, restarts=restarts, iterations=iterations, stop_above=10 * tol
    )
    if val >= -tol:
        t.setflags(write=False)
        return IntersectionVerdict(
            IntersectionStatus.PROVED_EMPTY, certificate=SimplexCertificate(t, val)
        )

    def all_detect(rho: DensityMatrix) -> bool:
        return all(detect(w, rho, tols=tols).detected for w in witnesses)

    _, vec = _min_eig_pair(np.tensordot(t, mats, axes=1))
    candidate = pure_state(vec)
    if all_detect(candidate):
        return IntersectionVerdict(IntersectionStatus.FOUND_COMMON_STATE, state=candidate)
    dim = witnesses[0].dim
    rng = np.random.default_rng(seed)
    for _ in range(search_samples):
        rho = sample_density(dim, int(rng.integers(0, 2**63)))
        if all_detect(rho):
            return IntersectionVerdict(IntersectionStatus.FOUND_COMMON_STATE, state=rho)
    return IntersectionVerdict(IntersectionStatus.UNDECIDED)


@dataclass(frozen=True)
class SufficiencyReport:
    sufficient_condition_holds: bool
    subsets_checked: int


def disjointness_sufficient(witnesses: list[Witness], x: TraceClass, *, seed: int = 0,
                            restarts: int = 20, iterations: int = 2000,
                            weight_floor: float = 1e-6,
                            tols: Tolerances = DEFAULT) -> SufficiencyReport:
    """Sufficient emptiness test for fixed positive trace r.

    Every subset of at least ceil(n/2) witnesses must admit strictly
    positive simplex weights (floored at ``weight_floor``) whose combination
    is PSD; if so, no state is detected by all n witnesses at once. The
    condition is sufficient only, never necessary.
    """
    if not (x.kind == "fixed" and x.value > 0.0):
        raise UnsupportedClassError("the subset condition applies to fixed positive traces")
    n = len(witnesses)
    if n > 20:
        raise TooManyWitnessesError(f"subset enumeration capped at 20 witnesses, got {n}")
    mats = _validated_stack(witnesses, x, tols=tols)
    tol = tols.psd
    half = (n + 1) // 2
    checked = 0
    for size in range(half, n + 1):
        for subset in itertools.combinations(range(n), size):
            checked += 1
            _, val = _simplex_max_min_eig(
                mats[list(subset)], floor=weight_floor, seed=seed,
                restarts=restarts, iterations=iterations, stop_above=10 * tol,
            )
            if val < -tol:
                return SufficiencyReport(False, checked)
    return SufficiencyReport(True, checked)


def _bottom_state(matrix: HermitianMatrix) -> DensityMatrix:
    return pure_state(spectral_decompose(matrix).eigenvectors[:, 0])


def common_coherent_state(witnesses: list[Witness], *, grid_points: int = 1024,
                          grid_shift: float = 0.0,
                          tols: Tolerances = DEFAULT) -> DensityMatrix:
    """A state detected by every zero-trace witness in the set.

    Induction on the set: keep a state with nonzero expectations for the
    prefix, then mix it with the next witness's bottom-eigenvector state,
    choosing the mixing weight on an interior grid to maximize the smallest
    expectation magnitude (each expectation is affine in the weight, so it
    has at most one root and a good weight always exists). A final mix with
    the maximally mixed state walks the infinite family of common states;
    perturbing the grid therefore perturbs the output.
    """
    if not -0.5 < grid_shift < 0.5:
        raise ValueError("grid_shift must lie in (-0.5, 0.5)")
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    x = TraceClass.fixed(0.0)
    mats = _validated_stack(witnesses, x, tols=tols)
    lams = (np.arange(grid_points) + 0.5 + grid_shift) / grid_points

    rho = _bottom_state(witnesses[0].matrix).data
    for k in range(1, len(mats)):
        sigma = _bottom_state(witnesses[k].matrix).data
        a = np.einsum("nij,ji->n", mats[: k + 1], rho).real
        b = np.einsum("nij,ji->n", mats[: k + 1], sigma).real
        margins = np.abs(np.outer(lams, a) + np.outer(1.0 - lams, b)).min(axis=1)
        lam = lams[int(np.argmax(margins))]
        rho = lam * rho + (1.0 - lam) * sigma

    # Mixing toward I/d scales every expectation by lam and stays common;
    # the largest interior grid point keeps the margins maximal.
    dim = witnesses[0].dim
    rho = lams[-1] * rho + (1.0 - lams[-1]) * np.eye(dim) / dim
    state = DensityMatrix(rho, tols=tols)
    exps = np.einsum("nij,ji->n", mats, state.data).real
    if np.abs(exps).min() <= tols.psd:
        raise NotNontrivialError("constructed state lost its margin; degenerate input")
    return state


class Relation(enum.Enum):
    EQUAL = "equal"
    INCLUDED = "included"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class EquivalenceResult:
    """Relation between the detection regions of two witnesses.

    ``scale`` carries the proportionality factor (equality) or the positive
    coefficient a (inclusion, with ``psd_remainder`` the PSD part P of
    W2 = a W1 + P).
    """

    relation: Relation
    scale: float | None = None
    psd_remainder: HermitianMatrix | None = None


def _lstsq_scale(m1: np.ndarray, m2: np.ndarray) -> float:
    denom = float(np.vdot(m1, m1).real)
    return float(np.vdot(m1, m2).real) / denom


def _max_shifted_min_eig(m1: np.ndarray, m2: np.ndarray, tol: float) -> tuple[float, float]:
    """Maximize a -> min-eig(W2 - a W1) over a >= tol (concave, unimodal)."""

    def g(a: float) -> float:
        return _min_eig_pair(m2 - a * m1)[0]

    top1 = float(spectral_decompose(HermitianMatrix(m1)).eigenvalues[-1])
    hi = (abs(np.trace(m2).real) + float(np.linalg.norm(m2))) / max(tol, top1)
    hi = max(hi, 2 * tol)
    while g(2 * hi) >= g(hi):
        hi *= 2.0
        if hi > 1e12:
            break
    return _golden_max(g, tol, 2 * hi, 1e-10)


def region_relation(w1: Witness, w2: Witness, x: TraceClass | None = None, *,
                    tols: Tolerances = DEFAULT) -> EquivalenceResult:
    """Equality/inclusion relation between two detection regions.

    Ray classes: equal iff W2 = r W1 with r > 0; included (region of W2
    inside region of W1) iff W2 = a W1 + P with a > 0 and P PSD, decided by
    maximizing min-eig(W2 - a W1) over a. Zero trace: equal iff W2 = r W1
    with any nonzero real r; distinct witnesses are never nested. Fixed
    positive trace r: equal iff W1 = W2, or (dimension 2 only) W1 + W2 = r*I;
    no inclusion criterion is known for this class, so anything else is
    reported incomparable.
    """
    if x is None:
        x = w1.trace_class
    if w1.trace_class != x or w2.trace_class != x:
        raise ClassMismatchError("witnesses must share the queried trace class")
    if w1.dim != w2.dim:
        raise DimensionMismatchError("witnesses have different dimensions")
    for w in (w1, w2):
        if not validate_witness(w.matrix, x, tols=tols).nontrivial:
            raise NotNontrivialError("both witnesses must be nontrivial")
    m1, m2 = w1.matrix.data, w2.matrix.data
    tol = tols.psd

    if x.kind in ("gt", "geq"):
        r = _lstsq_scale(m1, m2)
        if r > 0.0 and float(np.abs(m2 - r * m1).max()) <= tol:
            return EquivalenceResult(Relation.EQUAL, scale=r)
        a_star, g_star = _max_shifted_min_eig(m1, m2, tol)
        if g_star >= -tol:
            return EquivalenceResult(
                Relation.INCLUDED, scale=a_star,
                psd_remainder=HermitianMatrix(m2 - a_star * m1),
            )
        return EquivalenceResult(Relation.INCOMPARABLE)

    if x.value == 0.0:
        r = _lstsq_scale(m1, m2)
        if abs(r) > tol and float(np.abs(m2 - r * m1).max()) <= tol:
            return EquivalenceResult(Relation.EQUAL, scale=r)
        return EquivalenceResult(Relation.INCOMPARABLE)

    if float(np.abs(m2 - m1).max()) <= tol:
        return EquivalenceResult(Relation.EQUAL, scale=1.0)
    if w1.dim == 2:
        if float(np.abs(m1 + m2 - x.value * np.eye(2)).max()) <= tol:
            return EquivalenceResult(Relation.EQUAL)
    return EquivalenceResult(Relation.INCOMPARABLE)


def _herm_to_coords(m: np.ndarray) -> np.ndarray:
    d = m.shape[0]
    iu = np.triu_indices(d, 1)
    sq2 = math.sqrt(2.0)
    return np.concatenate([np.diag(m).real, sq2 * m[iu].real, sq2 * m[iu].imag])


def _coords_to_herm(c: np.ndarray, d: int) -> np.ndarray:
    iu = np.triu_indices(d, 1)
    n_off = iu[0].size
    m = np.zeros((d, d), dtype=np.complex128)
    m[np.diag_indices(d)] = c[:d]
    off = (c[d:d + n_off] + 1j * c[d + n_off:]) / math.sqrt(2.0)
    m[iu] = off
    m[(iu[1], iu[0])] = off.conj()
    return m


def orthocomplement_dimension(w: Witness, *, tols: Tolerances = DEFAULT) -> int:
    """Complex dimension of the span of zero-expectation states of W.

    Constructs d^2 - 1 states by mixing the positive-definite
    zero-expectation interior state with small multiples of an orthonormal
    basis of the trace-orthogonal Hermitian space, then counts the numerical
    rank of their vectorizations. The result equals d^2 - 1 for every
    nontrivial witness.
    """
    from .synthesis import zero_expectation_state

    if not validate_witness(w.matrix, w.trace_class, tols=tols).nontrivial:
        raise NotNontrivialError("witness must be nontrivial")
    d = w.dim
    rho = zero_expectation_state(w.matrix, tols=tols).interior.data

    w_coords = _herm_to_coords(w.matrix.data)
    w_coords /= np.linalg.norm(w_coords)
    # QR with the witness direction first: remaining columns form an
    # orthonormal basis of its orthogonal complement.
    stack = np.column_stack([w_coords, np.eye(d * d)])
    q, _ = np.linalg.qr(stack)
    mu = float(spectral_decompose(HermitianMatrix(rho)).eigenvalues[0])
    eps = 0.5 * mu / (mu + 1.0)

    rows = [rho.reshape(-1)]
    for col in range(1, d * d):
        h = _coords_to_herm(q[:, col], d)
        p = eps * h + (1.0 - eps) * rho
        rows.append((p / np.trace(p).real).reshape(-1))
    sv = np.linalg.svd(np.stack(rows), compute_uv=False)
    return int(np.sum(sv > tols.rank * sv[0]))
