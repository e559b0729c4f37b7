"""Criterion taxonomy: trace classes, incoherent-expectation intervals,
witness membership, detection verdicts and detection-region shape.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    DimensionMismatchError,
    NotAWitnessError,
    NotNontrivialError,
    ParseError,
)
from .operators import (
    DensityMatrix,
    HermitianMatrix,
    as_matrix,
    expectation_value,
    min_eigenvalue,
    spectral_decompose,
)


@dataclass(frozen=True)
class TraceClass:
    """Prior knowledge about an observable's trace.

    ``kind`` is one of ``"fixed"`` (trace equals ``value`` >= 0),
    ``"gt"`` (trace strictly positive) or ``"geq"`` (trace nonnegative).
    """

    kind: str
    value: float | None = None

    def __post_init__(self):
        if self.kind == "fixed":
            if self.value is None or not math.isfinite(self.value) or self.value < 0.0:
                raise ValueError(f"fixed trace requires a finite value >= 0, got {self.value!r}")
        elif self.kind in ("gt", "geq"):
            if self.value is not None:
                raise ValueError(f"trace class {self.kind!r} carries no value")
        else:
            raise ValueError(f"unknown trace-class kind {self.kind!r}")

    @classmethod
    def fixed(cls, r: float) -> "TraceClass":
        return cls("fixed", float(r))

    @classmethod
    def strictly_positive(cls) -> "TraceClass":
        return cls("gt")

    @classmethod
    def nonnegative(cls) -> "TraceClass":
        return cls("geq")

    @property
    def is_fixed(self) -> bool:
        return self.kind == "fixed"

    def label(self) -> str:
        if self.kind == "fixed":
            return f"r={self.value!r}"
        return self.kind


GT = TraceClass.strictly_positive()
GEQ = TraceClass.nonnegative()
ZERO = TraceClass.fixed(0.0)


def parse_trace_class(flag: str) -> TraceClass:
    """Parse a CLI-style trace flag: '0', 'r=<float>', 'gt' or 'geq'."""
    flag = flag.strip()
    if flag == "0":
        return ZERO
    if flag == "gt":
        return GT
    if flag == "geq":
        return GEQ
    if flag.startswith("r="):
        try:
            r = float(flag[2:])
        except ValueError as exc:
            raise ParseError(f"bad trace value in flag {flag!r}") from exc
        if not math.isfinite(r) or r < 0.0:
            raise ParseError(f"trace value must be finite and >= 0, got {flag!r}")
        return TraceClass.fixed(r)
    raise ParseError(f"bad trace-class flag {flag!r}; expected 0, r=<float>, gt or geq")


@dataclass(frozen=True)
class IntervalSpec:
    """Attainable incoherent-expectation range for a trace class.

    ``kind`` is ``"segment"`` ([0, hi]), ``"ray"`` ([0, inf)) or ``"point"``
    ({0}).
    """

    kind: str
    lo: float = 0.0
    hi: float | None = None

    def contains(self, e: float, tol: float) -> bool:
        if self.kind == "segment":
            return -tol <= e <= self.hi + tol
        if self.kind == "ray":
            return e >= -tol
        return abs(e) <= tol


def interval_of(x: TraceClass) -> IntervalSpec:
    """Incoherent-expectation interval for a trace class."""
    if x.kind == "fixed":
        if x.value == 0.0:
            return IntervalSpec("point")
        return IntervalSpec("segment", 0.0, x.value)
    return IntervalSpec("ray")


class Outcome(enum.Enum):
    COMPATIBLE_INCOHERENT = "compatible_incoherent"
    DETECTED_BELOW = "detected_below"
    DETECTED_ABOVE = "detected_above"


@dataclass(frozen=True)
class Verdict:
    """Measured expectation plus its classification against the interval."""

    expectation: float
    outcome: Outcome

    @property
    def detected(self) -> bool:
        return self.outcome is not Outcome.COMPATIBLE_INCOHERENT


@dataclass(frozen=True)
class WitnessCheck:
    member: bool
    nontrivial: bool


def validate_witness(matrix, x: TraceClass, *, tols: Tolerances = DEFAULT) -> WitnessCheck:
    """Membership test for the witness candidates of class ``x``.

    member: nonnegative diagonal and the trace condition of the class.
    nontrivial: member with some eigenvalue below ``-tols.psd`` (nonempty
    detection region).
    """
    m = as_matrix(matrix)
    tol = tols.psd
    if float(np.min(np.diag(m).real)) < -tol:
        member = False
    else:
        tr = float(np.trace(m).real)
        if x.kind == "fixed":
            member = abs(tr - x.value) <= tol
        elif x.kind == "gt":
            member = tr > tol
        else:
            member = tr >= -tol
    nontrivial = member and min_eigenvalue(m) < -tol
    return WitnessCheck(member, nontrivial)


@dataclass(frozen=True)
class Witness:
    """A witness candidate: Hermitian matrix plus its trace class.

    Build through :func:`witness` so membership is checked.
    """

    matrix: HermitianMatrix
    trace_class: TraceClass

    @property
    def dim(self) -> int:
        return self.matrix.dim


def witness(matrix, x: TraceClass, *, tols: Tolerances = DEFAULT,
            require_nontrivial: bool = False) -> Witness:
    """Validated witness constructor.

    Raises NotAWitnessError when the matrix is outside the candidate set and
    NotNontrivialError when ``require_nontrivial`` is set but the matrix is
    positive semidefinite.
    """
    if not isinstance(matrix, HermitianMatrix):
        matrix = HermitianMatrix(matrix, tols=tols)
    check = validate_witness(matrix, x, tols=tols)
    if not check.member:
        raise NotAWitnessError(f"matrix is not a witness candidate for class {x.label()}")
    if require_nontrivial and not check.nontrivial:
        raise NotNontrivialError("witness is positive semidefinite; it detects nothing")
    return Witness(matrix, x)


def detect(w: Witness, rho: DensityMatrix, *, tols: Tolerances = DEFAULT) -> Verdict:
    """Classify Tr[W rho] against the incoherent interval of W's class.

    Boundary semantics: values within ``tols.psd`` of an interval endpoint
    stay CompatibleIncoherent, so rounding can never fake a detection.
    """
    if w.dim != rho.dim:
        raise DimensionMismatchError(f"witness dim {w.dim} vs state dim {rho.dim}")
    e = expectation_value(w.matrix, rho)
    tol = tols.psd
    x = w.trace_class
    if e < -tol:
        return Verdict(e, Outcome.DETECTED_BELOW)
    if x.kind == "fixed" and e > x.value + tol:
        return Verdict(e, Outcome.DETECTED_ABOVE)
    return Verdict(e, Outcome.COMPATIBLE_INCOHERENT)


class RegionStructure(enum.Enum):
    """Shape of a witness's detection region (its convex lobes)."""

    EMPTY = "empty"
    SINGLE_LOBE_BELOW = "single_lobe_below"
    SINGLE_LOBE_ABOVE = "single_lobe_above"
    TWO_LOBES = "two_lobes"


def region_structure(w: Witness, *, tols: Tolerances = DEFAULT) -> RegionStructure:
    """Which detection lobes are nonempty.

    For a fixed trace r > 0 the lower lobe is nonempty iff W is not PSD and
    the upper lobe iff r*I - W is not PSD. For the ray classes only the
    lower lobe can exist. For fixed trace 0 any nonzero candidate detects on
    both sides (eigenvalues of both signs), reported as TWO_LOBES; the name
    for this case is a toolkit convention.
    """
    m = as_matrix(w.matrix)
    tol = tols.psd
    x = w.trace_class
    vals = spectral_decompose(m).eigenvalues
    lower = vals[0] < -tol
    if x.kind in ("gt", "geq"):
        return RegionStructure.SINGLE_LOBE_BELOW if lower else RegionStructure.EMPTY
    if x.value == 0.0:
        if lower and vals[-1] > tol:
            return RegionStructure.TWO_LOBES
        return RegionStructure.EMPTY
    upper = min_eigenvalue(x.value * np.eye(w.dim) - m) < -tol
    if lower and upper:
        return RegionStructure.TWO_LOBES
    if lower:
        return RegionStructure.SINGLE_LOBE_BELOW
    if upper:
        return RegionStructure.SINGLE_LOBE_ABOVE
    return RegionStructure.EMPTY


def _criterion_class(x: TraceClass) -> str:
    if x.kind == "fixed":
        return "C" if x.value == 0.0 else "A"
    return "B1" if x.kind == "gt" else "B2"


def criteria_equivalent(x: TraceClass, y: TraceClass) -> bool:
    """True iff the two trace classes yield equivalent detection criteria.

    There are exactly four inequivalent classes: fixed positive trace,
    strictly-positive trace, nonnegative trace, and zero trace. Any two
    fixed positive traces r, s are linked by the rescaling W -> (s/r) W.
    """
    return _criterion_class(x) == _criterion_class(y)
