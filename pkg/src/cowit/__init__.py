"""cowit: coherence witnesses with prior knowledge of the observable's trace.

Validate witness candidates, classify detection intervals, synthesize
witnesses for coherent states, construct evading and common states, and
decide intersection/inclusion/equivalence questions through eigenvalue
certificates. All spectra run through a deterministic cyclic-Jacobi kernel
(compiled extension with a pure-Python fallback, see ``cowit.backend``).
"""

__version__ = "0.1.0"

from .backend import BACKEND
from .config import DEFAULT, Tolerances
from .errors import (
    ClassMismatchError,
    DimensionMismatchError,
    NonConvergenceError,
    NotAStateError,
    NotAWitnessError,
    NotCoherentError,
    NotHermitianError,
    NotNontrivialError,
    ParseError,
    ToolkitError,
    TooManyWitnessesError,
    UnsupportedClassError,
)
from .operators import (
    DensityMatrix,
    HermitianMatrix,
    SpectralDecomposition,
    dephase,
    expectation_value,
    identity,
    is_psd,
    min_eigenvalue,
    pure_state,
    sample_density,
    spectral_decompose,
    zeros,
)
from .criteria import (
    GEQ,
    GT,
    ZERO,
    IntervalSpec,
    Outcome,
    RegionStructure,
    TraceClass,
    Verdict,
    Witness,
    WitnessCheck,
    criteria_equivalent,
    detect,
    interval_of,
    parse_trace_class,
    region_structure,
    validate_witness,
    witness,
)
from .synthesis import (
    EvasionConstants,
    FamilyMember,
    PairWitnessFamily,
    ZeroExpectationPair,
    complete_family,
    evading_state,
    evasion_constants,
    pair_witness,
    synthesize_witness,
    zero_expectation_state,
)
from .analysis import (
    EquivalenceResult,
    IntersectionStatus,
    IntersectionVerdict,
    Relation,
    SimplexCertificate,
    SufficiencyReport,
    common_coherent_state,
    decide_intersection,
    disjointness_sufficient,
    orthocomplement_dimension,
    region_relation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
