"""Exception hierarchy. All domain failures derive from ToolkitError."""


class ToolkitError(Exception):
    """Base class for all toolkit domain errors."""


class NotHermitianError(ToolkitError):
    """Input matrix is not Hermitian within the construction tolerance."""


class NonConvergenceError(ToolkitError):
    """Eigensolver exceeded its sweep budget (pathological input)."""


class DimensionMismatchError(ToolkitError):
    """Operands have incompatible shapes."""


class NotAStateError(ToolkitError):
    """Matrix violates the density-matrix invariants (trace one, PSD)."""


class NotAWitnessError(ToolkitError):
    """Matrix is not a witness candidate for the requested trace class."""


class NotNontrivialError(ToolkitError):
    """Witness has an empty detection region (no negative eigenvalue)."""


class NotCoherentError(ToolkitError):
    """State has no off-diagonal entry above the coherence threshold."""


class UnsupportedClassError(ToolkitError):
    """Operation is undefined for the requested trace class."""


class TooManyWitnessesError(ToolkitError):
    """Subset enumeration limit exceeded."""


class ClassMismatchError(ToolkitError):
    """Witnesses belong to different trace classes."""


class ParseError(ToolkitError):
    """Input document is malformed or violates its schema."""
