"""Tolerance configuration shared by every boundary comparison in the toolkit."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack used by membership tests and verdicts.

    Attributes:
        psd: global boundary tolerance for eigenvalue-sign tests, witness
            membership and interval verdicts.
        asym: largest Hermitian asymmetry absorbed (symmetrized away) at
            matrix construction; anything above is rejected.
        density_trace: allowed deviation of a state's trace from one.
        density_eig: allowed magnitude of a state's most negative eigenvalue.
        coherence: off-diagonal modulus above which a state counts as
            coherent (deliberately looser than `psd`).
        rank: relative singular-value cutoff for numerical rank decisions.
    """

    psd: float = 1e-9
    asym: float = 1e-12
    density_trace: float = 1e-10
    density_eig: float = 1e-10
    coherence: float = 1e-8
    rank: float = 1e-8

    def with_psd(self, tol: float) -> "Tolerances":
        """Copy of this record with the global boundary tolerance replaced."""
        if tol < 0.0:
            raise ValueError("tolerance must be nonnegative")
        return replace(self, psd=tol)


DEFAULT = Tolerances()
