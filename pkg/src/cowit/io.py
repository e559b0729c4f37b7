"""Matrix documents and report serialization.

Documents are JSON with complex entries as [re, im] pairs, row-major. The
canonical form has sorted keys, two-space indentation, a trailing newline
and shortest-round-trip float formatting, so serialize(parse(doc)) is
byte-identical and reports reproduce bit-for-bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import ParseError, ToolkitError
from .operators import HermitianMatrix


@dataclass(frozen=True)
class MatrixDocument:
    """One matrix on disk: dimension, row-major [re, im] entries, optional label."""

    dim: int
    entries: np.ndarray  # (d, d) complex128
    label: str | None = None

    def to_dict(self) -> dict:
        doc = {
            "dim": self.dim,
            "entries": [[float(z.real), float(z.imag)] for z in self.entries.reshape(-1)],
        }
        if self.label is not None:
            doc["label"] = self.label
        return doc


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def matrix_to_document(matrix, label: str | None = None) -> MatrixDocument:
    m = matrix.data if isinstance(matrix, HermitianMatrix) else np.asarray(matrix, dtype=np.complex128)
    return MatrixDocument(m.shape[0], m, label)


def parse_matrix_document(text: str) -> MatrixDocument:
    """Parse and validate a matrix document; raises ParseError on any defect."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(raw) - {"dim", "entries", "label"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    if "dim" not in raw or "entries" not in raw:
        raise ParseError("document needs 'dim' and 'entries'")
    dim = raw["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"'dim' must be a positive integer, got {dim!r}")
    entries = raw["entries"]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ParseError(f"'entries' must hold dim^2 = {dim * dim} pairs")
    flat = np.empty(dim * dim, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
            or not all(math.isfinite(v) for v in pair)
        ):
            raise ParseError(f"entry {i} must be a finite [re, im] pair, got {pair!r}")
        flat[i] = complex(pair[0], pair[1])
    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("'label' must be a string")
    return MatrixDocument(dim, flat.reshape(dim, dim), label)


def load_matrix(path: str | Path, *, tols: Tolerances = DEFAULT) -> tuple[HermitianMatrix, str]:
    """Read a matrix file; the Hermitian invariant is part of the schema."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    doc = parse_matrix_document(text)
    try:
        matrix = HermitianMatrix(doc.entries, tols=tols)
    except ToolkitError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return matrix, doc.label if doc.label is not None else path.stem
