"""Trace classes, intervals, witness membership, verdicts, region shapes."""

import numpy as np
import pytest

from cowit import (
    GEQ,
    GT,
    ZERO,
    DensityMatrix,
    DimensionMismatchError,
    NotAWitnessError,
    NotNontrivialError,
    Outcome,
    ParseError,
    RegionStructure,
    TraceClass,
    criteria_equivalent,
    detect,
    interval_of,
    parse_trace_class,
    pure_state,
    region_structure,
    spectral_decompose,
    validate_witness,
    witness,
)

from conftest import ALL_CLASSES, rand_incoherent, rand_witness_matrix

F1 = TraceClass.fixed(1.0)

W_TRACE_PRIOR = np.array([[0.75, 0.5], [0.5, 0.25]])  # x=1, r=0.25 example
W1_2x2 = np.array([[1.0, -0.5], [-0.5, 0.0]])
W2_2x2 = np.array([[0.0, 0.5], [0.5, 1.0]])
RHO_2x2 = np.array([[0.25, 1 / 3], [1 / 3, 0.75]])


def test_trace_class_validation():
    with pytest.raises(ValueError):
        TraceClass.fixed(-1.0)
    with pytest.raises(ValueError):
        TraceClass("fixed")
    with pytest.raises(ValueError):
        TraceClass("gt", 1.0)
    assert TraceClass.fixed(2.0).value == 2.0


def test_parse_trace_class():
    assert parse_trace_class("0") == ZERO
    assert parse_trace_class("r=0.25") == TraceClass.fixed(0.25)
    assert parse_trace_class("gt") == GT
    assert parse_trace_class("geq") == GEQ
    for bad in ("r=", "r=-1", "r=nan", "1", "fixed"):
        with pytest.raises(ParseError):
            parse_trace_class(bad)


def test_interval_of():
    seg = interval_of(F1)
    assert (seg.kind, seg.lo, seg.hi) == ("segment", 0.0, 1.0)
    assert interval_of(GEQ).kind == "ray"
    assert interval_of(GT).kind == "ray"
    assert interval_of(ZERO).kind == "point"


def test_validate_witness_examples():
    chk = validate_witness(W_TRACE_PRIOR, F1)
    assert chk.member and chk.nontrivial
    chk = validate_witness(np.eye(3) / 3, F1)
    assert chk.member and not chk.nontrivial
    rank_one_plus_flip = np.array([[1.0, 1.0], [1.0, 0.0]])
    chk = validate_witness(rank_one_plus_flip, GT)
    assert chk.member and chk.nontrivial
    golden = np.sqrt(5.0)
    assert np.allclose(
        spectral_decompose(rank_one_plus_flip).eigenvalues,
        [(1 - golden) / 2, (1 + golden) / 2],
    )
    # wrong trace / negative diagonal
    assert not validate_witness(np.eye(2), F1).member
    assert not validate_witness(np.diag([-0.5, 1.5]), F1).member


def test_witness_factory_errors():
    with pytest.raises(NotAWitnessError):
        witness(np.eye(2), F1)
    with pytest.raises(NotNontrivialError):
        witness(np.eye(2) / 2, F1, require_nontrivial=True)


def test_detect_soundness_on_incoherent(rng):
    for x in ALL_CLASSES:
        for _ in range(50):
            dim = int(rng.integers(2, 7))
            w = witness(rand_witness_matrix(rng, dim, x), x)
            delta = DensityMatrix(rand_incoherent(rng, dim))
            assert detect(w, delta).outcome is Outcome.COMPATIBLE_INCOHERENT


def test_detect_above_via_top_eigenvector():
    w = witness(W_TRACE_PRIOR, F1)
    dec = spectral_decompose(w.matrix)
    v = detect(w, pure_state(dec.eigenvectors[:, -1]))
    assert v.outcome is Outcome.DETECTED_ABOVE
    assert v.expectation == pytest.approx(1.0 - dec.eigenvalues[0], abs=1e-9)


def test_detect_pair_example():
    rho = DensityMatrix(RHO_2x2)
    v1 = detect(witness(W1_2x2, F1), rho)
    assert v1.outcome is Outcome.DETECTED_BELOW
    assert v1.expectation == pytest.approx(-1 / 12, abs=1e-9)
    v2 = detect(witness(W2_2x2, F1), rho)
    assert v2.outcome is Outcome.DETECTED_ABOVE
    assert v2.expectation == pytest.approx(13 / 12, abs=1e-9)


def test_detect_dimension_mismatch():
    w = witness(W1_2x2, F1)
    with pytest.raises(DimensionMismatchError):
        detect(w, DensityMatrix(np.eye(3) / 3))


def test_boundary_semantics():
    # expectations within tol of an endpoint never count as detections
    w = witness(np.diag([1.0, 0.0]).astype(complex), F1)
    delta = DensityMatrix(np.diag([1.0, 0.0]))  # expectation exactly 1
    assert detect(w, delta).outcome is Outcome.COMPATIBLE_INCOHERENT
    delta = DensityMatrix(np.diag([0.0, 1.0]))  # expectation exactly 0
    assert detect(w, delta).outcome is Outcome.COMPATIBLE_INCOHERENT


def test_interval_endpoints_tight(rng):
    # basis projectors onto zero / max diagonal reach both endpoints exactly
    m = rand_witness_matrix(rng, 3, F1)
    m[2, :] = 0.0
    m[:, 2] = 0.0  # zero diagonal entry at index 2, trace now < 1: rescale
    m *= 1.0 / np.trace(m).real
    w = witness(m, F1)
    lo = detect(w, DensityMatrix(np.diag([0.0, 0.0, 1.0])))
    assert lo.expectation == pytest.approx(0.0, abs=1e-15)
    k = int(np.argmax(np.diag(m).real))
    hi_state = np.zeros(3)
    hi_state[k] = 1.0
    hi = detect(w, DensityMatrix(np.diag(hi_state)))
    assert hi.expectation == pytest.approx(np.diag(m).real.max(), abs=1e-15)
    assert hi.outcome is Outcome.COMPATIBLE_INCOHERENT


def test_region_structure_cases():
    psd = witness(np.diag([0.6, 0.4]).astype(complex), F1)
    assert region_structure(psd) is RegionStructure.EMPTY
    assert region_structure(witness(W1_2x2, F1)) is RegionStructure.TWO_LOBES
    assert region_structure(witness(W1_2x2, GEQ)) is RegionStructure.SINGLE_LOBE_BELOW
    assert region_structure(witness(np.eye(2), GEQ)) is RegionStructure.EMPTY
    wr = np.array([[0.0, 0.5], [0.5, 0.0]])
    assert region_structure(witness(wr, ZERO)) is RegionStructure.TWO_LOBES


def test_upper_lobe_implies_lower_lobe(rng):
    # For exact members of a fixed positive trace class, a PSD matrix with
    # trace r cannot have an eigenvalue above r, so an upper lobe always
    # comes with a lower one: a single upper lobe never occurs.
    for _ in range(100):
        m = rand_witness_matrix(rng, 3, F1)
        shape = region_structure(witness(m, F1))
        assert shape is not RegionStructure.SINGLE_LOBE_ABOVE


def test_lobe_convexity_for_ray_classes(rng):
    # two DetectedBelow states mix to DetectedBelow for the ray classes
    for _ in range(20):
        m = rand_witness_matrix(rng, 3, GEQ, nontrivial=True)
        w = witness(m, GEQ)
        dec = spectral_decompose(w.matrix)
        rho = pure_state(dec.eigenvectors[:, 0])
        sigma_raw = 0.9 * rho.data + 0.1 * np.eye(3) / 3
        sigma = DensityMatrix(sigma_raw)
        if detect(w, sigma).outcome is not Outcome.DETECTED_BELOW:
            continue
        for t in (0.25, 0.5, 0.75):
            mix = DensityMatrix(t * rho.data + (1 - t) * sigma.data)
            assert detect(w, mix).outcome is Outcome.DETECTED_BELOW


def test_two_lobe_nonconvexity():
    # a lower-lobe and an upper-lobe state always straddle the interval
    w = witness(W1_2x2, F1)
    dec = spectral_decompose(w.matrix)
    lower = pure_state(dec.eigenvectors[:, 0])
    upper = pure_state(dec.eigenvectors[:, -1])
    e_lo = detect(w, lower).expectation
    e_hi = detect(w, upper).expectation
    assert e_lo < 0 < 1 < e_hi
    t_star = e_hi / (e_hi - e_lo)  # root of the affine expectation
    mix = DensityMatrix(t_star * lower.data + (1 - t_star) * upper.data)
    assert detect(w, mix).outcome is Outcome.COMPATIBLE_INCOHERENT


def test_criteria_equivalent():
    assert criteria_equivalent(TraceClass.fixed(1.0), TraceClass.fixed(2.0))
    assert not criteria_equivalent(GT, GEQ)
    assert criteria_equivalent(ZERO, ZERO)
    assert not criteria_equivalent(ZERO, TraceClass.fixed(0.5))
    probes = [ZERO, TraceClass.fixed(0.5), TraceClass.fixed(1.0), TraceClass.fixed(7.5), GT, GEQ]
    # equivalence relation with exactly four classes over the probe set
    for a in probes:
        assert criteria_equivalent(a, a)
        for b in probes:
            assert criteria_equivalent(a, b) == criteria_equivalent(b, a)
            for c in probes:
                if criteria_equivalent(a, b) and criteria_equivalent(b, c):
                    assert criteria_equivalent(a, c)
    reps = []
    for p in probes:
        if not any(criteria_equivalent(p, r) for r in reps):
            reps.append(p)
    assert len(reps) == 4
