"""Batch command-line front end.

Each subcommand reads matrix documents, runs one library operation and emits
a canonical JSON report (stdout or --out). Reports repeat the inputs,
tolerances, seed and toolkit version so they can be re-verified and
reproduced bit-for-bit.

Exit codes: 0 success (including undecided verdicts), 2 parse errors,
3 domain errors, 4 internal errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from . import __version__
from .analysis import (
    IntersectionStatus,
    common_coherent_state,
    decide_intersection,
    disjointness_sufficient,
    orthocomplement_dimension,
    region_relation,
)
from .config import DEFAULT
from .criteria import (
    TraceClass,
    detect,
    interval_of,
    parse_trace_class,
    validate_witness,
    witness,
)
from .errors import ParseError, ToolkitError, UnsupportedClassError
from .io import dumps_canonical, load_matrix, matrix_to_document
from .operators import DensityMatrix, expectation_value, spectral_decompose
from .synthesis import (
    complete_family,
    evading_state,
    evasion_constants,
    synthesize_witness,
)


def _interval_dict(x: TraceClass) -> dict:
    spec = interval_of(x)
    return {"kind": spec.kind, "lo": spec.lo, "hi": spec.hi}


def _load_state(path, tols) -> tuple[DensityMatrix, str]:
    matrix, label = load_matrix(path, tols=tols)
    return DensityMatrix(matrix, tols=tols), label


def _load_witnesses(paths, x, tols, *, require_nontrivial=True):
    loaded = [load_matrix(p, tols=tols) for p in paths]
    ws = [witness(m, x, tols=tols, require_nontrivial=require_nontrivial) for m, _ in loaded]
    return ws, [label for _, label in loaded]


def _cmd_validate(args, x, tols):
    matrix, label = load_matrix(args.file, tols=tols)
    check = validate_witness(matrix, x, tols=tols)
    vals = spectral_decompose(matrix).eigenvalues
    payload = {
        "member": check.member,
        "nontrivial": check.nontrivial,
        "trace": matrix.trace(),
        "diag_min": float(matrix.data.diagonal().real.min()),
        "min_eigenvalue": float(vals[0]),
    }
    return payload, [label]


def _cmd_detect(args, x, tols):
    matrix, wlabel = load_matrix(args.witness, tols=tols)
    state, slabel = _load_state(args.state, tols)
    verdict = detect(witness(matrix, x, tols=tols), state, tols=tols)
    payload = {
        "expectation": verdict.expectation,
        "interval": _interval_dict(x),
        "outcome": verdict.outcome.value,
    }
    return payload, [wlabel, slabel]


def _cmd_synthesize(args, x, tols):
    state, label = _load_state(args.state, tols)
    w = synthesize_witness(state, x, tols=tols)
    payload = {
        "witness": matrix_to_document(w.matrix, "synthesized").to_dict(),
        "expectation": expectation_value(w.matrix, state),
    }
    return payload, [label]


def _cmd_evade(args, x, tols):
    ws, labels = _load_witnesses(args.witnesses, x, tols)
    consts = evasion_constants(ws, x, tols=tols)
    state = evading_state(ws, x, tols=tols)
    payload = {
        "state": matrix_to_document(state.data, "evading_state").to_dict(),
        "epsilon": consts.epsilon,
        "response_bound": consts.response_bound,
        "min_trace": consts.min_trace,
        "expectations": [expectation_value(w.matrix, state) for w in ws],
    }
    return payload, labels


def _cmd_common(args, x, tols):
    if not (x.kind == "fixed" and x.value == 0.0):
        raise UnsupportedClassError("common-state construction applies to --x 0 only")
    ws, labels = _load_witnesses(args.witnesses, x, tols)
    state = common_coherent_state(ws, tols=tols)
    payload = {
        "state": matrix_to_document(state.data, "common_state").to_dict(),
        "expectations": [expectation_value(w.matrix, state) for w in ws],
    }
    return payload, labels


def _cmd_intersect(args, x, tols):
    ws, labels = _load_witnesses(args.witnesses, x, tols)
    if x.kind == "fixed":
        report = disjointness_sufficient(ws, x, seed=args.seed, tols=tols)
        payload = {
            "sufficient_condition_holds": report.sufficient_condition_holds,
            "subsets_checked": report.subsets_checked,
        }
        return payload, labels
    verdict = decide_intersection(ws, x, seed=args.seed, tols=tols)
    payload = {"status": verdict.status.value, "certificate": None, "state": None}
    if verdict.status is IntersectionStatus.PROVED_EMPTY:
        cert = verdict.certificate
        payload["certificate"] = {
            "weights": [float(t) for t in cert.weights],
            "combined_min_eigenvalue": cert.combined_min_eigenvalue,
        }
    elif verdict.status is IntersectionStatus.FOUND_COMMON_STATE:
        payload["state"] = matrix_to_document(verdict.state.data, "common_state").to_dict()
    return payload, labels


def _cmd_relation(args, x, tols):
    (w1, l1), (w2, l2) = (load_matrix(p, tols=tols) for p in (args.first, args.second))
    result = region_relation(
        witness(w1, x, tols=tols, require_nontrivial=True),
        witness(w2, x, tols=tols, require_nontrivial=True),
        x, tols=tols,
    )
    payload = {
        "relation": result.relation.value,
        "scale": result.scale,
        "psd_remainder": None
        if result.psd_remainder is None
        else matrix_to_document(result.psd_remainder, "psd_remainder").to_dict(),
    }
    return payload, [l1, l2]


def _cmd_family(args, x, tols):
    fam = complete_family(args.dim, x)
    payload = {
        "count": len(fam),
        "members": [
            {"label": m.label, "matrix": matrix_to_document(m.matrix, m.label).to_dict()}
            for m in fam
        ],
    }
    return payload, []


def _cmd_kerneldim(args, x, tols):
    matrix, label = load_matrix(args.file, tols=tols)
    w = witness(matrix, x, tols=tols, require_nontrivial=True)
    payload = {"dimension": orthocomplement_dimension(w, tols=tols)}
    return payload, [label]


_HANDLERS = {
    "validate": _cmd_validate,
    "detect": _cmd_detect,
    "synthesize": _cmd_synthesize,
    "evade": _cmd_evade,
    "common": _cmd_common,
    "intersect": _cmd_intersect,
    "relation": _cmd_relation,
    "family": _cmd_family,
    "kerneldim": _cmd_kerneldim,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cowit",
        description="Coherence-witness toolkit for observables with known trace.",
    )
    parser.add_argument("--version", action="version", version=f"cowit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--x", required=True, metavar="CLASS",
                       help="trace class: 0, r=<float>, gt or geq")
        p.add_argument("--tol", type=float, default=DEFAULT.psd,
                       help="boundary tolerance (default %(default)s)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampling commands (default 0)")
        p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        return p

    p = add("validate", "check witness membership and nontriviality")
    p.add_argument("file")
    p = add("detect", "classify Tr[W rho] against the incoherent interval")
    p.add_argument("witness")
    p.add_argument("state")
    p = add("synthesize", "construct a witness detecting a coherent state")
    p.add_argument("state")
    p = add("evade", "construct a coherent state no listed witness detects")
    p.add_argument("witnesses", nargs="+")
    p = add("common", "construct a state detected by all zero-trace witnesses")
    p.add_argument("witnesses", nargs="+")
    p = add("intersect", "decide/certify empty intersection of detection regions")
    p.add_argument("witnesses", nargs="+")
    p = add("relation", "equality/inclusion relation of two detection regions")
    p.add_argument("first")
    p.add_argument("second")
    p = add("family", "emit the finite complete witness family for a dimension")
    p.add_argument("--dim", type=int, required=True)
    p = add("kerneldim", "dimension of the zero-expectation span of a witness")
    p.add_argument("file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tols = DEFAULT.with_psd(args.tol)
        x = parse_trace_class(args.x)
        payload, inputs = _HANDLERS[args.command](args, x, tols)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - report and exit 4, never traceback
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    report = {
        "command": args.command,
        "inputs": inputs,
        "payload": payload,
        "seed": args.seed,
        "tolerances": asdict(tols),
        "version": __version__,
    }
    text = dumps_canonical(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
