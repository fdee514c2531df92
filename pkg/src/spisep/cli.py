"""Command line front end.

Every subcommand prints a JSON report (pretty by default, compact with
--json) that includes the tolerances it used.  Exit codes: 0 success,
2 unparseable input, 3 violated precondition, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import catalogue as cat
from .constructions import (
    dopico_johnson,
    householder_all_nonzero,
    random_pd,
    random_symmetric,
    random_smear,
    realize_shear,
    shear_square,
    sparsity_audit,
)
from .core import (
    NotPositiveDefiniteError,
    symplectic_spectrum,
    williamson,
    omega,
)
from .graphs import CoupledGraph, coupling_closure_graph, graph_of_matrix, path_shear_block
from .io import ParseError, load_graph, load_matrix, save_matrix
from .sssp import (
    direction_graph,
    has_sssp_in_direction,
    has_sssp_nullspace,
    has_sssp_rank,
)
from .zero_forcing import loop_zf_number, zc_equals_one, zc_minimum_set

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4


class NumericalFailure(Exception):
    pass


def _emit(report: dict, compact: bool) -> None:
    if compact:
        print(json.dumps(report, separators=(",", ":")))
    else:
        print(json.dumps(report, indent=2))


def _matrix_list(M: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in M]


def _effective_seed(args) -> int:
    env = os.environ.get("SPISEP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"SPISEP_SEED must be an integer, got {env!r}") from exc
    return args.seed


def _parse_targets(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        vals = [float(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"bad targets {text!r}") from exc
    if not vals or any(v <= 0 for v in vals):
        raise ValueError("targets must be positive numbers")
    return vals


def cmd_spectrum(args) -> dict:
    N = load_matrix(args.matrix)
    spec = symplectic_spectrum(N, cluster_tol=args.tol_cluster)
    return {
        "command": "spectrum",
        "order": N.shape[0],
        "values": list(spec.values),
        "clusters": [[rep, mult] for rep, mult in spec.clusters],
        "tolerances": {"cluster_tol": spec.cluster_tol},
    }


def cmd_williamson(args) -> dict:
    N = load_matrix(args.matrix)
    pair = williamson(N)
    n = N.shape[0]
    p = n // 2
    diag_res = float(np.max(np.abs(pair.S.T @ N @ pair.S - pair.diagonal())))
    om = omega(p)
    symp_res = float(np.max(np.abs(pair.S.T @ om @ pair.S - om)))
    return {
        "command": "williamson",
        "order": n,
        "symplectic_eigenvalues": list(pair.d),
        "S": _matrix_list(pair.S),
        "residuals": {"diagonalization": diag_res, "symplectic": symp_res},
        "tolerances": {"cluster_tol": args.tol_cluster},
    }


def cmd_sssp(args) -> dict:
    N = load_matrix(args.matrix)
    rank_verdict = has_sssp_rank(N, rank_tol=args.tol_rank, zero_tol=args.tol_zero)
    null_verdict, witness = has_sssp_nullspace(
        N, rank_tol=args.tol_rank, zero_tol=args.tol_zero
    )
    if rank_verdict != null_verdict:
        raise NumericalFailure(
            f"SSSP tests disagree: rank test {rank_verdict}, nullspace test {null_verdict}"
        )
    report = {
        "command": "sssp",
        "order": N.shape[0],
        "sssp": null_verdict,
        "rank_test": rank_verdict,
        "nullspace_test": null_verdict,
        "witness": None if witness is None else _matrix_list(witness),
        "tolerances": {"rank_tol": args.tol_rank, "zero_tol": args.tol_zero},
    }
    if args.direction:
        R = load_matrix(args.direction)
        verdict = has_sssp_in_direction(N, R, rank_tol=args.tol_rank, zero_tol=args.tol_zero)
        enlarged = direction_graph(graph_of_matrix(N, zero_tol=args.tol_zero), R,
                                   zero_tol=args.tol_zero)
        report["direction"] = {
            "sssp_in_direction": verdict,
            "enlarged_pattern_edges": sorted(list(e) for e in enlarged.edges),
        }
    return report


_CONSTRUCT_FAMILIES = (
    "tripath",
    "complete-bipartite",
    "join",
    "dopico-johnson",
    "smear-two-cliques",
    "smear-complete",
)


def cmd_construct(args) -> dict:
    seed = _effective_seed(args)
    targets = _parse_targets(args.targets)
    p = args.size
    if p is None or p < 1:
        raise ValueError("--size must be a positive integer")
    if targets and len(targets) != p:
        raise ValueError("number of targets must equal --size")
    rng = np.random.default_rng(seed)
    if args.family == "tripath":
        B = path_shear_block(p)
        N = realize_shear(B, targets) if targets else shear_square(B)
    elif args.family == "complete-bipartite":
        B = householder_all_nonzero(p)
        N = realize_shear(B, targets) if targets else shear_square(B)
    elif args.family == "join":
        B = np.ones((p, p))
        N = realize_shear(B, targets) if targets else shear_square(B)
    elif args.family == "dopico-johnson":
        N = dopico_johnson(random_pd(p, rng), random_symmetric(p, rng))
    elif args.family == "smear-two-cliques":
        N = random_smear(targets or [1.0] * p, seed=seed, mode="two_cliques")
    elif args.family == "smear-complete":
        N = random_smear(targets or [1.0] * p, seed=seed, mode="complete")
    else:
        raise ValueError(f"unknown family {args.family!r}")
    if args.out:
        save_matrix(args.out, N, fmt=args.format)
    spec = symplectic_spectrum(N, cluster_tol=args.tol_cluster)
    return {
        "command": "construct",
        "family": args.family,
        "size": p,
        "targets": targets,
        "seed": seed,
        "out": args.out,
        "order": N.shape[0],
        "spectrum": list(spec.values),
        "entries": None if args.out else _matrix_list(N),
        "tolerances": {"cluster_tol": args.tol_cluster},
    }


def cmd_zc(args) -> dict:
    G, coupling = load_graph(args.graph)
    if coupling is None:
        raise ValueError("graph file must carry a coupling for coupled zero forcing")
    CG = CoupledGraph(G, coupling)
    blue = zc_minimum_set(CG)
    closure_graph = coupling_closure_graph(CG)
    return {
        "command": "zc",
        "order": G.order,
        "zc": len(blue),
        "minimum_set": sorted(blue),
        "loop_zf_of_closure_graph": loop_zf_number(closure_graph),
        "zc_equals_one_structural": zc_equals_one(CG),
    }


def cmd_catalogue(args) -> dict:
    seed = _effective_seed(args)
    entries = cat.build_order4_catalogue(seed=seed, evidence_samples=args.samples)
    failures = [f"{e.graph}/{e.coupling_id}" for e in entries if not e.ok]
    report = {
        "command": "catalogue-order4",
        "seed": seed,
        "evidence_samples": args.samples,
        "entries": cat.catalogue_as_dicts(entries),
        "all_checks_pass": not failures,
    }
    if failures:
        raise NumericalFailure(f"catalogue checks failed for: {', '.join(failures)}")
    return report


def cmd_audit_sparsity(args) -> dict:
    N = load_matrix(args.matrix)
    rep = sparsity_audit(N, zero_tol=args.tol_zero)
    return {
        "command": "audit-sparsity",
        "order": rep.order,
        "nnz": rep.nnz,
        "nnz_inverse": rep.nnz_inverse,
        "irreducible": rep.irreducible,
        "pair_bound": rep.pair_bound,
        "pair_bound_holds": rep.pair_bound_holds,
        "symplectic_pd": rep.symplectic_pd,
        "single_bound": rep.single_bound,
        "single_bound_holds": rep.single_bound_holds,
        "violation": rep.violation,
        "tolerances": {"zero_tol": rep.zero_tol},
    }


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-cluster", type=float, default=1e-6,
                        help="relative gap for multiplicity clustering")
    common.add_argument("--tol-rank", type=float, default=1e-9,
                        help="relative singular value threshold for rank decisions")
    common.add_argument("--tol-zero", type=float, default=None,
                        help="absolute threshold for structural zeros (default: scale-relative)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized constructions (SPISEP_SEED overrides)")
    common.add_argument("--json", action="store_true", help="compact single-line JSON output")

    parser = argparse.ArgumentParser(
        prog="spisep",
        description="Symplectic spectra of positive definite matrices with a given labeled graph",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="symplectic eigenvalues of a matrix")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_spectrum)

    wi = sub.add_parser("williamson", parents=[common], help="Williamson normal form")
    wi.add_argument("matrix")
    wi.set_defaults(func=cmd_williamson)

    ss = sub.add_parser("sssp", parents=[common],
                        help="strong symplectic spectral property verdicts")
    ss.add_argument("matrix")
    ss.add_argument("--direction", help="tangent direction matrix file")
    ss.set_defaults(func=cmd_sssp)

    co = sub.add_parser("construct", parents=[common], help="build a realization matrix")
    co.add_argument("family", choices=_CONSTRUCT_FAMILIES)
    co.add_argument("--size", type=int, required=True, help="block size p (matrix order 2p)")
    co.add_argument("--targets", help="comma separated positive target spectrum")
    co.add_argument("--out", help="output matrix file (json or mtx)")
    co.add_argument("--format", choices=("json", "mtx"), default=None)
    co.set_defaults(func=cmd_construct)

    zc = sub.add_parser("zc", parents=[common], help="coupled zero forcing number")
    zc.add_argument("graph", help="graph JSON file with a coupling")
    zc.set_defaults(func=cmd_zc)

    ca = sub.add_parser("catalogue-order4", parents=[common],
                        help="full order-4 classification with machine-checked witnesses")
    ca.add_argument("--samples", type=int, default=1000,
                    help="randomized evidence sample count per simple-only entry")
    ca.set_defaults(func=cmd_catalogue)

    au = sub.add_parser("audit-sparsity", parents=[common],
                        help="nonzero counts against the sparsity lower bounds")
    au.add_argument("matrix")
    au.set_defaults(func=cmd_audit_sparsity)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, NotPositiveDefiniteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (NumericalFailure, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _emit(report, compact=args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
