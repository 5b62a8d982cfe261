"""Command-line entry point for the experiment suites.

Exit status: 0 when the suite passes, 1 when an identity check or gate
fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .. import commutators as cm
from ..shift import OperatorMatrix, bishift_matrix, shift_matrix
from .ensembles import EnsembleKind, SymbolEnsemble
from .suites import (
    IDENTITY_TOL,
    SPECTRAL_TOL,
    duality_probe,
    ratio_experiment_1d,
    ratio_experiment_2d,
    verify_1d_identities,
    verify_2d_identities,
)

DEFAULTS = {
    "verify1d": {"depth": [6], "samples": 50, "tol": IDENTITY_TOL},
    "verify2d": {"depth": [4], "samples": 3, "tol": IDENTITY_TOL},
    "ratio1d": {"depth": [6], "samples": 100, "tol": SPECTRAL_TOL},
    "ratio2d": {"depth": [3], "samples": 100, "tol": SPECTRAL_TOL},
    "duality": {"depth": [6], "samples": 50, "tol": None},
    "dump-operator": {"depth": [3], "samples": 1, "tol": None},
}

OPERATORS = ("T", "Tstar", "biT", "commutator1d", "commutator2d")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyadic-bmo", description="Dyadic shift commutators: identity checks and norm experiments."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in DEFAULTS:
        p = sub.add_parser(name)
        p.add_argument("--depth", type=int, nargs="+", help="grid depth (ratio commands accept several)")
        p.add_argument("--samples", type=int, help="number of random symbols")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--ensemble", choices=[k.value for k in EnsembleKind], default=EnsembleKind.GAUSSIAN_DECAY.value
        )
        p.add_argument("--alpha", type=float, default=0.0, help="level decay for gaussian-decay")
        p.add_argument("--sparsity", type=int, default=3, help="nonzero coefficients for sparse-random")
        p.add_argument("--tol", type=float, help="identity tolerance or spectral-norm tolerance")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--no-timestamp", action="store_true", help="omit runtime and timestamp fields")
        if name == "duality":
            p.add_argument("--depth-2d", type=int, default=3)
        if name == "dump-operator":
            p.add_argument("--operator", choices=OPERATORS, default="commutator1d")
    return parser


def _single_depth(parser, args) -> int:
    if len(args.depth) != 1:
        parser.error(f"{args.command} takes a single --depth")
    return args.depth[0]


def _dump_operator(args, depth: int, ensemble: SymbolEnsemble) -> OperatorMatrix:
    op = args.operator
    if op == "T":
        return OperatorMatrix(shift_matrix(depth))
    if op == "Tstar":
        return OperatorMatrix(shift_matrix(depth).T)
    if op == "biT":
        return OperatorMatrix(bishift_matrix(depth), two_d=True)
    if op == "commutator1d":
        return cm.commutator_matrix_1d(ensemble.sample_1d(depth, 0))
    return cm.commutator_matrix_2d(ensemble.sample_2d(depth, 0))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for key, value in DEFAULTS[args.command].items():
            if getattr(args, key) is None:
                setattr(args, key, value)
        if args.samples < 1 or any(d < 1 for d in args.depth):
            parser.error("--samples and --depth must be positive")
        ensemble = SymbolEnsemble(args.ensemble, args.seed, args.alpha, args.sparsity)
        timing = not args.no_timestamp
        cmd = args.command
        if cmd == "dump-operator":
            depth = _single_depth(parser, args)
            _emit(json.dumps(_dump_operator(args, depth, ensemble).to_dict(), sort_keys=True) + "\n", args.out)
            return 0
        if cmd == "verify1d":
            report = verify_1d_identities(_single_depth(parser, args), ensemble, args.samples, args.tol, timing)
        elif cmd == "verify2d":
            report = verify_2d_identities(_single_depth(parser, args), ensemble, args.samples, args.tol, timing)
        elif cmd == "ratio1d":
            report = ratio_experiment_1d(args.depth, ensemble, args.samples, args.tol, timing)
        elif cmd == "ratio2d":
            report = ratio_experiment_2d(args.depth, ensemble, args.samples, args.tol, timing)
        else:
            report = duality_probe(_single_depth(parser, args), args.samples, ensemble, args.depth_2d, timing)
    except SystemExit as exc:
        return int(exc.code or 0)
    text = report.to_csv() if args.format == "csv" else report.to_json(include_timing=timing)
    _emit(text, args.out)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run_cli())
