"""Random ensembles, verification suites, ratio experiments and the CLI."""

from .cli import run_cli
from .ensembles import EnsembleKind, SymbolEnsemble
from .report import ExperimentReport
from .suites import (
    duality_probe,
    ratio_experiment_1d,
    ratio_experiment_2d,
    verify_1d_identities,
    verify_2d_identities,
)

__all__ = [
    "EnsembleKind",
    "ExperimentReport",
    "SymbolEnsemble",
    "duality_probe",
    "ratio_experiment_1d",
    "ratio_experiment_2d",
    "run_cli",
    "verify_1d_identities",
    "verify_2d_identities",
]
