"""Identity-verification suites, ratio experiments and the duality probe."""

from __future__ import annotations

import itertools
import math
import statistics
import time
from datetime import datetime, timezone
from typing import Iterable, Sequence

import numpy as np

from .. import bmo, commutators as cm, paraproducts as pp
from ..core import (
    DyadicRectangle,
    Signal1D,
    Signal2D,
    analyze,
    analyze2,
    average,
    average2,
    haar,
    haar2,
    haar_value_on,
    intervals,
    mixed_coeff_x,
    mixed_coeff_y,
    sign_in_parent,
)
from ..shift import apply_T, apply_T_star
from .ensembles import SymbolEnsemble, random_pair_1d, random_pair_2d
from .report import ExperimentReport

IDENTITY_TOL = 1e-10
SPECTRAL_TOL = 1e-9
DOMINATION_TOL = 1e-12
DUALITY_BOUND = 10.0
# Frozen stability gates for the ratio experiments.
RATIO_GATE_MIN = 0.05
RATIO_GATE_MAX = 50.0
SPREAD_CHANGE_MAX = 2.0
DEGENERATE_NORM = 1e-12


def _stamp(report: ExperimentReport, started: float, with_timing: bool) -> ExperimentReport:
    if with_timing:
        report.runtime_seconds = time.perf_counter() - started
        report.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return report


def _finish_identities(report: ExperimentReport, tol: float):
    report.aggregates = {"max_residual": max(report.residuals.values(), default=0.0), "tol": tol}
    report.passed = all(v <= tol for v in report.residuals.values())


def _max_abs(x) -> float:
    arr = x.values if isinstance(x, (Signal1D, Signal2D)) else np.asarray(x)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


# ---------------------------------------------------------------------------
# One-parameter identities
# ---------------------------------------------------------------------------


def _identities_1d(b: Signal1D, f: Signal1D, g: Signal1D) -> dict[str, float]:
    n = b.depth
    res: dict[str, float] = {}
    hs = analyze(b)

    total = sum((pp.para1(k, b, f) for k in pp.KINDS_1D), Signal1D.zeros(n))
    res["reconstruction"] = _max_abs(total - b * f)

    worst = 0.0
    for I in intervals(n, min_level=1):
        P = I.parent()
        lhs = average(b, P) - average(b, I)
        rhs = -sign_in_parent(I) / math.sqrt(P.length) * hs.coeff(P)
        worst = max(worst, abs(lhs - rhs))
    res["average_difference"] = worst

    res["adjointness"] = abs(apply_T(f).inner(g) - f.inner(apply_T_star(g)))

    direct = pp.commutator_term_1d(pp.D, b, f)
    res["dd_closed_form"] = _max_abs(direct - pp.dd_term_closed_form_1d(b, f))

    full = cm.commutator_apply_1d(b, f)
    terms = {k: pp.commutator_term_1d(k, b, f) for k in pp.KINDS_1D}
    res["commutator_splitting"] = _max_abs(full - sum(terms.values(), Signal1D.zeros(n)))
    res["mean_term_vanishes"] = _max_abs(terms[pp.MEAN])

    for chk in cm.dia_checks(b):
        key = f"pairing_{chk.case}"
        res[key] = max(res.get(key, 0.0), chk.residual)

    pi_term = terms[pp.PI]
    res["pi_split_sigma"] = _max_abs(pi_term - cm.sigma1(b, f) - cm.sigma2(b, f))
    res["sigma_orthogonality"] = abs(cm.sigma1(b, f).inner(cm.sigma2(b, g)))

    for I0 in intervals(n - 2):
        if not I0.is_even:
            continue
        h = haar(I0, n)
        formulas = cm.sigma_norm_formulas(b, I0)
        direct_sq = {
            "sigma1": cm.sigma1(b, h).norm() ** 2,
            "sigma21": cm.sigma21(b, h).norm() ** 2,
            "sigma22": cm.sigma22(b, h).norm() ** 2,
        }
        for name, value in formulas.items():
            key = f"norm_{name}"
            res[key] = max(res.get(key, 0.0), abs(value - direct_sq[name]))
        z = pp.commutator_term_1d(pp.Z, b, h) - cm.z_part_on_haar(b, I0)
        res["z_part_on_haar"] = max(res.get("z_part_on_haar", 0.0), _max_abs(z))

    bound = bmo.bmo_norm_1d(b)
    excess = max(
        (abs(hs.coeff(I)) - bound * math.sqrt(I.length) for I in intervals(n - 1)), default=0.0
    )
    res["coefficient_bound_excess"] = max(excess, 0.0)
    return res


def verify_1d_identities(
    depth: int = 6,
    ensemble: SymbolEnsemble | None = None,
    samples: int = 50,
    tol: float = IDENTITY_TOL,
    with_timing: bool = True,
) -> ExperimentReport:
    """Every exact one-parameter identity on ``samples`` random symbols."""
    started = time.perf_counter()
    ensemble = ensemble or SymbolEnsemble()
    report = ExperimentReport(
        "verify1d", {"depth": depth, "samples": samples, "tol": tol, "ensemble": ensemble.describe()}
    )
    for i in range(samples):
        b = ensemble.sample_1d(depth, i)
        f, g = random_pair_1d(ensemble.seed, depth, i)
        res = _identities_1d(b, f, g)
        for k, v in res.items():
            report.note_residual(k, v)
        report.records.append({"sample": i, "depth": depth, **res})
    _finish_identities(report, tol)
    return _stamp(report, started, with_timing)


# ---------------------------------------------------------------------------
# Bi-parameter identities
# ---------------------------------------------------------------------------


def telescoping_residual(b: Signal2D) -> float:
    """Largest violation of the one-step change of rectangle averages.

    ``<b>_{I^ x J^} - <b>_{I x J}`` equals minus the sum of the tensor term
    and the two mixed terms built on the parents.
    """
    n = b.depth
    hs = analyze2(b)
    worst = 0.0
    for I in intervals(n, min_level=1):
        for J in intervals(n, min_level=1):
            P, Q = I.parent(), J.parent()
            lhs = average2(b, DyadicRectangle(P, Q)) - average2(b, DyadicRectangle(I, J))
            hp, hq = haar_value_on(P, I), haar_value_on(Q, J)
            rhs = -(hs.coeff(P, Q) * hp * hq + mixed_coeff_y(b, P, Q) * hq + mixed_coeff_x(b, P, Q) * hp)
            worst = max(worst, abs(lhs - rhs))
    return worst


def _pairwise_inner(pieces: Sequence[Signal2D]) -> float:
    return max((abs(u.inner(v)) for u, v in itertools.combinations(pieces, 2)), default=0.0)


def group_checks(b: Signal2D) -> dict[str, float]:
    """Orthogonality and norm identities of the group pieces on Haar test functions."""
    n = b.depth
    res = {"group4_orthogonality": 0.0, "group4_sum": 0.0, "group1_orthogonality": 0.0, "group_norms": 0.0}
    five = [(pp.PI, pp.PI), (pp.PI, pp.Z), (pp.Z, pp.PI), (pp.PI, pp.D), (pp.D, pp.PI)]
    for I0 in intervals(n - 1):
        for J0 in intervals(n - 1):
            pieces = cm.group_terms(b, I0, J0)
            formulas = cm.group_norm_formulas(b, I0, J0)
            for name, value in formulas.items():
                res["group_norms"] = max(res["group_norms"], abs(value - pieces[name].norm() ** 2))
            if not I0.is_even and not J0.is_even:
                g4 = [pieces["pipi1"], pieces["piZ1"], pieces["Zpi1"]]
                res["group4_orthogonality"] = max(res["group4_orthogonality"], _pairwise_inner(g4))
                f = haar2(DyadicRectangle(I0, J0), n)
                total = sum((pp.commutator_term_2d(k, b, f) for k in five), Signal2D.zeros(n))
                res["group4_sum"] = max(res["group4_sum"], _max_abs(total - g4[0] - g4[1] - g4[2]))
            if I0.is_even and J0.is_even and I0.level <= n - 2 and J0.level <= n - 2:
                g1 = [pieces[k] for k in ("pipi2", "piZ2", "Zpi2", "piD2", "Dpi2")]
                res["group1_orthogonality"] = max(res["group1_orthogonality"], _pairwise_inner(g1))
    return res


def _identities_2d(b: Signal2D, f: Signal2D, g: Signal2D, with_pairings: bool) -> dict[str, float]:
    n = b.depth
    res: dict[str, float] = {}
    total = sum((pp.para2(k, b, f) for k in pp.KINDS_2D), Signal2D.zeros(n))
    res["reconstruction"] = _max_abs(total - b * f)
    res["telescoping"] = telescoping_residual(b)

    terms = {k: pp.commutator_term_2d(k, b, f) for k in pp.KINDS_2D}
    full = cm.commutator_apply_2d(b, f)
    res["commutator_splitting"] = _max_abs(full - sum(terms.values(), Signal2D.zeros(n)))
    res["mean_terms_vanish"] = max(_max_abs(v) for k, v in terms.items() if pp.MEAN in k)
    for k in pp.PAPER_KINDS_2D:
        res[f"closed_form_{pp.kind_name(k)}"] = _max_abs(terms[k] - pp.closed_form_2d(k, b, f))

    if with_pairings:
        for chk in cm.basebound_checks(b):
            key = f"pairing_{chk.case}"
            res[key] = max(res.get(key, 0.0), chk.residual)
        res.update(group_checks(b))
    return res


def verify_2d_identities(
    depth: int = 4,
    ensemble: SymbolEnsemble | None = None,
    samples: int = 3,
    tol: float = IDENTITY_TOL,
    with_timing: bool = True,
    with_pairings: bool = True,
) -> ExperimentReport:
    """Every exact bi-parameter identity on ``samples`` random symbols."""
    started = time.perf_counter()
    ensemble = ensemble or SymbolEnsemble()
    report = ExperimentReport(
        "verify2d", {"depth": depth, "samples": samples, "tol": tol, "ensemble": ensemble.describe()}
    )
    for i in range(samples):
        b = ensemble.sample_2d(depth, i)
        f, g = random_pair_2d(ensemble.seed, depth, i)
        res = _identities_2d(b, f, g, with_pairings)
        for k, v in res.items():
            report.note_residual(k, v)
        report.records.append({"sample": i, "depth": depth, **res})
    _finish_identities(report, tol)
    return _stamp(report, started, with_timing)


# ---------------------------------------------------------------------------
# Ratio experiments
# ---------------------------------------------------------------------------


def _summary(values: list[float]) -> dict:
    if not values:
        return {"count": 0}
    lo, hi = min(values), max(values)
    return {
        "count": len(values),
        "min": lo,
        "max": hi,
        "mean": statistics.fmean(values),
        "median": statistics.median(values),
        "spread": hi / lo if lo > 0 else math.inf,
    }


def _gate(per_depth: dict[int, dict]) -> dict:
    """Apply the frozen bounds and the spread-stability condition."""
    depths = sorted(per_depth)
    mins = [per_depth[d]["min"] for d in depths if per_depth[d]["count"]]
    maxs = [per_depth[d]["max"] for d in depths if per_depth[d]["count"]]
    spreads = [per_depth[d]["spread"] for d in depths if per_depth[d]["count"]]
    changes = [max(b / a, a / b) for a, b in zip(spreads, spreads[1:])]
    ok = bool(mins) and min(mins) >= RATIO_GATE_MIN and max(maxs) <= RATIO_GATE_MAX
    ok = ok and all(c < SPREAD_CHANGE_MAX for c in changes)
    return {
        "min_ratio": min(mins) if mins else None,
        "max_ratio": max(maxs) if maxs else None,
        "spread_changes": changes,
        "gate_min": RATIO_GATE_MIN,
        "gate_max": RATIO_GATE_MAX,
        "spread_change_max": SPREAD_CHANGE_MAX,
        "passed": ok,
    }


def _as_depths(depths: int | Iterable[int]) -> list[int]:
    return [depths] if isinstance(depths, int) else list(depths)


def monotonicity_probe_1d(b: Signal1D, extra: int = 2, tol: float = SPECTRAL_TOL) -> list[float]:
    """``||[T, b]||`` for ``b`` refined to ``depth .. depth + extra``."""
    return [
        cm.operator_norm(cm.commutator_matrix_1d(b.refine(b.depth + k)), tol=tol).value
        for k in range(extra + 1)
    ]


def ratio_experiment_1d(
    depths: int | Iterable[int] = 6,
    ensemble: SymbolEnsemble | None = None,
    samples: int = 100,
    tol: float = SPECTRAL_TOL,
    with_timing: bool = True,
    monotone_samples: int = 3,
) -> ExperimentReport:
    """``||[T, b]|| / ||b||_BMO`` across an ensemble and a list of depths."""
    started = time.perf_counter()
    ensemble = ensemble or SymbolEnsemble()
    depths = _as_depths(depths)
    report = ExperimentReport(
        "ratio1d", {"depths": depths, "samples": samples, "tol": tol, "ensemble": ensemble.describe()}
    )
    per_depth, degenerate, monotone_ok = {}, 0, True
    for depth in depths:
        ratios = []
        for i in range(samples):
            b = ensemble.sample_1d(depth, i)
            norm = cm.operator_norm(cm.commutator_matrix_1d(b), tol=tol)
            size = bmo.bmo_norm_1d(b)
            flag = size <= DEGENERATE_NORM or norm.value <= DEGENERATE_NORM
            rec = {
                "depth": depth,
                "sample": i,
                "commutator_norm": norm.value,
                "bmo_norm": size,
                "norm_method": norm.method,
                "norm_residual": norm.residual,
                "degenerate": flag,
                "ratio": None if flag else norm.value / size,
            }
            if flag:
                degenerate += 1
            else:
                ratios.append(rec["ratio"])
            if i < monotone_samples:
                chain = monotonicity_probe_1d(b, tol=tol)
                rec["monotone_chain"] = chain
                monotone_ok &= all(y >= x * (1 - 1e-8) for x, y in zip(chain, chain[1:]))
            report.records.append(rec)
        per_depth[depth] = _summary(ratios)
    report.aggregates = {
        "per_depth": {str(d): s for d, s in per_depth.items()},
        "degenerate": degenerate,
        "gates": _gate(per_depth),
        "monotone": monotone_ok,
    }
    report.passed = report.aggregates["gates"]["passed"] and monotone_ok
    return _stamp(report, started, with_timing)


def ratio_experiment_2d(
    depths: int | Iterable[int] = 3,
    ensemble: SymbolEnsemble | None = None,
    samples: int = 100,
    tol: float = SPECTRAL_TOL,
    with_timing: bool = True,
) -> ExperimentReport:
    """``||[T (x) T, b]|| / ||b||_bmo``, with the rectangle product-BMO ratio alongside."""
    started = time.perf_counter()
    ensemble = ensemble or SymbolEnsemble()
    depths = _as_depths(depths)
    report = ExperimentReport(
        "ratio2d", {"depths": depths, "samples": samples, "tol": tol, "ensemble": ensemble.describe()}
    )
    per_depth, per_depth_rect, degenerate = {}, {}, 0
    for depth in depths:
        ratios, rect_ratios = [], []
        for i in range(samples):
            b = ensemble.sample_2d(depth, i)
            norm = cm.operator_norm(cm.commutator_matrix_2d(b), tol=tol)
            little = bmo.little_bmo_norm_2d(b)
            rect = bmo.product_bmo_rect_2d(b)
            flag = little <= DEGENERATE_NORM or norm.value <= DEGENERATE_NORM
            rec = {
                "depth": depth,
                "sample": i,
                "commutator_norm": norm.value,
                "little_bmo": little,
                "product_bmo_rect": rect,
                "norm_method": norm.method,
                "norm_residual": norm.residual,
                "degenerate": flag,
                "ratio": None if flag else norm.value / little,
                "ratio_rect": None if flag or rect <= DEGENERATE_NORM else norm.value / rect,
            }
            if flag:
                degenerate += 1
            else:
                ratios.append(rec["ratio"])
                if rec["ratio_rect"] is not None:
                    rect_ratios.append(rec["ratio_rect"])
            report.records.append(rec)
        per_depth[depth] = _summary(ratios)
        per_depth_rect[depth] = _summary(rect_ratios)
    report.aggregates = {
        "per_depth": {str(d): s for d, s in per_depth.items()},
        "per_depth_rect": {str(d): s for d, s in per_depth_rect.items()},
        "degenerate": degenerate,
        "gates": _gate(per_depth),
    }
    report.passed = report.aggregates["gates"]["passed"]
    return _stamp(report, started, with_timing)


# ---------------------------------------------------------------------------
# Dominations and duality
# ---------------------------------------------------------------------------


def _slack_stats(pairs: dict[str, tuple[np.ndarray, np.ndarray]]) -> dict[str, tuple[float, float]]:
    """``name -> (largest lhs - rhs, largest lhs / rhs over cells with rhs > 0)``."""
    out = {}
    for name, (lhs, rhs) in pairs.items():
        excess = float(np.max(lhs - rhs))
        pos = rhs > 0
        ratio = float(np.max(lhs[pos] / rhs[pos])) if pos.any() else 0.0
        out[name] = (excess, ratio)
    return out


def duality_probe(
    depth: int = 6,
    samples: int = 50,
    ensemble: SymbolEnsemble | None = None,
    depth_2d: int = 3,
    with_timing: bool = True,
) -> ExperimentReport:
    """Empirical constants of the pointwise dominations and the duality pairing.

    Dominations are checked cellwise on independent random ``f, g``.  The
    duality ratio ``|(b, phi)| / (||b|| ||S phi||_1)`` uses the one-parameter
    BMO norm in 1D; in 2D the x-Haar function ``phi`` from the pi-D piece is
    paired against the little bmo norm over all rectangles including cells,
    with the x-square function.
    """
    started = time.perf_counter()
    ensemble = ensemble or SymbolEnsemble()
    report = ExperimentReport(
        "duality",
        {"depth": depth, "depth_2d": depth_2d, "samples": samples, "ensemble": ensemble.describe()},
    )
    excess: dict[str, float] = {}
    ratio_max: dict[str, float] = {}
    dual_1d: list[float] = []
    dual_2d: list[float] = []
    for i in range(samples):
        rec: dict = {"sample": i}
        f, g = random_pair_1d(ensemble.seed, depth, i)
        F, G = random_pair_2d(ensemble.seed, depth_2d, i)
        stats = _slack_stats({**bmo.dominations_1d(f, g), **bmo.dominations_2d(F, G)})
        for name, (ex, ra) in stats.items():
            excess[name] = max(excess.get(name, -math.inf), ex)
            ratio_max[name] = max(ratio_max.get(name, 0.0), ra)
            rec[f"excess[{name}]"] = ex

        b = ensemble.sample_1d(depth, i)
        for label, phi in (("phi1", bmo.phi1_1d(f, g)), ("phi2", bmo.phi2_1d(f, g))):
            r = bmo.duality_ratio_1d(b, phi)
            rec[f"duality_1d_{label}"] = r
            if math.isfinite(r):
                dual_1d.append(r)

        B = ensemble.sample_2d(depth_2d, i)
        phi = bmo.phi_piD_2d(F, G)
        den = bmo.little_bmo_norm_2d(B, include_cells=True) * bmo.l1_of_root(
            bmo.square_fn_axis(phi, 0).values
        )
        r2 = abs(B.inner(phi)) / den if den > 0 else math.nan
        rec["duality_2d_piD"] = r2
        if math.isfinite(r2):
            dual_2d.append(r2)
        report.records.append(rec)

    for name, ex in excess.items():
        report.note_residual(f"domination_excess[{name}]", max(ex, 0.0))
    report.aggregates = {
        "domination_max_excess": excess,
        "domination_max_ratio": ratio_max,
        "duality_1d": _summary(dual_1d),
        "duality_2d": _summary(dual_2d),
        "duality_bound": DUALITY_BOUND,
    }
    report.passed = all(ex <= DOMINATION_TOL for ex in excess.values()) and (
        not dual_1d or max(dual_1d) <= DUALITY_BOUND
    )
    return _stamp(report, started, with_timing)
