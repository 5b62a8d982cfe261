"""Commutators ``[T, b]`` and ``[T (x) T, b]``: matrices, norms and pairings.

Besides the operators themselves this module exposes the testing pairings
used to extract single symbol coefficients from a commutator, together with
the closed-form values those pairings take.  Each ``*_checks`` generator
yields :class:`PairingCheck` records so that a caller can compare the direct
pairing with its closed form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import (
    DyadicInterval,
    DyadicRectangle,
    Signal1D,
    Signal2D,
    analyze,
    analyze2,
    average,
    average2,
    average_pyramid,
    haar,
    haar2,
    haar_forward,
    haar_inverse,
    haar_value_on,
    indicator_norm,
    intervals,
    mixed_coeff_x,
    mixed_coeff_y,
    parity_masks,
    sign_in_parent,
)
from .paraproducts import D, PI, Z, para2
from .shift import (
    OperatorMatrix,
    apply_biT,
    apply_T,
    apply_T1_star,
    apply_T2_star,
    bishift_matrix,
    shift_coeffs,
    shift_matrix,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# The operators
# ---------------------------------------------------------------------------


def commutator_apply_1d(b: Signal1D, f: Signal1D) -> Signal1D:
    """``T(b f) - b T f``."""
    return apply_T(b * f) - b * apply_T(f)


def commutator_apply_2d(b: Signal2D, f: Signal2D) -> Signal2D:
    """``T(b f) - b T f`` for the tensor shift."""
    return apply_biT(b * f) - b * apply_biT(f)


def commutator_matrix_1d(b: Signal1D) -> OperatorMatrix:
    t = shift_matrix(b.depth)
    v = b.values
    return OperatorMatrix(t * v[None, :] - v[:, None] * t)


def commutator_matrix_2d(b: Signal2D) -> OperatorMatrix:
    t = bishift_matrix(b.depth)
    v = b.values.ravel()
    return OperatorMatrix(t * v[None, :] - v[:, None] * t, two_d=True)


# ---------------------------------------------------------------------------
# Spectral norm
# ---------------------------------------------------------------------------


class ConvergenceError(RuntimeError):
    """Power iteration hit its cap; ``best`` carries the last estimate."""

    def __init__(self, message: str, best: SpectralNormResult):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class SpectralNormResult:
    value: float
    iterations: int
    residual: float
    method: str = "power"


DENSE_FALLBACK_DIM = 1024
AUTO_POWER_BUDGET = 2000


def _start_vector(dim: int) -> np.ndarray:
    v = np.ones(dim) + 1e-3 * np.sin(np.arange(1, dim + 1))
    return v / np.linalg.norm(v)


def _residual(m: np.ndarray, v: np.ndarray, sigma: float) -> float:
    """``||m^T m v - sigma^2 v|| / sigma^2`` (0 for the zero operator)."""
    w = m.T @ (m @ v)
    if sigma == 0.0:
        return float(np.linalg.norm(w))
    return float(np.linalg.norm(w - sigma**2 * v) / sigma**2)


def _power(m: np.ndarray, tol: float, max_iter: int) -> SpectralNormResult:
    v = _start_vector(m.shape[1])
    sigma, res = 0.0, math.inf
    for it in range(1, max_iter + 1):
        w = m.T @ (m @ v)
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return SpectralNormResult(0.0, it, 0.0, "power")
        sigma = math.sqrt(float(v @ w))
        res = float(np.linalg.norm(w - sigma**2 * v)) / sigma**2
        if res <= tol:
            return SpectralNormResult(sigma, it, res, "power")
        v = w / nw
    raise ConvergenceError(
        f"power iteration did not reach residual {tol:g} in {max_iter} steps",
        SpectralNormResult(sigma, max_iter, res, "power"),
    )


def _dense(m: np.ndarray) -> SpectralNormResult:
    _, s, vt = np.linalg.svd(m)
    sigma = float(s[0]) if s.size else 0.0
    return SpectralNormResult(sigma, 0, _residual(m, vt[0], sigma), "dense")


def operator_norm(
    m: OperatorMatrix | np.ndarray,
    tol: float = 1e-9,
    max_iter: int = 100_000,
    method: str = "auto",
) -> SpectralNormResult:
    """Largest singular value of ``m``.

    ``method="power"`` runs power iteration on ``m^T m`` from a fixed start
    vector until the relative eigen-residual drops below ``tol``.
    ``"dense"`` uses a full SVD.  ``"auto"`` tries a bounded number of power
    steps and falls back to the SVD when the matrix is small enough.
    """
    a = m.entries if isinstance(m, OperatorMatrix) else np.asarray(m, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("operator matrix has non-finite entries")
    if method == "dense":
        return _dense(a)
    if method == "power":
        return _power(a, tol, max_iter)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    small = a.shape[0] <= DENSE_FALLBACK_DIM
    try:
        return _power(a, tol, min(max_iter, AUTO_POWER_BUDGET) if small else max_iter)
    except ConvergenceError as exc:
        if not small:
            raise
        logger.debug("power iteration stalled (%s); using dense SVD", exc)
        return _dense(a)


# ---------------------------------------------------------------------------
# Pairings
# ---------------------------------------------------------------------------


def pairing1(b: Signal1D, I: DyadicInterval, K: DyadicInterval) -> float:
    """``((T b - b T) h_I, h_K)``."""
    n = b.depth
    return commutator_apply_1d(b, haar(I, n)).inner(haar(K, n))


def pairing(b: Signal2D, rect_in: DyadicRectangle, rect_out: DyadicRectangle) -> float:
    """``([T, b] h_{R_in}, h_{R_out})`` for the tensor shift."""
    n = b.depth
    return generalized_pairing(b, haar2(rect_in, n), haar2(rect_out, n))


def generalized_pairing(b: Signal2D, u: Signal2D, v: Signal2D) -> float:
    """``([T, b] u, v)`` for arbitrary test functions."""
    return commutator_apply_2d(b, u).inner(v)


@dataclass(frozen=True)
class PairingCheck:
    case: str
    label: str
    direct: float
    expected: float
    signed: bool = True
    indices: tuple = ()

    @property
    def residual(self) -> float:
        if self.signed:
            return abs(self.direct - self.expected)
        return abs(abs(self.direct) - abs(self.expected))


def dia_checks(b: Signal1D) -> Iterator[PairingCheck]:
    """Single-coefficient pairings of the one-parameter commutator.

    * even ``I`` and ``K`` a child: ``s(K, I) (<b>_I - <b>_K)``, of size
      ``|(b, h_I)| / sqrt|I|``;
    * odd ``I`` and ``K = I^(2)``: ``(b h_I, T* h_K)``, of size
      ``|(b, h_I)| / sqrt(8|I|)``.

    Both the signed intermediate value and the magnitude are reported.
    """
    n = b.depth
    hs = analyze(b)
    for I in intervals(n - 2):
        if not I.is_even:
            continue
        for K in I.children():
            direct = pairing1(b, I, K)
            signed = sign_in_parent(K) * (average(b, I) - average(b, K))
            yield PairingCheck("dia-even", f"{I}->{K}", direct, signed)
            yield PairingCheck(
                "dia-even-abs", f"{I}->{K}", direct, abs(hs.coeff(I)) / math.sqrt(I.length), False
            )
    for I in intervals(n - 1, min_level=3):
        if I.is_even:
            continue
        K = I.ancestor(2)
        direct = pairing1(b, I, K)
        signed = sign_in_parent(K) * haar_value_on(I.ancestor(3), I) * hs.coeff(I)
        yield PairingCheck("dia-odd", f"{I}->{K}", direct, signed)
        yield PairingCheck(
            "dia-odd-abs", f"{I}->{K}", direct, abs(hs.coeff(I)) / math.sqrt(8 * I.length), False
        )


# ---------------------------------------------------------------------------
# One-parameter pieces of the pi-term
# ---------------------------------------------------------------------------


def _haar_coeffs(f: Signal1D) -> np.ndarray:
    return haar_forward(f.values)


def sigma1(b: Signal1D, f: Signal1D) -> Signal1D:
    """``-sum_{I even} (b, h_I) <T f>_I h_I``."""
    N = b.values.size
    even, _ = parity_masks(N)
    avg = average_pyramid(apply_T(f).values, include_cells=False)
    return Signal1D(haar_inverse(-np.where(even, _haar_coeffs(b) * avg, 0.0)))


def sigma21(b: Signal1D, f: Signal1D) -> Signal1D:
    """``sum_{I even} (b, h_I) <f>_I T h_I``."""
    N = b.values.size
    even, _ = parity_masks(N)
    avg = average_pyramid(f.values, include_cells=False)
    return Signal1D(haar_inverse(shift_coeffs(np.where(even, _haar_coeffs(b) * avg, 0.0))))


def sigma22(b: Signal1D, f: Signal1D) -> Signal1D:
    """``sum_{I odd} (b, h_I) <T f>_I h_I``."""
    N = b.values.size
    _, odd = parity_masks(N)
    avg = average_pyramid(apply_T(f).values, include_cells=False)
    return Signal1D(haar_inverse(np.where(odd, _haar_coeffs(b) * avg, 0.0)))


def sigma2(b: Signal1D, f: Signal1D) -> Signal1D:
    return sigma21(b, f) - sigma22(b, f)


def _strictly_inside_children(I0: DyadicInterval, n: int) -> list[DyadicInterval]:
    """All ``I`` strictly inside ``I0+`` or ``I0-``, levels below ``n``."""
    return [I for C in I0.children() for I in C.descendants(n - 1, strict=True)]


def sigma_norm_formulas(b: Signal1D, I0: DyadicInterval) -> dict[str, float]:
    """Closed-form squared norms of the sigma pieces tested on ``h_{I0}``, ``I0`` even.

    ``sigma21`` is written as a sum over odd ``I`` with parent strictly inside
    a child of ``I0``; each even parent is counted once per child.
    """
    n = b.depth
    hs = analyze(b)
    inside = _strictly_inside_children(I0, n)
    even_sq = sum(hs.coeff(I) ** 2 for I in inside if I.is_even)
    odd_sq = sum(hs.coeff(I) ** 2 for I in inside if not I.is_even)
    odd_children_sq = sum(
        hs.coeff(I.parent()) ** 2 for I in inside if not I.is_even and I.parent() in set(inside)
    )
    return {
        "sigma1": 2.0 / I0.length * even_sq,
        "sigma21": odd_children_sq / I0.length,
        "sigma22": 2.0 / I0.length * odd_sq,
    }


def z_part_on_haar(b: Signal1D, I0: DyadicInterval) -> Signal1D:
    """``(b,h_{I0}) T 1~_{I0} - (b,h_{I0+}) 1~_{I0+} + (b,h_{I0-}) 1~_{I0-}``."""
    n = b.depth
    hs = analyze(b)
    p, m = I0.children()
    return (
        hs.coeff(I0) * apply_T(indicator_norm(I0, n))
        - hs.coeff(p) * indicator_norm(p, n)
        + hs.coeff(m) * indicator_norm(m, n)
    )


# ---------------------------------------------------------------------------
# Bi-parameter test functions and single-coefficient pairings
# ---------------------------------------------------------------------------


def probe_function(kind: str, I: DyadicInterval, J: DyadicInterval, n: int) -> Signal2D:
    """``h_I (x) h_J`` and its images under ``T1*``, ``T2*``, ``T1* T2*``.

    ``kind`` is one of ``"hh"``, ``"hT"``, ``"Th"``, ``"TT"``.
    """
    u = haar2(DyadicRectangle(I, J), n)
    if kind in ("Th", "TT"):
        u = apply_T1_star(u)
    if kind in ("hT", "TT"):
        u = apply_T2_star(u)
    if kind not in ("hh", "hT", "Th", "TT"):
        raise ValueError(f"unknown test function kind {kind!r}")
    return u


def _pair2(b: Signal2D, kind: str, I, J, K, L) -> float:
    n = b.depth
    return generalized_pairing(b, probe_function(kind, I, J, n), haar2(DyadicRectangle(K, L), n))


def _case_I_x(b: Signal2D) -> Iterator[PairingCheck]:
    """Cases Ia, Ib, Ic, Ie with the test function ``h_I (x) h_J``."""
    n = b.depth
    hs = analyze2(b)
    evens = [I for I in intervals(n - 2) if I.is_even]
    odds_deep = [I for I in intervals(n - 1, min_level=3) if not I.is_even]
    for I in evens:
        for J in evens:
            R = DyadicRectangle(I, J)
            for K in I.children():
                for L in J.children():
                    direct = _pair2(b, "hh", I, J, K, L)
                    expected = sign_in_parent(K) * sign_in_parent(L) * (
                        average2(b, R) - average2(b, DyadicRectangle(K, L))
                    )
                    yield PairingCheck("Ia", f"{R}->{K},{L}", direct, expected, indices=(I, J, K, L))
            for L in J.children():
                direct = _pair2(b, "hh", I, J, I, L)
                expected = -sign_in_parent(L) / math.sqrt(I.length) * sum(
                    mixed_coeff_x(b, C, L) for C in I.children()
                )
                yield PairingCheck("Ie", f"{R}->{I},{L}", direct, expected, indices=(I, J, I, L))
    for I in odds_deep:
        for J in odds_deep:
            K, L = I.ancestor(2), J.ancestor(2)
            direct = _pair2(b, "hh", I, J, K, L)
            expected = (
                sign_in_parent(K)
                * sign_in_parent(L)
                * haar_value_on(I.ancestor(3), I)
                * haar_value_on(J.ancestor(3), J)
                * hs.coeff(I, J)
            )
            yield PairingCheck("Ib", f"{I},{J}->{K},{L}", direct, expected, indices=(I, J, K, L))
    for I in evens:
        for J in odds_deep:
            L = J.ancestor(2)
            for K in I.children():
                direct = _pair2(b, "hh", I, J, K, L)
                expected = (
                    sign_in_parent(K)
                    * sign_in_parent(L)
                    * haar_value_on(J.ancestor(3), J)
                    * mixed_coeff_y(b, I, J)
                )
                yield PairingCheck("Ic", f"{I},{J}->{K},{L}", direct, expected, indices=(I, J, K, L))


def _case_II_x(b: Signal2D) -> Iterator[PairingCheck]:
    """Cases IIa, IIb, IIc with the test function ``h_I (x) T2* h_J``."""
    n = b.depth
    evens = [I for I in intervals(n - 2) if I.is_even]
    odds = [J for J in intervals(n - 1) if not J.is_even]
    for I in evens:
        for J in odds:
            if I.level >= 2:
                Ih, I2 = I.parent(), I.ancestor(2)
                direct = _pair2(b, "hT", I, J, Ih, J)
                p, m = I.children()
                diff = mixed_coeff_x(b, p, J) - mixed_coeff_x(b, m, J)
                expected = mixed_coeff_x(b, I, J.parent()) / math.sqrt(I2.length) - sign_in_parent(
                    I
                ) / math.sqrt(Ih.length) * diff
                yield PairingCheck("IIa", f"{I},{J}->{Ih},{J}", direct, expected, indices=(I, J, Ih, J))
            if J.level > n - 2:
                continue
            for L in J.children():
                for K in I.children():
                    direct = _pair2(b, "hT", I, J, K, L)
                    expected = (
                        -sign_in_parent(K)
                        * sign_in_parent(L)
                        / math.sqrt(J.length)
                        * mixed_coeff_y(b, K, L)
                    )
                    yield PairingCheck("IIb", f"{I},{J}->{K},{L}", direct, expected, indices=(I, J, K, L))
                hs = analyze2(b)
                direct = _pair2(b, "hT", I, J, I, L)
                expected = (
                    -sign_in_parent(L)
                    / math.sqrt(I.length * J.length)
                    * sum(hs.coeff(C, L) for C in I.children())
                )
                yield PairingCheck("IIc", f"{I},{J}->{I},{L}", direct, expected, indices=(I, J, I, L))


def basebound_checks(b: Signal2D) -> Iterator[PairingCheck]:
    """Every single-coefficient pairing case for the bi-parameter commutator.

    Cases Id, If and IIIa-IIIc are the axis-swapped twins of Ic, Ie and
    IIa-IIc: their expected values come from the twin formula applied to
    ``b^T``, while the direct pairing is evaluated on ``b`` itself with the
    swapped test functions.
    """
    n = b.depth
    yield from _case_I_x(b)
    yield from _case_II_x(b)
    yield from _case_IV(b)

    twins = {"Ic": ("Id", "hh"), "Ie": ("If", "hh"), "IIa": ("IIIa", "Th"),
             "IIb": ("IIIb", "Th"), "IIc": ("IIIc", "Th")}
    bt = b.transpose()
    for chk in (*_case_I_x(bt), *_case_II_x(bt)):
        if chk.case not in twins:
            continue
        name, kind = twins[chk.case]
        I, J, K, L = chk.indices
        direct = generalized_pairing(b, probe_function(kind, J, I, n), haar2(DyadicRectangle(L, K), n))
        yield PairingCheck(name, f"{J},{I}->{L},{K}", direct, chk.expected, indices=(J, I, L, K))


def _case_IV(b: Signal2D) -> Iterator[PairingCheck]:
    """Case IV: test function ``T1* h_I (x) T2* h_J``, both odd."""
    n = b.depth
    hs = analyze2(b)
    odds = [I for I in intervals(n - 2) if not I.is_even]
    for I in odds:
        for J in odds:
            for K in I.children():
                for L in J.children():
                    direct = _pair2(b, "TT", I, J, K, L)
                    expected = (
                        -sign_in_parent(K)
                        * sign_in_parent(L)
                        / math.sqrt(I.length * J.length)
                        * hs.coeff(K, L)
                    )
                    yield PairingCheck("IV", f"{I},{J}->{K},{L}", direct, expected, indices=(I, J, K, L))


# ---------------------------------------------------------------------------
# Terms of the bi-parameter pi/Z/D pieces on a single Haar test function
# ---------------------------------------------------------------------------

GROUP_FIRST = {"pipi1": (PI, PI), "piZ1": (PI, Z), "Zpi1": (Z, PI), "piD1": (PI, D), "Dpi1": (D, PI)}
GROUP_SECOND = {"pipi2": (PI, PI), "piZ2": (PI, Z), "Zpi2": (Z, PI), "piD2": (PI, D), "Dpi2": (D, PI)}


def group_terms(b: Signal2D, I0: DyadicInterval, J0: DyadicInterval) -> dict[str, Signal2D]:
    """The ten pieces of the five non-trivial commutator terms on ``h_{I0} (x) h_{J0}``.

    ``*1`` pieces are ``T kind(b, f)``, ``*2`` pieces are ``-kind(b, T f)``
    with ``f = h_{I0} (x) h_{J0}``.
    """
    f = haar2(DyadicRectangle(I0, J0), b.depth)
    tf = apply_biT(f)
    out = {name: apply_biT(para2(kind, b, f)) for name, kind in GROUP_FIRST.items()}
    out.update({name: -para2(kind, b, tf) for name, kind in GROUP_SECOND.items()})
    return out


def _shift_indicator_norm_sq(J: DyadicInterval, n: int) -> float:
    """``||T 1~_J||^2 = 2 sum_{K > J, K even, representable children} 1/|K|``."""
    return 2.0 * sum(
        1.0 / K.length
        for m in range(1, J.level + 1)
        for K in [J.ancestor(m)]
        if K.is_even and K.level <= n - 2
    )


def group_norm_formulas(b: Signal2D, I0: DyadicInterval, J0: DyadicInterval) -> dict[str, float]:
    """Closed-form squared L2 norms of the group pieces that have one.

    Second-group formulas need ``I0`` and ``J0`` even with representable
    children; the others hold for any test rectangle.
    """
    n = b.depth
    hs = analyze2(b)
    area = I0.length * J0.length

    def even_inside(I0_):
        return [I for I in I0_.descendants(n - 2, strict=True) if I.is_even]

    out = {
        "pipi1": 4.0 / area * sum(hs.coeff(I, J) ** 2 for I in even_inside(I0) for J in even_inside(J0)),
        "piZ1": 2.0 / I0.length * _shift_indicator_norm_sq(J0, n)
        * sum(hs.coeff(I, J0) ** 2 for I in even_inside(I0)),
        "Zpi1": 2.0 / J0.length * _shift_indicator_norm_sq(I0, n)
        * sum(hs.coeff(I0, J) ** 2 for J in even_inside(J0)),
    }
    if I0.is_even and I0.level <= n - 2:
        out["Dpi1"] = 4.0 / J0.length * sum(mixed_coeff_y(b, I0, J) ** 2 for J in even_inside(J0))
    if J0.is_even and J0.level <= n - 2:
        out["piD1"] = 4.0 / I0.length * sum(mixed_coeff_x(b, I, J0) ** 2 for I in even_inside(I0))
    if I0.is_even and J0.is_even and I0.level <= n - 2 and J0.level <= n - 2:
        ins_x = _strictly_inside_children(I0, n)
        ins_y = _strictly_inside_children(J0, n)
        out["pipi2"] = 4.0 / area * sum(hs.coeff(I, J) ** 2 for I in ins_x for J in ins_y)
        out["piD2"] = 2.0 / I0.length * sum(
            mixed_coeff_x(b, I, C) ** 2 for I in ins_x for C in J0.children()
        )
        out["Dpi2"] = 2.0 / J0.length * sum(
            mixed_coeff_y(b, C, J) ** 2 for C in I0.children() for J in ins_y
        )
    return out
