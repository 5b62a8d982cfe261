"""Dyadic BMO norms, square functions and maximal functions.

All norms are suprema over dyadic intervals (rectangles) of normalised sums
of squared Haar coefficients.  They are evaluated with bottom-up subtree sums
on the heap-indexed coefficient arrays, so each costs a constant number of
passes over the coefficients.  Square functions are returned squared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Signal1D,
    Signal2D,
    accumulate_down,
    average_pyramid,
    haar_forward,
    haar_forward2,
    haar_inverse,
    haar_inverse2,
    interval_lengths,
    mixed_x_table,
    mixed_y_table,
    parity_masks,
    subtree_sums,
)
from .shift import apply_biT, apply_biT_star, apply_T, apply_T_star

DEFAULT_MAX_DEPTH_2D = 5


class CostCapError(ValueError):
    """Raised when an exact 2D supremum would exceed the configured depth cap."""


# ---------------------------------------------------------------------------
# Tree aggregates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TreeAggregate1D:
    """``sumsq[I] = sum_{I' subset of I} (b, h_I')^2`` in heap layout."""

    sumsq: np.ndarray

    @classmethod
    def of(cls, b: Signal1D) -> TreeAggregate1D:
        c = haar_forward(b.values)
        c[0] = 0.0
        return cls(subtree_sums(c**2))

    def normalised(self) -> np.ndarray:
        """``sumsq[I] / |I|``; slot 0 is zero."""
        out = self.sumsq / interval_lengths(self.sumsq.size)
        out[0] = 0.0
        return out


@dataclass(frozen=True, eq=False)
class TreeAggregate2D:
    """Rectangle accumulators for the little-bmo supremum.

    ``tensor[I0, J0]`` sums ``(b, h_I (x) h_J)^2`` over ``I <= I0, J <= J0``;
    ``x_mixed[I0, J0]`` sums ``(b, h_I (x) 1~_{J0})^2`` over ``I <= I0``;
    ``y_mixed`` is the transpose construction.  With ``include_cells`` the
    arrays also cover rectangles whose side is a single grid cell.
    """

    tensor: np.ndarray
    x_mixed: np.ndarray
    y_mixed: np.ndarray

    @classmethod
    def of(cls, b: Signal2D, include_cells: bool = False) -> TreeAggregate2D:
        N = b.values.shape[0]
        M = 2 * N if include_cells else N
        c = haar_forward2(b.values)
        sq = c**2
        sq[0, :] = 0.0
        sq[:, 0] = 0.0
        tensor = np.zeros((M, M))
        tensor[:N, :N] = subtree_sums(subtree_sums(sq).T).T

        xm = mixed_x_table(b, include_cells=include_cells) ** 2  # (N, M)
        xm[0, :] = 0.0
        x_mixed = np.zeros((M, M))
        x_mixed[:N, :] = subtree_sums(xm.T).T

        ym = mixed_y_table(b, include_cells=include_cells) ** 2  # (M, N)
        ym[:, 0] = 0.0
        y_mixed = np.zeros((M, M))
        y_mixed[:, :N] = subtree_sums(ym)
        return cls(tensor, x_mixed, y_mixed)

    def oscillation_table(self) -> np.ndarray:
        """Mean squared oscillation of ``b`` over every rectangle."""
        M = self.tensor.shape[0]
        lx = interval_lengths(M)[:, None]
        ly = interval_lengths(M)[None, :]
        table = self.tensor / (lx * ly) + self.x_mixed / lx + self.y_mixed / ly
        table[0, :] = 0.0
        table[:, 0] = 0.0
        return table


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------


def bmo_norm_1d(b: Signal1D) -> float:
    """``sup_I ( |I|^{-1} sum_{I' <= I} (b, h_I')^2 )^{1/2}`` over levels below the depth."""
    return math.sqrt(float(TreeAggregate1D.of(b).normalised().max()))


def _check_cap(n: int, max_depth: int | None):
    if max_depth is not None and n > max_depth:
        rects = (2 ** (n + 1) - 1) ** 2
        raise CostCapError(
            f"depth {n} exceeds the cap {max_depth}: the exact supremum visits "
            f"{rects} rectangles and {4**n} coefficients per accumulator; "
            "pass max_depth=None to lift the cap"
        )


def little_bmo_norm_2d(
    b: Signal2D, max_depth: int | None = DEFAULT_MAX_DEPTH_2D, include_cells: bool = False
) -> float:
    """Dyadic little bmo norm (square root of the rectangle supremum).

    The supremum runs over rectangles ``I0 x J0`` with both sides above the
    grid scale.  ``include_cells=True`` also admits rectangles with a side
    equal to one grid cell, which turns the value into the supremum of mean
    oscillations over every dyadic rectangle of the grid.
    """
    _check_cap(b.depth, max_depth)
    table = TreeAggregate2D.of(b, include_cells).oscillation_table()
    return math.sqrt(max(float(table.max()), 0.0))


def product_bmo_rect_2d(b: Signal2D, max_depth: int | None = DEFAULT_MAX_DEPTH_2D) -> float:
    """Rectangle-restricted product BMO: only the tensor-coefficient term."""
    _check_cap(b.depth, max_depth)
    agg = TreeAggregate2D.of(b)
    N = agg.tensor.shape[0]
    area = interval_lengths(N)[:, None] * interval_lengths(N)[None, :]
    table = agg.tensor / area
    return math.sqrt(float(table[1:, 1:].max()))


def slice_bmo_sup(b: Signal2D) -> float:
    """``max`` over grid rows/columns of the one-parameter BMO norm of the slice."""
    rows = max(bmo_norm_1d(Signal1D(b.values[:, j])) for j in range(b.values.shape[1]))
    cols = max(bmo_norm_1d(Signal1D(b.values[i, :])) for i in range(b.values.shape[0]))
    return max(rows, cols)


# ---------------------------------------------------------------------------
# Square functions (squared)
# ---------------------------------------------------------------------------


def _along(values: np.ndarray, axis: int, fn) -> np.ndarray:
    return np.moveaxis(fn(np.moveaxis(values, axis, -1)), -1, axis)


def _square_weights(c: np.ndarray) -> np.ndarray:
    w = c**2 / interval_lengths(c.shape[-1])
    w[..., 0] = 0.0
    return w


def _unit_avg_weights(w: np.ndarray) -> np.ndarray:
    out = w / interval_lengths(w.shape[-1])
    out[..., 0] = 0.0
    return out


def square_fn_1d(f: Signal1D) -> Signal1D:
    """``S_d^2 f = sum_I (f, h_I)^2 1~_I``."""
    return Signal1D(accumulate_down(_square_weights(haar_forward(f.values))))


def square_fn_2d(f: Signal2D) -> Signal2D:
    """``sum_{I,J} (f, h_I (x) h_J)^2 1~_I (x) 1~_J``."""
    c = haar_forward2(f.values)
    w = _unit_avg_weights(_unit_avg_weights(c**2).T).T
    return Signal2D(_along(accumulate_down(w), 0, accumulate_down))


def square_fn_axis(f: Signal2D, axis: int) -> Signal2D:
    """One-parameter square function in ``x`` (axis 0) or ``y`` (axis 1)."""
    partial = _along(f.values, axis, haar_forward)
    w = _along(partial, axis, _square_weights)
    return Signal2D(_along(w, axis, accumulate_down))


# ---------------------------------------------------------------------------
# Maximal functions
# ---------------------------------------------------------------------------


def _running_max(pyramid: np.ndarray) -> np.ndarray:
    """Max over ancestors (levels ``0..n``) of a heap array of length ``2N``."""
    n = pyramid.shape[-1].bit_length() - 2
    m = pyramid[..., 1:2]
    for k in range(1, n + 1):
        m = np.maximum(np.repeat(m, 2, axis=-1), pyramid[..., 1 << k : 2 << k])
    return m


def _maximal_last(values: np.ndarray) -> np.ndarray:
    return _running_max(np.abs(average_pyramid(values, include_cells=True)))


def maximal_fn_1d(f: Signal1D) -> Signal1D:
    """``M_d f(x) = sup_{I containing x} |<f>_I|`` over all grid scales."""
    return Signal1D(_maximal_last(f.values))


def maximal_fn_axis(f: Signal2D, axis: int) -> Signal2D:
    return Signal2D(_along(f.values, axis, _maximal_last))


def maximal_fn_2d(f: Signal2D) -> Signal2D:
    """Bi-parameter (strong) dyadic maximal function over rectangles."""
    pyr = average_pyramid(average_pyramid(f.values).swapaxes(0, 1)).swapaxes(0, 1)
    m = _running_max(np.abs(pyr))  # sup over J containing y, per x-interval
    return Signal2D(_along(m, 0, _running_max))


def mixed_SM(f: Signal2D) -> Signal2D:
    """``[SM]^2 f(x, y) = sum_I M_{d2}^2 f_I(y) 1~_I(x)`` with ``f_I(y) = (f(., y), h_I)``."""
    partial = haar_forward(f.values.T).T  # partial[I, y]
    w = _square_weights(_maximal_last(partial).T).T
    return Signal2D(_along(w, 0, accumulate_down))


def mixed_MS(f: Signal2D) -> Signal2D:
    """``[MS]^2 f(x, y) = sum_J M_{d1}^2 f_J(x) 1~_J(y)``."""
    return mixed_SM(f.transpose()).transpose()


# ---------------------------------------------------------------------------
# Duality test functions and pointwise dominations
# ---------------------------------------------------------------------------


def phi1_1d(f: Signal1D, g: Signal1D) -> Signal1D:
    """``sum_{I even} <f>_I (T* g, h_I) h_I``; pairs with ``b`` like ``(Pi_1 f, g)``."""
    even, _ = parity_masks(f.values.size)
    avg = average_pyramid(f.values, include_cells=False)
    c = np.where(even, avg * haar_forward(apply_T_star(g).values), 0.0)
    return Signal1D(haar_inverse(c))


def phi2_1d(f: Signal1D, g: Signal1D) -> Signal1D:
    """``sum_I <T f>_I (g, h_I) h_I``."""
    avg = average_pyramid(apply_T(f).values, include_cells=False)
    c = avg * haar_forward(g.values)
    c[0] = 0.0
    return Signal1D(haar_inverse(c))


def _tensor_only(c: np.ndarray) -> np.ndarray:
    c = np.array(c)
    c[0, :] = 0.0
    c[:, 0] = 0.0
    return c


def phi_pipi_2d(f: Signal2D, g: Signal2D) -> Signal2D:
    """``sum <f>_{IxJ} (T* g, h_I (x) h_J) h_I (x) h_J``."""
    avg = average_pyramid(average_pyramid(f.values, include_cells=False).T, include_cells=False).T
    c = _tensor_only(avg * haar_forward2(apply_biT_star(g).values))
    return Signal2D(haar_inverse2(c))


def phi_piZ_2d(f: Signal2D, g: Signal2D) -> Signal2D:
    """``sum (f, 1~_I (x) h_J) (T* g, h_I (x) 1~_J) h_I (x) h_J``."""
    fy = mixed_y_table(f)  # (f, 1~_I (x) h_J)
    gx = mixed_x_table(apply_biT_star(g))  # (T*g, h_I (x) 1~_J)
    return Signal2D(haar_inverse2(_tensor_only(fy * gx)))


def phi_piD_2d(f: Signal2D, g: Signal2D) -> Signal2D:
    """``sum (f, 1~_I (x) h_J) (T* g, h_I (x) h_J) h_I (x) 1~_J``."""
    w = _tensor_only(mixed_y_table(f) * haar_forward2(apply_biT_star(g).values))
    # h_I in x: inverse Haar along x; 1~_J in y: accumulate along y
    in_x = haar_inverse(w.T).T
    return Signal2D(accumulate_down(_unit_avg_weights(in_x)))


def dominations_1d(f: Signal1D, g: Signal1D) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """``name -> (lhs, rhs)`` cell arrays for the one-parameter dominations."""
    tsg = apply_T_star(g)
    return {
        "S2(phi1) <= M2(f) S2(T*g)": (
            square_fn_1d(phi1_1d(f, g)).values,
            maximal_fn_1d(f).values ** 2 * square_fn_1d(tsg).values,
        ),
        "S2(phi2) <= M2(Tf) S2(g)": (
            square_fn_1d(phi2_1d(f, g)).values,
            maximal_fn_1d(apply_T(f)).values ** 2 * square_fn_1d(g).values,
        ),
    }


def dominations_2d(f: Signal2D, g: Signal2D) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """``name -> (lhs, rhs)`` cell arrays for the bi-parameter dominations."""
    tsg = apply_biT_star(g)
    return {
        "S2(phi_pipi) <= M2(f) S2(T*g)": (
            square_fn_2d(phi_pipi_2d(f, g)).values,
            maximal_fn_2d(f).values ** 2 * square_fn_2d(tsg).values,
        ),
        "S2(phi_piZ) <= [SM]2(T*g) [MS]2(f)": (
            square_fn_2d(phi_piZ_2d(f, g)).values,
            mixed_SM(tsg).values * mixed_MS(f).values,
        ),
        "S1^2(phi_piD) <= [MS]2(f) S2(T*g)": (
            square_fn_axis(phi_piD_2d(f, g), 0).values,
            mixed_MS(f).values * square_fn_2d(tsg).values,
        ),
    }


def l1_of_root(sq: np.ndarray) -> float:
    """``|| sqrt(sq) ||_1`` for a squared function given on cells."""
    return float(np.mean(np.sqrt(np.maximum(sq, 0.0))))


def duality_ratio_1d(b: Signal1D, phi: Signal1D) -> float:
    """``|(b, phi)| / (||b||_BMO ||S_d phi||_1)``."""
    den = bmo_norm_1d(b) * l1_of_root(square_fn_1d(phi).values)
    return abs(b.inner(phi)) / den if den > 0 else math.nan


def apply_Pi1_1d(b: Signal1D, f: Signal1D) -> Signal1D:
    """``sum_{I even} (b, h_I) <f>_I T h_I`` (first half of the pi term)."""
    even, _ = parity_masks(b.values.size)
    c = np.where(even, haar_forward(b.values) * average_pyramid(f.values, include_cells=False), 0.0)
    return apply_T(Signal1D(haar_inverse(c)))


def apply_Pi1_2d(b: Signal2D, f: Signal2D, kind) -> Signal2D:
    """``T kind(b, f)`` for the first halves used with the 2D dominations."""
    from .paraproducts import para2

    return apply_biT(para2(kind, b, f))
