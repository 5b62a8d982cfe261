"""The order-one dyadic shift T, its adjoint, and the tensor shift T (x) T.

On Haar coefficients (heap layout) the shift is a sparse index map: the
coefficient of an even interval ``I`` is sent to ``+1`` on its left child and
``-1`` on its right child.  An even interval on the finest representable
level has no representable children and is sent to 0; with this truncation
``T`` and ``T*`` stay exact adjoints on every depth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    Signal1D,
    Signal2D,
    haar_forward,
    haar_inverse,
    level_of_slot,
)


def _parents_with_children(N: int) -> np.ndarray:
    """Heap slots of even intervals whose children are representable."""
    lev = level_of_slot(N)
    slots = np.arange(N)
    return slots[(lev >= 0) & (lev % 2 == 0) & (2 * slots + 1 < N)]


def shift_coeffs(c: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply T to Haar coefficient arrays along ``axis``."""
    c = np.moveaxis(np.asarray(c, dtype=float), axis, -1)
    N = c.shape[-1]
    out = np.zeros_like(c)
    p = _parents_with_children(N)
    out[..., 2 * p] = c[..., p]
    out[..., 2 * p + 1] = -c[..., p]
    return np.moveaxis(out, -1, axis)


def shift_adjoint_coeffs(c: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply T* to Haar coefficient arrays along ``axis``."""
    c = np.moveaxis(np.asarray(c, dtype=float), axis, -1)
    N = c.shape[-1]
    out = np.zeros_like(c)
    p = _parents_with_children(N)
    out[..., p] = c[..., 2 * p] - c[..., 2 * p + 1]
    return np.moveaxis(out, -1, axis)


def _along(values: np.ndarray, axis: int, coeff_map) -> np.ndarray:
    v = np.moveaxis(values, axis, -1)
    return np.moveaxis(haar_inverse(coeff_map(haar_forward(v))), -1, axis)


def apply_T(f: Signal1D) -> Signal1D:
    return Signal1D(_along(f.values, -1, shift_coeffs))


def apply_T_star(f: Signal1D) -> Signal1D:
    return Signal1D(_along(f.values, -1, shift_adjoint_coeffs))


def apply_TTstar(f: Signal1D) -> Signal1D:
    return Signal1D(_along(f.values, -1, lambda c: shift_coeffs(shift_adjoint_coeffs(c))))


def apply_T1(f: Signal2D) -> Signal2D:
    """T acting on the ``x`` variable only."""
    return Signal2D(_along(f.values, 0, shift_coeffs))


def apply_T2(f: Signal2D) -> Signal2D:
    """T acting on the ``y`` variable only."""
    return Signal2D(_along(f.values, 1, shift_coeffs))


def apply_T1_star(f: Signal2D) -> Signal2D:
    return Signal2D(_along(f.values, 0, shift_adjoint_coeffs))


def apply_T2_star(f: Signal2D) -> Signal2D:
    return Signal2D(_along(f.values, 1, shift_adjoint_coeffs))


def apply_biT(f: Signal2D) -> Signal2D:
    """The tensor shift ``T (x) T``."""
    return apply_T1(apply_T2(f))


def apply_biT_star(f: Signal2D) -> Signal2D:
    return apply_T1_star(apply_T2_star(f))


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A linear operator on depth-``n`` signals in the cell basis.

    For 2D signals cells are flattened row-major (``x`` major).  Because all
    cells have equal measure, the Euclidean transpose is the L2 adjoint and
    the spectral norm is the L2 operator norm.
    """

    entries: np.ndarray
    two_d: bool = False

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("OperatorMatrix needs a square array")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def T(self) -> OperatorMatrix:
        return OperatorMatrix(self.entries.T, self.two_d)

    def apply(self, f):
        if self.two_d:
            side = f.values.shape[0]
            return Signal2D((self.entries @ f.values.ravel()).reshape(side, side))
        return Signal1D(self.entries @ f.values)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "rows": self.entries.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict, two_d: bool = False) -> OperatorMatrix:
        m = cls(np.asarray(d["rows"], dtype=float), two_d)
        if m.dim != d["dim"]:
            raise ValueError("dim field disagrees with the rows")
        return m


def matrix_of(op: Callable, n: int, two_d: bool = False) -> OperatorMatrix:
    """Matrix of ``op`` obtained by applying it to every cell indicator."""
    if two_d:
        side = 1 << n
        dim = side * side
        cols = []
        for c in range(dim):
            e = np.zeros(dim)
            e[c] = 1.0
            cols.append(op(Signal2D(e.reshape(side, side))).values.ravel())
    else:
        dim = 1 << n
        cols = []
        for c in range(dim):
            e = np.zeros(dim)
            e[c] = 1.0
            cols.append(op(Signal1D(e)).values)
    return OperatorMatrix(np.column_stack(cols), two_d)


def shift_matrix(n: int) -> np.ndarray:
    """Cell-basis matrix of T, built from the Haar matrices in one shot."""
    eye = np.eye(1 << n)
    return haar_inverse(shift_coeffs(haar_forward(eye.T))).T


def bishift_matrix(n: int) -> np.ndarray:
    """Cell-basis matrix of T (x) T, row-major flattening."""
    t = shift_matrix(n)
    return np.kron(t, t)
