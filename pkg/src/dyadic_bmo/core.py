"""Dyadic intervals, step functions on the dyadic grid and the Haar transform.

Everything lives on [0, 1) (or [0, 1)^2) with the standard dyadic lattice.
A depth-``n`` signal is constant on the ``2**n`` cells of level ``n``.

Haar coefficients are stored in *heap layout*: slot 0 holds the mean and the
interval ``(level, index)`` sits at slot ``2**level + index``.  Haar
functions are L2-normalised and positive on the left half, so the left child
of an interval is its "plus" child.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np


class DepthError(ValueError):
    """Raised when an operation needs dyadic levels the grid cannot represent."""


class DepthMismatchError(ValueError):
    """Raised when two signals of different depth are combined."""


# ---------------------------------------------------------------------------
# Dyadic intervals and rectangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """The interval ``[index * 2**-level, (index + 1) * 2**-level)``."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"negative level {self.level}")
        if not 0 <= self.index < (1 << self.level):
            raise ValueError(f"index {self.index} out of range for level {self.level}")

    @classmethod
    def root(cls) -> DyadicInterval:
        return cls(0, 0)

    @classmethod
    def from_heap(cls, heap: int) -> DyadicInterval:
        if heap < 1:
            raise ValueError("heap index must be >= 1")
        level = heap.bit_length() - 1
        return cls(level, heap - (1 << level))

    @property
    def heap(self) -> int:
        return (1 << self.level) + self.index

    @property
    def length(self) -> float:
        return 2.0 ** (-self.level)

    @property
    def left(self) -> float:
        return self.index * self.length

    @property
    def right(self) -> float:
        return (self.index + 1) * self.length

    @property
    def is_even(self) -> bool:
        return self.level % 2 == 0

    @property
    def is_left_child(self) -> bool:
        return self.level >= 1 and self.index % 2 == 0

    def parent(self) -> DyadicInterval:
        if self.level == 0:
            raise DepthError("the root [0,1) has no parent")
        return DyadicInterval(self.level - 1, self.index // 2)

    def children(self) -> tuple[DyadicInterval, DyadicInterval]:
        """``(I_plus, I_minus)``, i.e. (left, right)."""
        return (
            DyadicInterval(self.level + 1, 2 * self.index),
            DyadicInterval(self.level + 1, 2 * self.index + 1),
        )

    @property
    def plus(self) -> DyadicInterval:
        return self.children()[0]

    @property
    def minus(self) -> DyadicInterval:
        return self.children()[1]

    def sibling(self) -> DyadicInterval:
        if self.level == 0:
            raise DepthError("the root [0,1) has no sibling")
        return DyadicInterval(self.level, self.index ^ 1)

    def ancestor(self, m: int) -> DyadicInterval:
        """The ``m``-fold parent ``I^(m)``."""
        if m < 0:
            raise ValueError("m must be non-negative")
        if m > self.level:
            raise DepthError(f"{self} has no ancestor {m} levels up")
        return DyadicInterval(self.level - m, self.index >> m)

    def contains(self, other: DyadicInterval) -> bool:
        """True if ``other`` is a (not necessarily strict) subinterval."""
        return other.level >= self.level and (other.index >> (other.level - self.level)) == self.index

    def strictly_contains(self, other: DyadicInterval) -> bool:
        return other.level > self.level and self.contains(other)

    def descendants(self, max_level: int, strict: bool = False) -> Iterator[DyadicInterval]:
        start = self.level + 1 if strict else self.level
        for lev in range(start, max_level + 1):
            shift = lev - self.level
            for j in range(self.index << shift, (self.index + 1) << shift):
                yield DyadicInterval(lev, j)

    def cell_slice(self, n: int) -> slice:
        """Cells of the depth-``n`` grid covered by this interval."""
        if self.level > n:
            raise DepthError(f"{self} is finer than the depth-{n} grid")
        width = 1 << (n - self.level)
        return slice(self.index * width, (self.index + 1) * width)

    def __repr__(self):
        return f"I({self.level},{self.index})"


def intervals(max_level: int, min_level: int = 0) -> Iterator[DyadicInterval]:
    """All dyadic intervals with ``min_level <= level <= max_level``."""
    for lev in range(min_level, max_level + 1):
        for j in range(1 << lev):
            yield DyadicInterval(lev, j)


@dataclass(frozen=True, order=True)
class DyadicRectangle:
    x: DyadicInterval
    y: DyadicInterval

    @property
    def area(self) -> float:
        return self.x.length * self.y.length

    def __repr__(self):
        return f"R({self.x!r}x{self.y!r})"


def sign_in_parent(interval: DyadicInterval) -> int:
    """``s(I, parent)``: +1 for the left child, -1 for the right child."""
    if interval.level == 0:
        raise DepthError("the root [0,1) has no parent")
    return 1 if interval.index % 2 == 0 else -1


def haar_value_on(outer: DyadicInterval, inner: DyadicInterval) -> float:
    """The constant value of ``h_outer`` on a strict subinterval ``inner``."""
    if not outer.strictly_contains(inner):
        raise ValueError(f"{inner} is not strictly inside {outer}")
    child = inner.ancestor(inner.level - outer.level - 1)
    return sign_in_parent(child) / math.sqrt(outer.length)


# ---------------------------------------------------------------------------
# Signals
# ---------------------------------------------------------------------------


def _depth_of(length: int) -> int:
    if length < 2 or length & (length - 1):
        raise ValueError(f"signal length {length} is not a power of two >= 2")
    return length.bit_length() - 1


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.flags.writeable = False
    return arr


class _SignalBase:
    values: np.ndarray

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.depth != self.depth:
            raise DepthMismatchError(f"depth {self.depth} vs {other.depth}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.values - other.values)

    def __neg__(self):
        return type(self)(-self.values)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return type(self)(self.values * float(other))
        self._check(other)
        return type(self)(self.values * other.values)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return type(self)(self.values / float(scalar))

    def norm(self) -> float:
        """L2 norm with respect to Lebesgue measure."""
        return math.sqrt(self.inner(self))

    def allclose(self, other, rtol=1e-12, atol=1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.values, other.values, rtol=rtol, atol=atol))

    def to_dict(self) -> dict:
        return {"depth": self.depth, "values": self.values.ravel().tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True, eq=False)
class Signal1D(_SignalBase):
    """A step function on the depth-``n`` dyadic grid of [0, 1)."""

    values: np.ndarray

    def __post_init__(self):
        vals = _frozen(self.values)
        if vals.ndim != 1:
            raise ValueError("Signal1D needs a 1-d array")
        _depth_of(vals.size)
        object.__setattr__(self, "values", vals)

    @property
    def depth(self) -> int:
        return _depth_of(self.values.size)

    @classmethod
    def constant(cls, c: float, n: int) -> Signal1D:
        return cls(np.full(1 << n, float(c)))

    @classmethod
    def zeros(cls, n: int) -> Signal1D:
        return cls.constant(0.0, n)

    def inner(self, other: Signal1D) -> float:
        self._check(other)
        return float(np.dot(self.values, other.values)) / self.values.size

    def refine(self, depth: int) -> Signal1D:
        if depth < self.depth:
            raise DepthError("refine() cannot coarsen a signal")
        return Signal1D(np.repeat(self.values, 1 << (depth - self.depth)))

    @classmethod
    def from_dict(cls, d: dict) -> Signal1D:
        sig = cls(np.asarray(d["values"], dtype=float))
        if sig.depth != d["depth"]:
            raise ValueError("depth field disagrees with the number of values")
        return sig


@dataclass(frozen=True, eq=False)
class Signal2D(_SignalBase):
    """A step function on the depth-``n`` dyadic grid of [0, 1)^2.

    ``values[i, j]`` is the value on the cell ``x``-cell ``i`` times ``y``-cell ``j``.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = _frozen(self.values)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError("Signal2D needs a square 2-d array")
        _depth_of(vals.shape[0])
        object.__setattr__(self, "values", vals)

    @property
    def depth(self) -> int:
        return _depth_of(self.values.shape[0])

    @classmethod
    def constant(cls, c: float, n: int) -> Signal2D:
        return cls(np.full((1 << n, 1 << n), float(c)))

    @classmethod
    def zeros(cls, n: int) -> Signal2D:
        return cls.constant(0.0, n)

    @classmethod
    def tensor(cls, u: Signal1D, v: Signal1D) -> Signal2D:
        if u.depth != v.depth:
            raise DepthMismatchError(f"depth {u.depth} vs {v.depth}")
        return cls(np.outer(u.values, v.values))

    def inner(self, other: Signal2D) -> float:
        self._check(other)
        return float(np.vdot(self.values, other.values)) / self.values.size

    def transpose(self) -> Signal2D:
        """Swap the roles of ``x`` and ``y``."""
        return Signal2D(self.values.T)

    def refine(self, depth: int) -> Signal2D:
        if depth < self.depth:
            raise DepthError("refine() cannot coarsen a signal")
        r = 1 << (depth - self.depth)
        return Signal2D(np.repeat(np.repeat(self.values, r, axis=0), r, axis=1))

    @classmethod
    def from_dict(cls, d: dict) -> Signal2D:
        n = int(d["depth"])
        sig = cls(np.asarray(d["values"], dtype=float).reshape(1 << n, 1 << n))
        return sig


# ---------------------------------------------------------------------------
# Fast Haar transform (heap layout), vectorised along leading axes
# ---------------------------------------------------------------------------


def haar_forward(a: np.ndarray) -> np.ndarray:
    """Haar coefficients of cell values along the last axis (heap layout)."""
    a = np.asarray(a, dtype=float)
    n = _depth_of(a.shape[-1])
    out = np.empty_like(a)
    avg = a
    for k in range(n - 1, -1, -1):
        left, right = avg[..., 0::2], avg[..., 1::2]
        # (f, h_I) = sqrt|I| * (avg_left - avg_right) / 2
        out[..., 1 << k : 2 << k] = (left - right) * (0.5 * 2.0 ** (-k / 2))
        avg = 0.5 * (left + right)
    out[..., 0] = avg[..., 0]
    return out


def haar_inverse(c: np.ndarray) -> np.ndarray:
    """Inverse of :func:`haar_forward`."""
    c = np.asarray(c, dtype=float)
    n = _depth_of(c.shape[-1])
    avg = c[..., 0:1]
    for k in range(n):
        d = c[..., 1 << k : 2 << k] * 2.0 ** (k / 2)
        nxt = np.empty(c.shape[:-1] + (2 << k,))
        nxt[..., 0::2] = avg + d
        nxt[..., 1::2] = avg - d
        avg = nxt
    return avg


def average_pyramid(a: np.ndarray, include_cells: bool = True) -> np.ndarray:
    """Averages over every dyadic interval, heap layout along the last axis.

    Output length is ``2N`` (levels ``0..n``) or ``N`` (levels ``0..n-1``);
    slot 0 is unused and set to zero.
    """
    a = np.asarray(a, dtype=float)
    N = a.shape[-1]
    n = _depth_of(N)
    out = np.zeros(a.shape[:-1] + (2 * N,))
    out[..., N:] = a
    for k in range(n - 1, -1, -1):
        child = out[..., 2 << k : 4 << k]
        out[..., 1 << k : 2 << k] = 0.5 * (child[..., 0::2] + child[..., 1::2])
    return out if include_cells else out[..., :N]


def accumulate_down(weights: np.ndarray) -> np.ndarray:
    """Cell values of ``sum_I weights[I] 1_I`` over levels ``0..n-1``.

    ``weights`` is heap-indexed with length ``N = 2**n`` along the last axis
    (slot 0 ignored); the result lives on the ``N``-cell grid.
    """
    w = np.asarray(weights, dtype=float)
    n = _depth_of(w.shape[-1])
    acc = w[..., 1:2]
    for k in range(1, n):
        acc = np.repeat(acc, 2, axis=-1) + w[..., 1 << k : 2 << k]
    return np.repeat(acc, 2, axis=-1)


def accumulate_to_cells(weights: np.ndarray, n: int) -> np.ndarray:
    """``sum_I weights[I] 1_I`` on the depth-``n`` grid.

    ``weights`` is heap-indexed over levels ``0..n-1`` (length ``2**n``) or
    levels ``0..n`` (length ``2**(n+1)``), along the last axis.
    """
    w = np.asarray(weights, dtype=float)
    N = 1 << n
    if w.shape[-1] == N:
        return accumulate_down(w)
    if w.shape[-1] == 2 * N:
        return accumulate_down(w[..., :N]) + w[..., N:]
    raise ValueError(f"weights of length {w.shape[-1]} do not fit depth {n}")


def subtree_sums(weights: np.ndarray) -> np.ndarray:
    """``S[I] = sum_{I' subset of I} weights[I']`` over a heap-indexed tree."""
    w = np.array(weights, dtype=float)
    L = w.shape[-1]
    n = _depth_of(L)
    for k in range(n - 2, -1, -1):
        child = w[..., 2 << k : 4 << k]
        w[..., 1 << k : 2 << k] += child[..., 0::2] + child[..., 1::2]
    w[..., 0] = 0.0
    return w


@lru_cache(maxsize=None)
def level_of_slot(N: int) -> np.ndarray:
    """Level of each heap slot ``1..N-1``; slot 0 gets -1."""
    lev = np.full(N, -1, dtype=int)
    for k in range(_depth_of(N) if N >= 2 else 0):
        lev[1 << k : 2 << k] = k
    lev.flags.writeable = False
    return lev


@lru_cache(maxsize=None)
def interval_lengths(N: int) -> np.ndarray:
    """``|I|`` for each heap slot ``1..N-1``; slot 0 gets 1 (the root mean)."""
    lev = level_of_slot(N)
    out = np.where(lev >= 0, 2.0 ** (-lev.astype(float)), 1.0)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def parity_masks(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Boolean masks of even-level and odd-level heap slots (slot 0 excluded)."""
    lev = level_of_slot(N)
    even = (lev >= 0) & (lev % 2 == 0)
    odd = (lev >= 0) & (lev % 2 == 1)
    even.flags.writeable = False
    odd.flags.writeable = False
    return even, odd


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HaarSpectrum1D:
    """Mean plus Haar coefficients ``(f, h_I)`` for all levels below ``depth``."""

    data: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.data)
        _depth_of(arr.size)
        object.__setattr__(self, "data", arr)

    @property
    def depth(self) -> int:
        return _depth_of(self.data.size)

    @property
    def mean(self) -> float:
        return float(self.data[0])

    def coeff(self, interval: DyadicInterval) -> float:
        if interval.level >= self.depth:
            raise DepthError(f"{interval} has no Haar coefficient at depth {self.depth}")
        return float(self.data[interval.heap])

    @cached_property
    def coeffs(self) -> dict[DyadicInterval, float]:
        return {DyadicInterval.from_heap(h): float(self.data[h]) for h in range(1, self.data.size)}

    def to_dict(self) -> dict:
        entries = [
            {"level": I.level, "index": I.index, "value": v} for I, v in self.coeffs.items()
        ]
        return {"depth": self.depth, "mean": self.mean, "entries": entries}

    @classmethod
    def from_dict(cls, d: dict) -> HaarSpectrum1D:
        data = np.zeros(1 << int(d["depth"]))
        data[0] = d["mean"]
        for e in d["entries"]:
            data[DyadicInterval(e["level"], e["index"]).heap] = e["value"]
        return cls(data)


@dataclass(frozen=True, eq=False)
class HaarSpectrum2D:
    """Coefficients against the full tensor basis ``{phi_a (x) phi_b}``.

    ``data[a, b]`` pairs ``b`` with ``phi_a(x) phi_b(y)`` where slot 0 is the
    constant 1 and slot ``h >= 1`` is the Haar function with heap index
    ``h``.  So ``data[0, 0]`` is the mean, ``data[I, 0]`` is
    ``(b, h_I (x) 1)``, ``data[0, J]`` is ``(b, 1 (x) h_J)`` and
    ``data[I, J]`` is ``(b, h_I (x) h_J)``.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.data)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("HaarSpectrum2D needs a square array")
        _depth_of(arr.shape[0])
        object.__setattr__(self, "data", arr)

    @property
    def depth(self) -> int:
        return _depth_of(self.data.shape[0])

    @property
    def mean(self) -> float:
        return float(self.data[0, 0])

    @property
    def tensor(self) -> np.ndarray:
        return self.data[1:, 1:]

    @property
    def x_mixed(self) -> np.ndarray:
        return self.data[1:, 0]

    @property
    def y_mixed(self) -> np.ndarray:
        return self.data[0, 1:]

    def coeff(self, I: DyadicInterval | None, J: DyadicInterval | None) -> float:
        """``(b, phi_I (x) phi_J)`` where ``None`` stands for the constant 1."""
        for K in (I, J):
            if K is not None and K.level >= self.depth:
                raise DepthError(f"{K} has no Haar coefficient at depth {self.depth}")
        a = 0 if I is None else I.heap
        b = 0 if J is None else J.heap
        return float(self.data[a, b])

    def to_dict(self) -> dict:
        N = self.data.shape[0]
        entries = []
        for a in range(N):
            for b in range(N):
                if a == 0 and b == 0:
                    continue
                I = DyadicInterval.from_heap(a) if a else None
                J = DyadicInterval.from_heap(b) if b else None
                entries.append(
                    {
                        "level": I.level if I else None,
                        "index": I.index if I else None,
                        "level2": J.level if J else None,
                        "index2": J.index if J else None,
                        "value": float(self.data[a, b]),
                    }
                )
        return {"depth": self.depth, "mean": self.mean, "entries": entries}

    @classmethod
    def from_dict(cls, d: dict) -> HaarSpectrum2D:
        N = 1 << int(d["depth"])
        data = np.zeros((N, N))
        data[0, 0] = d["mean"]
        for e in d["entries"]:
            a = 0 if e["level"] is None else DyadicInterval(e["level"], e["index"]).heap
            b = 0 if e["level2"] is None else DyadicInterval(e["level2"], e["index2"]).heap
            data[a, b] = e["value"]
        return cls(data)


# ---------------------------------------------------------------------------
# Basic functions and functionals, 1D
# ---------------------------------------------------------------------------


def _require_level(interval: DyadicInterval, n: int, haar: bool):
    limit = n - 1 if haar else n
    if interval.level > limit:
        what = "Haar function" if haar else "interval"
        raise DepthError(f"{what} on {interval} is not representable at depth {n}")


def haar(interval: DyadicInterval, n: int) -> Signal1D:
    """``h_I = |I|^{-1/2} (1_{I+} - 1_{I-})`` sampled on the depth-``n`` grid."""
    _require_level(interval, n, haar=True)
    v = np.zeros(1 << n)
    sl = interval.cell_slice(n)
    half = (sl.stop - sl.start) // 2
    amp = 1.0 / math.sqrt(interval.length)
    v[sl.start : sl.start + half] = amp
    v[sl.start + half : sl.stop] = -amp
    return Signal1D(v)


def indicator(interval: DyadicInterval, n: int) -> Signal1D:
    _require_level(interval, n, haar=False)
    v = np.zeros(1 << n)
    v[interval.cell_slice(n)] = 1.0
    return Signal1D(v)


def indicator_norm(interval: DyadicInterval, n: int) -> Signal1D:
    """``1_I / |I|``."""
    _require_level(interval, n, haar=False)
    v = np.zeros(1 << n)
    v[interval.cell_slice(n)] = 1.0 / interval.length
    return Signal1D(v)


def inner(f: Signal1D, g: Signal1D) -> float:
    return f.inner(g)


def average(f: Signal1D, interval: DyadicInterval) -> float:
    """``<f>_I``."""
    _require_level(interval, f.depth, haar=False)
    return float(np.mean(f.values[interval.cell_slice(f.depth)]))


def analyze(f: Signal1D) -> HaarSpectrum1D:
    return HaarSpectrum1D(haar_forward(f.values))


def synthesize(s: HaarSpectrum1D) -> Signal1D:
    return Signal1D(haar_inverse(s.data))


# ---------------------------------------------------------------------------
# 2D
# ---------------------------------------------------------------------------


def haar2(rect: DyadicRectangle, n: int) -> Signal2D:
    return Signal2D.tensor(haar(rect.x, n), haar(rect.y, n))


def indicator2(rect: DyadicRectangle, n: int) -> Signal2D:
    return Signal2D.tensor(indicator(rect.x, n), indicator(rect.y, n))


def indicator_norm2(rect: DyadicRectangle, n: int) -> Signal2D:
    return Signal2D.tensor(indicator_norm(rect.x, n), indicator_norm(rect.y, n))


def inner2(f: Signal2D, g: Signal2D) -> float:
    return f.inner(g)


def average2(f: Signal2D, rect: DyadicRectangle) -> float:
    n = f.depth
    _require_level(rect.x, n, haar=False)
    _require_level(rect.y, n, haar=False)
    return float(np.mean(f.values[rect.x.cell_slice(n), rect.y.cell_slice(n)]))


def haar_forward2(a: np.ndarray) -> np.ndarray:
    return haar_forward(haar_forward(a).swapaxes(-1, -2)).swapaxes(-1, -2)


def haar_inverse2(c: np.ndarray) -> np.ndarray:
    return haar_inverse(haar_inverse(c).swapaxes(-1, -2)).swapaxes(-1, -2)


def analyze2(f: Signal2D) -> HaarSpectrum2D:
    return HaarSpectrum2D(haar_forward2(f.values))


def synthesize2(s: HaarSpectrum2D) -> Signal2D:
    return Signal2D(haar_inverse2(s.data))


def mixed_x_table(b: Signal2D, include_cells: bool = False) -> np.ndarray:
    """``table[I, J] = (b, h_I (x) 1~_J)`` for all heap slots ``I`` and ``J``.

    Row 0 holds ``(b, 1 (x) 1~_J) = <b>_{[0,1) x J}``; column 0 is unused.
    """
    partial = haar_forward(b.values.T).T  # x-Haar coefficient functions of y
    return average_pyramid(partial, include_cells=include_cells)


def mixed_y_table(b: Signal2D, include_cells: bool = False) -> np.ndarray:
    """``table[I, J] = (b, 1~_I (x) h_J)``; column 0 holds y-means, row 0 unused."""
    return mixed_x_table(b.transpose(), include_cells=include_cells).T


def mixed_coeff_x(b: Signal2D, I: DyadicInterval, J: DyadicInterval) -> float:
    """``(b, h_I (x) 1~_J)``."""
    n = b.depth
    _require_level(I, n, haar=True)
    _require_level(J, n, haar=False)
    fI = haar(I, n).values @ b.values / (1 << n)  # function of y
    return float(np.mean(fI[J.cell_slice(n)]))


def mixed_coeff_y(b: Signal2D, I: DyadicInterval, J: DyadicInterval) -> float:
    """``(b, 1~_I (x) h_J)``."""
    return mixed_coeff_x(b.transpose(), J, I)


def haar_value_on_heap(outer_heap: int, inner_heap: int) -> float:
    """:func:`haar_value_on` for heap slots; returns 0 unless strictly nested."""
    if outer_heap < 1 or inner_heap <= outer_heap:
        return 0.0
    lo, li = outer_heap.bit_length() - 1, inner_heap.bit_length() - 1
    if li <= lo or (inner_heap >> (li - lo)) != outer_heap:
        return 0.0
    child = inner_heap >> (li - lo - 1)
    return (1.0 if child % 2 == 0 else -1.0) * 2.0 ** (lo / 2)
