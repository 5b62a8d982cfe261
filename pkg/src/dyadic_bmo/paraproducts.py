"""Paraproducts, their tensor products, and the commutator terms they induce.

A one-parameter paraproduct kind is a triple of function families
``(alpha, beta, gamma)`` and acts as

    K(b, f) = sum_I (b, alpha_I) (f, beta_I) gamma_I

with ``pi = (h, 1~, h)``, ``Z = (h, h, 1~)``, ``D = (1~, h, h)``.  On the
bounded domain [0, 1) the product ``b f`` also needs the global mean term
``MEAN = <b><f> 1``.  A bi-parameter kind is a pair of one-parameter kinds,
one per variable.

The ``closed_form_*`` functions are written independently in Haar
coefficient space, directly from the expanded term formulas, and serve as
reference values for ``commutator_term_*``.
"""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache

import numpy as np

from .core import (
    DepthMismatchError,
    Signal1D,
    Signal2D,
    haar_forward,
    haar_forward2,
    haar_inverse,
    haar_inverse2,
    haar_value_on_heap,
    level_of_slot,
    parity_masks,
)
from .shift import apply_biT, apply_T


class ParaKind1D(enum.Enum):
    PI = "pi"
    Z = "Z"
    D = "D"
    MEAN = "mean"

    def __str__(self):
        return self.value


ParaKind2D = tuple[ParaKind1D, ParaKind1D]

PI, Z, D, MEAN = ParaKind1D.PI, ParaKind1D.Z, ParaKind1D.D, ParaKind1D.MEAN

KINDS_1D: tuple[ParaKind1D, ...] = (PI, Z, D, MEAN)
KINDS_2D: tuple[ParaKind2D, ...] = tuple(itertools.product(KINDS_1D, KINDS_1D))
# The nine interior kinds, in the order the term formulas are usually listed.
PAPER_KINDS_2D: tuple[ParaKind2D, ...] = (
    (PI, PI),
    (Z, Z),
    (PI, Z),
    (Z, PI),
    (PI, D),
    (Z, D),
    (D, PI),
    (D, Z),
    (D, D),
)


def kind_name(kind) -> str:
    if isinstance(kind, ParaKind1D):
        return str(kind)
    return f"{kind[0]}{kind[1]}"


def parse_kind(name: str):
    """Inverse of :func:`kind_name` for 1D names and the 2D pair names."""
    by_value = {k.value: k for k in KINDS_1D}
    if name in by_value:
        return by_value[name]
    for kx, ky in KINDS_2D:
        if kind_name((kx, ky)) == name:
            return (kx, ky)
    raise ValueError(f"unknown paraproduct kind {name!r}")


# ---------------------------------------------------------------------------
# Cell-space function families
# ---------------------------------------------------------------------------

_FAMILIES = {
    PI: ("haar", "avg", "haar"),
    Z: ("haar", "haar", "avg"),
    D: ("avg", "haar", "haar"),
    MEAN: ("one", "one", "one"),
}


@lru_cache(maxsize=None)
def _family(name: str, n: int) -> np.ndarray:
    """Rows are the family members sampled on the depth-``n`` cells."""
    N = 1 << n
    if name == "one":
        rows = np.ones((1, N))
    elif name == "haar":
        # row h of haar_inverse(e_h) is h_I sampled on cells
        rows = haar_inverse(np.eye(N))[1:]
    elif name == "avg":
        rows = np.zeros((N - 1, N))
        for slot in range(1, N):
            lev = slot.bit_length() - 1
            width = N >> lev
            start = (slot - (1 << lev)) * width
            rows[slot - 1, start : start + width] = 2.0**lev
    else:
        raise KeyError(name)
    rows.flags.writeable = False
    return rows


def _check_depth(b, f):
    if type(b) is not type(f):
        raise TypeError("symbol and function must have the same dimension")
    if b.depth != f.depth:
        raise DepthMismatchError(f"depth {b.depth} vs {f.depth}")


def para1(kind: ParaKind1D, b: Signal1D, f: Signal1D) -> Signal1D:
    """One-parameter paraproduct ``kind(b, f)``."""
    _check_depth(b, f)
    n, N = b.depth, b.values.size
    a, be, g = (_family(name, n) for name in _FAMILIES[kind])
    weights = (a @ b.values / N) * (be @ f.values / N)
    return Signal1D(g.T @ weights)


def para2(kind: ParaKind2D, b: Signal2D, f: Signal2D) -> Signal2D:
    """Bi-parameter paraproduct: ``kind[0]`` acts in ``x``, ``kind[1]`` in ``y``."""
    _check_depth(b, f)
    n = b.depth
    NN = b.values.size
    kx, ky = kind
    ax, bx, gx = (_family(name, n) for name in _FAMILIES[kx])
    ay, by, gy = (_family(name, n) for name in _FAMILIES[ky])
    weights = (ax @ b.values @ ay.T / NN) * (bx @ f.values @ by.T / NN)
    return Signal2D(gx.T @ weights @ gy)


def commutator_term_1d(kind: ParaKind1D, b: Signal1D, f: Signal1D) -> Signal1D:
    """``T kind(b, f) - kind(b, T f)``."""
    return apply_T(para1(kind, b, f)) - para1(kind, b, apply_T(f))


def commutator_term_2d(kind: ParaKind2D, b: Signal2D, f: Signal2D) -> Signal2D:
    """``T kind(b, f) - kind(b, T f)`` with the tensor shift."""
    return apply_biT(para2(kind, b, f)) - para2(kind, b, apply_biT(f))


# ---------------------------------------------------------------------------
# Coefficient-space reference formulas
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _coeff_bases(n: int) -> dict[str, np.ndarray]:
    """Haar expansions of the building blocks, one row per heap slot.

    ``h``: h_I; ``Th``: h_{I+} - h_{I-} for representable even I;
    ``avg``: 1~_I = 1 + sum_{K > I} h_K(I) h_K; ``Tavg``: T applied to that
    expansion term by term.  Row 0 is zero everywhere.
    """
    N = 1 << n
    lev = level_of_slot(N)
    h = np.eye(N)
    h[0, 0] = 0.0
    th = np.zeros((N, N))
    avg = np.zeros((N, N))
    tavg = np.zeros((N, N))
    for i in range(1, N):
        if lev[i] % 2 == 0 and 2 * i + 1 < N:
            th[i, 2 * i] = 1.0
            th[i, 2 * i + 1] = -1.0
        avg[i, 0] = 1.0
        k = i >> 1
        while k >= 1:
            hv = haar_value_on_heap(k, i)
            avg[i, k] = hv
            if lev[k] % 2 == 0 and 2 * k + 1 < N:
                tavg[i, 2 * k] += hv
                tavg[i, 2 * k + 1] -= hv
            k >>= 1
    out = {"h": h, "Th": th, "avg": avg, "Tavg": tavg}
    for arr in out.values():
        arr.flags.writeable = False
    return out


def _parent_gather(n: int):
    """Parent slot and ``s(I, parent)`` for every slot (0 for slots 0 and 1)."""
    N = 1 << n
    slots = np.arange(N)
    parent = slots >> 1
    sign = np.where(slots % 2 == 0, 1.0, -1.0)
    sign[:2] = 0.0
    return parent, sign


def dd_term_closed_form_1d(b: Signal1D, f: Signal1D) -> Signal1D:
    """``sum_{I odd} -|parent|^{-1/2} (b, h_parent) (f, h_parent) h_I``."""
    _check_depth(b, f)
    n, N = b.depth, b.values.size
    bc, fc = haar_forward(b.values), haar_forward(f.values)
    parent, _ = _parent_gather(n)
    _, odd = parity_masks(N)
    lev_parent = level_of_slot(N)[parent]
    out = np.zeros(N)
    out[odd] = -(2.0 ** (lev_parent[odd] / 2)) * bc[parent[odd]] * fc[parent[odd]]
    return Signal1D(haar_inverse(out))


def closed_form_2d(kind: ParaKind2D, b: Signal2D, f: Signal2D) -> Signal2D:
    """Reference value of ``T kind(b, f) - kind(b, T f)`` for the nine interior kinds.

    Parity constraints on the first sums: a ``T h`` factor in a variable
    restricts that variable to even intervals; a ``T 1~`` factor carries no
    restriction.  Second sums that reduce to parents run over odd intervals.
    """
    _check_depth(b, f)
    n, N = b.depth, 1 << b.depth
    E = _coeff_bases(n)
    Bh, Fh = haar_forward2(b.values), haar_forward2(f.values)
    even, odd = parity_masks(N)
    parent, sgn = _parent_gather(n)

    def pair(G, u, v):
        # (g, u_I (x) v_J) for every slot pair
        return E[u] @ G @ E[v].T

    def build(w, u, v):
        # coefficient array of sum_{I,J} w[I,J] u_I (x) v_J
        return E[u].T @ w @ E[v]

    TF = E["Th"].T @ Fh @ E["Th"]
    odd_odd = np.outer(odd, odd)
    ss = np.outer(sgn, sgn)
    f_par = Fh[np.ix_(parent, parent)] * ss * odd_odd
    bt = pair(Bh, "h", "h")
    bx = pair(Bh, "h", "avg")  # (b, h_I (x) 1~_J)
    by = pair(Bh, "avg", "h")  # (b, 1~_I (x) h_J)
    ex, ey = even[:, None], even[None, :]

    if kind == (PI, PI):
        first = build(ex * ey * bt * pair(Fh, "avg", "avg"), "Th", "Th")
        second = build(bt * pair(TF, "avg", "avg"), "h", "h")
    elif kind == (Z, Z):
        first = build(bt * pair(Fh, "h", "h"), "Tavg", "Tavg")
        second = build(bt * f_par, "avg", "avg")
    elif kind == (PI, Z):
        first = build(ex * bt * pair(Fh, "avg", "h"), "Th", "Tavg")
        second = build(bt * pair(TF, "avg", "h"), "h", "avg")
    elif kind == (Z, PI):
        first = build(ey * bt * pair(Fh, "h", "avg"), "Tavg", "Th")
        second = build(bt * pair(TF, "h", "avg"), "avg", "h")
    elif kind == (PI, D):
        first = build(ex * ey * bx * pair(Fh, "avg", "h"), "Th", "Th")
        second = build(bx * pair(TF, "avg", "h"), "h", "h")
    elif kind == (Z, D):
        first = build(ey * bx * pair(Fh, "h", "h"), "Tavg", "Th")
        second = build(bx * f_par, "avg", "h")
    elif kind == (D, PI):
        first = build(ex * ey * by * pair(Fh, "h", "avg"), "Th", "Th")
        second = build(by * pair(TF, "h", "avg"), "h", "h")
    elif kind == (D, Z):
        first = build(ex * by * pair(Fh, "h", "h"), "Th", "Tavg")
        second = build(by * f_par, "h", "avg")
    elif kind == (D, D):
        avg_b = pair(Bh, "avg", "avg")
        diff = avg_b[np.ix_(parent, parent)] - avg_b
        first = build(diff * f_par, "h", "h")
        second = np.zeros_like(first)
    else:
        raise ValueError(f"no closed form for kind {kind_name(kind)}")
    return Signal2D(haar_inverse2(first - second))
