"""Slow reference implementations built directly from sampled functions.

Nothing here uses the fast transforms of the package: Haar functions and
normalised indicators are written out cell by cell, inner products are plain
means of products, and suprema are explicit loops.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def all_intervals(max_level: int):
    """``(level, index)`` for every dyadic interval of level ``<= max_level``."""
    for k in range(max_level + 1):
        for j in range(1 << k):
            yield k, j


def contains(outer, inner) -> bool:
    (ko, jo), (ki, ji) = outer, inner
    return ki >= ko and (ji >> (ki - ko)) == jo


def haar_cells(k: int, j: int, n: int) -> np.ndarray:
    N = 1 << n
    v = np.zeros(N)
    width = N >> k
    half = width // 2
    amp = 2.0 ** (k / 2)
    v[j * width : j * width + half] = amp
    v[j * width + half : (j + 1) * width] = -amp
    return v


def avg_cells(k: int, j: int, n: int) -> np.ndarray:
    N = 1 << n
    v = np.zeros(N)
    width = N >> k
    v[j * width : (j + 1) * width] = 2.0**k
    return v


def ip(f: np.ndarray, g: np.ndarray) -> float:
    return float(np.mean(f * g))


def haar_coeff(b: np.ndarray, k: int, j: int) -> float:
    n = int(math.log2(b.size))
    return ip(b, haar_cells(k, j, n))


def bmo_1d(b: np.ndarray) -> float:
    """Double loop over ``I0`` and ``I <= I0``."""
    n = int(math.log2(b.size))
    best = 0.0
    for I0 in all_intervals(n - 1):
        s = sum(haar_coeff(b, *I) ** 2 for I in all_intervals(n - 1) if contains(I0, I))
        best = max(best, s * 2.0 ** I0[0])
    return math.sqrt(best)


def little_bmo_2d(b: np.ndarray) -> float:
    """Quadruple loop over ``I0 x J0`` and the subrectangles, three-term sum."""
    n = int(math.log2(b.shape[0]))
    ivs = list(all_intervals(n - 1))
    H = {I: haar_cells(*I, n) for I in ivs}
    A = {I: avg_cells(*I, n) for I in ivs}
    best = 0.0
    for I0, J0 in itertools.product(ivs, ivs):
        subs_x = [I for I in ivs if contains(I0, I)]
        subs_y = [J for J in ivs if contains(J0, J)]
        tensor = sum(ip(b, np.outer(H[I], H[J])) ** 2 for I in subs_x for J in subs_y)
        xm = sum(ip(b, np.outer(H[I], A[J0])) ** 2 for I in subs_x)
        ym = sum(ip(b, np.outer(A[I0], H[J])) ** 2 for J in subs_y)
        lx, ly = 2.0 ** -I0[0], 2.0 ** -J0[0]
        best = max(best, tensor / (lx * ly) + xm / lx + ym / ly)
    return math.sqrt(best)


def max_block_variance(b: np.ndarray, levels) -> float:
    """Largest cell variance of ``b`` over dyadic rectangles with the given side levels."""
    N = b.shape[0]
    best = 0.0
    for kx, ky in itertools.product(levels, levels):
        wx, wy = N >> kx, N >> ky
        for i in range(1 << kx):
            for j in range(1 << ky):
                best = max(best, float(b[i * wx : (i + 1) * wx, j * wy : (j + 1) * wy].var()))
    return best


def maximal_1d(f: np.ndarray) -> np.ndarray:
    N = f.size
    n = int(math.log2(N))
    out = np.zeros(N)
    for c in range(N):
        out[c] = max(abs(f[(c >> (n - k)) << (n - k) : ((c >> (n - k)) + 1) << (n - k)].mean()) for k in range(n + 1))
    return out


def maximal_2d(f: np.ndarray) -> np.ndarray:
    N = f.shape[0]
    n = int(math.log2(N))
    out = np.zeros_like(f)
    for x, y in itertools.product(range(N), range(N)):
        m = 0.0
        for kx, ky in itertools.product(range(n + 1), range(n + 1)):
            wx, wy = N >> kx, N >> ky
            i, j = x // wx, y // wy
            m = max(m, abs(f[i * wx : (i + 1) * wx, j * wy : (j + 1) * wy].mean()))
        out[x, y] = m
    return out


def square_1d(f: np.ndarray) -> np.ndarray:
    n = int(math.log2(f.size))
    return sum(haar_coeff(f, k, j) ** 2 * avg_cells(k, j, n) for k, j in all_intervals(n - 1))


def shift_matrix(n: int) -> np.ndarray:
    """Cell-basis matrix of the shift, assembled from outer products of Haar vectors."""
    N = 1 << n
    m = np.zeros((N, N))
    for k, j in all_intervals(n - 2):
        if k % 2:
            continue
        h = haar_cells(k, j, n)
        image = haar_cells(k + 1, 2 * j, n) - haar_cells(k + 1, 2 * j + 1, n)
        m += np.outer(image, h) / N
    return m
