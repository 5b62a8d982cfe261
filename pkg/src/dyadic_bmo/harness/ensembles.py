"""Seeded random symbols for the experiments.

Every draw is keyed by ``(seed, depth, sample index, dimension, stream)``
through :class:`numpy.random.SeedSequence`, so a sample does not depend on
how many samples were drawn before it or on which other streams were used.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..core import Signal1D, Signal2D, haar_inverse, haar_inverse2, level_of_slot


class EnsembleKind(enum.Enum):
    GAUSSIAN_FLAT = "gaussian-flat"
    GAUSSIAN_DECAY = "gaussian-decay"
    SPARSE_RANDOM = "sparse-random"
    SINGLE_HAAR = "single-haar"
    INDICATOR = "indicator"

    def __str__(self):
        return self.value


# stream ids keep the symbol and the auxiliary test functions independent
STREAM_SYMBOL = 0
STREAM_F = 1
STREAM_G = 2


def sample_rng(seed: int, depth: int, index: int, dim: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, depth, index, dim, stream]))


@dataclass(frozen=True)
class SymbolEnsemble:
    """A family of random symbols ``b``.

    ``alpha`` only affects ``gaussian-decay`` (coefficients at level ``k``
    are scaled by ``2^{-alpha k}``; in 2D ``k`` is the sum of both levels).
    ``sparsity`` is the number of nonzero coefficients for ``sparse-random``.
    ``single-haar`` draws one unit Haar (tensor Haar in 2D) coefficient and
    ``indicator`` the indicator of a random dyadic interval or rectangle
    other than the whole domain.
    """

    kind: EnsembleKind = EnsembleKind.GAUSSIAN_DECAY
    seed: int = 0
    alpha: float = 0.0
    sparsity: int = 3

    def __post_init__(self):
        object.__setattr__(self, "kind", EnsembleKind(self.kind))
        if self.sparsity < 1:
            raise ValueError("sparsity must be positive")

    def describe(self) -> dict:
        return {"kind": str(self.kind), "seed": self.seed, "alpha": self.alpha, "sparsity": self.sparsity}

    def _coeffs(self, rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
        N = shape[0]
        kind = self.kind
        if kind in (EnsembleKind.GAUSSIAN_FLAT, EnsembleKind.GAUSSIAN_DECAY):
            c = rng.standard_normal(shape)
            if kind is EnsembleKind.GAUSSIAN_DECAY and self.alpha:
                lev = level_of_slot(N).astype(float)
                total = lev if len(shape) == 1 else lev[:, None] + lev[None, :]
                c *= 2.0 ** (-self.alpha * total)
            return c
        c = np.zeros(shape)
        if kind is EnsembleKind.SPARSE_RANDOM:
            k = min(self.sparsity, c.size - 1)
            flat = rng.choice(np.arange(1, c.size), size=k, replace=False)
            c.ravel()[flat] = rng.standard_normal(k)
            return c
        if kind is EnsembleKind.SINGLE_HAAR:
            idx = tuple(int(rng.integers(1, N)) for _ in shape)
            c[idx] = 1.0
            return c
        raise AssertionError(kind)

    def _indicator(self, rng: np.random.Generator, N: int, dim: int) -> np.ndarray:
        while True:
            slots = [int(rng.integers(1, 2 * N)) for _ in range(dim)]
            if any(s > 1 for s in slots):
                break
        masks = []
        for s in slots:
            lev = s.bit_length() - 1
            width = N >> lev
            start = (s - (1 << lev)) * width
            m = np.zeros(N)
            m[start : start + width] = 1.0
            masks.append(m)
        return masks[0] if dim == 1 else np.outer(masks[0], masks[1])

    def sample_1d(self, depth: int, index: int) -> Signal1D:
        rng = sample_rng(self.seed, depth, index, 1, STREAM_SYMBOL)
        N = 1 << depth
        if self.kind is EnsembleKind.INDICATOR:
            return Signal1D(self._indicator(rng, N, 1))
        return Signal1D(haar_inverse(self._coeffs(rng, (N,))))

    def sample_2d(self, depth: int, index: int) -> Signal2D:
        rng = sample_rng(self.seed, depth, index, 2, STREAM_SYMBOL)
        N = 1 << depth
        if self.kind is EnsembleKind.INDICATOR:
            return Signal2D(self._indicator(rng, N, 2))
        return Signal2D(haar_inverse2(self._coeffs(rng, (N, N))))


def random_pair_1d(seed: int, depth: int, index: int) -> tuple[Signal1D, Signal1D]:
    """Independent standard-normal cell values for the functions ``f`` and ``g``."""
    N = 1 << depth
    f = sample_rng(seed, depth, index, 1, STREAM_F).standard_normal(N)
    g = sample_rng(seed, depth, index, 1, STREAM_G).standard_normal(N)
    return Signal1D(f), Signal1D(g)


def random_pair_2d(seed: int, depth: int, index: int) -> tuple[Signal2D, Signal2D]:
    N = 1 << depth
    f = sample_rng(seed, depth, index, 2, STREAM_F).standard_normal((N, N))
    g = sample_rng(seed, depth, index, 2, STREAM_G).standard_normal((N, N))
    return Signal2D(f), Signal2D(g)
