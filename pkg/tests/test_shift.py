import json

import numpy as np
import pytest

import oracles
from conftest import random_signal
from dyadic_bmo.core import DyadicInterval, DyadicRectangle, Signal1D, Signal2D, haar, haar2, haar_forward, intervals
from dyadic_bmo.shift import (
    OperatorMatrix,
    apply_biT,
    apply_T,
    apply_T1,
    apply_T2,
    apply_T_star,
    apply_TTstar,
    bishift_matrix,
    matrix_of,
    shift_matrix,
)

ROOT = DyadicInterval.root()
L, R = DyadicInterval(1, 0), DyadicInterval(1, 1)


def test_shift_examples():
    n = 3
    assert apply_T(haar(ROOT, n)).allclose(haar(L, n) - haar(R, n))
    assert apply_T(haar(L, n)).allclose(Signal1D.zeros(n))
    assert apply_T(Signal1D.constant(1.0, n)).allclose(Signal1D.zeros(n))


def test_adjoint_examples():
    n = 3
    assert apply_T_star(haar(L, n)).allclose(haar(ROOT, n))
    assert apply_T_star(haar(R, n)).allclose(-haar(ROOT, n))
    assert apply_T_star(haar(ROOT, n)).allclose(Signal1D.zeros(n))


def test_TTstar_examples(rng):
    n = 3
    assert apply_TTstar(haar(L, n)).allclose(haar(L, n) - haar(R, n))
    assert apply_TTstar(haar(ROOT, n)).allclose(Signal1D.zeros(n))
    f = random_signal(rng, 5)
    assert apply_TTstar(f).allclose(apply_T(apply_T_star(f)))
    for J in intervals(4, min_level=1):
        if not J.is_even:
            assert apply_TTstar(haar(J, 5)).allclose(haar(J, 5) - haar(J.sibling(), 5))


def test_matrix_matches_oracle():
    for n in range(1, 6):
        assert np.abs(shift_matrix(n) - oracles.shift_matrix(n)).max() <= 1e-13
        assert np.abs(matrix_of(apply_T, n).entries - shift_matrix(n)).max() <= 1e-13


def test_nonzero_singular_values_are_sqrt2():
    s = np.linalg.svd(shift_matrix(4), compute_uv=False)
    nz = s[s > 1e-9]
    assert nz.size > 0 and np.allclose(nz, np.sqrt(2), atol=1e-12)


def test_adjointness_random_pairs(rng):
    for _ in range(100):
        f, g = random_signal(rng, 5), random_signal(rng, 5)
        assert abs(apply_T(f).inner(g) - f.inner(apply_T_star(g))) <= 1e-12


def test_parity_grading():
    n = 6
    N = 1 << n
    H = haar_forward(np.eye(N)).T * N  # columns: cells -> coefficients, rows scaled
    t = H @ shift_matrix(n) @ np.linalg.inv(H)  # shift in coefficient coordinates
    lev = np.array([0] + [s.bit_length() - 1 for s in range(1, N)])
    even_src = (lev % 2 == 0) & (np.arange(N) > 0)
    # columns of odd levels and the mean vanish; images of even levels sit one level down
    assert np.abs(t[:, ~even_src]).max() <= 1e-12
    rows, cols = np.nonzero(np.abs(t) > 1e-12)
    assert np.all(lev[rows] == lev[cols] + 1) and np.all(lev[rows] % 2 == 1)
    # T^2 = 0 because an odd level is never shifted again
    assert np.abs(t @ t).max() <= 1e-12


def test_truncation_containment(rng):
    n = 5
    c = np.zeros(1 << n)
    c[1 : 1 << (n - 1)] = rng.standard_normal((1 << (n - 1)) - 1)  # levels <= n - 2
    from dyadic_bmo.core import haar_inverse

    f = Signal1D(haar_inverse(c))
    assert apply_T(f).refine(n + 1).allclose(apply_T(f.refine(n + 1)))
    # a level n-1 even interval is dropped at depth n but not at depth n + 1
    g = haar(DyadicInterval(4, 3), 5)
    assert apply_T(g).allclose(Signal1D.zeros(5))
    assert apply_T(g.refine(6)).norm() == pytest.approx(np.sqrt(2))


def test_two_parameter_shift(rng):
    n = 4
    F = random_signal(rng, n, dim=2)
    assert apply_T1(apply_T2(F)).allclose(apply_T2(apply_T1(F)))
    assert apply_biT(F).allclose(apply_T1(apply_T2(F)))
    I, J = ROOT, DyadicInterval(2, 1)
    expected = Signal2D.tensor(haar(L, n) - haar(R, n), haar(J.plus, n) - haar(J.minus, n))
    assert apply_biT(haar2(DyadicRectangle(I, J), n)).allclose(expected)
    assert apply_biT(haar2(DyadicRectangle(L, J), n)).allclose(Signal2D.zeros(n))
    assert np.allclose(matrix_of(apply_biT, 3, two_d=True).entries, bishift_matrix(3))


def test_operator_matrix_serialization():
    m = OperatorMatrix(shift_matrix(2))
    d = json.loads(m.to_json())
    assert d["dim"] == 4
    assert np.array_equal(OperatorMatrix.from_dict(d).entries, m.entries)
    assert np.array_equal(m.T.entries, m.entries.T)
    with pytest.raises(ValueError):
        OperatorMatrix(np.ones((2, 3)))
