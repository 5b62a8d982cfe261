import math
from collections import defaultdict

import numpy as np
import pytest

from conftest import random_signal
from dyadic_bmo.commutators import (
    ConvergenceError,
    basebound_checks,
    commutator_apply_1d,
    commutator_apply_2d,
    commutator_matrix_1d,
    commutator_matrix_2d,
    dia_checks,
    generalized_pairing,
    group_norm_formulas,
    group_terms,
    operator_norm,
    pairing,
    pairing1,
    sigma1,
    sigma2,
    sigma21,
    sigma22,
    sigma_norm_formulas,
    probe_function,
)
from dyadic_bmo.core import (
    DyadicInterval,
    DyadicRectangle,
    Signal1D,
    Signal2D,
    analyze,
    analyze2,
    haar,
    haar2,
    intervals,
)
from dyadic_bmo.paraproducts import PI, commutator_term_1d, para2
from dyadic_bmo.shift import OperatorMatrix, apply_biT, apply_T1_star, apply_T2_star

ROOT = DyadicInterval.root()


def test_commutator_examples():
    n = 2
    h = haar(ROOT, n)
    assert commutator_apply_1d(Signal1D.constant(3.0, n), h).allclose(Signal1D.zeros(n))
    r2 = math.sqrt(2)
    assert np.allclose(commutator_apply_1d(h, h).values, [-r2, r2, -r2, r2])


def test_matrix_consistency(rng):
    b, f = random_signal(rng, 5), random_signal(rng, 5)
    assert commutator_matrix_1d(b).apply(f).allclose(commutator_apply_1d(b, f))
    B, F = random_signal(rng, 3, 2), random_signal(rng, 3, 2)
    assert commutator_matrix_2d(B).apply(F).allclose(commutator_apply_2d(B, F))


def test_constant_shift_invariance(rng):
    b = random_signal(rng, 4)
    m1 = commutator_matrix_1d(b).entries
    m2 = commutator_matrix_1d(b + Signal1D.constant(5.0, 4)).entries
    assert np.abs(m1 - m2).max() <= 1e-12
    B = random_signal(rng, 2, 2)
    assert np.abs(
        commutator_matrix_2d(B).entries - commutator_matrix_2d(B + Signal2D.constant(-2.0, 2)).entries
    ).max() <= 1e-12


def test_operator_norm_examples(rng):
    assert operator_norm(np.eye(8)).value == pytest.approx(1.0, abs=1e-12)
    zero = operator_norm(np.zeros((8, 8)))
    assert zero.value == 0.0 and zero.residual == 0.0
    for _ in range(20):
        m = rng.standard_normal((16, 16))
        truth = np.linalg.svd(m, compute_uv=False)[0]
        for method in ("auto", "dense"):
            res = operator_norm(m, method=method)
            assert abs(res.value - truth) <= 1e-10 * truth
            assert res.residual <= 1e-9


def test_power_iteration_certificate(rng):
    m = rng.standard_normal((12, 12))
    m = m @ np.diag([10.0] + [1.0] * 11)  # clear spectral gap
    res = operator_norm(OperatorMatrix(m), method="power")
    assert res.method == "power" and res.residual <= 1e-9 and res.iterations > 0
    assert res.value == pytest.approx(np.linalg.norm(m, 2), rel=1e-9)


def test_operator_norm_errors(rng):
    m = rng.standard_normal((6, 6))
    with pytest.raises(ConvergenceError) as info:
        operator_norm(m, tol=1e-15, max_iter=2, method="power")
    assert info.value.best.value > 0
    bad = np.ones((3, 3))
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        operator_norm(bad)
    with pytest.raises(ValueError):
        operator_norm(m, method="lanczos")


def test_commutator_norm_is_monotone_in_depth(rng):
    b = random_signal(rng, 3)
    norms = [operator_norm(commutator_matrix_1d(b.refine(n))).value for n in (3, 4, 5, 6)]
    assert all(y >= x - 1e-9 for x, y in zip(norms, norms[1:]))


def test_pairing_consistency(rng):
    n = 3
    B = random_signal(rng, n, 2)
    Rin = DyadicRectangle(ROOT, DyadicInterval(1, 1))
    Rout = DyadicRectangle(DyadicInterval(1, 0), DyadicInterval(2, 2))
    direct = commutator_apply_2d(B, haar2(Rin, n)).inner(haar2(Rout, n))
    assert pairing(B, Rin, Rout) == pytest.approx(direct, abs=1e-14)
    u = apply_T2_star(haar2(Rin, n))
    assert generalized_pairing(B, u, haar2(Rout, n)) == pytest.approx(
        commutator_apply_2d(B, u).inner(haar2(Rout, n)), abs=1e-14
    )


def test_dia_examples(rng):
    n = 6
    b = random_signal(rng, n)
    spec = analyze(b)
    I = DyadicInterval(2, 1)
    assert abs(pairing1(b, I, I.plus)) == pytest.approx(abs(spec.coeff(I)) / math.sqrt(I.length))
    J = DyadicInterval(3, 5)
    assert abs(pairing1(b, J, J.ancestor(2))) == pytest.approx(abs(spec.coeff(J)) / math.sqrt(8 * J.length))
    const = Signal1D.constant(1.5, n)
    assert all(abs(c.direct) <= 1e-13 for c in dia_checks(const))


def test_dia_checks_all_hold(rng):
    b = random_signal(rng, 6)
    seen = defaultdict(int)
    for chk in dia_checks(b):
        seen[chk.case] += 1
        assert chk.residual <= 1e-10, chk
    assert set(seen) == {"dia-even", "dia-even-abs", "dia-odd", "dia-odd-abs"}


def test_basebound_cases_all_hold(rng):
    b = random_signal(rng, 4, 2)
    seen = defaultdict(int)
    for chk in basebound_checks(b):
        seen[chk.case] += 1
        assert chk.residual <= 1e-10, chk
    expected = {"Ia", "Ib", "Ic", "Id", "Ie", "If", "IIa", "IIb", "IIc", "IIIa", "IIIb", "IIIc", "IV"}
    assert set(seen) == expected


def test_case_IIc_magnitude(rng):
    n = 4
    b = random_signal(rng, n, 2)
    spec = analyze2(b)
    I, J = ROOT, DyadicInterval(1, 0)
    u = probe_function("hT", I, J, n)
    for L in J.children():
        direct = generalized_pairing(b, u, haar2(DyadicRectangle(I, L), n))
        expected = abs(sum(spec.coeff(C, L) for C in I.children())) / math.sqrt(I.length * J.length)
        assert abs(direct) == pytest.approx(expected, abs=1e-12)


def test_probe_functions(rng):
    n = 3
    I, J = DyadicInterval(1, 1), DyadicInterval(2, 0)
    base = haar2(DyadicRectangle(I, J), n)
    assert probe_function("hh", I, J, n).allclose(base)
    assert probe_function("TT", I, J, n).allclose(apply_T1_star(apply_T2_star(base)))
    with pytest.raises(ValueError):
        probe_function("xx", I, J, n)


def test_sigma_split_and_orthogonality(rng):
    n = 6
    b, f, g = random_signal(rng, n), random_signal(rng, n), random_signal(rng, n)
    assert np.abs((commutator_term_1d(PI, b, f) - sigma1(b, f) - sigma2(b, f)).values).max() <= 1e-12
    assert abs(sigma1(b, f).inner(sigma2(b, g))) <= 1e-12
    assert sigma2(b, f).allclose(sigma21(b, f) - sigma22(b, f))


def test_sigma_norm_formulas(rng):
    n = 6
    b = random_signal(rng, n)
    for I0 in intervals(n - 2):
        if not I0.is_even:
            continue
        h = haar(I0, n)
        formulas = sigma_norm_formulas(b, I0)
        assert formulas["sigma1"] == pytest.approx(sigma1(b, h).norm() ** 2, rel=1e-12, abs=1e-12)
        assert formulas["sigma21"] == pytest.approx(sigma21(b, h).norm() ** 2, rel=1e-12, abs=1e-12)
        assert formulas["sigma22"] == pytest.approx(sigma22(b, h).norm() ** 2, rel=1e-12, abs=1e-12)


def test_group_pieces(rng):
    n = 4
    b = random_signal(rng, n, 2)
    for I0 in intervals(n - 1):
        for J0 in intervals(n - 1):
            pieces = group_terms(b, I0, J0)
            f = haar2(DyadicRectangle(I0, J0), n)
            assert pieces["pipi1"].allclose(apply_biT(para2((PI, PI), b, f)))
            for name, value in group_norm_formulas(b, I0, J0).items():
                assert value == pytest.approx(pieces[name].norm() ** 2, rel=1e-11, abs=1e-11)
