"""Laguerre functions and the Hurwitz zeta continuation.

The zeta checks use two independent in-test oracles: plain summation with
an integral tail bound for the convergent exponent, and a literal
Euler-Maclaurin formula at fixed order for the continued one.  mpmath
backs a final spot grid over the supported (s, q) window.
"""

import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from magwell.errors import NumericsError
from magwell.specfun import hurwitz_zeta, laguerre_fn

ZETA_32_1 = 2.612375348685488
ZETA_12_1 = -1.460354508809587


def _zeta_sum_tail(s, q, n=100000):
    """Partial sum plus Euler-Maclaurin tail, valid for s > 1."""
    terms = (np.arange(n) + q) ** (-s)
    edge = float(n) + q
    tail = (edge ** (1.0 - s) / (s - 1.0) + 0.5 * edge ** (-s)
            + s / 12.0 * edge ** (-s - 1.0))
    return math.fsum(terms) + tail


def test_laguerre_ground_at_origin():
    assert laguerre_fn(0, 0, 0.0) == 1.0


def test_laguerre_first_node():
    # I_{1,0}(x) = e^{-x/2} (1 - x), which vanishes at x = 1
    assert abs(laguerre_fn(1, 0, 1.0)) < 1e-15
    x = 0.3
    assert laguerre_fn(1, 0, x) == pytest.approx(math.exp(-x / 2) * (1 - x), rel=1e-14)


def test_laguerre_cross_orthogonality_quadrature():
    val, err = quad(lambda x: laguerre_fn(3, 1, x) * laguerre_fn(5, 1, x),
                    0.0, np.inf, limit=200)
    assert abs(val) < 1e-8
    assert err < 1e-8


@pytest.mark.parametrize("ell", [0, 1, -1, 2, -2])
def test_laguerre_orthonormality_matrix(ell):
    # integrand is e^{-x} times a polynomial of degree <= 18, so a 24-point
    # Gauss-Laguerre rule integrates it exactly
    nodes, weights = np.polynomial.laguerre.laggauss(24)
    funcs = np.array([laguerre_fn(n, ell, nodes) * np.exp(nodes / 2.0)
                      for n in range(9)])
    gram = funcs @ (weights[:, None] * funcs.T)
    assert np.max(np.abs(gram - np.eye(9))) < 1e-8


def test_laguerre_decay_at_large_argument():
    for n in (0, 3, 5):
        for ell in (0, 2):
            assert abs(laguerre_fn(n, ell, 200.0)) * math.exp(50.0) < 1e-9


def test_laguerre_high_order_stays_finite():
    x = np.linspace(0.0, 50.0, 7)
    vals = laguerre_fn(1000, 1, x)
    assert np.all(np.isfinite(vals))


def test_laguerre_rejects_bad_arguments():
    with pytest.raises(ValueError):
        laguerre_fn(-1, 0, 1.0)
    with pytest.raises(ValueError):
        laguerre_fn(0, 0, -0.5)


def test_zeta_convergent_anchor():
    # direct summation with tail bound, independent of the library path
    oracle = _zeta_sum_tail(1.5, 1.0)
    assert abs(oracle - ZETA_32_1) < 1e-10
    assert abs(hurwitz_zeta(1.5, 1.0) - oracle) < 1e-10
    assert abs(hurwitz_zeta(1.5, 1.0) - ZETA_32_1) < 1e-10


def test_zeta_continued_anchor():
    # literal Euler-Maclaurin at fixed split, written out independently
    n = 10000
    partial = math.fsum((k + 1.0) ** -0.5 for k in range(n))
    edge = float(n) + 1.0
    oracle = (partial - 2.0 * edge ** 0.5 + 0.5 * edge ** -0.5
              + edge ** -1.5 / 24.0)
    assert abs(oracle - ZETA_12_1) < 1e-10
    assert abs(hurwitz_zeta(0.5, 1.0) - ZETA_12_1) < 1e-10


def test_zeta_half_shift_identity():
    # zeta(s, 1/2) = (2^s - 1) zeta(s, 1), valid under continuation
    for s in (0.5, 1.5, -0.5):
        lhs = hurwitz_zeta(s, 0.5)
        rhs = (2.0 ** s - 1.0) * hurwitz_zeta(s, 1.0)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_zeta_recurrence_spot():
    s, q = 0.5, 0.3
    drop = hurwitz_zeta(s, q + 1.0) - hurwitz_zeta(s, q)
    assert abs(drop + q ** -s) < 1e-12


def test_zeta_recurrence_random_points():
    # q capped at 12 and s kept off the pole so that |zeta| stays small
    # enough for a 1e-12 absolute check to be meaningful in doubles
    rng = np.random.default_rng(20240817)
    count = 0
    while count < 100:
        s = float(rng.uniform(-1.0, 2.0))
        q = float(rng.uniform(0.3, 12.0))
        if abs(s - 1.0) < 0.1:
            continue
        count += 1
        err = hurwitz_zeta(s, q + 1.0) - hurwitz_zeta(s, q) + q ** -s
        assert abs(err) < 1e-12, (s, q, err)


def test_zeta_matches_partial_sums_above_one():
    for s, q in ((2.0, 3.7), (1.5, 0.25), (2.0, 100.0)):
        assert abs(hurwitz_zeta(s, q) - _zeta_sum_tail(s, q)) < 1e-10


def test_zeta_against_mpmath_grid():
    mpmath.mp.dps = 30
    for s in (-1.0, -0.5, 0.5, 1.5, 2.0):
        for q in (1e-6, 0.03, 0.5, 1.0, 7.3, 100.0):
            want = float(mpmath.zeta(s, q))
            got = hurwitz_zeta(s, q)
            assert got == pytest.approx(want, rel=1e-11, abs=1e-11), (s, q)


def test_zeta_rejects_bad_arguments():
    with pytest.raises(ValueError):
        hurwitz_zeta(0.5, 0.0)
    with pytest.raises(ValueError):
        hurwitz_zeta(0.5, -1.0)
    with pytest.raises(ValueError):
        hurwitz_zeta(1.0, 2.0)


def test_numerics_error_type_is_runtime():
    # adaptive doubling failure surfaces as the library's numeric error
    assert issubclass(NumericsError, RuntimeError)
