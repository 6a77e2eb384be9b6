"""Spectral equation: sum strategies, roots, and the closed-form level."""

import math

import mpmath as mp
import numpy as np
import pytest

from magwell.errors import ConfigError, NoBoundStateError, NumericsError
from magwell.params import DimensionlessParams
from magwell.spectrum import (
    TRUNCATED,
    ZETA_REGULARIZED,
    SpectralConfig,
    coefficient_profile,
    e_min_closed_form,
    solve_spectrum,
    spectral_sum,
)


def _params(lambda_t=0.3, xi=0.0, s=-1):
    return DimensionlessParams(xi=xi, lambda_t=lambda_t, s=s)


def _mp_regularized_sum(xi, q):
    z_h = mp.zeta(mp.mpf("0.5"), q)
    z_mh = mp.zeta(mp.mpf("-0.5"), q)
    return z_h - mp.mpf("0.8") * xi * (z_mh + (mp.mpf("0.5") - q) * z_h)


def test_truncated_single_term_is_exact():
    # w_0 = 1 and q = 1 at these arguments, so S = 1 with no rounding
    cfg = SpectralConfig(mode=TRUNCATED, n_max=0)
    assert spectral_sum(-1.0, _params(xi=0.0), cfg) == 1.0


def test_zeta_mode_reduces_to_hurwitz_at_zero_xi():
    mp.mp.dps = 30
    cfg = SpectralConfig(mode=ZETA_REGULARIZED)
    got = spectral_sum(-1.0, _params(xi=0.0), cfg)
    want = float(mp.zeta(mp.mpf("0.5"), 1))
    assert got == pytest.approx(want, abs=1e-12)


def test_truncated_matches_direct_summation():
    mp.mp.dps = 30
    cfg = SpectralConfig(mode=TRUNCATED, n_max=10)
    got = spectral_sum(-0.5, _params(xi=0.05), cfg)
    xi = mp.mpf("0.05")
    q = mp.mpf("0.5")
    want = mp.fsum((1 - mp.mpf("0.8") * xi * (mp.mpf("0.5") + n)) / mp.sqrt(n + q)
                   for n in range(11))
    assert got == pytest.approx(float(want), abs=1e-13)


def test_truncated_zero_root_closed_form():
    cfg = SpectralConfig(mode=TRUNCATED, n_max=0)
    d = _params(lambda_t=0.3, xi=0.0)
    root = solve_spectrum(d, cfg)
    assert root.epsilon == pytest.approx(-0.02, abs=1e-12)

    d = _params(lambda_t=0.3, xi=0.05)
    root = solve_spectrum(d, cfg)
    want = -d.g ** 2 * (1.0 - 0.4 * d.xi) ** 2
    assert root.epsilon == pytest.approx(want, abs=1e-12)


def test_zero_coupling_has_no_root():
    with pytest.raises(NoBoundStateError):
        solve_spectrum(_params(lambda_t=0.0))


def test_zeta_root_satisfies_equation_in_high_precision():
    mp.mp.dps = 30
    d = _params(lambda_t=0.2, xi=0.05)
    root = solve_spectrum(d, SpectralConfig(mode=ZETA_REGULARIZED))
    # frozen from a converged run; the mpmath residual below is the real check
    assert root.epsilon == pytest.approx(-0.0066273044609691037, abs=1e-12)
    q = d.threshold - mp.mpf(root.epsilon)
    residual = mp.mpf(d.g) * _mp_regularized_sum(mp.mpf("0.05"), q) - 1
    assert abs(float(residual)) < 1e-10


def test_root_residual_within_reported_tolerance():
    cfg = SpectralConfig(mode=ZETA_REGULARIZED, root_tol=1e-12)
    root = solve_spectrum(_params(lambda_t=0.3, xi=0.05), cfg)
    assert root.residual <= 10.0 * cfg.root_tol
    assert root.mode == ZETA_REGULARIZED
    assert root.n_max is None


def test_e_min_closed_form_values():
    assert e_min_closed_form(_params(lambda_t=0.3, xi=0.0)) == -0.02
    got = e_min_closed_form(_params(lambda_t=0.3, xi=0.1))
    assert got == pytest.approx(-0.02 * 0.96, rel=1e-15)
    assert e_min_closed_form(_params(lambda_t=0.0, xi=0.05)) == 0.0
    with pytest.raises(ValueError):
        e_min_closed_form(_params(lambda_t=0.3, xi=0.0, s=+1))


def test_closed_form_vs_truncated_zero_ratio():
    # e_closed / root_T0 = 1/(1 - (2/5) xi); both sides are first order in xi
    cfg = SpectralConfig(mode=TRUNCATED, n_max=0)
    for xi in (0.01, 0.05, 0.1):
        d = _params(lambda_t=0.3, xi=xi)
        root = solve_spectrum(d, cfg)
        ratio = e_min_closed_form(d) / root.epsilon
        assert ratio == pytest.approx(1.0 / (1.0 - 0.4 * xi), abs=1e-10)


def test_coefficient_profile_arithmetic():
    d = _params(xi=0.0)
    assert coefficient_profile(-1.0, d, 0, 0.0) == 1.0
    assert coefficient_profile(-1.0, d, 1, 0.0) == 0.5
    d = _params(xi=0.05)
    assert coefficient_profile(-1.0, d, 0, 0.0) == pytest.approx(0.99, rel=1e-15)
    assert coefficient_profile(-1.0, d, 0, 2.0) == pytest.approx(0.99 / 3.0, rel=1e-15)


def test_spectral_sum_increases_toward_threshold():
    d = _params(lambda_t=0.3, xi=0.05)
    eps = np.linspace(-5.0, -1e-6, 64)
    for cfg in (SpectralConfig(mode=TRUNCATED, n_max=10),
                SpectralConfig(mode=ZETA_REGULARIZED)):
        vals = np.array([spectral_sum(e, d, cfg) for e in eps])
        assert np.all(np.diff(vals) > 0.0)


def test_truncated_roots_deepen_with_more_terms():
    # the raw sum diverges, so adding terms keeps pushing the root down
    d = _params(lambda_t=0.3, xi=0.01)
    roots = []
    for n_max in (0, 1, 2, 4, 8, 16):
        cfg = SpectralConfig(mode=TRUNCATED, n_max=n_max)
        roots.append(solve_spectrum(d, cfg).epsilon)
    assert all(b < a for a, b in zip(roots, roots[1:]))


def test_zeta_root_approaches_closed_form_at_weak_coupling():
    cfg = SpectralConfig(mode=ZETA_REGULARIZED)
    errors = []
    for g in (1e-2, 1e-3, 1e-4):
        d = _params(lambda_t=3.0 * g / math.sqrt(2.0), xi=0.0)
        root = solve_spectrum(d, cfg)
        ratio = root.epsilon / e_min_closed_form(d)
        errors.append(abs(ratio - 1.0))
    assert all(err < 0.05 for err in errors)
    assert errors[0] > errors[1] > errors[2]


def test_spectral_sum_rejects_eps_at_threshold():
    d = _params(xi=0.05)
    cfg = SpectralConfig(mode=ZETA_REGULARIZED)
    with pytest.raises(ValueError):
        spectral_sum(0.0, d, cfg)
    with pytest.raises(ValueError):
        spectral_sum(0.5, d, cfg)


def test_truncated_weights_must_stay_positive():
    # n_max = 16 at xi = 0.1 crosses w_n = 0 near n = 12
    d = _params(xi=0.1)
    cfg = SpectralConfig(mode=TRUNCATED, n_max=16)
    with pytest.raises(ConfigError):
        spectral_sum(-1.0, d, cfg)


def test_config_validation():
    with pytest.raises(ConfigError):
        SpectralConfig(mode="graph")
    with pytest.raises(ConfigError):
        SpectralConfig(mode=TRUNCATED)
    with pytest.raises(ConfigError):
        SpectralConfig(mode=ZETA_REGULARIZED, n_max=5)
    with pytest.raises(ConfigError):
        SpectralConfig(root_tol=0.0)
    with pytest.raises(ConfigError):
        SpectralConfig(max_iter=3)


def test_bracket_errors():
    d = _params(lambda_t=0.01, xi=0.0)
    with pytest.raises(NoBoundStateError):
        # bracket entirely below the root: f < 0 at both ends
        solve_spectrum(d, SpectralConfig(bracket=(-10.0, -1.0)))
    d = _params(lambda_t=0.3, xi=0.0)
    with pytest.raises(NumericsError):
        # bracket entirely above the root: f(lo) already positive
        solve_spectrum(d, SpectralConfig(bracket=(-1e-6, -1e-9)))
    with pytest.raises(ConfigError):
        solve_spectrum(d, SpectralConfig(bracket=(-1.0, -2.0)))


def test_coefficient_profile_validation():
    d = _params()
    with pytest.raises(ValueError):
        coefficient_profile(-1.0, d, -1, 0.0)
    with pytest.raises(ValueError):
        coefficient_profile(0.5, d, 0, 0.0)
