"""Spectral equation of the L = 0 channel and its bound-state roots.

The level condition is 1 = g S(eps) with g = sqrt(2) lambda_t / 3 and

    S(eps) = sum_n [1 - (4/5) xi (1/2 + n)] / sqrt(n + q),
    q = (1 + s)/2 - eps > 0,

summed over Landau levels n.  The raw sum diverges like sum n^(-1/2), so
two evaluation strategies are provided: a hard truncation at n_max (the
"read finitely many terms off the graph" strategy, which does not converge
as n_max grows; that divergence is a documented property), and a Hurwitz
zeta regularization of the tail, which is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NoBoundStateError, NumericsError
from .params import DimensionlessParams
from .specfun import hurwitz_zeta

__all__ = [
    "TRUNCATED", "ZETA_REGULARIZED", "SpectralConfig", "SpectralRoot",
    "spectral_sum", "solve_spectrum", "e_min_closed_form", "coefficient_profile",
]

TRUNCATED = "truncated"
ZETA_REGULARIZED = "zeta"

_MONOTONICITY_SAMPLES = 64


@dataclass(frozen=True)
class SpectralConfig:
    """Evaluation strategy and root-search controls."""

    mode: str = ZETA_REGULARIZED
    n_max: int | None = None
    bracket: tuple[float, float] | None = None
    root_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if self.mode not in (TRUNCATED, ZETA_REGULARIZED):
            raise ConfigError(f"mode must be '{TRUNCATED}' or '{ZETA_REGULARIZED}', got {self.mode!r}")
        if self.mode == TRUNCATED:
            if self.n_max is None or not float(self.n_max).is_integer() or self.n_max < 0:
                raise ConfigError("truncated mode requires n_max >= 0")
        elif self.n_max is not None:
            raise ConfigError("n_max applies only to truncated mode")
        if not (self.root_tol > 0.0):
            raise ConfigError(f"root_tol must be positive, got {self.root_tol!r}")
        if self.max_iter < 10:
            raise ConfigError(f"max_iter must be at least 10, got {self.max_iter!r}")


@dataclass(frozen=True)
class SpectralRoot:
    """A bound-state root of 1 = g S(eps)."""

    epsilon: float
    residual: float
    mode: str
    n_max: int | None = None
    iterations: int = 0


def _truncated_weights(d: DimensionlessParams, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1, dtype=float)
    w = 1.0 - 0.8 * d.xi * (0.5 + n)
    if w[-1] <= 0.0:
        raise ConfigError(
            f"truncated weights go nonpositive at n_max={n_max} for xi={d.xi:g} "
            f"(need n_max < 5/(4 xi) - 1/2)")
    return w


def spectral_sum(eps: float, d: DimensionlessParams, cfg: SpectralConfig) -> float:
    """Evaluate S(eps) in the configured mode."""
    thr = d.threshold
    if not eps < thr:
        raise ValueError(f"eps={eps!r} must lie below the continuum threshold {thr:g}")
    q = thr - eps
    if cfg.mode == TRUNCATED:
        w = _truncated_weights(d, cfg.n_max)
        n = np.arange(cfg.n_max + 1, dtype=float)
        return float(np.sum(w / np.sqrt(n + q)))
    # regularized: sum (1/2 + n)(n+q)^(-1/2) continues to
    # zeta(-1/2, q) + (1/2 - q) zeta(1/2, q)
    z_h = hurwitz_zeta(0.5, q)
    z_mh = hurwitz_zeta(-0.5, q)
    return z_h - 0.8 * d.xi * (z_mh + (0.5 - q) * z_h)


def e_min_closed_form(d: DimensionlessParams) -> float:
    """Closed-form lowest level, -(2 lambda_t^2 / 9)(1 - (2/5) xi).

    Derived for the n=0, s=-1 channel only; callers wanting the actual
    root of the spectral equation should use solve_spectrum.  The ratio
    of this value to the Truncated(0) root is 1/(1 - (2/5) xi): the two
    differ at first order in xi, and both are exposed deliberately.
    """
    if d.s != -1:
        raise ValueError("closed-form lowest level is defined for the s=-1 channel only")
    return -(2.0 * d.lambda_t ** 2 / 9.0) * (1.0 - 0.4 * d.xi)


def coefficient_profile(eps: float, d: DimensionlessParams, n: int, p_z: float) -> float:
    """Unnormalized expansion coefficient over Landau level n at momentum p_z.

    [1 - (2/5) xi (1/2 + n)] / (n + (1+s)/2 + p_z^2/2 - eps); the global
    normalization constant lives in the boundstate module.
    """
    if not float(n).is_integer() or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if not eps < d.threshold:
        raise ValueError(f"eps={eps!r} must lie below the continuum threshold")
    num = 1.0 - 0.4 * d.xi * (0.5 + n)
    den = n + d.threshold + 0.5 * p_z * p_z - eps
    return num / den


def _default_bracket(d: DimensionlessParams) -> tuple[float, float]:
    g = d.g
    return (-1e3 * max(g * g, 1.0), d.threshold - 1e-9)


def solve_spectrum(d: DimensionlessParams, cfg: SpectralConfig | None = None) -> SpectralRoot:
    """Find the bound-state root of 1 = g S(eps) below the continuum threshold.

    Bisection refined by secant steps inside a maintained bracket; S is
    first sampled on a 64-point grid across the bracket to confirm it is
    strictly increasing there (which makes the root unique).  Raises
    NoBoundStateError when the coupling vanishes or the equation has no
    sign change in the bracket.
    """
    if cfg is None:
        cfg = SpectralConfig()
    g = d.g
    if g == 0.0:
        raise NoBoundStateError("lambda_t = 0: the condition 1 = g S(eps) has no solution")
    lo, hi = cfg.bracket if cfg.bracket is not None else _default_bracket(d)
    if not (lo < hi < d.threshold):
        raise ConfigError(f"bracket ({lo!r}, {hi!r}) must satisfy lo < hi < threshold")

    samples = np.linspace(lo, hi, _MONOTONICITY_SAMPLES)
    s_vals = np.array([spectral_sum(e, d, cfg) for e in samples])
    if not np.all(np.diff(s_vals) > 0.0):
        raise NumericsError("spectral function is not strictly increasing on the bracket; "
                            "root would not be unique")

    def f(eps: float) -> float:
        return g * spectral_sum(eps, d, cfg) - 1.0

    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo >= 0.0:
        raise NumericsError(f"bracket lower end already above the root (f(lo)={f_lo:.3e})")
    if f_hi < 0.0:
        raise NoBoundStateError(
            f"no sign change on the bracket (f(hi)={f_hi:.3e}): "
            "no bound state below the threshold")

    a, b = lo, hi
    f_a, f_b = f_lo, f_hi
    x_prev, f_prev = a, f_a
    x_cur, f_cur = b, f_b
    evals = 2
    for _ in range(cfg.max_iter):
        # secant proposal from the last two iterates, clipped to the bracket
        width = b - a
        x_new = 0.5 * (a + b)
        if f_cur != f_prev:
            x_sec = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
            if a + 0.01 * width < x_sec < b - 0.01 * width:
                x_new = x_sec
        f_new = f(x_new)
        evals += 1
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x_new, f_new
        if f_new < 0.0:
            a, f_a = x_new, f_new
        else:
            b, f_b = x_new, f_new
        if abs(f_new) <= cfg.root_tol:
            break
        if b - a <= 4.0 * np.spacing(max(abs(a), abs(b))):
            break  # bracket has collapsed to adjacent floats
    else:
        raise NumericsError(
            f"root iteration did not converge in {cfg.max_iter} steps "
            f"(residual {abs(f_cur):.3e})", last_value=x_cur)

    root, residual = (a, abs(f_a)) if abs(f_a) < abs(f_cur) else (x_cur, abs(f_cur))
    if abs(f_b) < residual:
        root, residual = b, abs(f_b)
    if residual > 10.0 * cfg.root_tol:
        raise NumericsError(
            f"root residual {residual:.3e} exceeds 10*root_tol", last_value=root)
    return SpectralRoot(epsilon=root, residual=residual, mode=cfg.mode,
                        n_max=cfg.n_max, iterations=evals)
