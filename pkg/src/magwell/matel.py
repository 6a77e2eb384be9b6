"""Square-well matrix elements between Landau basis states.

Both routes compute the same dimensionless bracket W(n, N, L, xi): the
closed first-order-in-xi forms, and the full radial integral of the
(momentum-linearized) well kernel

    W = (1/R^3) integral_0^R rho drho I_{n,L}(x) I_{N,L}(x) sqrt(R^2 - rho^2),
    x = rho^2/(2 a^2),  lengths in units of a,

done by quadrature.  The difference between the two is O(xi^2) and is the
main first-principles check on the closed forms.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConfigError, NumericsError
from .params import XI_MAX
from .specfun import laguerre_fn

__all__ = ["well_element_firstorder", "well_element_quadrature"]

_NODE_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _check_args(n: int, N: int, xi: float) -> None:
    for name, value in (("n", n), ("N", N)):
        if not float(value).is_integer() or value < 0:
            raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    if not (math.isfinite(xi) and 0.0 <= xi < XI_MAX):
        raise ConfigError(f"xi must lie in [0, {XI_MAX}), got {xi!r}")


def well_element_firstorder(n: int, N: int, L: int, xi: float) -> float:
    """First-order-in-xi well matrix element W(n, N, L, xi).

    L = 0:      1/3 - (2/15) xi (1 + n + N)
    L = +-1:    (2/15) xi sqrt((n+1)(N+1))
    |L| >= 2:   0 (these channels first appear at O(xi^2))
    """
    _check_args(n, N, xi)
    if L == 0:
        return 1.0 / 3.0 - (2.0 / 15.0) * xi * (1.0 + n + N)
    if abs(L) == 1:
        return (2.0 / 15.0) * xi * math.sqrt((n + 1.0) * (N + 1.0))
    return 0.0


def well_element_quadrature(n: int, N: int, L: int, xi: float,
                            abs_tol: float = 1e-10) -> float:
    """Well matrix element by direct quadrature of the radial integral.

    Substituting rho = R sin(theta) removes the sqrt(R^2 - rho^2) endpoint
    singularity and gives

        W = integral_0^(pi/2) sin(theta) cos^2(theta)
            I_{n,L}(xi sin^2 theta) I_{N,L}(xi sin^2 theta) dtheta,

    a smooth integrand handled by Gauss-Legendre at doubling orders until
    two consecutive orders agree to abs_tol.  Supported for n, N <= 64.
    """
    _check_args(n, N, xi)
    if n > 64 or N > 64:
        raise ValueError("quadrature route supports n, N <= 64")

    def gauss(order: int) -> float:
        if order not in _NODE_CACHE:
            _NODE_CACHE[order] = leggauss(order)
        t, w = _NODE_CACHE[order]
        theta = 0.25 * math.pi * (t + 1.0)
        st = np.sin(theta)
        ct = np.cos(theta)
        arg = xi * st * st
        f = st * ct * ct * laguerre_fn(n, L, arg) * laguerre_fn(N, L, arg)
        return 0.25 * math.pi * float(np.dot(w, f))

    prev = gauss(32)
    for order in (64, 128, 256, 512, 1024):
        cur = gauss(order)
        if abs(cur - prev) <= abs_tol:
            return cur
        prev = cur
    raise NumericsError(
        f"quadrature stalled at |delta|={abs(cur - prev):.3e} for "
        f"(n={n}, N={N}, L={L}, xi={xi:g})", last_value=cur)
