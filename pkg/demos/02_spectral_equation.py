"""
The level condition 1 = g S(eps) and its two summation strategies
=================================================================

Truncating the Landau-level sum at n_max gives a root that never settles:
each added level deepens it (the sum diverges like sum 1/sqrt(n)).  The
zeta-regularized sum assigns the tail a finite value, and its root is the
number the rest of the package treats as the bound-state energy.
"""

import math

from magwell.params import DimensionlessParams
from magwell.spectrum import (TRUNCATED, ZETA_REGULARIZED, SpectralConfig,
                              e_min_closed_form, solve_spectrum)

d = DimensionlessParams(xi=0.01, lambda_t=0.3, s=-1)
print(f"xi = {d.xi}, lambda = {d.lambda_t}, g = {d.g:.6f}")
print()

print("truncated roots (never converge):")
for n_max in (0, 1, 2, 4, 8, 16, 32):
    cfg = SpectralConfig(mode=TRUNCATED, n_max=n_max)
    root = solve_spectrum(d, cfg)
    print(f"  n_max = {n_max:3d}   eps = {root.epsilon:+.8f}")
print()

zeta_root = solve_spectrum(d, SpectralConfig(mode=ZETA_REGULARIZED))
closed = e_min_closed_form(d)
print(f"zeta-regularized root:     eps = {zeta_root.epsilon:+.8f}")
print(f"closed-form lowest level:  eps = {closed:+.8f}")
print()

# the closed form keeps only the n = 0 term of the regularized sum, so the
# two agree in the weak-coupling limit; watch the ratio walk to 1
print("weak-coupling limit, xi = 0:")
print(f"  {'g':>8}  {'eps_root':>14}  {'-g^2':>14}  {'ratio':>10}")
for g in (1e-1, 1e-2, 1e-3, 1e-4):
    dz = DimensionlessParams(xi=0.0, lambda_t=3.0 * g / math.sqrt(2.0), s=-1)
    eps = solve_spectrum(dz, SpectralConfig(mode=ZETA_REGULARIZED)).epsilon
    print(f"  {g:8.0e}  {eps:14.6e}  {-g * g:14.6e}  {eps / (-g * g):10.6f}")
