"""
Well matrix elements: closed first-order forms vs direct quadrature
===================================================================

The closed forms are first order in xi, so their gap to the full radial
integral should shrink like xi^2.  This script tabulates both routes for a
few Landau index pairs and prints the gap alongside gap/xi^2, which should
settle to a constant as xi -> 0.
"""

from magwell.matel import well_element_firstorder, well_element_quadrature

triples = [(0, 0, 0), (1, 1, 0), (0, 1, 1), (2, 3, 1), (0, 0, 2)]
xis = [5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3]

for n, N, L in triples:
    print(f"(n={n}, N={N}, L={L})")
    print(f"  {'xi':>8}  {'firstorder':>14}  {'quadrature':>14}  "
          f"{'delta':>11}  {'delta/xi^2':>11}")
    for xi in xis:
        first = well_element_firstorder(n, N, L, xi)
        quadr = well_element_quadrature(n, N, L, xi)
        delta = quadr - first
        print(f"  {xi:8.0e}  {first:14.10f}  {quadr:14.10f}  "
              f"{delta:11.3e}  {delta / xi ** 2:11.5f}")
    print()

print("The |L| = 2 channel has no first-order term at all: the whole")
print("element is O(xi^2), which is why its delta/xi^2 column is just the")
print("element itself divided by xi^2.")
