"""
The weakly bound state and its azimuthal probability current
============================================================

For a root eps < 0 the state factorizes into a transverse Gaussian and an
e^(-kappa |z|) tail.  The current has only an azimuthal component,
j_phi = (rho/2) |psi|^2, so the electron circulates around the field axis
even though nothing flows radially or along the field.  Saves a two-panel
figure to bound_state_fields.png.
"""

from types import SimpleNamespace

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from magwell.boundstate import BoundState, current_field, norm_report
from magwell.params import DimensionlessParams
from magwell.spectrum import SpectralConfig, solve_spectrum

d = DimensionlessParams(xi=0.05, lambda_t=0.3, s=-1)
eps = solve_spectrum(d, SpectralConfig()).epsilon
state = BoundState.from_epsilon(eps, d)
print(f"eps = {eps:.8f}, kappa = {state.kappa:.6f}, "
      f"psi(0,0) = {state.amplitude:.6f}")

report = norm_report(state)
print(f"norm integral: closed {report['closed_form']:.10f}, "
      f"quadrature {report['quadrature']:.10f}")
print()

grid = SimpleNamespace(rho=np.linspace(0.0, 4.0, 161),
                       z=np.linspace(-60.0, 60.0, 241))
field = current_field(state, grid)

peak = np.unravel_index(np.argmax(field.j_phi), field.j_phi.shape)
print(f"j_phi peaks at rho = {grid.rho[peak[0]]:.3f} "
      f"(the magnetic-length circle), z = {grid.z[peak[1]]:.3f}")
print(f"circulation 2 pi rho j_phi there: "
      f"{2.0 * np.pi * grid.rho[peak[0]] * field.j_phi[peak]:.3e}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.imshow(field.j_phi, origin="lower", aspect="auto",
           extent=(grid.z[0], grid.z[-1], grid.rho[0], grid.rho[-1]))
ax1.set_xlabel("z")
ax1.set_ylabel("rho")
ax1.set_title("j_phi(rho, z)")
mid = field.j_phi.shape[1] // 2
ax2.plot(grid.rho, field.j_phi[:, mid])
ax2.axvline(1.0, color="gray", lw=0.8)
ax2.set_xlabel("rho")
ax2.set_ylabel("j_phi at z = 0")
ax2.set_title("azimuthal current profile")
fig.tight_layout()
fig.savefig("bound_state_fields.png", dpi=150)
print("wrote bound_state_fields.png")
