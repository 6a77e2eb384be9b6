"""Parameter sets and the mapping between physical and natural units.

Everything downstream works in natural units hbar = m = omega = 1, where
omega is the cyclotron frequency and the magnetic length a = sqrt(hbar/(m
omega)) is the unit of length.  The two dimensionless numbers that control
the problem are

    xi       = R^2/(2 a^2)      (well size vs. magnetic length)
    lambda_t = U0 R^3 / (hbar omega a^3)   (well strength)

together with the spin channel s = +-1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import ConfigError

# validity window of the first-order-in-xi matrix elements
XI_MAX = 0.2
XI_WARN = 0.1

# CGS values for an electron, used by the cgs_electron constructor
ELECTRON_MASS = 9.1093837015e-28        # g
ELECTRON_CHARGE = 4.80320425e-10        # esu
HBAR_CGS = 1.054571817e-27              # erg s
C_CGS = 2.99792458e10                   # cm/s


@dataclass(frozen=True)
class PhysicalParams:
    """Square well plus uniform magnetic field, in explicit units.

    well_depth, well_radius and field must be expressed in one consistent
    unit system (CGS or the natural system where the trailing constants
    are all 1).
    """

    well_depth: float
    well_radius: float
    field: float
    mass: float = 1.0
    charge: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("well_depth", "well_radius", "field", "mass", "charge", "hbar", "c"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def cyclotron_frequency(self) -> float:
        return self.charge * self.field / (self.mass * self.c)

    @property
    def magnetic_length(self) -> float:
        return math.sqrt(self.hbar / (self.mass * self.cyclotron_frequency))

    @classmethod
    def cgs_electron(cls, well_depth: float, well_radius: float, field: float) -> "PhysicalParams":
        """Electron in CGS units: depth in erg, radius in cm, field in gauss."""
        return cls(well_depth, well_radius, field,
                   mass=ELECTRON_MASS, charge=ELECTRON_CHARGE, hbar=HBAR_CGS, c=C_CGS)


@dataclass(frozen=True)
class DimensionlessParams:
    """Natural-unit parameter set consumed by the rest of the package."""

    xi: float
    lambda_t: float
    s: int = -1

    def __post_init__(self):
        if self.s not in (-1, 1):
            raise ConfigError(f"s must be +1 or -1, got {self.s!r}")
        if not (math.isfinite(self.xi) and self.xi >= 0.0):
            raise ConfigError(f"xi must be >= 0, got {self.xi!r}")
        if self.xi >= XI_MAX:
            raise ConfigError(
                f"xi={self.xi:g} is outside the first-order validity window [0, {XI_MAX})")
        if self.xi > XI_WARN:
            warnings.warn(
                f"xi={self.xi:g} is above {XI_WARN}; first-order matrix elements "
                "are O(xi^2) accurate and degrade here", stacklevel=2)
        if not (math.isfinite(self.lambda_t) and self.lambda_t >= 0.0):
            raise ConfigError(f"lambda_t must be >= 0, got {self.lambda_t!r}")

    @property
    def g(self) -> float:
        """Coupling of the spectral equation, g = sqrt(2) lambda_t / 3."""
        return math.sqrt(2.0) * self.lambda_t / 3.0

    @property
    def threshold(self) -> float:
        """Continuum edge (1 + s)/2 in units of hbar omega: 0 for s=-1, 1 for s=+1."""
        return 0.5 * (1 + self.s)


def from_physical(p: PhysicalParams, s: int = -1) -> DimensionlessParams:
    """Reduce explicit-unit parameters to (xi, lambda_t, s)."""
    a = p.magnetic_length
    hw = p.hbar * p.cyclotron_frequency
    xi = p.well_radius ** 2 / (2.0 * a * a)
    lam = p.well_depth * p.well_radius ** 3 / (hw * a ** 3)
    return DimensionlessParams(xi=xi, lambda_t=lam, s=s)


def to_physical(d: DimensionlessParams, field: float = 1.0, *, mass: float = 1.0,
                charge: float = 1.0, hbar: float = 1.0, c: float = 1.0) -> PhysicalParams:
    """Inverse of from_physical at a given field strength.

    With the default constants this recovers the natural-unit well:
    R = sqrt(2 xi), U0 = lambda_t / (2 xi)^(3/2).
    """
    if d.xi == 0.0 or d.lambda_t == 0.0:
        raise ConfigError("xi and lambda_t must be positive to recover a physical well")
    omega = charge * field / (mass * c)
    a = math.sqrt(hbar / (mass * omega))
    radius = math.sqrt(2.0 * d.xi) * a
    depth = d.lambda_t * hbar * omega * (a / radius) ** 3
    return PhysicalParams(well_depth=depth, well_radius=radius, field=field,
                          mass=mass, charge=charge, hbar=hbar, c=c)
