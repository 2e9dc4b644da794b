"""Prototype fluxes of the two saturated porous-medium models.

Both equations have the divergence form u_t = div a(u, grad u) with a flux
whose modulus saturates at the recession level phi(u):

* relativistic porous medium: a(z, g) = z^m g / sqrt(z^2 + g^2), phi(z) = z^m
* speed-limited porous medium: a(z, g) = z q / sqrt(1 + q^2) with
  q = (M-1) z^(M-2) g, phi(z) = z

Everything here is the scalar radial component; all profiles used by the
toolkit are radially symmetric about their own center.  Units are normalized
so that the viscosity and the limiting speed are 1; callers with physical
units must pre-scale time and space accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

# Treated as zero when evaluating z^(M-2) in the speed-limited flux; below
# this the product form z*q/sqrt(1+q^2) is numerically meaningless but its
# limit is 0.
_Z_GUARD = 1e-300


class ModelFamily(Enum):
    RELATIVISTIC_PM = "relativistic_pm"
    SPEED_LIMITED_PM = "speed_limited_pm"


@dataclass(frozen=True)
class ModelKind:
    """Which prototype equation, with its exponent and space dimension."""

    family: ModelFamily
    exponent: float
    dimension: int = 1

    def __post_init__(self):
        if not self.exponent > 1.0:
            raise ValueError(f"exponent must exceed 1, got {self.exponent}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")

    @property
    def is_relativistic(self) -> bool:
        return self.family is ModelFamily.RELATIVISTIC_PM

    @property
    def growth_exponent(self) -> float:
        """Critical growth power of an initial datum at a waiting point."""
        if self.is_relativistic:
            return 1.0 / (self.exponent - 1.0)
        return 2.0 / (self.exponent - 1.0)


def relativistic_pm(exponent: float, dimension: int = 1) -> ModelKind:
    return ModelKind(ModelFamily.RELATIVISTIC_PM, float(exponent), dimension)


def speed_limited_pm(exponent: float, dimension: int = 1) -> ModelKind:
    return ModelKind(ModelFamily.SPEED_LIMITED_PM, float(exponent), dimension)


def flux_rel_pm(z: float, g: float, exponent: float) -> float:
    """Radial flux z^m g / sqrt(z^2 + g^2) of the relativistic model."""
    if z < 0.0:
        raise ValueError(f"flux argument z must be nonnegative, got {z}")
    if z == 0.0 or g == 0.0:
        return 0.0
    return z**exponent * g / math.hypot(z, g)


def flux_slpm(z: float, g: float, exponent: float) -> float:
    """Radial flux z q / sqrt(1 + q^2), q = (M-1) z^(M-2) g, of the
    speed-limited model.

    Limit-safe near z = 0 for M < 2: z^(M-2) diverges but the product tends
    to 0, so sub-guard z is treated as 0.
    """
    if z < 0.0:
        raise ValueError(f"flux argument z must be nonnegative, got {z}")
    if z < _Z_GUARD or g == 0.0:
        return 0.0
    q = (exponent - 1.0) * z ** (exponent - 2.0) * g
    if math.isinf(q):
        return math.copysign(z, g)
    return z * q / math.hypot(1.0, q)


def radial_flux(z: float, g: float, model: ModelKind) -> float:
    """Scalar radial flux a(z, g) for either model."""
    if model.is_relativistic:
        return flux_rel_pm(z, g, model.exponent)
    return flux_slpm(z, g, model.exponent)


def recession_phi(z: float, model: ModelKind) -> float:
    """Saturation level phi(z): z^m (relativistic) or z (speed-limited)."""
    if z < 0.0:
        raise ValueError(f"recession argument must be nonnegative, got {z}")
    if model.is_relativistic:
        return z**model.exponent
    return z


def front_speed_bound(umax: float, model: ModelKind) -> float:
    """Upper bound on the support's propagation speed below level umax.

    umax^(m-1) for the relativistic model, the constant limiting speed 1
    for the speed-limited model.  Used for CFL estimates and finite-speed
    assertions.
    """
    if umax < 0.0:
        raise ValueError(f"umax must be nonnegative, got {umax}")
    if model.is_relativistic:
        return umax ** (model.exponent - 1.0)
    return 1.0
