"""Gravitational redshift and Doppler phases of an unbalanced interferometer.

A photon crossing a gravitational potential difference accumulates phase in
an interferometer whose arms differ by ``delta_l``; the signal saturates with
altitude as the potential difference approaches its asymptote. These are the
target observables a ground-to-satellite version of the link would measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import CONSTANTS, PhysConstants

__all__ = [
    "OrbitPoint",
    "RedshiftConfig",
    "redshift_phase",
    "redshift_phase_difference",
    "doppler_phase",
    "precision_target",
]


@dataclass(frozen=True)
class OrbitPoint:
    """Satellite state: altitude above ground (m) and radial velocity (m/s).

    Positive ``radial_velocity`` means the range is opening.
    """

    altitude: float
    radial_velocity: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.altitude) or self.altitude < 0.0:
            raise ValueError(f"altitude must be non-negative, got {self.altitude}")
        if not math.isfinite(self.radial_velocity):
            raise ValueError("radial_velocity must be finite")


@dataclass(frozen=True)
class RedshiftConfig:
    """Interferometer arm difference (m) and photon wavelength (m)."""

    delta_l: float
    wavelength: float = 893.2e-9

    def __post_init__(self) -> None:
        if not math.isfinite(self.delta_l) or self.delta_l <= 0.0:
            raise ValueError(f"delta_l must be positive, got {self.delta_l}")
        if not math.isfinite(self.wavelength) or self.wavelength <= 0.0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")


def redshift_phase(
    config: RedshiftConfig, point: OrbitPoint, constants: PhysConstants = CONSTANTS
) -> float:
    """Redshift-induced interferometer phase (rad) for a link to ``point``.

    phi = (2 pi delta_l g / (lambda c^2)) * R h / (R + h); zero at the ground
    and saturating at the R -> h limit (2 pi delta_l g R / (lambda c^2)) for a
    distant orbit.
    """
    h = point.altitude
    r = constants.earth_radius
    potential_term = r * h / (r + h)
    return (
        2.0 * math.pi * config.delta_l * constants.g
        / (config.wavelength * constants.c**2) * potential_term
    )


def redshift_phase_difference(
    config: RedshiftConfig,
    point_a: OrbitPoint,
    point_b: OrbitPoint,
    constants: PhysConstants = CONSTANTS,
) -> float:
    """Phase change (rad) as the satellite moves from ``point_a`` to ``point_b``.

    Antisymmetric in its arguments; an elliptical orbit sampled at perigee and
    apogee gives the differential signal available in one revolution.
    """
    return redshift_phase(config, point_b, constants) - redshift_phase(config, point_a, constants)


def doppler_phase(
    config: RedshiftConfig, radial_velocity: float, constants: PhysConstants = CONSTANTS
) -> float:
    """First-order Doppler phase (rad) from the radial velocity, 2 pi dl v / (c lambda).

    Odd in the velocity; at 1 mm/s it is of the same order as the redshift
    signal itself, which is what drives the orbit-determination requirement.
    """
    if not math.isfinite(radial_velocity):
        raise ValueError("radial_velocity must be finite")
    return (
        2.0 * math.pi * config.delta_l * radial_velocity
        / (constants.c * config.wavelength)
    )


def precision_target(signal: float, n_sigma: float = 5.0) -> float:
    """Phase uncertainty needed to resolve ``signal`` at ``n_sigma`` significance."""
    if not math.isfinite(signal) or signal <= 0.0:
        raise ValueError(f"signal must be positive, got {signal}")
    if not math.isfinite(n_sigma) or n_sigma < 1.0:
        raise ValueError(f"n_sigma must be >= 1, got {n_sigma}")
    return signal / n_sigma
