"""Thermal-expansion calibration of a low-expansion interferometer bench.

Near the zero-crossing temperature of an ultra-low-expansion material the CTE
is linear in temperature, so the interferometer phase against bench
temperature follows a parabola. Fitting that parabola locates the
zero-crossing set point and bounds the residual CTE, hence the suppression
won over an ordinary bench material.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "ThermalScan",
    "QuadraticFit",
    "CteLine",
    "fit_phase_vs_temperature",
    "cte_from_phase_fit",
    "suppression_ratio",
]


@dataclass
class ThermalScan:
    """Phase readings (rad) against bench temperature (deg C).

    ``arm_diff`` is the optical arm-length difference (m) the expansion acts
    on, ``wavelength`` the photon wavelength (m).
    """

    temperature: np.ndarray
    phase: np.ndarray
    arm_diff: float = 1.2
    wavelength: float = 893.2e-9

    def __post_init__(self) -> None:
        self.temperature = np.asarray(self.temperature, dtype=float)
        self.phase = np.asarray(self.phase, dtype=float)
        if self.temperature.ndim != 1 or self.temperature.shape != self.phase.shape:
            raise ValueError("temperature and phase must be 1-D arrays of equal length")
        if self.arm_diff <= 0.0 or self.wavelength <= 0.0:
            raise ValueError("arm_diff and wavelength must be positive")


class QuadraticFit(NamedTuple):
    """phase = a T^2 + b T + c with parameter covariance and fit quality."""

    a: float
    b: float
    c: float
    cov: np.ndarray
    r_squared: float
    residual_std: float


def fit_phase_vs_temperature(scan: ThermalScan) -> QuadraticFit:
    """Least-squares parabola through the phase-temperature scan.

    Needs at least 4 points with a non-degenerate temperature spread. The
    covariance is scaled by the residual variance, as nothing here knows the
    per-point measurement errors.
    """
    t = scan.temperature
    y = scan.phase
    if t.size < 4:
        raise ValueError(f"quadratic fit needs at least 4 points, got {t.size}")
    if np.ptp(t) <= 0.0:
        raise ValueError("temperature values are degenerate")
    design = np.column_stack([t**2, t, np.ones_like(t)])
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    residuals = y - design @ coef
    dof = t.size - 3
    residual_var = float(residuals @ residuals) / dof if dof > 0 else 0.0
    cov = residual_var * np.linalg.inv(design.T @ design)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(residuals @ residuals)
    if ss_tot > 0.0:
        r_squared = 1.0 - ss_res / ss_tot
    else:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    return QuadraticFit(
        a=float(coef[0]), b=float(coef[1]), c=float(coef[2]),
        cov=cov, r_squared=r_squared, residual_std=math.sqrt(residual_var),
    )


@dataclass(frozen=True)
class CteLine:
    """Linear CTE model CTE(T) = slope * (T - zero_crossing), in 1/K."""

    slope: float                 # 1/K^2
    zero_crossing: float         # deg C
    slope_sigma: float = 0.0
    zero_crossing_sigma: float = 0.0

    def cte_at(self, temperature) -> float | np.ndarray:
        temperature = np.asarray(temperature, dtype=float)
        out = self.slope * (temperature - self.zero_crossing)
        if out.ndim == 0:
            return float(out)
        return out


def cte_from_phase_fit(fit: QuadraticFit, scan: ThermalScan) -> CteLine:
    """Map the parabola to the linear CTE it implies.

    CTE(T) = (lambda / (2 pi arm_diff)) * (2 a T + b), so the slope is
    proportional to ``a`` and the zero crossing sits at -b / (2a). A flat
    parabola (a = 0) has no crossing; that case is flagged and the crossing
    reported as NaN.
    """
    scale = scan.wavelength / (2.0 * math.pi * scan.arm_diff)
    slope = 2.0 * scale * fit.a
    slope_sigma = 2.0 * scale * math.sqrt(max(fit.cov[0, 0], 0.0))
    if fit.a == 0.0:
        warnings.warn("quadratic coefficient is zero; no CTE zero crossing", UserWarning,
                      stacklevel=2)
        return CteLine(slope=0.0, zero_crossing=math.nan, slope_sigma=slope_sigma,
                       zero_crossing_sigma=math.nan)
    crossing = -fit.b / (2.0 * fit.a)
    # Delta method on T0 = -b / (2a).
    da = fit.b / (2.0 * fit.a**2)
    db = -1.0 / (2.0 * fit.a)
    grad = np.array([da, db])
    crossing_var = float(grad @ fit.cov[:2, :2] @ grad)
    return CteLine(
        slope=slope,
        zero_crossing=crossing,
        slope_sigma=slope_sigma,
        zero_crossing_sigma=math.sqrt(max(crossing_var, 0.0)),
    )


def suppression_ratio(reference_cte: float, achieved_cte: float) -> float:
    """How much smaller the achieved |CTE| is than a reference material's."""
    if reference_cte == 0.0 or not math.isfinite(reference_cte):
        raise ValueError("reference_cte must be nonzero and finite")
    if achieved_cte == 0.0 or not math.isfinite(achieved_cte):
        raise ValueError("achieved_cte must be nonzero and finite")
    return abs(reference_cte) / abs(achieved_cte)
