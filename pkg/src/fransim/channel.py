"""Free-space channel models: Kolmogorov turbulence, pointing, loss, fading.

Covers the piston (axial) phase spectrum of the turbulent path, the
angle-of-incidence phase coupling with and without an imaging system in the
receiver collimation, the geometric and component link budget, and a
stochastic transmittance process for count-rate fading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import i0

from .core import SeededRng, TimeSeries, db_to_linear, linear_to_db

__all__ = [
    "FRIED_PREFACTOR",
    "AOI_COUPLING",
    "AOI_NO_IMAGING_GAIN",
    "DIRECTION_COUPLING",
    "POSITION_COUPLING",
    "TurbulenceParams",
    "AxialPhaseNoise",
    "AttenuationProcess",
    "LinkBudget",
    "cn2_from_fried",
    "fried_from_cn2",
    "kolmogorov_psd",
    "axial_phase_noise",
    "aoi_phase_noise",
    "imaging_overlap_response",
    "geometric_transmittance",
    "geometric_loss",
    "total_link_budget",
    "detected_rate",
    "acquisition_time",
    "attenuation_series",
    "lognormal_sigma",
    "log10_rate_std",
]

# Plane-wave Fried relation r0 = (0.423 k^2 Cn2 L)^(-3/5); keep the prefactor
# as an argument so the spherical-wave value (0.158) can be swapped in.
FRIED_PREFACTOR = 0.423

# Measured phase response to angle-of-incidence jitter with the imaging
# system in place: 0.3 mrad of interferometer phase per 62 urad of AOI.
AOI_COUPLING = 0.3e-3 / 62e-6
# Removing the imaging system lengthens the lever arm between the collimator
# and the interferometer, scaling the same coupling by 183.
AOI_NO_IMAGING_GAIN = 183.0

# Imaging-system output response to a beam direction change (rad/rad, m/rad):
# a 1.6 mrad change moves the output direction 0.04 mrad and the lateral
# position 0.06 mm.
DIRECTION_COUPLING = 0.04e-3 / 1.6e-3
POSITION_COUPLING = 0.06e-3 / 1.6e-3
_IMAGING_LINEAR_LIMIT = 10e-3


@dataclass(frozen=True)
class TurbulenceParams:
    """Turbulent-path description for the piston phase spectrum.

    Parameters
    ----------
    cn2 : float
        Refractive-index structure constant, m^(-2/3).
    fried_r0 : float
        Fried parameter, m. Must agree with ``cn2`` within 1 percent; build
        instances through :meth:`from_fried` or :meth:`from_cn2` to keep the
        pair consistent.
    wind_v : float
        Transverse wind speed, m/s.
    path_len : float
        Propagation path length, m.
    wavelength : float
        Optical wavelength, m.
    """

    cn2: float
    fried_r0: float
    wind_v: float
    path_len: float
    wavelength: float

    def __post_init__(self) -> None:
        for name in ("cn2", "fried_r0", "path_len", "wavelength"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
        if not np.isfinite(self.wind_v) or self.wind_v < 0.0:
            raise ValueError(f"wind_v must be non-negative, got {self.wind_v}")
        implied = cn2_from_fried(self.fried_r0, self.wavelength, self.path_len)
        if abs(implied - self.cn2) > 0.01 * self.cn2:
            raise ValueError(
                f"cn2 {self.cn2} and fried_r0 {self.fried_r0} disagree: "
                f"the Fried relation implies cn2 {implied}"
            )

    @classmethod
    def from_fried(
        cls, fried_r0: float, wavelength: float, path_len: float, wind_v: float
    ) -> "TurbulenceParams":
        cn2 = cn2_from_fried(fried_r0, wavelength, path_len)
        return cls(cn2=cn2, fried_r0=fried_r0, wind_v=wind_v,
                   path_len=path_len, wavelength=wavelength)

    @classmethod
    def from_cn2(
        cls, cn2: float, wavelength: float, path_len: float, wind_v: float
    ) -> "TurbulenceParams":
        r0 = fried_from_cn2(cn2, wavelength, path_len)
        return cls(cn2=cn2, fried_r0=r0, wind_v=wind_v,
                   path_len=path_len, wavelength=wavelength)


def cn2_from_fried(
    fried_r0: float, wavelength: float, path_len: float, prefactor: float = FRIED_PREFACTOR
) -> float:
    """Structure constant from the Fried parameter over a uniform path.

    Inverts r0 = (prefactor * k^2 * Cn2 * L)^(-3/5) with k = 2 pi / wavelength.
    """
    if fried_r0 <= 0.0 or wavelength <= 0.0 or path_len <= 0.0:
        raise ValueError("fried_r0, wavelength and path_len must be positive")
    k = 2.0 * math.pi / wavelength
    return fried_r0 ** (-5.0 / 3.0) / (prefactor * k**2 * path_len)


def fried_from_cn2(
    cn2: float, wavelength: float, path_len: float, prefactor: float = FRIED_PREFACTOR
) -> float:
    """Fried parameter from the structure constant over a uniform path."""
    if cn2 <= 0.0 or wavelength <= 0.0 or path_len <= 0.0:
        raise ValueError("cn2, wavelength and path_len must be positive")
    k = 2.0 * math.pi / wavelength
    return (prefactor * k**2 * cn2 * path_len) ** (-3.0 / 5.0)


def kolmogorov_psd(f, params: TurbulenceParams):
    """One-sided piston phase PSD S(f) = 0.016 k^2 L Cn2 v^(5/3) f^(-8/3), rad^2/Hz.

    ``f`` may be a scalar or array of strictly positive frequencies in Hz.
    Zero wind gives zero spectrum (frozen-flow transport is what sweeps the
    phase pattern across the line of sight).
    """
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0.0) or not np.all(np.isfinite(f)):
        raise ValueError("frequencies must be positive and finite")
    k = 2.0 * math.pi / params.wavelength
    psd = (
        0.016 * k**2 * params.path_len * params.cn2
        * params.wind_v ** (5.0 / 3.0) * f ** (-8.0 / 3.0)
    )
    if psd.ndim == 0:
        return float(psd)
    return psd


class AxialPhaseNoise(NamedTuple):
    """Axial RMS under the two published low-frequency-cutoff conventions."""

    integrated: float          # sqrt of the PSD integral above f_min
    single_frequency: float    # sqrt(f_min * S(f_min))


def axial_phase_noise(params: TurbulenceParams, f_min: float) -> AxialPhaseNoise:
    """RMS piston phase above a low-frequency cutoff, rad.

    The integral of the f^(-8/3) spectrum from ``f_min`` up gives
    sqrt((3/5) f_min S(f_min)); the single-frequency estimate
    sqrt(f_min S(f_min)) is returned alongside since both conventions appear
    in link analyses.
    """
    if not np.isfinite(f_min) or f_min <= 0.0:
        raise ValueError(f"f_min must be positive, got {f_min}")
    s_min = kolmogorov_psd(f_min, params)
    integrated = math.sqrt(0.6 * f_min * s_min)
    single = math.sqrt(f_min * s_min)
    return AxialPhaseNoise(integrated=integrated, single_frequency=single)


def aoi_phase_noise(
    sigma_theta: float, imaging_system: bool = True, coupling: float = AOI_COUPLING
) -> float:
    """RMS interferometer phase from angle-of-incidence jitter, rad.

    ``sigma_theta`` is the AOI RMS in rad. Without the imaging system the
    coupling grows by the no-imaging lever-arm factor.
    """
    if not np.isfinite(sigma_theta) or sigma_theta < 0.0:
        raise ValueError(f"sigma_theta must be non-negative, got {sigma_theta}")
    gain = 1.0 if imaging_system else AOI_NO_IMAGING_GAIN
    return coupling * gain * sigma_theta


def imaging_overlap_response(angle_change: float) -> tuple[float, float]:
    """Output (direction rad, lateral position m) change of the imaging system.

    Valid in the measured linear regime, |angle_change| < 10 mrad; larger
    inputs are outside the characterization and rejected.
    """
    if not np.isfinite(angle_change):
        raise ValueError("angle_change must be finite")
    if abs(angle_change) >= _IMAGING_LINEAR_LIMIT:
        raise ValueError(
            f"|angle_change| = {abs(angle_change)} rad is outside the linear "
            f"regime (< {_IMAGING_LINEAR_LIMIT} rad)"
        )
    return DIRECTION_COUPLING * angle_change, POSITION_COUPLING * angle_change


def geometric_transmittance(rx_aperture: float, divergence: float, range_m: float) -> float:
    """Far-field collection fraction (D / theta L)^2 of a diverging beam."""
    if rx_aperture <= 0.0 or divergence <= 0.0 or range_m <= 0.0:
        raise ValueError("rx_aperture, divergence and range_m must be positive")
    spot = divergence * range_m
    if spot <= rx_aperture:
        raise ValueError(
            f"beam spot {spot} m does not exceed the aperture {rx_aperture} m; "
            "the far-field model does not apply"
        )
    return (rx_aperture / spot) ** 2


def geometric_loss(rx_aperture: float, divergence: float, range_m: float) -> float:
    """Geometric (diffraction) loss 20 log10(theta L / D), dB."""
    return linear_to_db(geometric_transmittance(rx_aperture, divergence, range_m))


@dataclass(frozen=True)
class LinkBudget:
    """Named loss items (dB, each >= 0) and the source photon rate (Hz)."""

    items: tuple[tuple[str, float], ...]
    source_rate: float

    def __init__(self, items, source_rate: float) -> None:
        entries = tuple((str(name), float(loss)) for name, loss in items)
        if not entries:
            raise ValueError("link budget needs at least one item (it may be 0 dB)")
        for name, loss in entries:
            if not np.isfinite(loss) or loss < 0.0:
                raise ValueError(f"loss item {name!r} must be non-negative, got {loss}")
        if not np.isfinite(source_rate) or source_rate <= 0.0:
            raise ValueError(f"source_rate must be positive, got {source_rate}")
        object.__setattr__(self, "items", entries)
        object.__setattr__(self, "source_rate", float(source_rate))


def total_link_budget(budget: LinkBudget) -> float:
    """Total loss in dB; item order does not matter."""
    return float(sum(loss for _, loss in budget.items))


def detected_rate(budget: LinkBudget) -> float:
    """Photon rate (Hz) surviving the total budget."""
    return budget.source_rate * db_to_linear(total_link_budget(budget))


def acquisition_time(target_shot_noise: float, visibility: float, rate: float) -> float:
    """Integration time (s) for shot noise to reach the target phase RMS.

    Uses the balanced-output relation sigma = 1 / (V sqrt(N)), so
    N = (V * target)^(-2) and t = N / rate.
    """
    if target_shot_noise <= 0.0:
        raise ValueError(f"target_shot_noise must be positive, got {target_shot_noise}")
    if not 0.0 < visibility <= 1.0:
        raise ValueError(f"visibility must be in (0, 1], got {visibility}")
    if rate <= 0.0:
        raise ValueError(f"rate must be positive, got {rate}")
    n_needed = 1.0 / (visibility * target_shot_noise) ** 2
    return n_needed / rate


@dataclass(frozen=True)
class AttenuationProcess:
    """Stochastic channel transmittance around a mean loss.

    ``modulation_amplitude`` is the peak-to-peak depth (dB) of a sinusoidal
    fading component with period ``modulation_period`` (s); ``stochastic_cv``
    is the target STD/mean ratio of the resulting linear count rate, with any
    variance the sinusoid does not supply made up by log-normal scatter.
    """

    mean_loss: float
    modulation_amplitude: float = 0.0
    modulation_period: float = 38.0
    stochastic_cv: float = 0.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.mean_loss) or self.mean_loss < 0.0:
            raise ValueError(f"mean_loss must be non-negative dB, got {self.mean_loss}")
        if self.modulation_amplitude < 0.0:
            raise ValueError("modulation_amplitude must be non-negative")
        if self.modulation_period <= 0.0:
            raise ValueError("modulation_period must be positive")
        if self.stochastic_cv < 0.0:
            raise ValueError("stochastic_cv must be non-negative")

    def sinusoid_cv(self) -> float:
        """STD/mean of the sinusoidal component alone in linear units."""
        x = _sin_log_amplitude(self)
        if x == 0.0:
            return 0.0
        return math.sqrt(i0(2.0 * x) / i0(x) ** 2 - 1.0)


def _sin_log_amplitude(process: AttenuationProcess) -> float:
    # Half the peak-to-peak dB depth, expressed in natural log units.
    return math.log(10.0) / 10.0 * (process.modulation_amplitude / 2.0)


def lognormal_sigma(process: AttenuationProcess) -> float:
    """Log-domain sigma of the scatter needed on top of the sinusoid.

    Chosen so the combined linear cv equals ``stochastic_cv``; when the
    sinusoid alone already exceeds the target the scatter clamps to zero.
    """
    cv_sin_sq = process.sinusoid_cv() ** 2
    cv_total_sq = process.stochastic_cv**2
    cv_ln_sq = (1.0 + cv_total_sq) / (1.0 + cv_sin_sq) - 1.0
    if cv_ln_sq <= 0.0:
        return 0.0
    return math.sqrt(math.log1p(cv_ln_sq))


def log10_rate_std(process: AttenuationProcess) -> float:
    """STD of log10(count rate) under the process, in decades.

    Sinusoid of half-depth a dB contributes (a/10)/sqrt(2) decades; the
    log-normal scatter contributes sigma/ln(10). Quadrature sum.
    """
    sin_decades = (process.modulation_amplitude / 2.0 / 10.0) / math.sqrt(2.0)
    ln_decades = lognormal_sigma(process) / math.log(10.0)
    return math.hypot(sin_decades, ln_decades)


def attenuation_series(
    process: AttenuationProcess,
    duration: float,
    rng: SeededRng | np.random.Generator,
    sample_rate: float = 1.0,
) -> TimeSeries:
    """Sample the transmittance process on a uniform grid.

    The sinusoidal component is normalized by its own mean (a Bessel factor)
    and the log-normal scatter drawn with unit mean, so the series averages to
    the mean-loss transmittance. A random starting phase is drawn from ``rng``.
    Values are capped at 1.
    """
    if duration <= 0.0:
        raise ValueError(f"duration must be positive, got {duration}")
    if sample_rate <= 0.0:
        raise ValueError(f"sample_rate must be positive, got {sample_rate}")
    if isinstance(rng, SeededRng):
        rng = rng.generator()
    n = int(round(duration * sample_rate))
    if n < 1:
        raise ValueError("duration shorter than one sample period")
    t = np.arange(n) / sample_rate
    base = db_to_linear(process.mean_loss)

    x = _sin_log_amplitude(process)
    phase0 = rng.uniform(0.0, 2.0 * math.pi)
    if x > 0.0:
        sin_part = np.exp(-x * np.sin(2.0 * math.pi * t / process.modulation_period + phase0))
        sin_part /= i0(x)  # unit mean over the sinusoid's phase distribution
    else:
        sin_part = np.ones(n)

    sigma = lognormal_sigma(process)
    if sigma > 0.0:
        scatter = rng.lognormal(mean=-0.5 * sigma**2, sigma=sigma, size=n)
    else:
        scatter = np.ones(n)

    values = np.minimum(base * sin_part * scatter, 1.0)
    return TimeSeries(t=t, values=values, sample_rate=sample_rate)
