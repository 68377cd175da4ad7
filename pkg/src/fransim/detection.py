"""Detector-scheme Monte Carlo: campaigns, fringe scans, photon streams.

Models the measurement chain after the optics: fluctuating channel
transmittance, SPAD efficiency that varies with count rate, Poisson counting,
and the choice between two free-running SPADs (one per analyzer output) or a
single SPAD reading both outputs in time-division. The rate-dependent
efficiency mismatch between two SPADs turns channel fading into phase noise;
time-division cancels it because both outputs see the same detector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import AttenuationProcess, attenuation_series, log10_rate_std
from .core import SeededRng, db_to_linear
from .estimation import CountRecord, PhaseSeries, detrend_linear, extract_phases
from .quantum import detection_probabilities

__all__ = [
    "DUAL_SPAD_CV_COEFF",
    "SourceModel",
    "SpadModel",
    "DetectionScheme",
    "CampaignConfig",
    "CampaignSummary",
    "CampaignResult",
    "spad_inconsistency_noise",
    "inconsistency_slopes",
    "simulate_campaign",
    "simulate_fringe_scan",
    "simulate_coherent_stream",
    "simulate_single_photon_stream",
]

# Measured phase RMS per unit count-rate cv for two free-running SPADs:
# 11.4 mrad of equivalent phase noise at a count-rate STD/mean of 0.52.
DUAL_SPAD_CV_COEFF = 11.4e-3 / 0.52

_SCHEME_KINDS = ("dual_spad", "single_spad")


@dataclass(frozen=True)
class SourceModel:
    """Single-photon source: emission rate, wavelength, purity, lock drift."""

    rate: float = 0.4e9               # Hz before any loss
    wavelength: float = 893.2e-9      # m
    g2_zero: float = 0.071            # residual multi-photon emission
    center_freq_drift: float = 1e7    # Hz/day of the frequency lock

    def __post_init__(self) -> None:
        if self.rate <= 0.0 or self.wavelength <= 0.0:
            raise ValueError("rate and wavelength must be positive")
        if not 0.0 <= self.g2_zero < 1.0:
            raise ValueError(f"g2_zero must be in [0, 1), got {self.g2_zero}")
        if self.center_freq_drift < 0.0:
            raise ValueError("center_freq_drift must be non-negative")


@dataclass(frozen=True)
class SpadModel:
    """One SPAD: relative efficiency, dark rate, and rate dependence.

    ``rate_efficiency_slope`` is the fractional efficiency change per decade
    of count rate around the operating point (dead-time pile-up and
    afterpulsing make real SPADs sublinear); ``base_efficiency`` is relative
    to the nominal detected rate, so 1.0 means "as calibrated".
    """

    base_efficiency: float = 1.0
    dark_rate: float = 0.0
    rate_efficiency_slope: float = 0.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.base_efficiency) or self.base_efficiency <= 0.0:
            raise ValueError(f"base_efficiency must be positive, got {self.base_efficiency}")
        if self.dark_rate < 0.0:
            raise ValueError("dark_rate must be non-negative")
        if not np.isfinite(self.rate_efficiency_slope):
            raise ValueError("rate_efficiency_slope must be finite")


@dataclass(frozen=True)
class DetectionScheme:
    """Readout topology: two free-running SPADs or one SPAD in time-division.

    In time-division the two analyzer outputs reach the same SPAD separated by
    ``time_division_delay`` (s), so both share one efficiency curve and the
    rate-dependent mismatch drops out of the count ratio.
    """

    kind: str = "dual_spad"
    time_division_delay: float = 3.1e-9

    def __post_init__(self) -> None:
        if self.kind not in _SCHEME_KINDS:
            raise ValueError(f"kind must be one of {_SCHEME_KINDS}, got {self.kind!r}")
        if self.kind == "single_spad" and self.time_division_delay <= 0.0:
            raise ValueError("time_division_delay must be positive for single_spad")


def spad_inconsistency_noise(
    scheme: DetectionScheme | str,
    attenuation_cv: float,
    coefficient: float = DUAL_SPAD_CV_COEFF,
) -> float:
    """Equivalent phase RMS (rad) from detector-pair efficiency mismatch.

    Scales linearly with the count-rate cv for two free-running SPADs; the
    single-SPAD time-division readout cancels the mismatch, leaving zero
    systematic contribution (only its shot-noise cost remains).
    """
    kind = scheme.kind if isinstance(scheme, DetectionScheme) else scheme
    if kind not in _SCHEME_KINDS:
        raise ValueError(f"unknown scheme kind {kind!r}")
    if attenuation_cv < 0.0:
        raise ValueError("attenuation_cv must be non-negative")
    if kind == "single_spad":
        return 0.0
    return coefficient * attenuation_cv


def inconsistency_slopes(
    target_rms: float, process: AttenuationProcess, visibility: float
) -> tuple[float, float]:
    """Efficiency slopes (+/- per decade) reproducing a target phase RMS.

    Near quadrature a relative efficiency mismatch delta biases the extracted
    phase by delta / (2 V), so a mismatch linear in log10(rate) with slope
    difference ds maps the channel's log10-rate STD onto phase noise of
    ds * std_log10 / (2 V). The two SPADs get symmetric slopes +/- ds / 2.
    """
    if target_rms < 0.0:
        raise ValueError("target_rms must be non-negative")
    if not 0.0 < visibility <= 1.0:
        raise ValueError(f"visibility must be in (0, 1], got {visibility}")
    spread = log10_rate_std(process)
    if target_rms == 0.0:
        return 0.0, 0.0
    if spread == 0.0:
        raise ValueError("attenuation process has no rate spread; cannot place a target RMS")
    ds = 2.0 * visibility * target_rms / spread
    return ds / 2.0, -ds / 2.0


@dataclass(frozen=True)
class CampaignConfig:
    """One phase-tracking run: fixed true phase plus drift, sampled counts.

    ``detected_mean_rate`` is the two-output count rate (Hz) at the mean
    channel transmittance; ``attenuation`` supplies the fading statistics
    (its mean loss is normalized away, the absolute rate being set here).
    """

    duration: float = 940.0
    sample_period: float = 10.0
    true_phase: float = math.pi / 2.0
    drift_rate: float = 0.0
    visibility: float = 0.863
    detected_mean_rate: float = 7260.0
    attenuation: AttenuationProcess = field(
        default_factory=lambda: AttenuationProcess(mean_loss=0.0)
    )
    scheme: DetectionScheme = field(default_factory=DetectionScheme)
    spads: tuple[SpadModel, SpadModel] = field(
        default_factory=lambda: (SpadModel(), SpadModel())
    )
    seed: int = 0

    def __post_init__(self) -> None:
        if self.duration <= 0.0 or self.sample_period <= 0.0:
            raise ValueError("duration and sample_period must be positive")
        if self.duration < 3.0 * self.sample_period:
            raise ValueError("need at least 3 samples; shorten sample_period or extend duration")
        if not 0.0 < self.visibility <= 1.0:
            raise ValueError(f"visibility must be in (0, 1], got {self.visibility}")
        if self.detected_mean_rate <= 0.0:
            raise ValueError("detected_mean_rate must be positive")
        if len(self.spads) != 2:
            raise ValueError("spads must hold exactly two detector models")


@dataclass(frozen=True)
class CampaignSummary:
    """Headline statistics of one campaign run (phases in rad, rates in Hz)."""

    n_samples: int
    mean_rate: float
    attenuation_cv: float
    raw_std: float
    detrended_std: float
    drift_slope: float
    drift_slope_sigma: float
    clamped_fraction: float

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "mean_rate_hz": self.mean_rate,
            "attenuation_cv": self.attenuation_cv,
            "raw_std_rad": self.raw_std,
            "detrended_std_rad": self.detrended_std,
            "drift_slope_rad_per_s": self.drift_slope,
            "drift_slope_sigma_rad_per_s": self.drift_slope_sigma,
            "clamped_fraction": self.clamped_fraction,
        }


@dataclass(frozen=True)
class CampaignResult:
    records: tuple[CountRecord, ...]
    series: PhaseSeries
    summary: CampaignSummary


def _efficiency_factor(spad: SpadModel, rate_decades: np.ndarray) -> np.ndarray:
    # Linear-in-log10 efficiency around the operating point, floored so a deep
    # fade cannot drive it negative.
    return spad.base_efficiency * np.maximum(
        1.0 + spad.rate_efficiency_slope * rate_decades, 0.05
    )


def simulate_campaign(config: CampaignConfig) -> CampaignResult:
    """Run one phase-tracking campaign at shot level.

    Per sample: draw the channel transmittance, evaluate the fringe law at the
    drifting true phase, apply each SPAD's rate-dependent efficiency, draw
    Poisson counts, and extract the phase back out. Attenuation and counting
    use independent RNG streams keyed off ``config.seed`` so either noise
    source can be switched off without moving the other's draws.
    """
    cfg = config
    rng = SeededRng(cfg.seed)
    sample_rate = 1.0 / cfg.sample_period
    fading = attenuation_series(
        cfg.attenuation, cfg.duration, rng.stream("attenuation"), sample_rate=sample_rate
    )
    t = fading.t + cfg.sample_period / 2.0
    relative = fading.values / db_to_linear(cfg.attenuation.mean_loss)

    counts_mean = cfg.detected_mean_rate * relative * cfg.sample_period
    true_phase = cfg.true_phase + cfg.drift_rate * t
    p1, p2 = detection_probabilities(true_phase, cfg.visibility)
    rate_decades = np.log10(relative)

    spad_a, spad_b = cfg.spads
    if cfg.scheme.kind == "dual_spad":
        f1 = _efficiency_factor(spad_a, rate_decades)
        f2 = _efficiency_factor(spad_b, rate_decades)
        norm = 0.5 * (spad_a.base_efficiency + spad_b.base_efficiency)
        dark_a, dark_b = spad_a.dark_rate, spad_b.dark_rate
    else:
        # Time-division: one detector, one efficiency curve for both outputs.
        f1 = f2 = _efficiency_factor(spad_a, rate_decades)
        norm = spad_a.base_efficiency
        dark_a = dark_b = spad_a.dark_rate

    mu1 = counts_mean * p1 * f1 / norm + dark_a * cfg.sample_period
    mu2 = counts_mean * p2 * f2 / norm + dark_b * cfg.sample_period
    gen = rng.stream("shot")
    c1 = gen.poisson(mu1).astype(np.int64)
    c2 = gen.poisson(mu2).astype(np.int64)

    phases, clamped = extract_phases(c1, c2, cfg.visibility)
    series = PhaseSeries(t=t, phase=phases, clamped=clamped)
    trend = detrend_linear(series)
    total = c1 + c2
    summary = CampaignSummary(
        n_samples=int(t.size),
        mean_rate=float(total.sum() / cfg.duration),
        attenuation_cv=float(np.std(total, ddof=1) / np.mean(total)),
        raw_std=float(np.std(phases, ddof=1)),
        detrended_std=trend.residual_std,
        drift_slope=trend.slope,
        drift_slope_sigma=trend.sigma_slope,
        clamped_fraction=float(np.mean(clamped)),
    )
    records = tuple(
        CountRecord(float(ti), int(a), int(b)) for ti, a, b in zip(t, c1, c2)
    )
    return CampaignResult(records=records, series=series, summary=summary)


def simulate_fringe_scan(
    phase_settings,
    counts_per_point: float,
    visibility: float,
    rng: SeededRng | np.random.Generator,
    phase_offset: float = 0.0,
    dwell: float = 1.0,
) -> list[tuple[float, CountRecord]]:
    """Poisson counts along a scan of the analysis phase.

    Returns (phase setting, counts) pairs in the shape the fringe fitter
    takes; ``phase_offset`` is the extra phase the scan does not know about.
    """
    if counts_per_point <= 0.0:
        raise ValueError("counts_per_point must be positive")
    if isinstance(rng, SeededRng):
        rng = rng.stream("fringe")
    scan = []
    for i, setting in enumerate(np.asarray(phase_settings, dtype=float)):
        p1, _ = detection_probabilities(setting + phase_offset, visibility)
        c1 = int(rng.poisson(counts_per_point * p1))
        c2 = int(rng.poisson(counts_per_point * (1.0 - p1)))
        scan.append((float(setting), CountRecord(t=i * dwell, c1=c1, c2=c2)))
    return scan


def simulate_coherent_stream(
    rate: float,
    duration: float,
    rng: SeededRng | np.random.Generator,
    split: float = 0.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Poissonian photon arrivals split onto two detectors (g2 = 1 reference)."""
    if rate <= 0.0 or duration <= 0.0:
        raise ValueError("rate and duration must be positive")
    if not 0.0 < split < 1.0:
        raise ValueError("split must be inside (0, 1)")
    if isinstance(rng, SeededRng):
        rng = rng.stream("stream")
    n = rng.poisson(rate * duration)
    times = np.sort(rng.uniform(0.0, duration, n))
    to_a = rng.random(times.size) < split
    return times[to_a], times[~to_a]


def simulate_single_photon_stream(
    rate: float,
    duration: float,
    rng: SeededRng | np.random.Generator,
    g2_zero: float = 0.071,
    dead_time: float = 2e-9,
    split: float = 0.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Antibunched arrivals with residual contamination, split onto two detectors.

    The primary stream is a renewal process whose gaps never fall below
    ``dead_time`` (no genuine pairs inside a correlation bin); an independent
    Poissonian contamination stream at the rate fraction reproducing the
    target zero-delay correlation is mixed in, since uncorrelated background
    raises g2(0) to 1 - (1 + beta)^(-2) for a contamination fraction beta.
    ``rate`` is the combined mean arrival rate.
    """
    if rate <= 0.0 or duration <= 0.0:
        raise ValueError("rate and duration must be positive")
    if not 0.0 <= g2_zero < 1.0:
        raise ValueError(f"g2_zero must be in [0, 1), got {g2_zero}")
    if dead_time <= 0.0:
        raise ValueError("dead_time must be positive")
    if not 0.0 < split < 1.0:
        raise ValueError("split must be inside (0, 1)")
    if isinstance(rng, SeededRng):
        rng = rng.stream("stream")

    beta = 1.0 / math.sqrt(1.0 - g2_zero) - 1.0
    primary_rate = rate / (1.0 + beta)
    mean_gap = 1.0 / primary_rate
    if mean_gap <= dead_time:
        raise ValueError(
            f"primary rate {primary_rate:.3g} Hz cannot sustain a {dead_time} s dead time"
        )
    exp_mean = mean_gap - dead_time
    n_draw = int(duration / mean_gap * 1.05) + 1000
    gaps = dead_time + rng.exponential(exp_mean, n_draw)
    times = np.cumsum(gaps)
    while times[-1] < duration:
        extra = dead_time + rng.exponential(exp_mean, 1000)
        times = np.concatenate([times, times[-1] + np.cumsum(extra)])
    primary = times[times <= duration]

    n_contam = rng.poisson(beta * primary_rate * duration)
    contam = rng.uniform(0.0, duration, n_contam)
    merged = np.sort(np.concatenate([primary, contam]))
    to_a = rng.random(merged.size) < split
    return merged[to_a], merged[~to_a]
