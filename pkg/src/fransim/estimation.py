"""Phase extraction and statistics from photon-counting records.

Everything here is estimator-side: given counts from the two analyzer
outputs, recover the interferometer phase, its shot-noise floor, fringe
visibility, linear drift, and the second-order correlation of the source.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "CountRecord",
    "PhaseSeries",
    "PhaseClampWarning",
    "LowStatisticsWarning",
    "VisibilityFit",
    "DetrendResult",
    "G2Result",
    "shot_noise_phase",
    "extract_phase",
    "extract_phases",
    "fit_visibility",
    "detrend_linear",
    "unwrap_phase",
    "g2_correlation",
]


class PhaseClampWarning(UserWarning):
    """Count ratio fell just outside the fringe and was clamped to the edge."""


class LowStatisticsWarning(UserWarning):
    """Fewer events than the estimator needs for stable statistics."""


@dataclass(frozen=True)
class CountRecord:
    """Counts of the two analyzer outputs accumulated around time ``t``."""

    t: float
    c1: int
    c2: int

    def __post_init__(self) -> None:
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return self.c1 + self.c2


@dataclass
class PhaseSeries:
    """Extracted phases (rad) on a time grid, with optional clamp flags."""

    t: np.ndarray
    phase: np.ndarray
    clamped: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=float)
        self.phase = np.asarray(self.phase, dtype=float)
        if self.t.shape != self.phase.shape or self.t.ndim != 1:
            raise ValueError("t and phase must be 1-D arrays of equal length")
        if self.t.size >= 2 and not np.all(np.diff(self.t) > 0.0):
            raise ValueError("t must be strictly increasing")
        if self.clamped is not None:
            self.clamped = np.asarray(self.clamped, dtype=bool)
            if self.clamped.shape != self.t.shape:
                raise ValueError("clamped must match t in length")

    def __len__(self) -> int:
        return self.t.size


def shot_noise_phase(c1: float, c2: float, visibility: float = 1.0) -> float:
    """Shot-noise phase uncertainty (rad) of one two-output count pair.

    Propagates Poisson variances of (c1, c2) through the arccos phase
    estimator. For balanced outputs this reduces to 1 / (V sqrt(c1 + c2)).
    The ratio must lie strictly inside the fringe, |c1 - c2| < V (c1 + c2).
    """
    if not 0.0 < visibility <= 1.0:
        raise ValueError(f"visibility must be in (0, 1], got {visibility}")
    if c1 < 0 or c2 < 0:
        raise ValueError("counts must be non-negative")
    n = c1 + c2
    if n <= 0:
        raise ValueError("total count must be positive")
    u = (c1 - c2) / (visibility * n)
    if abs(u) >= 1.0:
        raise ValueError(
            f"count ratio {u} is at or beyond the fringe extremum; the phase "
            "derivative vanishes there and no uncertainty is defined"
        )
    return (
        2.0 * math.sqrt(c1**2 * c2 + c1 * c2**2)
        / (visibility * n**2 * math.sqrt(1.0 - u**2))
    )


def _ratio_sigma(c1, c2, visibility):
    # Delta-method STD of u = (c1 - c2) / (V (c1 + c2)) under Poisson counts,
    # with counts floored at 1 so an empty output keeps a finite scale.
    c1 = np.maximum(np.asarray(c1, dtype=float), 1.0)
    c2 = np.maximum(np.asarray(c2, dtype=float), 1.0)
    n = c1 + c2
    return 2.0 * np.sqrt(c1 * c2 / n**3) / visibility


def extract_phases(c1, c2, visibility: float = 1.0, clamp_sigma: float = 1.0):
    """Vectorized arccos phase extraction; returns (phases, clamped mask).

    Ratios past the fringe edge by less than ``clamp_sigma`` shot-noise sigmas
    are clamped onto the edge and flagged; anything farther out means the
    counts cannot follow the assumed fringe law and is rejected.
    """
    if not 0.0 < visibility <= 1.0:
        raise ValueError(f"visibility must be in (0, 1], got {visibility}")
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    if np.any(c1 < 0) or np.any(c2 < 0):
        raise ValueError("counts must be non-negative")
    n = c1 + c2
    if np.any(n <= 0):
        raise ValueError("total count must be positive in every record")
    u = (c1 - c2) / (visibility * n)
    excess = np.abs(u) - 1.0
    tolerance = clamp_sigma * _ratio_sigma(c1, c2, visibility)
    bad = excess > tolerance
    if np.any(bad):
        worst = float(np.max(excess))
        raise ValueError(
            f"count ratio exceeds the fringe edge by {worst:.3g} "
            f"(> {clamp_sigma} shot-noise sigma); visibility model does not fit"
        )
    clamped = excess > 0.0
    phases = np.arccos(np.clip(u, -1.0, 1.0))
    return phases, clamped


def extract_phase(c1: float, c2: float, visibility: float = 1.0, clamp_sigma: float = 1.0) -> float:
    """Phase (rad) in [0, pi] from one count pair, Phi = arccos((c1-c2)/(V(c1+c2))).

    The arccos branch cannot distinguish the two fringe sides, so drifts are
    only tracked faithfully while the phase stays inside (0, pi). A ratio just
    past the edge (within ``clamp_sigma`` shot-noise sigmas) clamps to the edge
    with a :class:`PhaseClampWarning`.
    """
    phases, clamped = extract_phases(
        np.asarray([c1]), np.asarray([c2]), visibility, clamp_sigma
    )
    if bool(clamped[0]):
        warnings.warn(
            "count ratio beyond the fringe edge within shot noise; phase clamped",
            PhaseClampWarning,
            stacklevel=2,
        )
    return float(phases[0])


class VisibilityFit(NamedTuple):
    """Fringe fit result: contrast, its uncertainty, and the phase offset."""

    visibility: float
    sigma_visibility: float
    phase_offset: float


def fit_visibility(scan: Sequence[tuple[float, CountRecord]]) -> VisibilityFit:
    """Fit V and offset of r(phi) = V cos(phi + offset) to a phase scan.

    ``scan`` holds (analysis phase setting, counts) pairs. The model is linear
    in (A, B) = (V cos offset, -V sin offset), solved by weighted least squares
    with per-point shot-noise variances var(r) = (1 - r^2) / n; the quoted
    sigma_visibility comes from propagating that covariance, without any
    chi-square rescaling. Needs at least 8 points spanning at least half a
    fringe (pi), and should span a full one for a well-conditioned offset.
    """
    if len(scan) < 8:
        raise ValueError(f"fringe fit needs at least 8 scan points, got {len(scan)}")
    phis = np.array([float(p) for p, _ in scan])
    c1 = np.array([rec.c1 for _, rec in scan], dtype=float)
    c2 = np.array([rec.c2 for _, rec in scan], dtype=float)
    n = c1 + c2
    if np.any(n <= 0):
        raise ValueError("every scan point needs a positive total count")
    span = float(np.max(phis) - np.min(phis))
    if span < math.pi:
        raise ValueError(f"scan spans {span:.3f} rad, less than half a fringe")
    r = (c1 - c2) / n

    design = np.column_stack([np.cos(phis), np.sin(phis)])

    def solve(weights):
        w_design = design * weights[:, None]
        normal = design.T @ w_design
        rhs = w_design.T @ r
        coef = np.linalg.solve(normal, rhs)
        return coef, np.linalg.inv(normal)

    coef, _ = solve(np.ones_like(r))
    # Reweight once with model-predicted ratios so empty-output points do not
    # get infinite weight.
    r_model = design @ coef
    var = np.maximum(1.0 - r_model**2, 1e-3) / n
    coef, cov = solve(1.0 / var)

    a, b = coef
    visibility = float(np.hypot(a, b))
    offset = float(math.atan2(-b, a))
    if visibility > 0.0:
        grad = np.array([a, b]) / visibility
        sigma_v = float(math.sqrt(grad @ cov @ grad))
    else:
        sigma_v = float(math.sqrt(max(cov[0, 0], cov[1, 1])))
    return VisibilityFit(visibility=visibility, sigma_visibility=sigma_v, phase_offset=offset)


class DetrendResult(NamedTuple):
    """Linear drift removal: slope, its standard error, and residual RMS."""

    slope: float
    sigma_slope: float
    residual_std: float


def unwrap_phase(phases: np.ndarray) -> np.ndarray:
    """Continuous phase track via nearest-branch selection between samples."""
    return np.unwrap(np.asarray(phases, dtype=float))


def detrend_linear(series: PhaseSeries) -> DetrendResult:
    """Fit and remove a linear drift from an unwrapped phase series.

    Returns the slope (rad/s), its standard error from the residual scatter,
    and the residual STD after slope removal (ddof accounts for the two fitted
    parameters).
    """
    if len(series) < 3:
        raise ValueError(f"detrending needs at least 3 samples, got {len(series)}")
    t = series.t
    y = unwrap_phase(series.phase)
    t0 = t - t.mean()
    ss_t = float(np.sum(t0**2))
    if ss_t <= 0.0:
        raise ValueError("time values are degenerate")
    slope = float(np.sum(t0 * (y - y.mean())) / ss_t)
    residuals = y - y.mean() - slope * t0
    residual_std = float(np.std(residuals, ddof=2))
    sigma_slope = residual_std / math.sqrt(ss_t)
    return DetrendResult(slope=slope, sigma_slope=sigma_slope, residual_std=residual_std)


class G2Result(NamedTuple):
    """Second-order correlation estimate from two detector streams."""

    tau: np.ndarray        # bin centers, s
    g2: np.ndarray         # normalized correlation per bin
    g2_zero: float         # zero-delay bin over the plateau
    plateau: float         # mean far-delay normalized level (should be ~1)
    zero_bin_pairs: int    # raw coincidences in the zero-delay bin


def g2_correlation(
    timestamps_a: np.ndarray,
    timestamps_b: np.ndarray,
    window: float = 50e-9,
    bin_width: float = 1e-9,
    plateau_min: float | None = None,
) -> G2Result:
    """Cross-correlation histogram of two detector streams, normalized to 1 far out.

    Coincidences are histogrammed in ``bin_width`` bins of the delay
    t_b - t_a over +/- ``window`` and divided by the accidental expectation
    rate_a * rate_b * bin * duration. ``g2_zero`` is the zero-delay bin over
    the plateau average beyond ``plateau_min`` (default window / 2). A few
    1e4 events per stream are needed before the zero bin has meaningful
    statistics; fewer only warns.
    """
    t_a = np.sort(np.asarray(timestamps_a, dtype=float))
    t_b = np.sort(np.asarray(timestamps_b, dtype=float))
    if t_a.size == 0 or t_b.size == 0:
        raise ValueError("both detector streams must be non-empty")
    if bin_width <= 0.0 or window <= 0.0 or window < bin_width:
        raise ValueError("need window >= bin_width > 0")
    if t_a.size + t_b.size < 10_000:
        warnings.warn(
            f"only {t_a.size + t_b.size} events; g2 statistics will be poor",
            LowStatisticsWarning,
            stacklevel=2,
        )
    if plateau_min is None:
        plateau_min = window / 2.0
    span = max(t_a[-1], t_b[-1]) - min(t_a[0], t_b[0])
    if span <= 0.0:
        raise ValueError("streams have no time extent")

    half_bins = int(math.floor(window / bin_width))
    edges = (np.arange(-half_bins, half_bins + 2) - 0.5) * bin_width
    reach = edges[-1]

    lo = np.searchsorted(t_b, t_a - reach, side="left")
    hi = np.searchsorted(t_b, t_a + reach, side="right")
    lengths = hi - lo
    total = int(lengths.sum())
    if total == 0:
        hist = np.zeros(edges.size - 1, dtype=np.int64)
    else:
        starts = np.concatenate(([0], np.cumsum(lengths[:-1])))
        flat = np.repeat(lo, lengths) + (np.arange(total) - np.repeat(starts, lengths))
        deltas = t_b[flat] - np.repeat(t_a, lengths)
        hist, _ = np.histogram(deltas, bins=edges)

    rate_a = t_a.size / span
    rate_b = t_b.size / span
    accidental = rate_a * rate_b * bin_width * span
    tau = 0.5 * (edges[:-1] + edges[1:])
    g2 = hist / accidental

    plateau_mask = np.abs(tau) >= plateau_min
    if not np.any(plateau_mask):
        raise ValueError("plateau_min leaves no bins to normalize against")
    plateau = float(np.mean(g2[plateau_mask]))
    if plateau <= 0.0:
        raise ValueError("no coincidences in the plateau; cannot normalize")
    zero_idx = int(np.argmin(np.abs(tau)))
    g2_zero = float(g2[zero_idx] / plateau)
    return G2Result(
        tau=tau, g2=g2, g2_zero=g2_zero, plateau=plateau, zero_bin_pairs=int(hist[zero_idx])
    )
