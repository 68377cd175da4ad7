"""Phase, visibility, drift and g2 estimators against exact oracles."""

import math
import warnings

import numpy as np
import pytest

from fransim.core import SeededRng
from fransim.detection import (
    simulate_coherent_stream,
    simulate_fringe_scan,
    simulate_single_photon_stream,
)
from fransim.estimation import (
    CountRecord,
    DetrendResult,
    G2Result,
    LowStatisticsWarning,
    PhaseClampWarning,
    PhaseSeries,
    detrend_linear,
    extract_phase,
    extract_phases,
    fit_visibility,
    g2_correlation,
    shot_noise_phase,
    unwrap_phase,
)
from fransim.quantum import detection_probabilities


def test_shot_noise_reference():
    # 72 600 balanced counts at V = 0.863: the 4.3 mrad budget row
    assert shot_noise_phase(36300, 36300, 0.863) == pytest.approx(
        0.004300519229578247, rel=1e-12
    )


def test_shot_noise_balanced_identity():
    # balanced outputs collapse the propagation to 1 / (V sqrt(N))
    for n in (1e3, 1e4, 72600, 1e6):
        for v in (0.3, 0.863, 1.0):
            assert shot_noise_phase(n / 2, n / 2, v) == pytest.approx(
                1.0 / (v * math.sqrt(n)), rel=1e-12
            )


def test_shot_noise_matches_resampling():
    # empirical STD of the extractor over Poisson draws vs the formula
    rng = np.random.default_rng(123)
    v = 0.863
    for phi, n_tot in ((1.1, 5e4), (math.pi / 2.0, 7260.0), (2.2, 2e5)):
        p1, _ = detection_probabilities(phi, v)
        c1 = rng.poisson(p1 * n_tot, size=100_000)
        c2 = rng.poisson((1.0 - p1) * n_tot, size=100_000)
        phases, _ = extract_phases(c1, c2, v)
        predicted = shot_noise_phase(p1 * n_tot, (1.0 - p1) * n_tot, v)
        assert phases.std() == pytest.approx(predicted, rel=0.05)


def test_shot_noise_validation():
    with pytest.raises(ValueError):
        shot_noise_phase(100, 100, 0.0)
    with pytest.raises(ValueError):
        shot_noise_phase(-1, 100, 0.863)
    with pytest.raises(ValueError):
        shot_noise_phase(0, 0, 0.863)
    with pytest.raises(ValueError):
        shot_noise_phase(1000, 0, 1.0)  # ratio at the fringe extremum


def test_extract_forward_identity():
    # extracting from exact expectation counts returns the phase that made them
    v = 0.863
    for phi in np.linspace(0.05, math.pi - 0.05, 40):
        p1, p2 = detection_probabilities(phi, v)
        n = 1e7
        assert extract_phase(p1 * n, p2 * n, v) == pytest.approx(phi, abs=1e-9)


def test_extract_phase_clamps_within_shot_noise():
    # a ratio a hair beyond the extremum clamps to the edge with a warning
    with pytest.warns(PhaseClampWarning):
        phi = extract_phase(100, 0, visibility=0.995)
    assert phi == 0.0
    phases, clamped = extract_phases([100], [0], visibility=0.995)
    assert clamped[0] and phases[0] == 0.0
    # a ratio exactly on the edge is in range, no warning
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("error")
        assert extract_phase(100, 0, visibility=1.0) == 0.0


def test_extract_phase_rejects_far_out_ratio():
    # far outside the fringe the visibility model cannot explain the counts
    with pytest.raises(ValueError):
        extract_phase(10000, 0, visibility=0.5)
    with pytest.raises(ValueError):
        extract_phases([10000], [0], visibility=0.5)


def test_extract_phases_vector_batches():
    v = 0.9
    phis = np.linspace(0.3, 2.8, 12)
    p1, p2 = detection_probabilities(phis, v)
    phases, clamped = extract_phases(p1 * 1e8, p2 * 1e8, v)
    assert np.allclose(phases, phis, atol=1e-7)
    assert not clamped.any()
    with pytest.raises(ValueError):
        extract_phases([10, -1], [5, 5], v)
    with pytest.raises(ValueError):
        extract_phases([0], [0], v)


def test_fit_visibility_noiseless():
    settings = np.linspace(0.0, 2.0 * math.pi, 24, endpoint=False)
    scan = []
    for i, s in enumerate(settings):
        p1, p2 = detection_probabilities(s + 0.4, 0.863)
        scan.append((float(s), CountRecord(t=float(i), c1=round(1e6 * p1), c2=round(1e6 * p2))))
    fit = fit_visibility(scan)
    assert fit.visibility == pytest.approx(0.863, abs=1e-6)
    assert fit.phase_offset == pytest.approx(0.4, abs=1e-6)


def test_fit_visibility_poisson_scan():
    settings = np.linspace(0.0, 2.0 * math.pi, 24, endpoint=False)
    scan = simulate_fringe_scan(settings, 1e5, 0.863, SeededRng(2), phase_offset=0.4)
    fit = fit_visibility(scan)
    assert fit.visibility == pytest.approx(0.8617429016128638, rel=1e-9)
    assert fit.sigma_visibility == pytest.approx(0.0005642584353740841, rel=1e-9)
    assert fit.phase_offset == pytest.approx(0.4004689005633934, rel=1e-9)
    assert abs(fit.visibility - 0.863) < 3.0 * fit.sigma_visibility


def test_fit_visibility_uncertainty_scales_with_counts():
    settings = np.linspace(0.0, 2.0 * math.pi, 24, endpoint=False)
    lo = fit_visibility(simulate_fringe_scan(settings, 1e3, 0.863, SeededRng(6)))
    hi = fit_visibility(simulate_fringe_scan(settings, 1e5, 0.863, SeededRng(6)))
    assert lo.sigma_visibility / hi.sigma_visibility == pytest.approx(10.0, rel=0.2)


def test_fit_visibility_null_case():
    # zero contrast: fitted V consistent with zero, no crash on the gradient
    rng = np.random.default_rng(5)
    settings = np.linspace(0.0, 2.0 * math.pi, 24, endpoint=False)
    scan = [
        (float(s), CountRecord(t=float(i), c1=int(rng.poisson(5e4)), c2=int(rng.poisson(5e4))))
        for i, s in enumerate(settings)
    ]
    fit = fit_visibility(scan)
    assert fit.visibility < 5.0 * fit.sigma_visibility


def test_fit_visibility_rejects_degenerate_scans():
    good = CountRecord(t=0.0, c1=100, c2=100)
    with pytest.raises(ValueError):
        fit_visibility([(0.1 * i, good) for i in range(5)])  # too few points
    with pytest.raises(ValueError):
        fit_visibility([(0.1 * i, good) for i in range(10)])  # under half a fringe
    with pytest.raises(ValueError):
        fit_visibility(
            [(0.5 * i, CountRecord(t=float(i), c1=0, c2=0)) for i in range(10)]
        )


def test_unwrap_phase():
    truth = np.linspace(0.0, 12.0, 200)
    wrapped = np.mod(truth + math.pi, 2.0 * math.pi) - math.pi
    assert np.allclose(unwrap_phase(wrapped) - unwrap_phase(wrapped)[0], truth, atol=1e-12)


def test_detrend_linear_exact_line():
    t = np.arange(50, dtype=float)
    series = PhaseSeries(t=t, phase=0.3 + 2e-4 * t)
    res = detrend_linear(series)
    assert res.slope == pytest.approx(2e-4, abs=1e-15)
    assert res.residual_std == pytest.approx(0.0, abs=1e-15)


def test_detrend_linear_noisy_reference():
    rng = np.random.default_rng(8)
    t = np.arange(94) * 10.0 + 5.0
    phase = 0.5 + 0.117e-3 * t + rng.normal(0.0, 16e-3, t.size)
    res = detrend_linear(PhaseSeries(t=t, phase=phase))
    assert res.slope == pytest.approx(0.00012634468857250584, rel=1e-9)
    assert res.sigma_slope == pytest.approx(6.702351971524946e-06, rel=1e-9)
    assert res.residual_std == pytest.approx(0.017632090716556463, rel=1e-9)
    # the recovered slope sits within its own error bar of the injected one
    assert abs(res.slope - 0.117e-3) < 3.0 * res.sigma_slope
    # removing the trend leaves roughly the injected scatter
    assert res.residual_std == pytest.approx(16e-3, rel=0.25)


def test_detrend_validation():
    with pytest.raises(ValueError):
        detrend_linear(PhaseSeries(t=np.array([0.0, 1.0]), phase=np.array([0.1, 0.2])))
    with pytest.raises(ValueError):
        PhaseSeries(t=np.array([0.0, 0.0, 1.0]), phase=np.zeros(3))


def test_g2_coherent_plateau():
    # Poissonian light: flat correlation, zero bin included
    times_a, times_b = simulate_coherent_stream(2e6, 2.0, SeededRng(3))
    res = g2_correlation(times_a, times_b)
    assert res.g2_zero == pytest.approx(1.0, abs=0.05)
    assert res.plateau == pytest.approx(1.0, abs=0.05)
    assert np.all(np.abs(res.g2 / res.plateau - 1.0) < 0.12)
    assert res.tau.size == res.g2.size
    assert res.tau[np.argmin(np.abs(res.tau))] == pytest.approx(0.0, abs=1e-15)


def test_g2_single_photon_reference():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LowStatisticsWarning)
        a, b = simulate_single_photon_stream(2e6, 3.0, SeededRng(7), g2_zero=0.071)
    res = g2_correlation(a, b)
    assert res.g2_zero == pytest.approx(0.07506709536842665, rel=1e-9)
    assert abs(res.g2_zero - 0.071) < 0.01
    # antibunching dip is local: the plateau itself stays at unity
    assert res.plateau == pytest.approx(1.0, abs=0.02)


def test_g2_warns_on_low_statistics():
    rng = np.random.default_rng(0)
    a = np.sort(rng.uniform(0.0, 0.01, 4000))
    b = np.sort(rng.uniform(0.0, 0.01, 4000))
    with pytest.warns(LowStatisticsWarning):
        g2_correlation(a, b)


def test_g2_validation():
    a = np.linspace(0.0, 1.0, 20000)
    with pytest.raises(ValueError):
        g2_correlation(np.array([]), a)
    with pytest.raises(ValueError):
        g2_correlation(a, a, window=1e-9, bin_width=5e-9)
    with pytest.raises(ValueError):
        g2_correlation(a, a, bin_width=0.0)
    with pytest.raises(ValueError):
        g2_correlation(np.zeros(20000), np.zeros(20000))  # no time extent


def test_count_record():
    rec = CountRecord(t=1.0, c1=10, c2=20)
    assert rec.total == 30
    with pytest.raises(ValueError):
        CountRecord(t=0.0, c1=-1, c2=0)
