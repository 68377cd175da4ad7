"""Turbulence spectrum, pointing coupling, link budget, fading process."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import i0

from fransim.channel import (
    AOI_COUPLING,
    AOI_NO_IMAGING_GAIN,
    AttenuationProcess,
    LinkBudget,
    TurbulenceParams,
    acquisition_time,
    aoi_phase_noise,
    attenuation_series,
    axial_phase_noise,
    cn2_from_fried,
    detected_rate,
    fried_from_cn2,
    geometric_loss,
    geometric_transmittance,
    imaging_overlap_response,
    kolmogorov_psd,
    log10_rate_std,
    lognormal_sigma,
    total_link_budget,
)
from fransim.core import SeededRng, db_to_linear

# 53 mm Fried parameter measured at 671 nm over the 8.4 km path
URBAN = dict(fried_r0=53e-3, wavelength=671e-9, path_len=8.4e3)


def _urban(wind_v=3.65):
    return TurbulenceParams.from_fried(
        URBAN["fried_r0"], URBAN["wavelength"], URBAN["path_len"], wind_v
    )


def test_cn2_from_fried_reference():
    assert cn2_from_fried(53e-3, 671e-9, 8.4e3) == pytest.approx(
        4.2921267068146296e-16, rel=1e-12
    )


def test_fried_cn2_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(30):
        r0 = rng.uniform(5e-3, 0.3)
        wl = rng.uniform(400e-9, 1600e-9)
        length = rng.uniform(1e3, 4e7)
        cn2 = cn2_from_fried(r0, wl, length)
        assert fried_from_cn2(cn2, wl, length) == pytest.approx(r0, rel=1e-12)


def test_turbulence_params_consistency_guard():
    cn2 = cn2_from_fried(53e-3, 671e-9, 8.4e3)
    TurbulenceParams(cn2=cn2, fried_r0=53e-3, wind_v=3.0, path_len=8.4e3, wavelength=671e-9)
    with pytest.raises(ValueError):
        TurbulenceParams(
            cn2=2.0 * cn2, fried_r0=53e-3, wind_v=3.0, path_len=8.4e3, wavelength=671e-9
        )
    with pytest.raises(ValueError):
        TurbulenceParams.from_fried(-1.0, 671e-9, 8.4e3, 3.0)


def test_kolmogorov_psd_reference():
    # published value at 0.25 GHz is 1.7e-21 rad^2/Hz
    psd = kolmogorov_psd(0.25e9, _urban())
    assert psd == pytest.approx(1.7645524971943084e-21, rel=1e-12)
    assert abs(psd - 1.7e-21) / 1.7e-21 < 0.05


def test_kolmogorov_psd_scalings():
    params = _urban()
    f = np.array([1e6, 1e7, 1e8])
    s = kolmogorov_psd(f, params)
    # pure power law: each decade in f drops the PSD by 10^(8/3)
    assert s[0] / s[1] == pytest.approx(10.0 ** (8.0 / 3.0), rel=1e-12)
    assert s[1] / s[2] == pytest.approx(10.0 ** (8.0 / 3.0), rel=1e-12)
    # wind enters as v^(5/3)
    doubled = kolmogorov_psd(f, _urban(wind_v=7.3))
    assert np.allclose(doubled / s, 2.0 ** (5.0 / 3.0), rtol=1e-12)
    # zero wind transports nothing across the beam
    assert kolmogorov_psd(1e6, _urban(wind_v=0.0)) == 0.0
    with pytest.raises(ValueError):
        kolmogorov_psd(0.0, params)
    with pytest.raises(ValueError):
        kolmogorov_psd(np.array([1.0, -2.0]), params)


def test_axial_phase_noise_matches_quadrature():
    params = _urban()
    f_min = 0.25e9
    noise = axial_phase_noise(params, f_min=f_min)
    # independent check: integrate the spectrum numerically in log frequency
    # (the power law spans too many decades for a linear-grid quadrature)
    integral, _ = quad(
        lambda u: kolmogorov_psd(math.exp(u), params) * math.exp(u),
        math.log(f_min), math.log(f_min) + 40.0, limit=200,
    )
    assert noise.integrated == pytest.approx(math.sqrt(integral), rel=1e-9)
    assert noise.integrated == pytest.approx(5.144733954046081e-07, rel=1e-12)
    assert noise.single_frequency == pytest.approx(6.641822974896102e-07, rel=1e-12)
    assert noise.single_frequency / noise.integrated == pytest.approx(
        1.0 / math.sqrt(0.6), rel=1e-12
    )
    with pytest.raises(ValueError):
        axial_phase_noise(params, f_min=0.0)


def test_aoi_phase_noise():
    # 62 urad of AOI jitter maps to 0.3 mrad of phase through the imaging system
    assert aoi_phase_noise(62e-6) == pytest.approx(0.3e-3, rel=1e-12)
    assert aoi_phase_noise(62e-6, imaging_system=False) == pytest.approx(
        0.3e-3 * AOI_NO_IMAGING_GAIN, rel=1e-12
    )
    assert AOI_NO_IMAGING_GAIN == 183.0
    assert aoi_phase_noise(0.0) == 0.0
    with pytest.raises(ValueError):
        aoi_phase_noise(-1e-6)


def test_imaging_overlap_response():
    direction, position = imaging_overlap_response(1.6e-3)
    assert direction == pytest.approx(0.04e-3, rel=1e-12)
    assert position == pytest.approx(0.06e-3, rel=1e-12)
    # linear in the input, sign included
    d2, p2 = imaging_overlap_response(-0.8e-3)
    assert d2 == pytest.approx(-direction / 2.0, rel=1e-12)
    assert p2 == pytest.approx(-position / 2.0, rel=1e-12)
    with pytest.raises(ValueError):
        imaging_overlap_response(12e-3)


def test_geometric_loss_reference():
    # 10 urad divergence onto a 0.4 m aperture at geostationary range
    assert geometric_loss(0.4, 1.0e-5, 3.6e7) == pytest.approx(59.0848501887865, rel=1e-12)
    assert geometric_transmittance(0.4, 1.0e-5, 3.6e7) == pytest.approx(
        (0.4 / 360.0) ** 2, rel=1e-12
    )


def test_geometric_loss_rejects_near_field():
    with pytest.raises(ValueError):
        geometric_transmittance(0.4, 1.0e-5, 1e4)  # spot smaller than aperture
    with pytest.raises(ValueError):
        geometric_transmittance(-0.4, 1.0e-5, 3.6e7)


def test_link_budget_total_and_rate():
    budget = LinkBudget(
        items=[
            ("Geometric (diffraction)", 59.0),
            ("Atmospheric absorption", 3.0),
            ("Internal optics", 5.5),
        ],
        source_rate=4.0e8,
    )
    assert total_link_budget(budget) == pytest.approx(67.5, abs=1e-12)
    assert detected_rate(budget) == pytest.approx(71.13117640155691, rel=1e-12)
    # item order must not matter
    shuffled = LinkBudget(items=budget.items[::-1], source_rate=4.0e8)
    assert total_link_budget(shuffled) == total_link_budget(budget)
    with pytest.raises(ValueError):
        LinkBudget(items=[], source_rate=1e8)
    with pytest.raises(ValueError):
        LinkBudget(items=[("oops", -3.0)], source_rate=1e8)
    with pytest.raises(ValueError):
        LinkBudget(items=[("ok", 3.0)], source_rate=0.0)


def test_acquisition_time_reference():
    # shot-noise target that resolves the geostationary signal at 5 sigma
    t = acquisition_time(4.3e-3, 0.863, 71.13117640155691)
    assert t == pytest.approx(1020.8960091312894, rel=1e-12)
    assert 0.22 < t / 3600.0 < 0.34
    # quadrupling the rate quarters the time
    assert acquisition_time(4.3e-3, 0.863, 4 * 71.13117640155691) == pytest.approx(
        t / 4.0, rel=1e-12
    )
    with pytest.raises(ValueError):
        acquisition_time(0.0, 0.863, 10.0)
    with pytest.raises(ValueError):
        acquisition_time(4.3e-3, 1.5, 10.0)


def test_sinusoid_cv_reference():
    # 7 dB peak-to-peak modulation alone gives cv 0.538 in linear units
    process = AttenuationProcess(mean_loss=46.0, modulation_amplitude=7.0)
    assert process.sinusoid_cv() == pytest.approx(0.5383509194393976, rel=1e-12)
    flat = AttenuationProcess(mean_loss=46.0)
    assert flat.sinusoid_cv() == 0.0


def test_lognormal_sigma_tops_up_to_target():
    process = AttenuationProcess(
        mean_loss=46.0, modulation_amplitude=7.0, stochastic_cv=0.71
    )
    sigma = lognormal_sigma(process)
    assert sigma == pytest.approx(0.392034068993188, rel=1e-12)
    # combined cv of independent unit-mean factors reproduces the target
    cv_sin = process.sinusoid_cv()
    cv_ln = math.sqrt(math.expm1(sigma**2))
    combined = math.sqrt((1 + cv_sin**2) * (1 + cv_ln**2) - 1.0)
    assert combined == pytest.approx(0.71, rel=1e-12)
    # a target the sinusoid already exceeds clamps the scatter to zero
    assert lognormal_sigma(
        AttenuationProcess(mean_loss=46.0, modulation_amplitude=7.0, stochastic_cv=0.1)
    ) == 0.0


def test_log10_rate_std_reference():
    process = AttenuationProcess(
        mean_loss=46.0, modulation_amplitude=7.0, stochastic_cv=0.71
    )
    # count-rate scatter of 0.3 decades, as observed on the urban link
    assert log10_rate_std(process) == pytest.approx(0.30039618150708924, rel=1e-12)
    assert log10_rate_std(AttenuationProcess(mean_loss=46.0)) == 0.0


def test_attenuation_series_statistics():
    process = AttenuationProcess(
        mean_loss=46.0, modulation_amplitude=7.0, modulation_period=38.0,
        stochastic_cv=0.71,
    )
    series = attenuation_series(process, 3800.0, SeededRng(5).stream("attenuation"),
                                sample_rate=10.0)
    assert series.t.shape == series.values.shape == (38000,)
    values = series.values
    assert np.all(values > 0.0) and np.all(values <= 1.0)
    # unit-mean construction: series mean stays near the mean-loss transmittance
    assert values.mean() == pytest.approx(db_to_linear(46.0), rel=0.05)
    assert values.std() / values.mean() == pytest.approx(0.71, rel=0.05)


def test_attenuation_series_pure_sinusoid():
    process = AttenuationProcess(mean_loss=46.0, modulation_amplitude=7.0,
                                 modulation_period=38.0)
    series = attenuation_series(process, 38.0 * 200, SeededRng(1).stream("attenuation"),
                                sample_rate=10.0)
    cv = series.values.std() / series.values.mean()
    assert cv == pytest.approx(process.sinusoid_cv(), rel=1e-3)
    # peak-to-peak depth in dB survives the normalization
    depth = 10.0 * math.log10(series.values.max() / series.values.min())
    assert depth == pytest.approx(7.0, rel=1e-3)


def test_attenuation_series_deterministic():
    process = AttenuationProcess(mean_loss=46.0, modulation_amplitude=7.0,
                                 stochastic_cv=0.71)
    a = attenuation_series(process, 100.0, SeededRng(9).stream("attenuation"))
    b = attenuation_series(process, 100.0, SeededRng(9).stream("attenuation"))
    assert np.array_equal(a.values, b.values)
    c = attenuation_series(process, 100.0, SeededRng(10).stream("attenuation"))
    assert not np.array_equal(a.values, c.values)


def test_attenuation_process_validation():
    with pytest.raises(ValueError):
        AttenuationProcess(mean_loss=-1.0)
    with pytest.raises(ValueError):
        AttenuationProcess(mean_loss=46.0, modulation_amplitude=-2.0)
    with pytest.raises(ValueError):
        AttenuationProcess(mean_loss=46.0, modulation_period=0.0)
    with pytest.raises(ValueError):
        attenuation_series(AttenuationProcess(mean_loss=46.0), -1.0, SeededRng(0).stream("a"))
