"""Single-photon interferometry over free-space links.

Simulation and analysis for a polarization-routed time-bin interferometer
pair sharing an atmospheric channel: photon state evolution, turbulence and
link budgets, the instrument noise budget, photon-counting Monte Carlo of
phase campaigns and detector schemes, phase/visibility/g2 estimation, and
thermal calibration of the low-expansion benches.
"""

from .budget import (
    NoiseBudget,
    NoiseSource,
    ThermalParams,
    air_pressure_noise,
    assemble_budget,
    center_wavelength_noise,
    quadrature_total,
    reference_noise_budget,
    temperature_drift_rate,
    wavelength_drift_from_frequency,
)
from .calibration import (
    CteLine,
    ThermalScan,
    cte_from_phase_fit,
    fit_phase_vs_temperature,
    suppression_ratio,
)
from .channel import (
    AttenuationProcess,
    AxialPhaseNoise,
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
    total_link_budget,
)
from .core import (
    CONSTANTS,
    PhysConstants,
    SeededRng,
    TimeSeries,
    db_to_linear,
    linear_to_db,
    poisson_sample,
)
from .detection import (
    CampaignConfig,
    CampaignResult,
    CampaignSummary,
    DetectionScheme,
    SourceModel,
    SpadModel,
    inconsistency_slopes,
    simulate_campaign,
    simulate_coherent_stream,
    simulate_fringe_scan,
    simulate_single_photon_stream,
    spad_inconsistency_noise,
)
from .estimation import (
    CountRecord,
    DetrendResult,
    G2Result,
    PhaseSeries,
    VisibilityFit,
    detrend_linear,
    extract_phase,
    extract_phases,
    fit_visibility,
    g2_correlation,
    shot_noise_phase,
    unwrap_phase,
)
from .gravity import (
    OrbitPoint,
    RedshiftConfig,
    doppler_phase,
    precision_target,
    redshift_phase,
    redshift_phase_difference,
)
from .quantum import (
    PhotonState,
    UmiParams,
    VisibilityFactors,
    apply_bin_phase,
    detection_probabilities,
    effective_visibility,
    prepare_superposition,
    receive_umi,
    relative_phase,
    transmit_umi,
)

__version__ = "0.1.0"
