"""Monte Carlo of a full phase-tracking campaign on the urban link.

940 s at quadrature in 10 s samples, 7260 detected counts/s, 7 dB
peak-to-peak channel fading topped up to a count-rate cv of 0.71, two
free-running SPADs whose rate-dependent efficiency mismatch is set to
contribute 15.6 mrad, and a 0.117 mrad/s bench drift. The linear detrend
recovers the injected drift and the residual scatter lands at the level the
noise budget predicts.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from fransim import (
    AttenuationProcess,
    CampaignConfig,
    DetectionScheme,
    SpadModel,
    inconsistency_slopes,
    simulate_campaign,
)

duration = 940.0
sample_period = 10.0
true_phase = np.pi / 2.0
drift_rate = 0.117e-3     # rad/s
visibility = 0.863
mean_rate = 7260.0        # detected two-output counts/s
inconsistency_rms = 15.6e-3
seed = 1


def main():
    fading = AttenuationProcess(
        mean_loss=46.0,
        modulation_amplitude=7.0,
        modulation_period=38.0,
        stochastic_cv=0.71,
    )
    plus, minus = inconsistency_slopes(inconsistency_rms, fading, visibility)
    config = CampaignConfig(
        duration=duration,
        sample_period=sample_period,
        true_phase=true_phase,
        drift_rate=drift_rate,
        visibility=visibility,
        detected_mean_rate=mean_rate,
        attenuation=fading,
        scheme=DetectionScheme(kind="dual_spad"),
        spads=(
            SpadModel(rate_efficiency_slope=plus),
            SpadModel(rate_efficiency_slope=minus),
        ),
        seed=seed,
    )
    result = simulate_campaign(config)
    s = result.summary

    print(f"samples              {s.n_samples}")
    print(f"mean detected rate   {s.mean_rate:.0f} Hz (cv {s.attenuation_cv:.2f})")
    print(f"raw phase STD        {s.raw_std * 1e3:.1f} mrad")
    print(f"detrended STD        {s.detrended_std * 1e3:.1f} mrad")
    print(
        f"recovered drift      {s.drift_slope * 1e3:.4f} mrad/s "
        f"(injected {drift_rate * 1e3:.4f}, sigma {s.drift_slope_sigma * 1e3:.4f})"
    )

    t = result.series.t
    phi = result.series.phase
    trend = s.drift_slope * (t - t.mean()) + phi.mean()

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    top.plot(t, phi * 1e3, ".-", ms=4, label="extracted phase")
    top.plot(t, trend * 1e3, color="C3", lw=1, label="fitted drift")
    top.set_ylabel("phase (mrad)")
    top.legend()
    top.grid(alpha=0.3)
    bottom.plot(t, (phi - trend) * 1e3, ".-", ms=4, color="C2")
    bottom.axhline(0.0, color="gray", lw=0.8)
    bottom.set_xlabel("time (s)")
    bottom.set_ylabel("residual (mrad)")
    bottom.grid(alpha=0.3)
    fig.suptitle("Phase campaign, 8.4 km urban link operating point")
    fig.tight_layout()
    out = "phase_campaign.png"
    fig.savefig(out, dpi=150)
    print(f"figure saved to {out}")


if __name__ == "__main__":
    main()
