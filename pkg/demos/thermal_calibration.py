"""Thermal calibration of the low-expansion interferometer bench.

The bench CTE crosses zero near room temperature, so the phase traced against
a slow temperature scan is a parabola. Fitting it locates the zero-expansion
crossing, gives the CTE slope, and bounds |CTE| over the operating window;
the ratio against fused silica is how much passive thermal suppression the
bench buys.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from fransim import (
    ThermalScan,
    cte_from_phase_fit,
    fit_phase_vs_temperature,
    suppression_ratio,
)

arm_diff = 1.2            # optical arm-length difference (m)
wavelength = 893.2e-9     # m
cte_slope = 6.95e-9       # 1/K per K, material curvature of the bench
crossing = 23.87          # deg C, true zero-expansion temperature
noise = 2e-4              # rad, per-point phase scatter
window = (23.67, 24.07)   # deg C, operating band to bound |CTE| over
silica_cte = 5.5e-7       # 1/K, fused-silica reference
seed = 4


def synthetic_scan():
    rng = np.random.default_rng(seed)
    temp = np.linspace(22.0, 26.0, 21)
    # Integrated expansion: phase = 2 pi L / lambda * (slope/2) (T - T0)^2
    phase = (
        2.0 * np.pi * arm_diff / wavelength
        * cte_slope / 2.0 * (temp - crossing) ** 2
        + 0.3
        + rng.normal(0.0, noise, temp.size)
    )
    return ThermalScan(temp, phase, arm_diff=arm_diff, wavelength=wavelength)


def main():
    scan = synthetic_scan()
    fit = fit_phase_vs_temperature(scan)
    line = cte_from_phase_fit(fit, scan)

    band = np.linspace(window[0], window[1], 200)
    bound = np.max(np.abs(line.cte_at(band)))
    suppression = suppression_ratio(silica_cte, bound)

    print(f"zero crossing     {line.zero_crossing:.3f} +/- {line.zero_crossing_sigma:.4f} C "
          f"(true {crossing})")
    print(f"CTE slope         {line.slope * 1e9:.2f} ppb/K^2 (true {cte_slope * 1e9:.2f})")
    print(f"|CTE| over band   {bound * 1e9:.2f} ppb/K  ({window[0]} to {window[1]} C)")
    print(f"vs fused silica   {suppression:.0f}x smaller")

    dense = np.linspace(scan.temperature[0], scan.temperature[-1], 300)
    model = fit.a * dense**2 + fit.b * dense + fit.c

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    top.plot(scan.temperature, scan.phase, "o", ms=4, label="scan")
    top.plot(dense, model, color="C3", label="parabola fit")
    top.set_ylabel("phase (rad)")
    top.legend()
    top.grid(alpha=0.3)
    bottom.plot(dense, line.cte_at(dense) * 1e9, color="C2")
    bottom.axhline(0.0, color="gray", lw=0.8)
    bottom.axvline(line.zero_crossing, color="C3", ls="--", label="zero crossing")
    bottom.axvspan(*window, color="C2", alpha=0.15, label="operating band")
    bottom.set_xlabel("temperature (C)")
    bottom.set_ylabel("CTE (ppb/K)")
    bottom.legend()
    bottom.grid(alpha=0.3)
    fig.suptitle("Bench thermal calibration")
    fig.tight_layout()
    out = "thermal_calibration.png"
    fig.savefig(out, dpi=150)
    print(f"figure saved to {out}")


if __name__ == "__main__":
    main()
