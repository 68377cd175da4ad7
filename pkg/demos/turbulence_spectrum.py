"""Kolmogorov phase-noise spectrum of the urban free-space channel.

Builds the turbulence model from the measured Fried parameter, plots the
axial phase PSD with the f^(-8/3) slope marked, and integrates the residual
above the fringe acquisition bandwidth. The residual lands in the microradian
range: axial turbulence is irrelevant next to the few-mrad instrument rows.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from fransim import (
    TurbulenceParams,
    axial_phase_noise,
    cn2_from_fried,
    kolmogorov_psd,
)

fried_r0 = 53e-3       # Fried parameter (m), daytime urban path
path_len = 8.4e3       # propagation distance (m)
wavelength = 671e-9    # beacon wavelength the seeing was characterized at (m)
wind_v = 3.65          # transverse wind (m/s)
f_acq = 0.25e9         # fringe acquisition bandwidth (Hz)


def main():
    params = TurbulenceParams.from_fried(
        fried_r0, wavelength=wavelength, path_len=path_len, wind_v=wind_v
    )
    cn2 = cn2_from_fried(fried_r0, wavelength, path_len)
    print(f"Fried parameter        {fried_r0 * 1e2:.1f} cm")
    print(f"Cn^2                   {cn2:.2e} m^-2/3")

    residual = axial_phase_noise(params, f_acq)
    print(f"acquisition bandwidth  {f_acq:.2e} Hz")
    print(f"axial residual         {residual.integrated * 1e6:.2f} urad rms (integral)")
    print(f"                       {residual.single_frequency * 1e6:.2f} urad rms (single-frequency)")

    f = np.logspace(-2, 10, 600)
    psd = kolmogorov_psd(f, params)

    plt.figure(figsize=(7, 4.5))
    plt.loglog(f, psd, label="axial phase PSD")
    ref = kolmogorov_psd(1.0, params)
    plt.loglog(f, ref * f ** (-8.0 / 3.0), ls=":", color="gray", label=r"$f^{-8/3}$")
    plt.axvline(f_acq, color="C3", ls="--", label="acquisition bandwidth")
    plt.xlabel("frequency (Hz)")
    plt.ylabel(r"$S_\phi$ (rad$^2$/Hz)")
    plt.title(f"Kolmogorov spectrum, r0 = {fried_r0 * 1e2:.1f} cm over {path_len / 1e3:.1f} km")
    plt.legend()
    plt.grid(alpha=0.3, which="both")
    plt.tight_layout()
    out = "turbulence_spectrum.png"
    plt.savefig(out, dpi=150)
    print(f"figure saved to {out}")


if __name__ == "__main__":
    main()
