# Photon state through the full interferometer chain.
#
# Prepare (|H> + |V>)/sqrt(2), route V into the long arm of the transmitter,
# stamp a channel phase on the late bin, overlap the bins at the receiver,
# and read out the fringe. The detected phase is the plain sum of the
# transmitter, channel, and receiver contributions, which is what lets the
# redshift term ride on top of everything else.

import numpy as np

from fransim import (
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

delta_l = 1.2          # arm-length imbalance of both interferometers (m)
phi_tx = 0.35          # transmitter long-arm phase (rad)
phi_channel = 1.10     # phase picked up by the late bin en route (rad)
phi_rx = 0.22          # receiver long-arm phase (rad)


def main():
    tx = UmiParams(delta_l=delta_l, internal_phase=phi_tx, pol_to_long="V")
    rx = UmiParams(delta_l=delta_l, internal_phase=phi_rx, pol_to_long="H")

    state = prepare_superposition()
    state = transmit_umi(state, tx)
    state = apply_bin_phase(state, phi_channel)
    state = receive_umi(state, rx)

    total = phi_tx + phi_channel + phi_rx
    print(f"transmitter + channel + receiver  {total:.4f} rad")
    print(f"relative phase of overlapped bin  {relative_phase(state) % (2 * np.pi):.4f} rad")

    # Fringe under an analysis-phase scan, ideal and at the operating contrast.
    v = effective_visibility(VisibilityFactors())
    print(f"operating visibility              {v:.3f}")
    print()
    print("analysis (rad)   p1 (ideal)   p1 (V = {:.3f})".format(v))
    for analysis in np.linspace(0.0, 2.0 * np.pi, 9):
        p1_ideal, _ = detection_probabilities(total + analysis)
        p1_real, _ = detection_probabilities(total + analysis, v)
        print(f"   {analysis:9.4f}     {p1_ideal:8.4f}     {p1_real:8.4f}")


if __name__ == "__main__":
    main()
