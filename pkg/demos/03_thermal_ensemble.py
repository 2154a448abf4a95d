#!/usr/bin/env python3
"""Complementary CN gate on a room-temperature four-spin ensemble.

The deviation density matrix splits into a 4x4 active block (states |00ij>,
a pure superposition of the two rightmost qubits) and a background carrying
the thermal-equilibrium populations of the other twelve states.  A single
pi-pulse on the rightmost spin, conditioned on its neighbour being in the
ground state, transforms the active block like a pure-state CN gate while
leaving the background untouched.
"""

import numpy as np

from spinpulse import (
    BACKGROUND_DIAGONAL,
    SpinSystem,
    cn_pulse,
    deviation_metric,
    evolve_deviation,
    init_deviation,
)
from spinpulse.ensemble import to_interaction_picture


def separator(title):
    print(f"\n{'=' * 64}\n  {title}\n{'=' * 64}")


def show_block(block, heading):
    print(heading)
    for row in block:
        cells = "  ".join(f"{v.real:+.4f}{v.imag:+.4f}i" for v in row)
        print(f"   {cells}")


separator("SYSTEM, PULSE, AND INITIAL DEVIATION MATRIX")
system = SpinSystem.uniform([100.0, 200.0, 300.0, 400.0], 10.0)
pulse = cn_pulse(system, control=2, target=3, variant="complementary", rabi=[0.1] * 4)
print(f"\nFour spins at {tuple(system.larmor)}, uniform coupling J = 10.")
print(f"Complementary CN pulse: carrier {pulse.carrier} (= omega_3 + 3J), "
      f"duration {pulse.duration:.4f}")

amplitudes = [np.sqrt(0.3), np.sqrt(0.2), 1 / np.sqrt(3), 1 / np.sqrt(6)]
rho = init_deviation(amplitudes)
show_block(rho.active_block, "\nActive block (outer product of the superposition):")
print(f"\nBackground diagonal: {BACKGROUND_DIAGONAL}")
print(f"Total trace of the deviation matrix: {rho.trace:+.1e}")

separator("EVOLUTION THROUGH THE GATE PULSE")
evolved = evolve_deviation(rho, system, pulse)
evolved_int = to_interaction_picture(evolved, system, pulse.duration)
show_block(evolved_int.active_block, "\nActive block after the pulse (interaction picture):")

reference = np.array(
    [
        [0.2000, 0.2449, 0.2582j, 0.1826j],
        [0.2449, 0.3000, 0.3162j, 0.2236j],
        [-0.2582j, -0.3162j, 0.3333, 0.2357],
        [-0.1826j, -0.2236j, 0.2357, 0.1666],
    ]
)
print("\nThe amplitudes of the two control-ground states swapped (with the")
print("standard factor i); the control-excited rows are untouched.")
print(f"Max absolute deviation from the reference block: "
      f"{np.max(np.abs(evolved_int.active_block - reference)):.2e}")
print(f"Relative worst-entry metric: "
      f"{deviation_metric(evolved_int.active_block, reference):.2e}")

separator("BACKGROUND STABILITY")
change = np.abs(evolved.background_diagonal - BACKGROUND_DIAGONAL)
print(f"\nMax background-diagonal change: {np.max(change):.2e}")
print(f"Trace after evolution: {evolved.trace:+.1e} (conserved)")
purity_before = np.real(np.trace(rho.active_block @ rho.active_block))
purity_after = np.real(np.trace(evolved.active_block @ evolved.active_block))
print(f"Active-block purity before/after: {purity_before:.6f} / {purity_after:.6f}")
print("\nEvery background transition is detuned by at least 2J from the")
print("carrier, so the thermal populations ride through the pulse unchanged.")
