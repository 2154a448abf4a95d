#!/usr/bin/env python3
"""Single-pulse CN gate on a two-spin Ising system.

One circularly polarized pi-pulse at the target's control-excited transition
(omega_target - J) flips the target if and only if the control is excited,
up to the standard +pi/2 phase on the flipped amplitudes.  The exact
rotating-frame evolution is cross-checked against direct lab-frame
integration and the closed-form two-level solution.
"""

import numpy as np

from spinpulse import (
    QuantumState,
    SpinSystem,
    analytic_two_level,
    cn_pulse,
    diagonal_energies,
    evolve_pulse,
    fidelity,
    integrate_lab_frame,
    to_interaction_picture,
)


def separator(title):
    print(f"\n{'=' * 64}\n  {title}\n{'=' * 64}")


def show_state(amps, heading):
    print(heading)
    for i, amp in enumerate(amps):
        print(f"   |{i >> 1}{i & 1}>: {amp.real:+.4f}{amp.imag:+.4f}i   P = {abs(amp)**2:.4f}")


separator("SYSTEM AND PULSE")
system = SpinSystem(2, larmor=[500.0, 100.0], couplings=[[0.0, 5.0], [5.0, 0.0]])
pulse = cn_pulse(system, control=0, target=1, variant="standard", rabi=[0.5, 0.1])
print(f"\nLarmor frequencies: {system.larmor},  Ising constant J = 5")
print(f"Target transitions: {105.0} (control ground) / {95.0} (control excited)")
print(f"Pulse: carrier {pulse.carrier}, Rabi {tuple(pulse.rabi)}, duration {pulse.duration:.4f}")
print(f"Drive-free energies E_n: {diagonal_energies(system)}")

separator("GATE ACTION ON A SUPERPOSITION")
initial = QuantumState(
    [np.sqrt(0.3), np.sqrt(0.2), 1 / np.sqrt(3), 1 / np.sqrt(6)]
)
show_state(initial.amplitudes, "\nInitial state:")
final = evolve_pulse(initial, system, pulse)
final_int = to_interaction_picture(final, system, pulse.duration)
show_state(final_int.amplitudes, "\nAfter the pulse (free-evolution phases stripped):")
reference = QuantumState(
    [np.sqrt(0.3), np.sqrt(0.2), 1j / np.sqrt(6), 1j / np.sqrt(3)]
)
print(f"\nOverlap fidelity with the ideal phase-tagged CN action: "
      f"{fidelity(final_int, reference):.6f}")
print("The control-excited pair swapped with a +pi/2 phase (factor i); the")
print("control-ground pair is untouched apart from tiny non-resonant shifts.")

separator("ORACLE CROSS-CHECKS")
step = 2 * np.pi / 303.1 / 800
numeric = integrate_lab_frame(initial, system, pulse, step=step)
print(f"\nLab-frame RK4 vs exact rotating-frame propagator "
      f"(2-norm): {np.linalg.norm(numeric.amplitudes - final.amplitudes):.2e}")

# driven pair treated as an isolated two-level system
energies = diagonal_energies(system)
pair = analytic_two_level(
    c_k_initial=1 / np.sqrt(3),
    e_k=energies[2],
    e_n=energies[3],
    rabi=0.1,
    phase=0.0,
    t_start=0.0,
    duration=pulse.duration,
)
print("\nClosed-form driven pair (|10> -> |11|) at the end of the pi-pulse:")
print(f"   populations: {pair.populations[0]:.3e} / {pair.populations[1]:.6f}")
print(f"   generated amplitude phase: {np.angle(pair.c_n):+.4f} rad "
      f"(pi/2 standard shift minus E_n * tau, mod 2pi)")

separator("SHORTEST EXACT GATE FROM THE 2PI-K CONDITION")
exact = cn_pulse(system, control=0, target=1, exact_2pik=1)
print(f"\nWith Rabi = 2J/sqrt(3) = {exact.rabi[1]:.4f} the same carrier gives an")
print(f"exact gate of duration {exact.duration:.4f} (vs {pulse.duration:.2f} above):")
final_exact = to_interaction_picture(
    evolve_pulse(initial, system, exact), system, exact.duration
)
show_state(final_exact.amplitudes, "")
print("Populations transform exactly; the control-ground pair completes one")
print("full rotation and therefore carries the 2pi spinor minus sign plus its")
print("detuning phase, which the long pi-pulse hides (J tau multiple of 2pi).")
