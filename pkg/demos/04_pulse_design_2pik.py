#!/usr/bin/env python3
"""Suppressing non-resonant excitation with 2pi-k pulses.

A pi/n-pulse of Rabi frequency Omega = |delta| / sqrt((2nk)^2 - 1) rotates a
spin detuned by delta through exactly 2*pi*k, returning it to its initial
state while the resonant spin completes its pi/n rotation.  Combined with a
frequency ladder spaced by 8 Omega, plain pi-pulses already leave only
~1.5e-4 residual excitation on the neighbours; the designed pulses remove
even that.
"""

import numpy as np

from spinpulse import (
    PulseSpec,
    QuantumState,
    SpinSystem,
    design_2pik,
    evolve_pulse,
    frequency_ladder,
    gradient_estimate,
    offresonant_excitation_probability,
    rotation_angle,
)


def separator(title):
    print(f"\n{'=' * 64}\n  {title}\n{'=' * 64}")


separator("DESIGN TABLE")
delta = 2.0
print(f"\nDetuning delta = {delta} (e.g. 2J for a coupled two-spin gate)\n")
print("   k  n    Omega        tau      Omega*tau  omega_e*tau/2pi")
for k in (1, 2, 3):
    for n in (1, 2):
        d = design_2pik(delta, k=k, n=n)
        area = d.rabi * d.duration
        turns = rotation_angle(d.rabi, d.delta_omega, d.duration) / (2 * np.pi)
        print(f"   {k}  {n}  {d.rabi:8.4f}  {d.duration:9.4f}   {area/np.pi:5.3f} pi     {turns:.12f}")
print("\nk = 1, n = 1 gives the shortest exact gate: tau = sqrt(3) pi / delta.")

separator("DETUNED SPIN RETURNS, RESONANT SPIN FLIPS")
system = SpinSystem(1, [60.0], [[0.0]])
ground = QuantumState.basis(1, 0)
design = design_2pik(delta, k=1, n=1)
detuned = PulseSpec(60.0 - delta, 0.0, [design.rabi], design.duration)
resonant = PulseSpec(60.0, 0.0, [design.rabi], design.duration)
p_detuned = evolve_pulse(ground, system, detuned).probabilities[1]
p_resonant = evolve_pulse(ground, system, resonant).probabilities[1]
print(f"\nDesigned pi-pulse, spin detuned by {delta}: P_excited = {p_detuned:.2e}")
print(f"Same pulse on resonance:                  P_excited = {p_resonant:.12f}")

separator("FREQUENCY LADDER")
rabi = 0.1
omega0 = 60.0
ladder = frequency_ladder(omega0, rabi, 4)
print(f"\nLadder above omega0 = {omega0} with spacing 8 Omega = {8 * rabi}:")
print(f"   {np.array2string(ladder, precision=2)}")
print("\nPlain pi-pulse at omega0: residual excitation of each ladder spin")
print("   detuning   exact angle   closed form   simulated")
for step, omega in enumerate(np.concatenate([[omega0], ladder])[1:], start=1):
    d = omega - omega0
    angle = rotation_angle(rabi, d, np.pi / rabi)
    formula = offresonant_excitation_probability(rabi, d, np.pi / rabi)
    spin = SpinSystem(1, [omega], [[0.0]])
    pulse = PulseSpec(omega0, 0.0, [rabi], np.pi / rabi)
    simulated = evolve_pulse(ground, spin, pulse).probabilities[1]
    print(f"   {d:7.2f}   {angle/np.pi:7.3f} pi   {formula:.3e}    {simulated:.3e}")
print("\nReturn angles sit near multiples of 8 pi, so residuals stay ~1e-4")
print("even without the exact design.")

separator("FIELD GRADIENT TO REALIZE THE LADDER")
omega_rabi = 1e3  # rad/s
spacing = 1e-9  # meters between neighbouring spins
delta_b, gradient = gradient_estimate(omega_rabi, spacing)
print(f"\nFor Omega = {omega_rabi:.0e} 1/s and 1 nm spin spacing (proton ratio):")
print(f"   field step  delta_B = {delta_b:.2e} T")
print(f"   gradient    dB/dx   = {gradient:.2e} T/m")
print("Gradients of this size are available in magnetic resonance force")
print("microscopy setups.")
