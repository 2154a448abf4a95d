"""Room-temperature ensemble dynamics of a four-spin molecule.

At k_B T >> hbar omega_k the density matrix of the ensemble splits into an
identity part (invariant under unitaries, not stored) and a traceless
deviation part that carries all observable dynamics.  The deviation matrix
is kept dimensionless here; the physical thermal prefactor
(sum_k hbar omega_k) / (32 k_B T) scales it uniformly and is never applied
numerically because the dynamics is linear.

The 16-dimensional basis uses the single-index convention |psij> with
n = j + 2i + 4s + 8p.  Indices 0..3 (states |00ij>) form the "active" block
r whose entries follow a superposition of the two rightmost qubits; indices
4..15 form the "background" block b, initialized to the thermal-equilibrium
diagonal below, which a well-designed gate pulse must leave unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ConfigurationError, PulseSpec, SpinSystem, diagonal_energies
from .dynamics import pulse_propagator

N_SPINS = 4
DIM = 16
ACTIVE_DIM = 4

#: thermal-equilibrium diagonal of the background block, indices 4..15
BACKGROUND_DIAGONAL = np.array(
    [-0.5, 0.5, 0.5, 0.5, 0.5, -0.5, -0.5, -0.5, -1.0, 0.0, 0.0, 0.0]
)

HERMITICITY_TOL = 1e-12
#: relative floor used by deviation_metric for near-zero reference entries
METRIC_FLOOR = 1e-3


@dataclass
class DeviationDensityMatrix:
    """Traceless 16x16 deviation density matrix, active block in indices 0..3."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (DIM, DIM):
            raise ConfigurationError(f"deviation matrix must be {DIM}x{DIM}")
        dev = np.max(np.abs(self.entries - self.entries.conj().T))
        if dev > 1e-9:
            raise ConfigurationError(f"deviation matrix is not Hermitian ({dev:.3e})")
        self.entries.setflags(write=False)

    @property
    def active_block(self) -> np.ndarray:
        """4x4 block r over the active states |00ij>."""
        return self.entries[:ACTIVE_DIM, :ACTIVE_DIM].copy()

    @property
    def background_diagonal(self) -> np.ndarray:
        """Diagonal of the background block, indices 4..15."""
        return np.real(np.diag(self.entries)[ACTIVE_DIM:]).copy()

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))


def init_deviation(active_amplitudes) -> DeviationDensityMatrix:
    """Deviation matrix for an active superposition at thermal equilibrium.

    The active block is the outer product of the normalized amplitude
    4-vector over |00ij>; the background starts diagonal with the
    equilibrium values, summing to -1 so the whole matrix is traceless.
    """
    amps = np.asarray(active_amplitudes, dtype=complex)
    if amps.shape != (ACTIVE_DIM,):
        raise ConfigurationError(f"active amplitudes must be a length-{ACTIVE_DIM} vector")
    if abs(np.linalg.norm(amps) - 1.0) > 1e-9:
        raise ConfigurationError("active amplitudes must be normalized")
    rho = np.zeros((DIM, DIM), dtype=complex)
    rho[:ACTIVE_DIM, :ACTIVE_DIM] = np.outer(amps, amps.conj())
    rho[np.arange(ACTIVE_DIM, DIM), np.arange(ACTIVE_DIM, DIM)] = BACKGROUND_DIAGONAL
    return DeviationDensityMatrix(rho)


def evolve_deviation(
    rho: DeviationDensityMatrix,
    system: SpinSystem,
    pulse: PulseSpec,
    t_start: float = 0.0,
) -> DeviationDensityMatrix:
    """Conjugate the deviation matrix by the exact pulse propagator.

    rho -> U rho U+ preserves Hermiticity, spectrum, and trace; only the
    traceless deviation needs evolving since the identity part commutes with
    everything.
    """
    if system.n_spins != N_SPINS:
        raise ConfigurationError(f"ensemble dynamics is defined for {N_SPINS}-spin systems")
    u = pulse_propagator(system, pulse, t_start=t_start)
    return DeviationDensityMatrix(u @ rho.entries @ u.conj().T)


def to_interaction_picture(
    rho: DeviationDensityMatrix, system: SpinSystem, t: float
) -> DeviationDensityMatrix:
    """Strip free-evolution phases: rho -> D(t)+ rho D(t), D = diag(e^{-i E_n t}).

    Diagonal entries are untouched; coherences lose the phases accumulated at
    the energy differences, making them comparable against ideal gate
    targets.
    """
    phases = np.exp(1j * diagonal_energies(system) * t)
    return DeviationDensityMatrix(phases[:, None] * rho.entries * phases.conj()[None, :])


def deviation_metric(r_obtained, r_reference, floor: float = METRIC_FLOOR) -> float:
    """Worst-case relative entry deviation between two complex blocks.

    max over entries of |obtained - reference| / max(|reference|, floor).
    The comparison is on complex entries, so a global phase between
    otherwise identical blocks registers as a real deviation; compare
    physically fixed blocks (e.g. interaction-picture ones).
    """
    a = np.asarray(r_obtained, dtype=complex)
    b = np.asarray(r_reference, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    scale = np.maximum(np.abs(b), floor)
    return float(np.max(np.abs(a - b) / scale))
