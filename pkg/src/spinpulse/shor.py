"""Four-qubit period-finding pipeline with explicit phase bookkeeping.

The pipeline factors 4 with base 3: two qubits hold the argument x, two hold
y = 3^x mod 4, basis ordering |m1 m0, n1 n0> with x = 2 m1 + m0 and
y = 2 n1 + n0 (so basis index = 4x + y).  Three unitary stages act in order:

1. equal superposition over x (Hadamard pair on the x register),
2. modular-exponentiation oracle |x, y> -> |x, y + 3^x mod 4>,
3. discrete Fourier transform over the x register.

Three timing modes expose how free-evolution phases interact with the
interference the last stage relies on:

* ``instantaneous`` — the textbook sequence, no time elapses.
* ``bare-delay`` — each stage is instantaneous but a free evolution of
  duration tau_1 (after stage 1) and tau_2 (after stage 2) multiplies every
  amplitude by exp(-i E tau) of the state it occupies *at that moment*.
  Amplitudes reaching the same final state along different paths then carry
  different phase histories ("phase memory") and the interference pattern
  is destroyed.
* ``natural-phase`` — same delays, but each stage applied at absolute time
  t is dressed in the interaction picture: the matrix element from |k> to
  |n> acquires exp(-i (E_n - E_k) t).  Every generated amplitude then
  carries the phase it would have accumulated had it existed from t = 0, so
  the measured x distribution is delay independent.  This is exactly the
  phase structure a resonant pulse imprints automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import ConfigurationError, QuantumState, SpinSystem, diagonal_energies

N_QUBITS = 4
DIM = 16
X_VALUES = 4

MODES = ("instantaneous", "bare-delay", "natural-phase")


class PeriodExtractionError(RuntimeError):
    """Raised when a measured distribution carries no usable period."""


def register_index(x: int, y: int) -> int:
    """Basis index of the register state with argument x and value y."""
    if not (0 <= x < X_VALUES and 0 <= y < 4):
        raise ValueError("register values must lie in 0..3")
    return 4 * x + y


def register_values(index: int) -> tuple[int, int]:
    """(x, y) pair encoded by a basis index."""
    if not 0 <= index < DIM:
        raise ValueError(f"basis index {index} out of range")
    return divmod(index, 4)


@dataclass(frozen=True)
class EnergyTable:
    """Energy E_xy of each register state, indexed by basis index 4x + y."""

    values: np.ndarray
    source: str = "explicit-config"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (DIM,):
            raise ConfigurationError(f"energy table must hold {DIM} values")
        if not np.all(np.isfinite(values)):
            raise ConfigurationError("energies must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def energy(self, x: int, y: int) -> float:
        return float(self.values[4 * x + y])

    @classmethod
    def zeros(cls) -> "EnergyTable":
        return cls(np.zeros(DIM), source="explicit-config")

    @classmethod
    def from_xy_table(cls, table) -> "EnergyTable":
        """Table given as rows over x, columns over y."""
        arr = np.asarray(table, dtype=float)
        if arr.shape != (X_VALUES, X_VALUES):
            raise ConfigurationError("x/y energy table must be 4x4")
        return cls(arr.reshape(DIM), source="explicit-config")

    @classmethod
    def from_spin_system(cls, system: SpinSystem) -> "EnergyTable":
        """Energies of a physical four-spin register."""
        if system.n_spins != N_QUBITS:
            raise ConfigurationError("energy table derivation needs a 4-spin system")
        return cls(diagonal_energies(system), source="derived-from-spin-system")


# ---------------------------------------------------------------------------
# stage unitaries
# ---------------------------------------------------------------------------


def _superpose_matrix() -> np.ndarray:
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    return np.kron(np.kron(h, h), np.eye(4))


def _oracle_matrix(base: int, modulus: int) -> np.ndarray:
    if modulus != 4:
        raise ConfigurationError("the register encodes y mod 4; modulus must be 4")
    if math.gcd(base, modulus) != 1:
        raise ConfigurationError(f"base {base} is not coprime with {modulus}")
    u = np.zeros((DIM, DIM))
    for x in range(X_VALUES):
        fx = pow(base, x, modulus)
        for y in range(4):
            u[4 * x + (y + fx) % 4, 4 * x + y] = 1.0
    return u


def _dft_matrix(inverse: bool = False) -> np.ndarray:
    sign = -1.0 if inverse else 1.0
    k = np.arange(X_VALUES)
    f = 0.5 * np.exp(sign * 2j * np.pi * np.outer(k, k) / X_VALUES)
    return np.kron(f, np.eye(4))


def superpose_x(state: QuantumState) -> QuantumState:
    """Hadamard pair on the x register; an involution.

    From the ground state it produces four equal amplitudes 1/2 on the
    y = 0 states.
    """
    return QuantumState(_superpose_matrix() @ state.amplitudes, check=False)


def modexp_oracle(state: QuantumState, base: int = 3, modulus: int = 4) -> QuantumState:
    """Modular-exponentiation oracle |x, y> -> |x, (y + base^x mod 4) mod 4>.

    Modular addition extends the map unitarily over the whole y register;
    on y = 0 inputs it writes y = base^x mod 4 directly.
    """
    return QuantumState(_oracle_matrix(base, modulus) @ state.amplitudes, check=False)


def dft_x(state: QuantumState, inverse: bool = False) -> QuantumState:
    """Discrete Fourier transform |x> -> (1/2) sum_k e^{2 pi i k x / 4} |k>."""
    return QuantumState(_dft_matrix(inverse) @ state.amplitudes, check=False)


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathTerm:
    """One interfering contribution to a final amplitude.

    ``states`` lists the basis index occupied after each stage (initial,
    post-superposition, post-oracle, post-transform); ``phase`` and
    ``magnitude`` give the accumulated contribution magnitude * e^{i phase}.
    """

    states: tuple[int, int, int, int]
    phase: float
    magnitude: float

    @property
    def contribution(self) -> complex:
        return self.magnitude * np.exp(1j * self.phase)


@dataclass(frozen=True)
class ShorTrace:
    """Per-final-state decomposition of amplitudes into path terms."""

    terms: dict[int, tuple[PathTerm, ...]]

    def amplitude(self, index: int) -> complex:
        return complex(sum(t.contribution for t in self.terms.get(index, ())))


@dataclass(frozen=True)
class ShorRun:
    """Result of one pipeline run."""

    mode: str
    delays: tuple[float, float]
    energies: EnergyTable | None
    final_state: QuantumState
    x_distribution: np.ndarray
    trace: ShorTrace | None = None


@dataclass(frozen=True)
class PeriodResult:
    period: int
    factor: int
    x_measured: int
    note: str | None = None


def _stage_matrices(
    mode: str, delays: tuple[float, float], energies: EnergyTable | None
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Stage unitaries and the inter-stage phase diagonals for a mode.

    Returns (stages, phases) with stages = [U1, U2, U3] applied in order and
    phases = [p1, p2] diagonal factors applied after stages 1 and 2.
    """
    if mode not in MODES:
        raise ConfigurationError(f"unknown mode {mode!r}; choose one of {MODES}")
    tau1, tau2 = delays
    if tau1 < 0 or tau2 < 0:
        raise ConfigurationError("delays must be >= 0")
    stages = [_superpose_matrix().astype(complex), _oracle_matrix(3, 4).astype(complex), _dft_matrix()]
    if mode == "instantaneous":
        ones = np.ones(DIM)
        return stages, [ones, ones]
    if energies is None:
        raise ConfigurationError(f"mode {mode!r} requires an energy table")
    e = energies.values
    p1 = np.exp(-1j * e * tau1)
    p2 = np.exp(-1j * e * tau2)
    if mode == "natural-phase":
        # dress each stage at its application time: U -> D(t) U D(t)^+
        d1 = np.exp(-1j * e * tau1)
        d2 = np.exp(-1j * e * (tau1 + tau2))
        stages[1] = d1[:, None] * stages[1] * d1.conj()[None, :]
        stages[2] = d2[:, None] * stages[2] * d2.conj()[None, :]
    return stages, [p1, p2]


def run_shor(
    mode: str = "instantaneous",
    delays: tuple[float, float] = (0.0, 0.0),
    energies: EnergyTable | None = None,
    trace: bool = False,
) -> ShorRun:
    """Run the three-stage pipeline from |00,00> in the given timing mode.

    Returns the final state, the exact measurement distribution over x
    (marginal over y), and optionally the path-term decomposition.
    """
    stages, phases = _stage_matrices(mode, delays, energies)
    psi = np.zeros(DIM, dtype=complex)
    psi[0] = 1.0
    psi = stages[0] @ psi
    psi = phases[0] * psi
    psi = stages[1] @ psi
    psi = phases[1] * psi
    psi = stages[2] @ psi
    final = QuantumState(psi, check=False)
    x_distribution = final.probabilities.reshape(X_VALUES, 4).sum(axis=1)
    run = ShorRun(
        mode=mode,
        delays=(float(delays[0]), float(delays[1])),
        energies=energies,
        final_state=final,
        x_distribution=x_distribution,
    )
    if trace:
        run = replace(run, trace=trace_paths(run))
    return run


def trace_paths(run: ShorRun) -> ShorTrace:
    """Decompose every final amplitude into its interfering path terms.

    A path is the sequence of basis states occupied after each stage; its
    contribution is the product of the traversed matrix elements and the
    phase factors collected during the delays.  The coherent sum of a
    state's terms reproduces that state's final amplitude, which is how the
    delay phases record the history of each term's origination.
    """
    stages, phases = _stage_matrices(run.mode, run.delays, run.energies)
    terms: dict[int, list[PathTerm]] = {}
    start = 0
    u1, u2, u3 = stages
    for s1 in np.flatnonzero(np.abs(u1[:, start]) > 1e-15):
        amp1 = u1[s1, start] * phases[0][s1]
        for s2 in np.flatnonzero(np.abs(u2[:, s1]) > 1e-15):
            amp2 = amp1 * u2[s2, s1] * phases[1][s2]
            for s3 in np.flatnonzero(np.abs(u3[:, s2]) > 1e-15):
                amp3 = amp2 * u3[s3, s2]
                terms.setdefault(int(s3), []).append(
                    PathTerm(
                        states=(start, int(s1), int(s2), int(s3)),
                        phase=float(np.angle(amp3)),
                        magnitude=float(np.abs(amp3)),
                    )
                )
    return ShorTrace(terms={k: tuple(v) for k, v in terms.items()})


def extract_period(
    distribution, modulus: int = 4, base: int = 3, tol: float = 1e-12
) -> PeriodResult:
    """Read the function period and a factor off the measured x distribution.

    Takes the smallest nonzero x with nonzero probability as x2, sets
    T = D / x2 with D the number of x values, computes z = base^(T/2), and
    returns GCD(z - 1, modulus) as the factor.  A distribution confined to
    x = 0 (or yielding a fractional period) carries no period information
    and raises PeriodExtractionError.
    """
    probs = np.asarray(distribution, dtype=float)
    if probs.shape != (X_VALUES,):
        raise ValueError(f"distribution must have {X_VALUES} entries")
    if abs(probs.sum() - 1.0) > 1e-6:
        raise ValueError("distribution must be normalized")
    support = np.flatnonzero(probs > tol)
    nonzero = support[support > 0]
    if nonzero.size == 0:
        raise PeriodExtractionError("no support on x > 0: no period information")
    x2 = int(nonzero[0])
    if X_VALUES % x2 != 0:
        raise PeriodExtractionError(f"x = {x2} implies a fractional period {X_VALUES}/{x2}")
    period = X_VALUES // x2
    if period % 2 != 0:
        raise PeriodExtractionError(f"odd period {period}: z = base^(T/2) undefined")
    z = base ** (period // 2)
    factor = math.gcd(z - 1, modulus)
    note = None
    if factor in (1, modulus):
        note = f"gcd({z} - 1, {modulus}) = {factor} is not a proper factor"
    return PeriodResult(period=period, factor=factor, x_measured=x2, note=note)


def sample_x(
    distribution, shots: int, seed: int | None = None
) -> dict[int, int]:
    """Draw x-measurement counts from an exact distribution (demo output)."""
    probs = np.asarray(distribution, dtype=float)
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(len(probs), size=shots, p=probs / probs.sum())
    values, counts = np.unique(outcomes, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
