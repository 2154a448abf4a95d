"""Pure-state evolution under resonant pulses and free-evolution delays.

Three routes are provided and cross-checked against each other:

* ``evolve_pulse`` — exact: transform to the frame rotating with the pulse
  carrier, exponentiate the time-independent rotating-frame Hamiltonian by
  Hermitian eigendecomposition, transform back to the lab frame.  Because
  the drive is circularly polarized the frame transformation is exact, not
  a rotating-wave approximation.
* ``integrate_lab_frame`` — independent oracle: fixed-step RK4 on the
  explicitly time-dependent lab-frame Schrodinger equation.
* ``analytic_two_level`` — closed-form resonant solution for one driven
  pair of levels.

Absolute-time bookkeeping: lab-frame amplitudes carry the free-evolution
phases exp(-i E_n t), so every evolution function accepts the absolute
start time ``t_start`` and the sequence driver ``apply_sequence`` advances
a global clock.  States themselves stay pure value objects.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    DelaySpec,
    PulseSpec,
    QuantumState,
    SpinSystem,
    build_rotating_hamiltonian,
    diagonal_energies,
    total_spin_z,
)

#: target | ||psi|| - 1 | for the exact route and for the integrator
EXACT_NORM_TOL = 1e-9
INTEGRATOR_NORM_TOL = 1e-6

#: default integrator step = shortest oscillation period / this factor
DEFAULT_STEP_DIVISOR = 400
#: largest admissible step = shortest oscillation period / this factor
MAX_STEP_DIVISOR = 20


@dataclass
class EvolutionReport:
    """Outcome of an evolution run: final state, norm drift, method tag."""

    final_state: QuantumState
    norm_drift: float
    method: str
    elapsed: float = 0.0


@dataclass
class TwoLevelAmplitudes:
    """Amplitudes of a resonantly driven pair at the end of a pulse."""

    c_k: complex
    c_n: complex
    t_start: float
    t_end: float
    e_k: float
    e_n: float
    alpha: float

    @property
    def populations(self) -> tuple[float, float]:
        return abs(self.c_k) ** 2, abs(self.c_n) ** 2


def _require_normalized(state: QuantumState) -> None:
    drift = abs(state.norm - 1.0)
    if drift > QuantumState.NORM_TOL:
        raise ValueError(f"input state is not normalized (|norm - 1| = {drift:.3e})")


def pulse_propagator(system: SpinSystem, pulse: PulseSpec, t_start: float = 0.0) -> np.ndarray:
    """Exact lab-frame propagator of one pulse starting at absolute time t_start.

    U = exp(+i w t1 Z) exp(-i H_rot tau) exp(-i w t0 Z) with Z the total I^z
    and H_rot the rotating-frame Hamiltonian; t1 = t_start + duration.
    """
    pulse.check_against(system)
    h = build_rotating_hamiltonian(system, pulse).entries
    vals, vecs = np.linalg.eigh(h)
    u_rot = (vecs * np.exp(-1j * vals * pulse.duration)) @ vecs.conj().T
    z = total_spin_z(system.n_spins)
    t_end = t_start + pulse.duration
    return (
        np.exp(1j * pulse.carrier * t_end * z)[:, None]
        * u_rot
        * np.exp(-1j * pulse.carrier * t_start * z)[None, :]
    )


def evolve_pulse(
    state: QuantumState, system: SpinSystem, pulse: PulseSpec, t_start: float = 0.0
) -> QuantumState:
    """Evolve a lab-frame state through one pulse (exact rotating-frame route).

    The returned amplitudes are lab-frame amplitudes at absolute time
    ``t_start + pulse.duration``: states untouched by the drive keep
    accumulating their free-evolution phases exp(-i E_n t), and newly driven
    states acquire the same phases automatically.
    """
    _require_normalized(state)
    u = pulse_propagator(system, pulse, t_start)
    return QuantumState(u @ state.amplitudes, check=False)


def evolve_delay(
    state: QuantumState, system: SpinSystem, delay: DelaySpec | float
) -> QuantumState:
    """Free evolution: multiply each amplitude by exp(-i E_n tau).

    Probabilities are untouched; only relative phases advance.  Composes
    exactly: tau_1 then tau_2 equals tau_1 + tau_2.
    """
    _require_normalized(state)
    tau = delay.duration if isinstance(delay, DelaySpec) else float(DelaySpec(delay).duration)
    phases = np.exp(-1j * diagonal_energies(system) * tau)
    return QuantumState(phases * state.amplitudes, check=False)


def to_interaction_picture(state: QuantumState, system: SpinSystem, t: float) -> QuantumState:
    """Strip the free-evolution phases exp(-i E_n t) from lab-frame amplitudes.

    Amplitudes in this picture are constant under free evolution, which makes
    them directly comparable against ideal gate actions.
    """
    phases = np.exp(1j * diagonal_energies(system) * t)
    return QuantumState(phases * state.amplitudes, check=False)


def analytic_two_level(
    c_k_initial: complex,
    e_k: float,
    e_n: float,
    rabi: float,
    phase: float,
    t_start: float,
    duration: float,
    carrier: float | None = None,
) -> TwoLevelAmplitudes:
    """Closed-form resonant evolution of one driven pair of levels.

    Assumes the carrier sits exactly on the transition (omega = E_n - E_k)
    and that the upper amplitude vanishes at the start of the pulse.  With
    alpha = Omega * tau / 2:

        C_k(t1) = exp(-i E_k tau) cos(alpha) C_k(t0)
        C_n(t1) = exp(i (pi/2 - phi)) exp(i (E_k t0 - E_n t1)) sin(alpha) C_k(t0)

    If C_k(t0) came in with its free-evolution phase exp(-i E_k t0), the new
    amplitude leaves with exp(-i E_n t1): the generated state picks up the
    phase it would have had, had it existed from t = 0.  The pi/2 - phi term
    is the standard phase shift of the driven transition; phi = pi/2 removes
    it.
    """
    if carrier is not None and abs(carrier - (e_n - e_k)) > 1e-9:
        raise ValueError(
            f"carrier {carrier} is off the {e_n - e_k} resonance; "
            "use integrate_lab_frame for detuned drives"
        )
    if duration < 0:
        raise ValueError("duration must be >= 0")
    t_end = t_start + duration
    alpha = 0.5 * rabi * duration
    c_k = np.exp(-1j * e_k * duration) * np.cos(alpha) * c_k_initial
    c_n = (
        np.exp(1j * (np.pi / 2 - phase))
        * np.exp(1j * (e_k * t_start - e_n * t_end))
        * np.sin(alpha)
        * c_k_initial
    )
    return TwoLevelAmplitudes(
        c_k=complex(c_k),
        c_n=complex(c_n),
        t_start=t_start,
        t_end=t_end,
        e_k=e_k,
        e_n=e_n,
        alpha=alpha,
    )


# ---------------------------------------------------------------------------
# lab-frame integrator (independent oracle)
# ---------------------------------------------------------------------------


def _lab_drive_parts(system: SpinSystem, pulse: PulseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Static coefficient matrices A, B of the drive -[cos(wt+phi) A' ...].

    The lab drive is  -sum_k Omega_k [cos(w t + phi) I^x_k - sin(w t + phi)
    I^y_k]; returns (A, B) such that V(t) = cos(w t + phi) A + sin(w t + phi) B.
    """
    n = system.n_spins
    dim = system.dim
    a = np.zeros((dim, dim), dtype=complex)
    b = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim)
    for k in range(n):
        if pulse.rabi[k] == 0.0:
            continue
        mask = 1 << (n - 1 - k)
        ground = idx[(idx & mask) == 0]
        excited = ground | mask
        # I^x: (1/2) on both off-diagonal sides; I^y: -i/2 on (ground, excited)
        a[ground, excited] += -0.5 * pulse.rabi[k]
        a[excited, ground] += -0.5 * pulse.rabi[k]
        b[ground, excited] += -0.5j * pulse.rabi[k]
        b[excited, ground] += +0.5j * pulse.rabi[k]
    return a, b


def lab_hamiltonian(system: SpinSystem, pulse: PulseSpec, t: float) -> "HamiltonianMatrix":
    """Instantaneous lab-frame Hamiltonian at absolute time t.

    H(t) = diag(E_n) - sum_k Omega_k [cos(w t + phi) I^x_k
           - sin(w t + phi) I^y_k]; the sign pattern is what a circularly
    polarized field rotating with the carrier produces, and is the model the
    lab-frame integrator steps through.
    """
    from .model import HamiltonianMatrix

    pulse.check_against(system)
    a, b = _lab_drive_parts(system, pulse)
    angle = pulse.carrier * t + pulse.phase
    h = np.diag(diagonal_energies(system).astype(complex))
    h += np.cos(angle) * a + np.sin(angle) * b
    return HamiltonianMatrix(h, frame="lab")


def _max_angular_frequency(system: SpinSystem, pulse: PulseSpec) -> float:
    energies = diagonal_energies(system)
    return float(max(np.max(np.abs(energies)), abs(pulse.carrier)) + np.max(pulse.rabi, initial=0.0))


def _rk4_propagator(
    diag: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    carrier: float,
    phase: float,
    t0: float,
    span: float,
    n_steps: int,
) -> np.ndarray:
    """RK4 propagator for i dY/dt = H(t) Y over [t0, t0 + span]."""
    dim = len(diag)
    y = np.eye(dim, dtype=complex)
    h = span / n_steps
    d_col = diag[:, None]

    def rhs(t, m):
        return -1j * (d_col * m + np.cos(carrier * t + phase) * (a @ m) + np.sin(carrier * t + phase) * (b @ m))

    t = t0
    for _ in range(n_steps):
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return y


def lab_frame_propagator(
    system: SpinSystem, pulse: PulseSpec, step: float | None = None, t_start: float = 0.0
) -> np.ndarray:
    """Time-stepped lab-frame propagator of one pulse.

    The lab Hamiltonian is periodic in the carrier period, so the RK4
    propagator is built over a single period and composed by matrix powers;
    the remainder interval is stepped directly.  This keeps the fixed-step
    error budget while making long pulses cheap.

    ``step`` must resolve the fastest oscillation: at most
    (shortest period) / 20, default (shortest period) / 400.
    """
    pulse.check_against(system)
    w_max = _max_angular_frequency(system, pulse)
    t_min = 2 * np.pi / w_max
    if step is None:
        step = t_min / DEFAULT_STEP_DIVISOR
    max_step = t_min / MAX_STEP_DIVISOR
    if step > max_step:
        raise ValueError(
            f"step {step:.3e} too large: must be <= {max_step:.3e} "
            f"(shortest oscillation period {t_min:.3e} / {MAX_STEP_DIVISOR})"
        )

    diag = diagonal_energies(system).astype(complex)
    a, b = _lab_drive_parts(system, pulse)
    tau = pulse.duration
    carrier = pulse.carrier

    period = 2 * np.pi / abs(carrier) if carrier != 0.0 else np.inf
    if period < tau:
        n_periods = int(np.floor(tau / period))
        remainder = tau - n_periods * period
        n1 = max(1, int(np.ceil(period / step)))
        u_period = _rk4_propagator(diag, a, b, carrier, pulse.phase, t_start, period, n1)
        u = np.linalg.matrix_power(u_period, n_periods)
        if remainder > 0:
            n2 = max(1, int(np.ceil(remainder / step)))
            # H(t_start + n_periods*period + s) = H(t_start + s): periodic drive
            u = _rk4_propagator(diag, a, b, carrier, pulse.phase, t_start, remainder, n2) @ u
        return u
    n_steps = max(1, int(np.ceil(tau / step)))
    return _rk4_propagator(diag, a, b, carrier, pulse.phase, t_start, tau, n_steps)


def integrate_lab_frame(
    state: QuantumState,
    system: SpinSystem,
    pulse: PulseSpec,
    step: float | None = None,
    t_start: float = 0.0,
) -> QuantumState:
    """Evolve a state by direct time-stepping of the lab-frame equation.

    Independent oracle for ``evolve_pulse``: the circularly polarized drive
    makes the rotating-frame treatment exact, so any disagreement is pure
    discretization error of the integrator.
    """
    _require_normalized(state)
    u = lab_frame_propagator(system, pulse, step=step, t_start=t_start)
    return QuantumState(u @ state.amplitudes, check=False)


# ---------------------------------------------------------------------------
# sequence driver
# ---------------------------------------------------------------------------


def apply_sequence(
    state: QuantumState,
    system: SpinSystem,
    events: list[PulseSpec | DelaySpec],
    t_start: float = 0.0,
    method: str = "exact-rotating",
    step: float | None = None,
) -> EvolutionReport:
    """Apply pulses and delays in order, advancing the absolute-time clock.

    ``method`` selects the pulse route: "exact-rotating" (default) or
    "lab-integrator".  Delays are always applied as exact phase factors.
    """
    if method not in ("exact-rotating", "lab-integrator"):
        raise ValueError(f"unknown evolution method {method!r}")
    t = t_start
    for event in events:
        if isinstance(event, PulseSpec):
            if method == "exact-rotating":
                state = evolve_pulse(state, system, event, t_start=t)
            else:
                state = integrate_lab_frame(state, system, event, step=step, t_start=t)
            t += event.duration
        elif isinstance(event, DelaySpec):
            state = evolve_delay(state, system, event)
            t += event.duration
        else:
            raise TypeError(f"events must be PulseSpec or DelaySpec, got {type(event)!r}")
    return EvolutionReport(
        final_state=state,
        norm_drift=abs(state.norm - 1.0),
        method=method,
        elapsed=t - t_start,
    )
