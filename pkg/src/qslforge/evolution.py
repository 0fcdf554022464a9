"""Schedule propagation, gate fidelity up to phase, and cost functionals.

Propagation multiplies exact per-segment spectral exponentials, so a
piecewise-constant schedule is evolved with no stepper or splitting
error; refining the time dependence is the caller's job (more segments),
not an internal approximation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadPError, DimensionMismatchError, NormError
from .gates import HamiltonianSchedule, UnitaryGate
from .spectral import evolve_exp, hermitian_spectrum

STATE_NORM_TOL = 1e-10


def _as_matrix(g) -> np.ndarray:
    return g.matrix if isinstance(g, UnitaryGate) else np.asarray(g, dtype=complex)


def _check_state(psi, dim: int) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.size != dim:
        raise DimensionMismatchError(f"state has dimension {v.size}, expected {dim}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > STATE_NORM_TOL:
        raise NormError(f"state norm is {norm!r}, expected 1")
    return v


def propagate(schedule: HamiltonianSchedule, psi0=None):
    """Total propagator of a schedule, and optionally the evolved state.

    Later segments act last, i.e. multiply on the left:
    U = exp(-i h_M dt_M / hbar) ... exp(-i h_1 dt_1 / hbar).
    """
    dim = schedule.dim
    psi = None if psi0 is None else _check_state(psi0, dim)
    u = np.eye(dim, dtype=complex)
    for seg in schedule.segments:
        u = evolve_exp(seg.h, seg.duration, schedule.hbar) @ u
    return u, (None if psi is None else u @ psi)


def fidelity_up_to_phase(u, g) -> float:
    """|tr(G†U)| / d: equals 1 exactly when U and G differ only by a global phase."""
    a = _as_matrix(u)
    b = _as_matrix(g)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(abs(np.trace(b.conj().T @ a)) / a.shape[0])


def exact_phase_error(u, g) -> float:
    """|tr(G†U)/d - 1|: zero only when U = G including the global phase."""
    a = _as_matrix(u)
    b = _as_matrix(g)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(abs(np.trace(b.conj().T @ a) / a.shape[0] - 1.0))


def _segment_spreads(schedule: HamiltonianSchedule) -> np.ndarray:
    spreads = np.empty(len(schedule.segments))
    for j, seg in enumerate(schedule.segments):
        values = hermitian_spectrum(seg.h).eigenvalues
        spreads[j] = values[-1] - values[0]
    return spreads


def phase_volume(schedule: HamiltonianSchedule) -> float:
    """Energy-time phase volume: integral of the spectral spread E_max(t) - E_min(t)."""
    return float(np.dot(schedule.durations(), _segment_spreads(schedule)))


def _segment_norms(schedule: HamiltonianSchedule, matrix_p) -> np.ndarray:
    if matrix_p != math.inf and matrix_p < 1:
        raise BadPError(f"matrix norm order must satisfy p >= 1, got {matrix_p!r}")
    norms = np.empty(len(schedule.segments))
    for j, seg in enumerate(schedule.segments):
        magnitudes = np.abs(hermitian_spectrum(seg.h).eigenvalues)
        if matrix_p == math.inf:
            norms[j] = magnitudes.max()
        else:
            norms[j] = np.sum(magnitudes ** matrix_p) ** (1.0 / matrix_p)
    return norms


def cost(schedule: HamiltonianSchedule, matrix_p=math.inf, time_p=1) -> float:
    """Action-like cost of a schedule.

    ``matrix_p`` selects the Schatten order of the per-segment matrix
    norm (inf = operator norm). ``time_p`` selects the Lebesgue order of
    the time aggregation: 1 integrates the norm, p takes
    (integral ||h||^p dt)^(1/p), and inf takes the largest segment norm.
    Exact for piecewise-constant schedules.
    """
    if time_p != math.inf and time_p < 1:
        raise BadPError(f"time norm order must satisfy p >= 1, got {time_p!r}")
    norms = _segment_norms(schedule, matrix_p)
    if time_p == math.inf:
        return float(norms.max())
    durations = schedule.durations()
    if time_p == 1:
        return float(np.dot(durations, norms))
    return float(np.dot(durations, norms ** time_p) ** (1.0 / time_p))


@dataclass(frozen=True)
class CostReport:
    """Every cost functional of one schedule, in units of hbar * radians.

    c_schatten maps p to integral ||H||_p dt; c_lebesgue maps p to
    (integral ||H||^p dt)^(1/p) with the operator norm inside.
    """

    tau: float
    c_opnorm: float
    a_volume: float
    c_schatten: dict
    c_lebesgue: dict

    def to_dict(self) -> dict:
        def key(p):
            return "inf" if p == math.inf else f"{p:g}"

        return {
            "tau": self.tau,
            "C_opnorm": self.c_opnorm,
            "A": self.a_volume,
            "C_schatten": {key(p): v for p, v in self.c_schatten.items()},
            "C_lebesgue": {key(p): v for p, v in self.c_lebesgue.items()},
        }


def cost_report(schedule: HamiltonianSchedule, p_values=(1, 2, math.inf)) -> CostReport:
    """Evaluate the operator-norm cost, phase volume, and p-indexed cost families."""
    return CostReport(
        tau=schedule.total_duration,
        c_opnorm=cost(schedule),
        a_volume=phase_volume(schedule),
        c_schatten={p: cost(schedule, matrix_p=p) for p in p_values},
        c_lebesgue={p: cost(schedule, time_p=p) for p in p_values},
    )


def eigenvalue_trajectories(schedule: HamiltonianSchedule, samples_per_segment: int = 1):
    """Tabulate the instantaneous energy eigenvalues along a schedule.

    Returns (times, energies) with one row per grid point and energies
    sorted ascending per row. Each segment contributes an inclusive
    uniform grid of samples_per_segment + 1 points, so segment
    boundaries appear twice (left and right value) and trapezoidal
    integration of the spread over the table reproduces the phase
    volume to machine rounding.
    """
    if samples_per_segment < 1:
        raise ValueError(f"samples_per_segment must be >= 1, got {samples_per_segment}")
    times = []
    rows = []
    t0 = 0.0
    for seg in schedule.segments:
        values = hermitian_spectrum(seg.h).eigenvalues
        grid = t0 + np.linspace(0.0, seg.duration, samples_per_segment + 1)
        times.append(grid)
        rows.append(np.tile(values, (grid.size, 1)))
        t0 += seg.duration
    return np.concatenate(times), np.vstack(rows)


def shift_ground(schedule: HamiltonianSchedule) -> HamiltonianSchedule:
    """Shift every segment so its ground energy is exactly 0.

    Only changes the global phase of the evolution, and never increases
    any cost built from nonnegative spectra.
    """
    eye = np.eye(schedule.dim, dtype=complex)
    shifted = []
    for seg in schedule.segments:
        e0 = hermitian_spectrum(seg.h).eigenvalues[0]
        shifted.append((seg.duration, seg.h - e0 * eye))
    return HamiltonianSchedule(shifted, hbar=schedule.hbar)
