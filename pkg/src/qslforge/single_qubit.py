"""Single-qubit gates as Bloch-sphere rotations and their cheapest drives.

A 2x2 Hermitian drive h = u0*I + u.sigma rotates the Bloch sphere with
angular velocity omega = 2u/hbar about the axis u/|u|; the identity part
u0 only accumulates global phase. A gate realizing the rotation
R(n, alpha) with 0 <= alpha <= pi therefore costs at least
hbar * alpha / 2, attained by rotating about the fixed axis n at a
constant (or merely time-reparameterized) rate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadShapeError, DimensionMismatchError
from .gates import (
    PAULIS,
    HamiltonianSchedule,
    RotationParams,
    ShapeFunction,
    UnitaryGate,
    su2_normalize,
)

# Below this rotation angle the axis is undefined; (0, 0, 1) is used by convention.
AXIS_TOL = 1e-12


@dataclass(frozen=True)
class PauliDecomposition:
    """Per-segment Pauli coefficients of a qubit schedule: h_j = u0[j]*I + u_vec[j].sigma."""

    u0: np.ndarray
    u_vec: np.ndarray


def _require_qubit(dim: int, what: str):
    if dim != 2:
        raise DimensionMismatchError(f"{what} needs dimension 2, got {dim}")


def pauli_decompose(schedule: HamiltonianSchedule) -> PauliDecomposition:
    """Expand each segment of a qubit schedule in the identity + Pauli basis."""
    _require_qubit(schedule.dim, "pauli_decompose")
    u0 = np.empty(len(schedule.segments))
    u_vec = np.empty((len(schedule.segments), 3))
    for j, seg in enumerate(schedule.segments):
        u0[j] = np.trace(seg.h).real / 2.0
        for k, sigma in enumerate(PAULIS):
            u_vec[j, k] = np.trace(sigma @ seg.h).real / 2.0
    u0.setflags(write=False)
    u_vec.setflags(write=False)
    return PauliDecomposition(u0, u_vec)


def rotation_gate(axis, angle: float) -> np.ndarray:
    """SU(2) matrix of the Bloch rotation by ``angle`` about unit ``axis``."""
    n = np.asarray(axis, dtype=float)
    half = angle / 2.0
    n_dot_sigma = sum(c * s for c, s in zip(n, PAULIS))
    return math.cos(half) * np.eye(2) - 1j * math.sin(half) * n_dot_sigma


def rotation_params(g: UnitaryGate) -> RotationParams:
    """Axis and angle (in [0, pi]) of the Bloch rotation a 2x2 gate implements.

    The determinant-1 representative with Re(a) >= 0 fixes the branch:
    alpha = 2 arccos(Re a) and n = -(Im b, Re b, Im a) normalized.
    """
    _require_qubit(g.dim, "rotation_params")
    rep, _ = su2_normalize(g)
    a = rep.matrix[0, 0]
    b = rep.matrix[0, 1]
    alpha = 2.0 * math.acos(min(max(a.real, -1.0), 1.0))
    v = -np.array([b.imag, b.real, a.imag])
    norm = float(np.linalg.norm(v))
    if norm <= AXIS_TOL:
        return RotationParams(np.array([0.0, 0.0, 1.0]), alpha)
    return RotationParams(v / norm, alpha)


def min_cost_single(g: UnitaryGate, hbar: float = 1.0) -> float:
    """Minimum action of any drive implementing a 2x2 gate up to phase: hbar * alpha / 2."""
    return hbar * rotation_params(g).angle / 2.0


def worst_case_angle(g: UnitaryGate) -> float:
    """Largest Bures angle between psi and G psi over all pure states: alpha / 2."""
    return rotation_params(g).angle / 2.0


def optimal_qubit_protocol(g: UnitaryGate, tau: float,
                           shape: ShapeFunction | None = None,
                           segments: int | None = None,
                           hbar: float = 1.0) -> HamiltonianSchedule:
    """Minimum-cost drive for a 2x2 gate over duration tau.

    Without a shape this is the single constant segment
    h = (hbar alpha / 2 tau) n.sigma. A shape distributes the same
    rotation over its segments, h_j = f_j * h, leaving both the gate
    (up to global phase) and the cost hbar * alpha / 2 unchanged.
    ``segments`` subdivides the constant protocol when no shape is given.
    """
    _require_qubit(g.dim, "optimal_qubit_protocol")
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    params = rotation_params(g)
    base = (hbar * params.angle / (2.0 * tau)) * sum(
        c * s for c, s in zip(params.axis, PAULIS)
    )
    if shape is None:
        count = 1 if segments is None else int(segments)
        if count < 1:
            raise BadShapeError(f"segments must be >= 1, got {segments}")
        samples = np.ones(count)
    else:
        samples = shape.samples
        if segments is not None and segments != len(samples):
            raise BadShapeError(
                f"segments={segments} disagrees with shape of {len(samples)} samples"
            )
    dt = tau / len(samples)
    return HamiltonianSchedule([(dt, f * base) for f in samples], hbar=hbar)


def omega_cost(schedule: HamiltonianSchedule) -> float:
    """Angular-velocity cost (hbar/2) * integral |omega| dt = sum_j dt_j |u_vec_j|.

    Ignores the identity component, so it matches the operator-norm cost
    exactly when u0 vanishes and lower-bounds it otherwise.
    """
    dec = pauli_decompose(schedule)
    speeds = np.linalg.norm(dec.u_vec, axis=1)
    return float(np.dot(schedule.durations(), speeds))


def strip_identity_component(schedule: HamiltonianSchedule) -> tuple[HamiltonianSchedule, float]:
    """Remove the identity part of every segment of a qubit schedule.

    Returns the traceless schedule and the global phase
    -(1/hbar) * integral u0 dt by which its final states differ from the
    original's. Stripping never increases the cost, since
    ||h|| = |u0| + |u|.
    """
    dec = pauli_decompose(schedule)
    eye = np.eye(2, dtype=complex)
    stripped = HamiltonianSchedule(
        [(seg.duration, seg.h - u0 * eye) for seg, u0 in zip(schedule.segments, dec.u0)],
        hbar=schedule.hbar,
    )
    phase = -float(np.dot(schedule.durations(), dec.u0)) / schedule.hbar
    return stripped, phase
