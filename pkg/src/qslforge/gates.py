"""Gate and schedule data types, the named-gate registry, and JSON I/O.

Conventions: all matrices are dense complex128 numpy arrays. A gate is
dimensionless; a schedule segment carries a Hamiltonian in energy units
and a duration in time units, with hbar stored on the schedule so that
every cost comes out in units of hbar * radians.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    BadParamsError,
    BadShapeError,
    DimensionMismatchError,
    NotHermitianError,
    NotUnitaryError,
    ParseError,
    UnknownGateError,
)

UNITARITY_TOL = 1e-9
HERMITICITY_TOL = 1e-9
SHAPE_MEAN_TOL = 1e-12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def _frozen_complex(matrix) -> np.ndarray:
    out = np.array(matrix, dtype=complex, order="C")
    out.setflags(write=False)
    return out


def unitarity_defect(matrix: np.ndarray) -> float:
    """Frobenius distance of M†M from the identity."""
    d = matrix.shape[0]
    return float(np.linalg.norm(matrix.conj().T @ matrix - np.eye(d)))


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Frobenius norm of M - M†."""
    return float(np.linalg.norm(matrix - matrix.conj().T))


def project_to_unitary(matrix: np.ndarray) -> np.ndarray:
    """Nearest unitary in Frobenius distance (unitary factor of the polar decomposition)."""
    u, _, vh = np.linalg.svd(np.asarray(matrix, dtype=complex))
    return u @ vh


class UnitaryGate:
    """A validated d x d unitary matrix, d >= 2.

    The matrix is stored read-only; instances are safe to share between
    threads.
    """

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix, *, unitarity_tol: float = UNITARITY_TOL):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"gate matrix must be square, got shape {m.shape}")
        if m.shape[0] < 2:
            raise DimensionMismatchError("gate dimension must be at least 2")
        defect = unitarity_defect(m)
        if not np.isfinite(defect) or defect > unitarity_tol * m.shape[0]:
            raise NotUnitaryError(
                f"matrix is not unitary: ||G†G - I||_F = {defect:.3e} "
                f"exceeds {unitarity_tol:g} * dim"
            )
        self.dim = int(m.shape[0])
        self.matrix = _frozen_complex(m)

    def __repr__(self):
        return f"UnitaryGate(dim={self.dim})"


class Segment(NamedTuple):
    duration: float
    h: np.ndarray


class HamiltonianSchedule:
    """A piecewise-constant control Hamiltonian: ordered (duration, H) segments.

    Each segment Hamiltonian is Hermitian and all segments share one
    dimension. ``hbar`` sets the action scale for every derived cost.
    """

    __slots__ = ("hbar", "segments")

    def __init__(self, segments: Sequence[tuple[float, np.ndarray]], hbar: float = 1.0,
                 *, hermiticity_tol: float = HERMITICITY_TOL):
        if not math.isfinite(hbar) or hbar <= 0:
            raise ParseError(f"hbar must be a positive real, got {hbar!r}")
        items = list(segments)
        if not items:
            raise ParseError("schedule needs at least one segment")
        frozen = []
        dim = None
        for k, (duration, h) in enumerate(items):
            duration = float(duration)
            if not math.isfinite(duration) or duration <= 0:
                raise ParseError(f"segment {k}: duration must be positive, got {duration!r}")
            m = np.asarray(h, dtype=complex)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise DimensionMismatchError(f"segment {k}: matrix must be square, got {m.shape}")
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise DimensionMismatchError(
                    f"segment {k}: dimension {m.shape[0]} differs from first segment ({dim})"
                )
            defect = hermiticity_defect(m)
            if not np.isfinite(defect) or defect > hermiticity_tol * dim:
                raise NotHermitianError(
                    f"segment {k}: ||h - h†||_F = {defect:.3e} exceeds {hermiticity_tol:g} * dim"
                )
            frozen.append(Segment(duration, _frozen_complex(m)))
        self.hbar = float(hbar)
        self.segments = tuple(frozen)

    @property
    def dim(self) -> int:
        return self.segments[0].h.shape[0]

    @property
    def total_duration(self) -> float:
        return float(sum(seg.duration for seg in self.segments))

    def durations(self) -> np.ndarray:
        return np.array([seg.duration for seg in self.segments])

    def __repr__(self):
        return (f"HamiltonianSchedule(dim={self.dim}, segments={len(self.segments)}, "
                f"tau={self.total_duration:g}, hbar={self.hbar:g})")


@dataclass(frozen=True)
class RotationParams:
    """Bloch-sphere rotation axis (unit 3-vector) and angle in [0, pi]."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,):
            raise DimensionMismatchError(f"axis must be a 3-vector, got shape {axis.shape}")
        norm = float(np.linalg.norm(axis))
        if abs(norm - 1.0) > 1e-8:
            raise BadParamsError(f"axis must have unit norm, got |n| = {norm:.12g}")
        if not -1e-12 <= self.angle <= math.pi + 1e-12:
            raise BadParamsError(f"angle must lie in [0, pi], got {self.angle!r}")
        axis.setflags(write=False)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angle", float(min(max(self.angle, 0.0), math.pi)))


@dataclass(frozen=True)
class ShapeFunction:
    """Per-segment averages of a nonnegative time-reparameterization with mean 1.

    Scaling a constant protocol segment-wise by these samples changes how
    the drive is distributed over time without changing the implemented
    gate or the accumulated cost.
    """

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise BadShapeError("shape samples must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(samples)) or np.any(samples < 0):
            raise BadShapeError("shape samples must be finite and nonnegative")
        mean = float(samples.mean())
        if abs(mean - 1.0) > SHAPE_MEAN_TOL:
            raise BadShapeError(f"shape samples must average to 1, got mean {mean!r}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size


SHAPE_NAMES = ("constant", "triangular", "sin2", "bang")


def named_shape(name: str, segments: int) -> ShapeFunction:
    """Build one of the stock shape profiles on ``segments`` equal segments.

    constant   -- flat drive, f = 1
    triangular -- ramp up to a peak at mid-protocol, back down
    sin2       -- smooth sin^2 envelope
    bang       -- all drive in the first half, idle in the second
    """
    if segments < 1:
        raise BadShapeError(f"segments must be >= 1, got {segments}")
    mid = (np.arange(segments) + 0.5) / segments
    if name == "constant":
        profile = np.ones(segments)
    elif name == "triangular":
        profile = 1.0 - np.abs(2.0 * mid - 1.0)
    elif name == "sin2":
        profile = np.sin(np.pi * mid) ** 2
    elif name == "bang":
        profile = np.where(mid < 0.5, 1.0, 0.0)
    else:
        raise BadShapeError(f"unknown shape {name!r}; choose from {SHAPE_NAMES}")
    return ShapeFunction(profile / profile.mean())


def _rotation_gate(axis: np.ndarray, theta: float) -> np.ndarray:
    half = theta / 2.0
    n_dot_sigma = sum(c * s for c, s in zip(axis, PAULIS))
    return math.cos(half) * np.eye(2) - 1j * math.sin(half) * n_dot_sigma


def _cnot() -> np.ndarray:
    m = np.eye(4, dtype=complex)
    m[[2, 3]] = m[[3, 2]]
    return m


def _toffoli() -> np.ndarray:
    m = np.eye(8, dtype=complex)
    m[[6, 7]] = m[[7, 6]]
    return m


_FIXED_GATES = {
    "I": lambda: np.eye(2, dtype=complex),
    "X": lambda: SIGMA_X.copy(),
    "Y": lambda: SIGMA_Y.copy(),
    "Z": lambda: SIGMA_Z.copy(),
    "H": lambda: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "S": lambda: np.diag([1.0, 1.0j]),
    "T": lambda: np.diag([1.0, cmath.exp(1j * math.pi / 4)]),
    "CNOT": _cnot,
    "CZ": lambda: np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex),
    "SWAP": lambda: np.eye(4, dtype=complex)[[0, 2, 1, 3]],
    "TOFFOLI": _toffoli,
}

_ROTATION_GATES = {
    "RX": np.array([1.0, 0.0, 0.0]),
    "RY": np.array([0.0, 1.0, 0.0]),
    "RZ": np.array([0.0, 0.0, 1.0]),
}

GATE_NAMES = tuple(sorted(_FIXED_GATES)) + tuple(sorted(_ROTATION_GATES))


def named_gate(name: str, params: Sequence[float] | None = None) -> UnitaryGate:
    """Look up a standard gate by name; rotations RX/RY/RZ take one angle."""
    key = name.upper()
    params = list(params or [])
    if key in _FIXED_GATES:
        if params:
            raise BadParamsError(f"gate {key} takes no parameters, got {params}")
        return UnitaryGate(_FIXED_GATES[key]())
    if key in _ROTATION_GATES:
        if len(params) != 1:
            raise BadParamsError(f"gate {key} takes exactly one angle, got {params}")
        theta = float(params[0])
        if not math.isfinite(theta):
            raise BadParamsError(f"rotation angle must be finite, got {theta!r}")
        return UnitaryGate(_rotation_gate(_ROTATION_GATES[key], theta))
    raise UnknownGateError(f"unknown gate {name!r}; known gates: {', '.join(GATE_NAMES)}")


def su2_normalize(gate: UnitaryGate) -> tuple[UnitaryGate, float]:
    """Split a 2x2 gate into a determinant-1 representative and a global phase.

    Of the two determinant-1 representatives ±G̃ the one with Re(a) >= 0
    is returned (a is the top-left entry); exact ties fall through to
    Im(a) <= 0, then Re(b) >= 0, then Im(b) >= 0. The second return value
    phi satisfies  gate = e^{i phi} * representative.
    """
    if gate.dim != 2:
        raise DimensionMismatchError(f"su2_normalize needs a 2x2 gate, got dim {gate.dim}")
    m = gate.matrix
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    rep = m / cmath.exp(1j * cmath.phase(det) / 2.0)
    a, b = rep[0, 0], rep[0, 1]
    tie = 1e-12
    for value in (a.real, -a.imag, b.real, b.imag):
        if value > tie:
            break
        if value < -tie:
            rep = -rep
            break
    phase = cmath.phase(np.trace(rep.conj().T @ m) / 2.0)
    return UnitaryGate(rep), phase


# --- JSON wire formats -------------------------------------------------------
#
# Gate:     {"dim": d, "matrix": [[[re, im], ...d], ...d]}
# Schedule: {"hbar": h, "segments": [{"duration": t, "h": [[[re, im], ...], ...]}, ...]}


def _matrix_to_pairs(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def _pairs_to_matrix(data, what: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ParseError(f"{what}: matrix must be a nonempty list of rows")
    rows = []
    for row in data:
        if not isinstance(row, list) or len(row) != len(data):
            raise ParseError(f"{what}: matrix must be square with list rows")
        entries = []
        for entry in row:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)):
                raise ParseError(f"{what}: each entry must be a [re, im] pair of numbers")
            re, im = float(entry[0]), float(entry[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ParseError(f"{what}: matrix entries must be finite")
            entries.append(complex(re, im))
        rows.append(entries)
    return np.array(rows, dtype=complex)


def _parse_json(source: str | bytes, what: str) -> dict:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        data = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{what}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{what}: top-level value must be an object")
    return data


def load_gate(source: str | bytes, *, unitarity_tol: float = UNITARITY_TOL,
              project: bool = False) -> UnitaryGate:
    """Parse a gate from its JSON encoding.

    With ``project=True`` a matrix that misses unitarity by at most 10x
    the tolerance is replaced by its polar projection onto the unitary
    group; anything worse is still rejected.
    """
    data = _parse_json(source, "gate")
    if "dim" not in data or "matrix" not in data:
        raise ParseError("gate: object must carry 'dim' and 'matrix'")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 2:
        raise ParseError(f"gate: 'dim' must be an integer >= 2, got {dim!r}")
    matrix = _pairs_to_matrix(data["matrix"], "gate")
    if matrix.shape[0] != dim:
        raise DimensionMismatchError(
            f"gate: declared dim {dim} does not match matrix shape {matrix.shape}"
        )
    defect = unitarity_defect(matrix)
    if project and unitarity_tol * dim < defect <= 10.0 * unitarity_tol * dim:
        matrix = project_to_unitary(matrix)
    return UnitaryGate(matrix, unitarity_tol=unitarity_tol)


def gate_to_json(gate: UnitaryGate) -> str:
    return json.dumps({"dim": gate.dim, "matrix": _matrix_to_pairs(gate.matrix)})


def load_schedule(source: str | bytes) -> HamiltonianSchedule:
    """Parse a schedule from its JSON encoding."""
    data = _parse_json(source, "schedule")
    if "segments" not in data:
        raise ParseError("schedule: object must carry 'segments'")
    hbar = data.get("hbar", 1.0)
    if isinstance(hbar, bool) or not isinstance(hbar, (int, float)):
        raise ParseError(f"schedule: 'hbar' must be a number, got {hbar!r}")
    raw = data["segments"]
    if not isinstance(raw, list) or not raw:
        raise ParseError("schedule: 'segments' must be a nonempty list")
    segments = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict) or "duration" not in item or "h" not in item:
            raise ParseError(f"schedule: segment {k} must carry 'duration' and 'h'")
        duration = item["duration"]
        if isinstance(duration, bool) or not isinstance(duration, (int, float)):
            raise ParseError(f"schedule: segment {k} duration must be a number")
        segments.append((float(duration), _pairs_to_matrix(item["h"], f"schedule segment {k}")))
    return HamiltonianSchedule(segments, hbar=float(hbar))


def schedule_to_json(schedule: HamiltonianSchedule) -> str:
    return json.dumps({
        "hbar": schedule.hbar,
        "segments": [
            {"duration": seg.duration, "h": _matrix_to_pairs(seg.h)}
            for seg in schedule.segments
        ],
    })
