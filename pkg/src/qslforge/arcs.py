"""Shortest covering arcs of unit-circle phase sets and global-phase centering.

The length of the shortest arc containing every eigenphase of a gate is
invariant under global phase shifts and sets the minimum action needed
to implement the gate: hbar * length / 2.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInputError
from .gates import UnitaryGate

TWO_PI = 2.0 * math.pi
# Phase sets whose linear spread is below this collapse to a zero-length arc.
CLUSTER_TOL = 1e-12


@dataclass(frozen=True)
class EigenphaseArc:
    """Shortest unit-circle arc covering a phase set.

    The arc runs counterclockwise from ``start`` over ``length`` radians;
    both endpoints coincide with input phases. Multiplying the source
    gate by e^{i * centering_phase} moves the arc so it is symmetric
    about phase 0.
    """

    length: float
    start: float
    centering_phase: float


def _wrap_phase(x: float) -> float:
    """Map a real angle into (-pi, pi]."""
    w = math.remainder(x, TWO_PI)
    if w <= -math.pi:
        w = math.pi
    return w + 0.0


def shortest_covering_arc(phases) -> EigenphaseArc:
    """Shortest arc on the unit circle containing every given phase.

    Phases must lie in [-pi, pi]. Every phase is tried as the arc start
    and the minimal covering length is taken, so the result agrees
    bit-for-bit with a brute-force search over arcs anchored at phase
    pairs. Ties prefer the smallest start phase.
    """
    ph = np.atleast_1d(np.asarray(phases, dtype=float))
    if ph.size == 0:
        raise EmptyInputError("need at least one phase")
    if not np.all(np.isfinite(ph)) or np.any(np.abs(ph) > math.pi + 1e-12):
        raise ValueError("phases must be finite values in [-pi, pi]")

    if float(ph.max() - ph.min()) <= CLUSTER_TOL:
        start = float(ph.min())
        return EigenphaseArc(0.0, start, _wrap_phase(-start))

    # diffs[i, j] = (theta_j - theta_i) mod 2pi: arc from phase i to phase j.
    diffs = ph[None, :] - ph[:, None]
    diffs[diffs < 0] += TWO_PI
    lengths = diffs.max(axis=1)
    best = float(lengths.min())
    start = float(ph[lengths == best].min())
    return EigenphaseArc(best, start, _wrap_phase(-(start + best / 2.0)))


def phase_center(g: UnitaryGate) -> tuple[UnitaryGate, float]:
    """Rotate a gate by the global phase that centers its eigenphase arc on 0.

    Returns the centered gate and the applied phase phi, so that
    centered = e^{i phi} * g, with eigenphases spanning [-L/2, +L/2].
    """
    from .spectral import unitary_spectrum

    spec = unitary_spectrum(g)
    arc = shortest_covering_arc(spec.eigenphases)
    phi = arc.centering_phase
    if phi == 0.0:
        return g, 0.0
    return UnitaryGate(cmath.exp(1j * phi) * g.matrix), phi
