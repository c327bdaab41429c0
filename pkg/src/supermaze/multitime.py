"""Several time coordinates, each advanced by its own generator.

A state evolves as ``i hbar d/dt^I psi = H_I psi`` along every coordinate
``t^I``. Paths advance one coordinate at a time, so a path is an ordered
product of ordinary propagators. Whether the order matters is measured two
ways: the commutator norm of a pair of generators, and the defect of the
"rectangle" path compared with its order-swapped twin.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, MissingGenerator
from .quantum_core import (
    Generator,
    QuantumState,
    _as_generator,
    _check_dims,
    phase_aligned_difference,
    unitary_from_generator,
)


@dataclass(frozen=True)
class TemporalMetric:
    n_times: int
    speeds: tuple[float, ...]
    n_space: int = 0

    def __post_init__(self):
        speeds = tuple(float(c) for c in self.speeds)
        if self.n_times < 1:
            raise ValueError("n_times must be positive")
        if self.n_space < 0:
            raise ValueError("n_space must be non-negative")
        if len(speeds) != self.n_times:
            raise DimensionMismatch(f"expected {self.n_times} speeds, got {len(speeds)}")
        if any(not c > 0 for c in speeds):
            raise ValueError(f"speeds must be strictly positive: {speeds}")
        object.__setattr__(self, "speeds", speeds)

    @classmethod
    def uniform(cls, n_times: int, n_space: int = 0, speed: float = 1.0) -> "TemporalMetric":
        return cls(n_times, (speed,) * n_times, n_space)


@dataclass(frozen=True)
class TimeVector:
    coordinates: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(float(t) for t in self.coordinates))

    def __len__(self) -> int:
        return len(self.coordinates)

    @classmethod
    def zeros(cls, n: int) -> "TimeVector":
        return cls((0.0,) * n)


class IntervalKind(str, enum.Enum):
    TIMELIKE = "timelike"
    NULL = "null"
    SPACELIKE = "spacelike"


def interval(metric: TemporalMetric, dt, dx=()) -> float:
    """Squared interval ``-sum (c_i dt_i)^2 + sum dx_j^2``."""
    dt = tuple(getattr(dt, "coordinates", dt))
    dx = tuple(dx)
    if len(dt) != metric.n_times:
        raise DimensionMismatch(f"dt has {len(dt)} entries, metric has {metric.n_times} times")
    if len(dx) != metric.n_space:
        raise DimensionMismatch(f"dx has {len(dx)} entries, metric has {metric.n_space} space dims")
    temporal = sum((c * t) ** 2 for c, t in zip(metric.speeds, dt))
    spatial = sum(x ** 2 for x in dx)
    return spatial - temporal


def classify_interval(ds2: float, tol: float = 1e-9) -> IntervalKind:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    if ds2 < -tol:
        return IntervalKind.TIMELIKE
    if ds2 > tol:
        return IntervalKind.SPACELIKE
    return IntervalKind.NULL


@dataclass(frozen=True)
class ConsistencyReport:
    pair: tuple[int, int]
    residual: float


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    c = a @ b - b @ a
    # sqrt of the top eigenvalue of C^dagger C: exactly symmetric under C -> -C
    top = np.linalg.eigvalsh(c.conj().T @ c)[-1]
    return float(np.sqrt(max(top, 0.0)))


def consistency_residual(H_I: Generator, H_J: Generator) -> ConsistencyReport:
    """Spectral norm of ``[H_I, H_J]``; zero means the two flows commute."""
    H_I, H_J = _as_generator(H_I), _as_generator(H_J)
    _check_dims(H_I.dim, H_J.dim)
    return ConsistencyReport((H_I.time_index, H_J.time_index), commutator_norm(H_I.matrix, H_J.matrix))


@dataclass(frozen=True)
class TrajectorySegment:
    time_index: int
    duration: float
    generator: Generator | None = None

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"segment duration must be non-negative, got {self.duration}")
        if self.time_index < 0:
            raise ValueError("time_index must be non-negative")


@dataclass(frozen=True)
class MultiTimePath:
    segments: tuple[TrajectorySegment, ...]
    origin: TimeVector

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for seg in self.segments:
            if seg.time_index >= len(self.origin):
                raise DimensionMismatch(
                    f"segment advances t^{seg.time_index} but origin has {len(self.origin)} coordinates"
                )

    def final_time(self) -> TimeVector:
        coords = list(self.origin.coordinates)
        for seg in self.segments:
            coords[seg.time_index] += seg.duration
        return TimeVector(tuple(coords))

    def displacement(self) -> TimeVector:
        return TimeVector(tuple(f - o for f, o in zip(self.final_time().coordinates, self.origin.coordinates)))


def evolve_path(
    psi: QuantumState,
    path: MultiTimePath,
    generators: Mapping[int, Generator] | None = None,
    *,
    hbar: float | None = None,
) -> QuantumState:
    """Apply each segment's propagator in order.

    A segment's own generator takes precedence over ``generators[time_index]``.
    """
    generators = generators or {}
    amps = psi.amplitudes
    for i, seg in enumerate(path.segments):
        gen = seg.generator if seg.generator is not None else generators.get(seg.time_index)
        if gen is None:
            raise MissingGenerator(f"segment {i}: no generator bound to t^{seg.time_index}")
        gen = _as_generator(gen)
        _check_dims(psi.dim, gen.dim)
        amps = unitary_from_generator(gen, seg.duration, hbar=hbar).matrix @ amps
    return QuantumState(amps / np.linalg.norm(amps))


def rectangle_defect(
    psi: QuantumState | None,
    H1: Generator,
    HS: Generator,
    tau1: float,
    tauS: float,
    *,
    hbar: float | None = None,
) -> float:
    """Phase-aligned max entry of ``U_S U_1 - U_1 U_S``.

    ``psi`` only fixes the dimension; the defect is a property of the two
    flows and therefore the same for every state.
    """
    H1, HS = _as_generator(H1), _as_generator(HS)
    dims = (H1.dim, HS.dim) if psi is None else (psi.dim, H1.dim, HS.dim)
    _check_dims(*dims)
    u1 = unitary_from_generator(H1, tau1, hbar=hbar).matrix
    us = unitary_from_generator(HS, tauS, hbar=hbar).matrix
    return phase_aligned_difference(us @ u1, u1 @ us)


def rectangle_path(time_first: int, tau_first: float, time_second: int, tau_second: float, n_times: int = 2) -> MultiTimePath:
    """Two-leg corner path: advance ``time_first`` then ``time_second``."""
    return MultiTimePath(
        (TrajectorySegment(time_first, tau_first), TrajectorySegment(time_second, tau_second)),
        TimeVector.zeros(n_times),
    )


def segments_from_schedule(schedule: Sequence[tuple[int, float]]) -> tuple[TrajectorySegment, ...]:
    return tuple(TrajectorySegment(int(i), float(d)) for i, d in schedule)
