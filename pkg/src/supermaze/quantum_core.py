"""Dense complex linear algebra for small Hilbert spaces.

States, Hermitian generators bound to a time coordinate, and the unitary
propagators they produce. Exponentials of Hermitian matrices go through
``numpy.linalg.eigh`` so unitarity holds to round-off.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import get_tolerances, resolve_hbar
from .errors import DimensionMismatch, NonHermitianInput, SupermazeError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QuantumState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size < 2:
            raise DimensionMismatch(f"state dimension must be >= 2, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > get_tolerances().norm:
            raise ValueError(f"state is not normalized (norm {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_vector(cls, vec: Iterable[complex]) -> "QuantumState":
        """Normalize ``vec`` and wrap it."""
        v = np.asarray(list(vec) if not isinstance(vec, np.ndarray) else vec, dtype=complex)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / n)

    @classmethod
    def basis(cls, dim: int, index: int) -> "QuantumState":
        v = np.zeros(dim, dtype=complex)
        v[index] = 1.0
        return cls(v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class Generator:
    matrix: np.ndarray
    time_index: int = 0
    label: str = ""

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"generator {self.label!r} must be square, got shape {m.shape}")
        dev = hermiticity_defect(m)
        if dev >= get_tolerances().hermitian:
            raise NonHermitianInput(
                f"generator {self.label!r} is not Hermitian (max |M - M^dagger| = {dev:.3g})"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Propagator:
    matrix: np.ndarray
    elapsed: float = 0.0

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"propagator must be square, got shape {m.shape}")
        dev = unitarity_defect(m)
        if dev >= get_tolerances().unitary:
            raise SupermazeError(f"propagator is not unitary (max |U^dagger U - I| = {dev:.3g})")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "Propagator":
        return cls(np.eye(dim, dtype=complex), 0.0)

    def apply(self, psi: QuantumState) -> QuantumState:
        _check_dims(self.dim, psi.dim)
        return QuantumState(self.matrix @ psi.amplitudes)


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def unitarity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) if m.size else 0.0


def _check_dims(*dims: int) -> None:
    if len(set(dims)) > 1:
        raise DimensionMismatch(f"dimension mismatch: {dims}")


def _as_generator(H) -> Generator:
    return H if isinstance(H, Generator) else Generator(np.asarray(H))


def unitary_from_generator(H: Generator, t: float, *, hbar: float | None = None) -> Propagator:
    """Return ``exp(-i H t / hbar)`` for a Hermitian generator and ``t >= 0``."""
    H = _as_generator(H)
    if t < 0:
        raise ValueError(f"duration must be non-negative, got {t!r}")
    hb = resolve_hbar(hbar)
    w, v = np.linalg.eigh(H.matrix)
    phases = np.exp(-1j * w * (t / hb))
    return Propagator((v * phases) @ v.conj().T, float(t))


def time_ordered_exponential(
    schedule: Sequence[tuple[Generator, float]], *, dim: int = 2, hbar: float | None = None
) -> Propagator:
    """Piecewise-constant time-ordered product; later segments act on the left.

    An empty schedule yields the identity of dimension ``dim``.
    """
    if not schedule:
        return Propagator.identity(dim)
    gens = [_as_generator(g) for g, _ in schedule]
    _check_dims(*(g.dim for g in gens))
    u = np.eye(gens[0].dim, dtype=complex)
    elapsed = 0.0
    for g, (_, t) in zip(gens, schedule):
        u = unitary_from_generator(g, t, hbar=hbar).matrix @ u
        elapsed += t
    return Propagator(u, elapsed)


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>|, clipped into [0, 1]."""
    _check_dims(a.dim, b.dim)
    return min(1.0, float(abs(np.vdot(a.amplitudes, b.amplitudes))))


def energy_stats(psi: QuantumState, H: Generator) -> tuple[float, float]:
    """Mean energy and energy uncertainty of ``psi`` under ``H``."""
    H = _as_generator(H)
    _check_dims(psi.dim, H.dim)
    hpsi = H.matrix @ psi.amplitudes
    mean = np.vdot(psi.amplitudes, hpsi)
    second = np.vdot(hpsi, hpsi).real
    var = second - mean.real ** 2
    return float(mean.real), float(np.sqrt(var)) if var > 0 else 0.0


def aligned_phase(a: np.ndarray, b: np.ndarray) -> complex:
    """Unit phase ``z`` minimising the Frobenius distance between ``a`` and ``z*b``."""
    overlap = np.vdot(b, a)
    return overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0 + 0j


def phase_aligned_difference(a, b) -> float:
    """Entrywise max |a - z*b| after removing the best global phase ``z``."""
    a = np.asarray(getattr(a, "matrix", a), dtype=complex)
    b = np.asarray(getattr(b, "matrix", b), dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - aligned_phase(a, b) * b)))


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_state(dim: int, rng: np.random.Generator) -> QuantumState:
    return QuantumState.from_vector(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
