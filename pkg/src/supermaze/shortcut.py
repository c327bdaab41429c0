"""Shortcut generators and the quantum speed limit.

A shortcut reproduces a target unitary in a chosen duration ``T`` by running
the generator ``H_S = (i hbar / T) log U`` (principal branch). The
Mandelstam-Tamm bound ``dE * T >= hbar * arccos|<psi_i|psi_f>|`` is checked
on every shortcut; for orthogonal endpoints it reads ``dE * T >= pi hbar / 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import get_tolerances, resolve_hbar
from .errors import DegenerateBranch, NonPositiveBudget, NonUnitaryTarget
from .quantum_core import (
    Generator,
    Propagator,
    QuantumState,
    _check_dims,
    energy_stats,
    fidelity,
    random_unitary,
    unitarity_defect,
)

# eigenphases this close to -pi are round-off of an exact -1 eigenvalue and take the +pi branch
_SNAP = 1e-12
# eigenphases within this of -pi (but beyond round-off) are refused as branch-ambiguous
_BRANCH_GUARD = 1e-9
NO_DISPLACEMENT = 1 - 1e-12


@dataclass(frozen=True, eq=False)
class ShortcutSpec:
    target: Propagator
    duration: float

    def __post_init__(self):
        if not isinstance(self.target, Propagator):
            m = np.asarray(self.target, dtype=complex)
            dev = unitarity_defect(m)
            if dev >= get_tolerances().unitary:
                raise NonUnitaryTarget(f"target is not unitary (defect {dev:.3g})")
            object.__setattr__(self, "target", Propagator(m, 0.0))
        if not self.duration > 0:
            raise ValueError(f"shortcut duration must be positive, got {self.duration!r}")


@dataclass(frozen=True, eq=False)
class SynthesizedShortcut:
    generator: Generator
    duration: float
    spectral_cost: float
    bandwidth_cost: float
    target: Propagator
    eigenphases: tuple[float, ...] = ()

    @property
    def dim(self) -> int:
        return self.generator.dim


@dataclass(frozen=True)
class QslReport:
    delta_e: float
    mean_e: float
    duration: float
    bound: float
    orthogonal_bound: float
    product: float
    satisfied: bool
    margin: float
    fidelity: float
    no_displacement: bool

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def principal_eigenphases(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases in (-pi, pi] and eigenvectors of a unitary (complex Schur form)."""
    t, z = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diagonal(t))
    near_cut = phases < -math.pi + _BRANCH_GUARD
    snapped = phases < -math.pi + _SNAP
    if np.any(near_cut & ~snapped):
        bad = phases[near_cut & ~snapped]
        raise DegenerateBranch(f"eigenphase(s) {bad.tolist()} within {_BRANCH_GUARD} of -pi")
    phases = np.where(snapped, math.pi, phases)
    return phases, z


def synthesize_generator(spec: ShortcutSpec, *, time_index: int = 1, hbar: float | None = None) -> SynthesizedShortcut:
    """Generator ``H_S`` with ``exp(-i H_S T / hbar) == target``."""
    hb = resolve_hbar(hbar)
    u = spec.target.matrix
    dev = unitarity_defect(u)
    if dev >= get_tolerances().unitary:
        raise NonUnitaryTarget(f"target is not unitary (defect {dev:.3g})")
    phases, z = principal_eigenphases(u)
    energies = -hb * phases / spec.duration
    h = (z * energies) @ z.conj().T
    h = (h + h.conj().T) / 2
    return SynthesizedShortcut(
        generator=Generator(h, time_index, "H_S"),
        duration=float(spec.duration),
        spectral_cost=float(np.max(np.abs(energies))),
        bandwidth_cost=float((energies.max() - energies.min()) / 2),
        target=spec.target,
        eigenphases=tuple(float(p) for p in phases),
    )


def qsl_check(shortcut: SynthesizedShortcut, psi_initial: QuantumState, *, hbar: float | None = None) -> QslReport:
    hb = resolve_hbar(hbar)
    _check_dims(shortcut.dim, psi_initial.dim)
    mean, delta = energy_stats(psi_initial, shortcut.generator)
    final = shortcut.target.apply(psi_initial)
    fid = fidelity(psi_initial, final)
    ground = float(np.linalg.eigvalsh(shortcut.generator.matrix)[0])
    product = delta * shortcut.duration
    no_disp = fid > NO_DISPLACEMENT
    bound = 0.0 if no_disp else hb * math.acos(fid)
    return QslReport(
        delta_e=delta,
        mean_e=mean - ground,
        duration=shortcut.duration,
        bound=bound,
        orthogonal_bound=math.pi * hb / 2,
        product=product,
        satisfied=no_disp or product >= bound - 1e-9,
        margin=product - bound,
        fidelity=fid,
        no_displacement=no_disp,
    )


def minimal_duration(
    psi_i: QuantumState, psi_f: QuantumState, energy_budget: float, *, hbar: float | None = None
) -> float:
    """Shortest time to rotate ``psi_i`` into ``psi_f`` with energy spread ``energy_budget``."""
    if not energy_budget > 0:
        raise NonPositiveBudget(f"energy budget must be positive, got {energy_budget!r}")
    hb = resolve_hbar(hbar)
    return hb * math.acos(fidelity(psi_i, psi_f)) / energy_budget


def apply_shortcut(
    psi: QuantumState, shortcut: SynthesizedShortcut, *, hbar: float | None = None
) -> tuple[QuantumState, QslReport]:
    return shortcut.target.apply(psi), qsl_check(shortcut, psi, hbar=hbar)


def swap_unitary(psi: QuantumState, phi: QuantumState, rng: np.random.Generator | None = None) -> np.ndarray:
    """A unitary exchanging ``psi`` and ``phi`` (which must be orthogonal).

    With ``rng`` the exchange picks up random phases and the complementary
    subspace gets a Haar-random unitary.
    """
    _check_dims(psi.dim, phi.dim)
    dim = psi.dim
    if abs(np.vdot(psi.amplitudes, phi.amplitudes)) > 1e-9:
        raise ValueError("swap_unitary needs orthogonal states")
    filler = np.eye(dim, dtype=complex) if rng is None else random_unitary(dim, rng)
    seed = np.column_stack([psi.amplitudes, phi.amplitudes, filler[:, : dim - 2]])
    basis, _ = np.linalg.qr(seed)  # Householder: always unitary
    basis[:, 0] = psi.amplitudes
    basis[:, 1] = phi.amplitudes
    inner = np.zeros((dim, dim), dtype=complex)
    if rng is None:
        inner[0, 1] = inner[1, 0] = 1.0
    else:
        a, b = rng.uniform(-math.pi, math.pi, size=2)
        inner[1, 0], inner[0, 1] = np.exp(1j * a), np.exp(1j * b)
    if dim > 2:
        inner[2:, 2:] = np.eye(dim - 2) if rng is None else random_unitary(dim - 2, rng)
    return basis @ inner @ basis.conj().T
