"""Classical population dynamics on a network of levels.

Populations obey ``dp/dt = M p`` with ``M[j, i] = rate(i -> j)`` off the
diagonal and ``M[i, i] = -(total escape rate of i)``. Solutions use the
matrix exponential at each requested time. Time to equilibrium is the first
time after which the L1 distance to the stationary distribution stays below
``epsilon``, refined between grid samples by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from .config import resolve_hbar
from .errors import (
    InvalidDistribution,
    NegativeInput,
    NoStationaryDistribution,
    NonAscendingGrid,
    NotReachedWithinGrid,
    OrderingViolation,
    UnknownState,
)


@dataclass(frozen=True)
class Level:
    id: str
    energy: float
    label: str = ""


@dataclass(frozen=True, eq=False)
class RateNetwork:
    states: tuple[Level, ...]
    rates: Mapping[tuple[str, str], float]

    def __post_init__(self):
        states = tuple(self.states)
        ids = [s.id for s in states]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate level ids in {ids}")
        rates = {}
        for (i, j), g in dict(self.rates).items():
            if i not in ids or j not in ids:
                raise UnknownState(f"rate {i}->{j} references an unknown level")
            if i == j:
                raise ValueError(f"self-rate {i}->{i} is not allowed")
            if g < 0 or not math.isfinite(g):
                raise NegativeInput(f"rate {i}->{j} must be finite and non-negative, got {g}")
            rates[(i, j)] = float(g)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "rates", rates)

    @property
    def ids(self) -> list[str]:
        return [s.id for s in self.states]

    def position(self, state_id: str) -> int:
        try:
            return self.ids.index(state_id)
        except ValueError:
            raise UnknownState(state_id) from None

    def level(self, state_id: str) -> Level:
        return self.states[self.position(state_id)]

    def with_rate(self, source: str, target: str, rate: float) -> "RateNetwork":
        rates = dict(self.rates)
        rates[(source, target)] = rate
        return RateNetwork(self.states, rates)

    def rate_matrix(self) -> np.ndarray:
        n = len(self.states)
        pos = {s.id: k for k, s in enumerate(self.states)}
        m = np.zeros((n, n))
        for (i, j), g in self.rates.items():
            m[pos[j], pos[i]] += g
            m[pos[i], pos[i]] -= g
        return m

    def pure(self, state_id: str) -> np.ndarray:
        p = np.zeros(len(self.states))
        p[self.position(state_id)] = 1.0
        return p


def golden_rule_rate(coupling_sq: float, dos: float, *, hbar: float | None = None) -> float:
    """Transition rate ``(2 pi / hbar) |V|^2 rho``."""
    if coupling_sq < 0 or dos < 0:
        raise NegativeInput("coupling and density of states must be non-negative")
    return 2 * math.pi / resolve_hbar(hbar) * coupling_sq * dos


def total_escape_rate(net: RateNetwork, state_id: str) -> float:
    net.position(state_id)
    return sum(g for (i, _), g in net.rates.items() if i == state_id)


def closed_classes(net: RateNetwork) -> list[list[str]]:
    """Closed communicating classes (sets no positive rate leaves)."""
    n = len(net.states)
    reach = np.eye(n, dtype=bool)
    pos = {s.id: k for k, s in enumerate(net.states)}
    for (i, j), g in net.rates.items():
        if g > 0:
            reach[pos[i], pos[j]] = True
    for k in range(n):
        reach |= reach[:, [k]] & reach[[k], :]
    classes = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        cls = [j for j in range(n) if reach[i, j] and reach[j, i]]
        seen.update(cls)
        # closed iff everything reachable from i reaches back
        if all(reach[j, i] for j in range(n) if reach[i, j]):
            classes.append([net.states[j].id for j in cls])
    return classes


def stationary_distribution(net: RateNetwork) -> np.ndarray:
    classes = closed_classes(net)
    if len(classes) != 1:
        raise NoStationaryDistribution(
            f"{len(classes)} closed classes {classes}: the stationary distribution is not unique"
        )
    m = net.rate_matrix()
    n = m.shape[0]
    a = np.vstack([m, np.ones((1, n))])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    p, *_ = np.linalg.lstsq(a, b, rcond=None)
    p = np.where(p < 0, 0.0, p)
    return p / p.sum()


@dataclass(frozen=True, eq=False)
class RelaxationCurve:
    times: np.ndarray
    populations: np.ndarray
    ids: tuple[str, ...] = ()

    def rows(self):
        for t, p in zip(self.times, self.populations):
            yield (float(t), *(float(x) for x in p))


def _validate_p0(net: RateNetwork, p0) -> np.ndarray:
    p0 = np.asarray(p0, dtype=float)
    if p0.shape != (len(net.states),):
        raise InvalidDistribution(f"p0 must have {len(net.states)} entries, got shape {p0.shape}")
    if np.any(p0 < 0) or abs(p0.sum() - 1.0) > 1e-9:
        raise InvalidDistribution(f"p0 must be non-negative and sum to 1: {p0.tolist()}")
    return p0


def _validate_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise NonAscendingGrid("grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) <= 0):
        raise NonAscendingGrid("grid must be strictly ascending")
    if grid[0] < 0:
        raise NonAscendingGrid("grid times must be non-negative")
    return grid


def _propagate(m: np.ndarray, p0: np.ndarray, t: float) -> np.ndarray:
    return scipy.linalg.expm(m * t) @ p0


def evolve_populations(net: RateNetwork, p0, grid: Sequence[float]) -> RelaxationCurve:
    p0 = _validate_p0(net, p0)
    grid = _validate_grid(grid)
    m = net.rate_matrix()
    pops = np.array([_propagate(m, p0, t) for t in grid])
    return RelaxationCurve(grid, pops, tuple(net.ids))


def relaxation_gap(net: RateNetwork) -> float:
    """Smallest non-zero decay rate of the rate matrix."""
    ev = np.linalg.eigvals(net.rate_matrix())
    decay = np.sort(-ev.real)
    nonzero = decay[decay > 1e-12 * max(1.0, decay[-1] if decay.size else 1.0)]
    return float(nonzero[0]) if nonzero.size else 0.0


def default_grid(net: RateNetwork, epsilon: float, n: int = 4001) -> np.ndarray:
    gap = relaxation_gap(net)
    if gap <= 0:
        return np.linspace(0.0, 1.0, n)
    return np.linspace(0.0, 2 * (math.log(2 / epsilon) + 5) / gap, n)


def l1_distance(p: np.ndarray, q: np.ndarray) -> float:
    return float(np.sum(np.abs(p - q)))


def time_to_equilibrium(net: RateNetwork, p0, epsilon: float, grid=None, *, rtol: float = 1e-9) -> float:
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    p0 = _validate_p0(net, p0)
    target = stationary_distribution(net)
    grid = default_grid(net, epsilon) if grid is None else _validate_grid(grid)
    m = net.rate_matrix()

    def dist(t: float) -> float:
        return l1_distance(_propagate(m, p0, t), target)

    d = np.array([dist(t) for t in grid])
    above = np.nonzero(d >= epsilon)[0]
    if above.size == 0:
        return float(grid[0])
    k = int(above[-1])
    if k == grid.size - 1:
        raise NotReachedWithinGrid(float(grid[-1]), float(d[-1]), epsilon)
    lo, hi = float(grid[k]), float(grid[k + 1])
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if dist(mid) >= epsilon:
            lo = mid
        else:
            hi = mid
    return hi


@dataclass(frozen=True)
class MpembaVerdict:
    a: str
    b: str
    tau_a: float
    tau_b: float
    gamma_a: float
    gamma_b: float
    anomaly: bool
    gamma_criterion: bool
    epsilon: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def mpemba_compare(net: RateNetwork, a_id: str, b_id: str, epsilon: float, grid=None) -> MpembaVerdict:
    """Race the hotter preparation ``a`` against the cooler ``b`` to equilibrium."""
    ea, eb = net.level(a_id).energy, net.level(b_id).energy
    if not ea > eb:
        raise OrderingViolation(f"energy({a_id})={ea} must exceed energy({b_id})={eb}")
    if grid is None:
        grid = default_grid(net, epsilon)
    tau_a = time_to_equilibrium(net, net.pure(a_id), epsilon, grid)
    tau_b = time_to_equilibrium(net, net.pure(b_id), epsilon, grid)
    gamma_a, gamma_b = total_escape_rate(net, a_id), total_escape_rate(net, b_id)
    return MpembaVerdict(a_id, b_id, tau_a, tau_b, gamma_a, gamma_b, tau_a < tau_b, gamma_a > gamma_b, epsilon)


def detailed_balance_violations(net: RateNetwork, temperature: float, rtol: float = 1e-6) -> list[dict]:
    """Pairs whose forward/backward rate ratio departs from the Boltzmann factor.

    Informational only; networks with deliberate non-equilibrium channels are valid.
    """
    if not temperature > 0:
        raise ValueError("temperature must be positive")
    out = []
    for i, j in sorted({tuple(sorted(pair)) for pair in net.rates}):
        fwd, back = net.rates.get((i, j), 0.0), net.rates.get((j, i), 0.0)
        if fwd == 0.0 and back == 0.0:
            continue
        expected = math.exp(-(net.level(j).energy - net.level(i).energy) / temperature)
        ratio = math.inf if back == 0.0 else fwd / back
        if not abs(ratio - expected) <= rtol * expected:
            out.append({"pair": (i, j), "ratio": ratio, "boltzmann": expected})
    return out


def three_level_cascade(g21: float = 0.1, g10: float = 0.1, g20: float = 1.0) -> RateNetwork:
    """Levels 0 < 1 < 2 with the cascade 2 -> 1 -> 0 and a direct 2 -> 0 channel."""
    levels = (Level("0", 0.0, "ground"), Level("1", 1.0, "middle"), Level("2", 2.0, "top"))
    return RateNetwork(levels, {("2", "1"): g21, ("1", "0"): g10, ("2", "0"): g20})
