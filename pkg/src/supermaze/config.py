"""Process-wide numeric conventions: the value of hbar and validation tolerances.

Both live in context variables so that a scenario run (or a thread) can
override them without leaking into concurrent work.
"""
from __future__ import annotations

import contextlib
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12
    unitary: float = 1e-10
    norm: float = 1e-10


_HBAR: ContextVar[float] = ContextVar("supermaze_hbar", default=1.0)
_TOL: ContextVar[Tolerances] = ContextVar("supermaze_tolerances", default=Tolerances())


def get_hbar() -> float:
    return _HBAR.get()


def set_hbar(value: float) -> None:
    if not value > 0:
        raise ValueError(f"hbar must be positive, got {value!r}")
    _HBAR.set(float(value))


def resolve_hbar(hbar: float | None) -> float:
    return get_hbar() if hbar is None else float(hbar)


def get_tolerances() -> Tolerances:
    return _TOL.get()


@contextlib.contextmanager
def conventions(hbar: float | None = None, tolerance: float | None = None) -> Iterator[None]:
    """Temporarily override hbar and/or the norm/unitarity/Hermiticity tolerance."""
    tokens = []
    if hbar is not None:
        if not hbar > 0:
            raise ValueError(f"hbar must be positive, got {hbar!r}")
        tokens.append((_HBAR, _HBAR.set(float(hbar))))
    if tolerance is not None:
        if not tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {tolerance!r}")
        tol = replace(_TOL.get(), hermitian=tolerance, unitary=tolerance, norm=tolerance)
        tokens.append((_TOL, _TOL.set(tol)))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)
