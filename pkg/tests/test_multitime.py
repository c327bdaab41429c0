import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import su2_exp
from supermaze import (
    PAULI_X,
    PAULI_Z,
    Generator,
    IntervalKind,
    MultiTimePath,
    QuantumState,
    TemporalMetric,
    TimeVector,
    TrajectorySegment,
    classify_interval,
    consistency_residual,
    evolve_path,
    fidelity,
    interval,
    rectangle_defect,
)
from supermaze.errors import DimensionMismatch, MissingGenerator
from supermaze.quantum_core import random_hermitian, random_state

ZERO = QuantumState.basis(2, 0)
Z = Generator(PAULI_Z, 0, "Z")
X = Generator(PAULI_X, 1, "X")


@pytest.mark.parametrize(
    "speeds, dt, dx, expected",
    [((1, 1), (1, 0), (), -1.0), ((1, 1), (3, 4), (5,), 0.0), ((1, 1), (0, 0), (2,), 4.0)],
)
def test_interval_examples(speeds, dt, dx, expected):
    m = TemporalMetric(2, speeds, len(dx))
    assert interval(m, TimeVector(dt), dx) == expected


def test_interval_uses_speeds():
    m = TemporalMetric(2, (2.0, 0.5), 1)
    assert interval(m, (1.0, 2.0), (3.0,)) == pytest.approx(-(4 + 1) + 9)


def test_interval_dimension_checks():
    m = TemporalMetric(2, (1, 1), 1)
    with pytest.raises(DimensionMismatch):
        interval(m, (1.0,), (0.0,))
    with pytest.raises(DimensionMismatch):
        interval(m, (1.0, 0.0), ())


def test_metric_rejects_bad_speeds():
    with pytest.raises(ValueError):
        TemporalMetric(2, (1.0, 0.0))
    with pytest.raises(DimensionMismatch):
        TemporalMetric(2, (1.0,))


finite = st.floats(-1e3, 1e3, allow_nan=False)


@given(st.lists(finite, min_size=3, max_size=3), st.lists(finite, min_size=2, max_size=2),
       st.lists(st.floats(0.1, 10), min_size=3, max_size=3))
def test_interval_splits_into_time_and_space(dt, dx, speeds):
    m = TemporalMetric(3, tuple(speeds), 2)
    whole = interval(m, dt, dx)
    parts = interval(m, dt, (0.0, 0.0)) + interval(m, (0.0, 0.0, 0.0), dx)
    assert abs(whole - parts) <= 1e-12 * max(1.0, abs(whole))


def test_classify_interval():
    assert classify_interval(-1.0, 1e-9) is IntervalKind.TIMELIKE
    assert classify_interval(0.0) is IntervalKind.NULL
    assert classify_interval(4.0) is IntervalKind.SPACELIKE
    assert classify_interval(5e-10, 1e-9) is IntervalKind.NULL


def test_consistency_residual_examples():
    assert consistency_residual(Z, Z).residual == 0.0
    assert consistency_residual(Z, X).residual == pytest.approx(2.0, abs=1e-12)
    d1, d2 = Generator(np.diag([1.0, 2.0])), Generator(np.diag([3.0, 4.0]))
    assert consistency_residual(d1, d2).residual == 0.0


def test_consistency_residual_symmetric(rng):
    for _ in range(50):
        a, b = Generator(random_hermitian(4, rng)), Generator(random_hermitian(4, rng))
        assert consistency_residual(a, b).residual == consistency_residual(b, a).residual


def test_consistency_residual_matches_svd(rng):
    a, b = random_hermitian(5, rng), random_hermitian(5, rng)
    c = a @ b - b @ a
    assert consistency_residual(a, b).residual == pytest.approx(np.linalg.svd(c, compute_uv=False)[0], rel=1e-12)


def test_path_final_time_accumulates_per_index():
    segs = (TrajectorySegment(0, 1.5), TrajectorySegment(1, 2.0), TrajectorySegment(0, 0.25))
    path = MultiTimePath(segs, TimeVector((10.0, -1.0)))
    assert path.final_time().coordinates == (11.75, 1.0)
    assert path.displacement().coordinates == (1.75, 2.0)


def test_path_rejects_out_of_range_index():
    with pytest.raises(DimensionMismatch):
        MultiTimePath((TrajectorySegment(2, 1.0),), TimeVector((0.0, 0.0)))


def test_evolve_empty_path_is_identity():
    out = evolve_path(ZERO, MultiTimePath((), TimeVector((0.0, 0.0))), {})
    assert np.array_equal(out.amplitudes, ZERO.amplitudes)


def test_evolve_single_segment():
    path = MultiTimePath((TrajectorySegment(0, math.pi / 2),), TimeVector((0.0,)))
    out = evolve_path(ZERO, path, {0: Generator(PAULI_X)})
    assert fidelity(out, QuantumState.basis(2, 1)) == pytest.approx(1.0, abs=1e-14)


def test_rectangle_orderings_differ():
    gens = {0: Z, 1: X}
    first = MultiTimePath((TrajectorySegment(0, math.pi / 4), TrajectorySegment(1, math.pi / 4)), TimeVector((0.0, 0.0)))
    second = MultiTimePath((TrajectorySegment(1, math.pi / 4), TrajectorySegment(0, math.pi / 4)), TimeVector((0.0, 0.0)))
    a, b = evolve_path(ZERO, first, gens), evolve_path(ZERO, second, gens)
    # closed-form states: overlap of the two orderings on |0> has modulus 1/sqrt(2)
    oa = su2_exp(math.pi / 4, "x") @ su2_exp(math.pi / 4, "z") @ ZERO.amplitudes
    ob = su2_exp(math.pi / 4, "z") @ su2_exp(math.pi / 4, "x") @ ZERO.amplitudes
    assert abs(np.vdot(oa, ob)) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert 1 - fidelity(a, b) == pytest.approx(1 - 1 / math.sqrt(2), abs=1e-12)
    assert first.final_time() == second.final_time()


def test_segment_generator_overrides_map():
    path = MultiTimePath((TrajectorySegment(0, math.pi / 2, Generator(PAULI_X)),), TimeVector((0.0,)))
    out = evolve_path(ZERO, path, {0: Generator(PAULI_Z)})
    assert fidelity(out, QuantumState.basis(2, 1)) == pytest.approx(1.0, abs=1e-14)


def test_missing_generator():
    path = MultiTimePath((TrajectorySegment(1, 1.0),), TimeVector((0.0, 0.0)))
    with pytest.raises(MissingGenerator):
        evolve_path(ZERO, path, {0: Z})


def test_evolve_dimension_mismatch():
    path = MultiTimePath((TrajectorySegment(0, 1.0),), TimeVector((0.0,)))
    with pytest.raises(DimensionMismatch):
        evolve_path(ZERO, path, {0: Generator(np.eye(3))})


def test_rectangle_defect_examples():
    assert rectangle_defect(ZERO, Generator(np.diag([1.0, 2.0])), Generator(np.diag([0.5, -1.0])), 1.3, 0.7) < 1e-15
    assert rectangle_defect(ZERO, Z, X, 0.0, 1.0) == 0.0
    # U_X U_Z - U_Z U_X = iY at tau = pi/4, and the optimal phase is 1
    assert rectangle_defect(ZERO, Z, X, math.pi / 4, math.pi / 4) == pytest.approx(1.0, abs=1e-14)


def test_rectangle_defect_range(rng):
    for _ in range(50):
        a, b = random_hermitian(3, rng, 3.0), random_hermitian(3, rng, 3.0)
        d = rectangle_defect(None, a, b, *rng.uniform(0, 5, size=2))
        assert 0.0 <= d <= 2.0


def test_commuting_generators_have_no_defect(rng):
    for _ in range(100):
        dim = int(rng.integers(2, 7))
        q, _ = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
        a = (q * rng.normal(size=dim)) @ q.conj().T
        b = (q * rng.normal(size=dim)) @ q.conj().T
        a, b = (a + a.conj().T) / 2, (b + b.conj().T) / 2
        assert consistency_residual(a, b).residual < 1e-9
        psi = random_state(dim, rng)
        assert rectangle_defect(psi, a, b, *rng.uniform(0, 10, size=2)) < 1e-9


def test_evolve_path_preserves_norm(rng):
    gens = {i: Generator(random_hermitian(4, rng), i) for i in range(3)}
    segs = tuple(TrajectorySegment(int(rng.integers(0, 3)), float(rng.uniform(0, 2))) for _ in range(20))
    out = evolve_path(random_state(4, rng), MultiTimePath(segs, TimeVector.zeros(3)), gens)
    assert abs(out.norm() - 1) < 1e-10
