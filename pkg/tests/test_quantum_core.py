import math

import numpy as np
import pytest

from oracles import su2_exp, taylor_expm
from supermaze import (
    PAULI_X,
    PAULI_Z,
    Generator,
    Propagator,
    QuantumState,
    conventions,
    energy_stats,
    fidelity,
    time_ordered_exponential,
    unitary_from_generator,
)
from supermaze.errors import DimensionMismatch, NonHermitianInput
from supermaze.quantum_core import (
    phase_aligned_difference,
    random_hermitian,
    random_state,
    unitarity_defect,
)

ZERO = QuantumState.basis(2, 0)
ONE = QuantumState.basis(2, 1)
PLUS = QuantumState(np.array([1, 1]) / math.sqrt(2))


def test_zero_generator_gives_identity():
    u = unitary_from_generator(Generator(np.zeros((2, 2))), 5.0)
    assert np.array_equal(u.matrix, np.eye(2))


def test_pauli_x_quarter_period_flips_zero():
    u = unitary_from_generator(Generator(PAULI_X), math.pi / 2)
    assert np.allclose(u.matrix, su2_exp(math.pi / 2, "x"), atol=1e-14)
    out = u.apply(ZERO)
    assert np.allclose(out.amplitudes, [0, -1j], atol=1e-14)
    assert fidelity(out, ONE) == pytest.approx(1.0, abs=1e-14)


def test_pauli_z_half_period_is_minus_identity():
    u = unitary_from_generator(Generator(PAULI_Z), math.pi)
    assert np.allclose(u.matrix, -np.eye(2), atol=1e-14)


def test_hbar_scales_time():
    h = Generator(PAULI_X)
    with conventions(hbar=2.0):
        u2 = unitary_from_generator(h, 2.0).matrix
    assert np.allclose(u2, unitary_from_generator(h, 1.0).matrix, atol=1e-14)


def test_matches_taylor_series(rng):
    for dim in (2, 3, 5, 8):
        h = random_hermitian(dim, rng)
        t = float(rng.uniform(0, 3))
        u = unitary_from_generator(Generator(h), t).matrix
        assert np.max(np.abs(u - taylor_expm(-1j * h * t))) < 1e-10


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianInput):
        Generator(np.array([[0, 1], [0, 0]]))


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        unitary_from_generator(Generator(PAULI_X), -1.0)


def test_empty_schedule_is_identity():
    assert np.array_equal(time_ordered_exponential([]).matrix, np.eye(2))
    assert np.array_equal(time_ordered_exponential([], dim=4).matrix, np.eye(4))


def test_schedule_semigroup_for_single_generator():
    z = Generator(PAULI_Z)
    u = time_ordered_exponential([(z, math.pi / 2), (z, math.pi / 2)])
    assert np.allclose(u.matrix, unitary_from_generator(z, math.pi).matrix, atol=1e-14)
    assert u.elapsed == pytest.approx(math.pi)


def test_schedule_order_matters():
    z, x = Generator(PAULI_Z), Generator(PAULI_X)
    fwd = time_ordered_exponential([(z, math.pi / 4), (x, math.pi / 4)]).matrix
    rev = time_ordered_exponential([(x, math.pi / 4), (z, math.pi / 4)]).matrix
    # later segments act on the left
    assert np.allclose(fwd, su2_exp(math.pi / 4, "x") @ su2_exp(math.pi / 4, "z"), atol=1e-14)
    # closed form: the two orderings differ by i*Y, whose entries have modulus 1
    assert np.max(np.abs(fwd - rev)) == pytest.approx(1.0, abs=1e-14)


def test_schedule_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        time_ordered_exponential([(Generator(PAULI_X), 1.0), (Generator(np.eye(3)), 1.0)])


@pytest.mark.parametrize(
    "a, b, expected",
    [(ZERO, ZERO, 1.0), (ZERO, ONE, 0.0), (ZERO, PLUS, 1 / math.sqrt(2))],
)
def test_fidelity_examples(a, b, expected):
    assert fidelity(a, b) == pytest.approx(expected, abs=1e-15)


def test_fidelity_symmetric_exactly(rng):
    for _ in range(100):
        a, b = random_state(4, rng), random_state(4, rng)
        assert fidelity(a, b) == fidelity(b, a)


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fidelity(ZERO, QuantumState.basis(3, 0))


def test_energy_stats_examples():
    assert energy_stats(ZERO, Generator(PAULI_Z)) == (1.0, 0.0)
    mean, spread = energy_stats(ZERO, Generator(PAULI_X))
    assert mean == pytest.approx(0.0, abs=1e-15) and spread == pytest.approx(1.0, abs=1e-15)
    mean, spread = energy_stats(PLUS, Generator(PAULI_Z))
    assert mean == pytest.approx(0.0, abs=1e-15) and spread == pytest.approx(1.0, abs=1e-15)


def test_energy_stats_eigenstate_has_no_spread(rng):
    h = random_hermitian(5, rng)
    w, v = np.linalg.eigh(h)
    _, spread = energy_stats(QuantumState(v[:, 2]), Generator(h))
    assert spread < 1e-6


def test_state_invariants():
    with pytest.raises(ValueError):
        QuantumState(np.array([1.0, 1.0]))
    with pytest.raises(DimensionMismatch):
        QuantumState(np.array([1.0]))


def test_unitarity_norm_and_composition(rng):
    for _ in range(200):
        dim = int(rng.integers(2, 9))
        h = Generator(random_hermitian(dim, rng))
        t1, t2 = rng.uniform(0, 5, size=2)
        u1 = unitary_from_generator(h, t1)
        u2 = unitary_from_generator(h, t2)
        assert unitarity_defect(u1.matrix) < 1e-10
        psi = random_state(dim, rng)
        assert abs(u1.apply(psi).norm() - 1) < 1e-10
        both = unitary_from_generator(h, t1 + t2).matrix
        assert np.max(np.abs(both - u2.matrix @ u1.matrix)) < 1e-9


def test_phase_aligned_difference_ignores_global_phase(rng):
    u = unitary_from_generator(Generator(random_hermitian(3, rng)), 1.0).matrix
    assert phase_aligned_difference(u, np.exp(0.7j) * u) < 1e-14
    assert Propagator(u).dim == 3
