import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qeigen import (
    IsingProblem,
    ParameterError,
    TightBindingParams,
    UsageError,
    binary_ground_problem,
    build_tight_binding,
    correction_problem,
    ising_energy,
)
from qeigen.ising import _expand

from conftest import all_spins, brute_force_quadratic


def test_energy_examples():
    assert ising_energy(IsingProblem(2, [0, 0], {(0, 1): -1.0}), [1, 1]) == -1.0
    assert ising_energy(IsingProblem(2, [1, 0], offset=2.0), [-1, 1]) == 1.0


def test_global_flip_symmetry_without_fields(rng):
    p = IsingProblem.from_arrays(np.zeros(5), rng.uniform(-1, 1, (5, 5)), offset=0.3)
    for s in all_spins(5):
        assert ising_energy(p, s) == pytest.approx(ising_energy(p, -s), abs=1e-14)


def test_energy_rejects_bad_spins():
    p = IsingProblem(2, [0, 0])
    with pytest.raises(UsageError):
        ising_energy(p, [1, 1, 1])
    with pytest.raises(ParameterError):
        ising_energy(p, [1, 0])


def test_problem_validation():
    with pytest.raises(ParameterError):
        IsingProblem(2, [0, 0], {(1, 0): 1.0})
    with pytest.raises(ParameterError):
        IsingProblem(2, [0, 0], {(1, 1): 1.0})
    with pytest.raises(ParameterError):
        IsingProblem(3, [0, 0])


def test_dict_round_trip(rng):
    p = IsingProblem.from_arrays(rng.normal(size=4), rng.normal(size=(4, 4)), offset=-1.5)
    q = IsingProblem.from_dict(p.to_dict())
    np.testing.assert_array_equal(q.fields, p.fields)
    assert q.couplings == p.couplings and q.offset == p.offset


def test_binary_ground_problem_two_sites():
    p = binary_ground_problem([[0, -1], [-1, 0]])
    assert p.offset == 0.0 and p.couplings == {(0, 1): -2.0}
    np.testing.assert_array_equal(p.fields, [0, 0])
    energies = {tuple(s): ising_energy(p, s) for s in itertools.product((-1, 1), repeat=2)}
    assert min(energies.values()) == -2.0
    assert {s for s, e in energies.items() if e == -2.0} == {(1, 1), (-1, -1)}


def test_binary_ground_problem_diagonal():
    p = binary_ground_problem(np.diag([0.5, 2.0]))
    assert p.offset == 2.5 and p.couplings == {}
    assert {ising_energy(p, s) for s in all_spins(2)} == {2.5}


def test_binary_ground_problem_ring():
    H = build_tight_binding(TightBindingParams(4))
    p = binary_ground_problem(H)
    energies = np.array([ising_energy(p, s) for s in all_spins(4)])
    assert energies.min() == -8.0
    minimizers = all_spins(4)[energies == -8.0]
    assert sorted(map(tuple, minimizers)) == [(-1, -1, -1, -1), (1, 1, 1, 1)]
    s = minimizers[0]
    assert s @ H @ s / (s @ s) == -2.0


def test_correction_problem_scaled_identity():
    p = correction_problem(2 * np.eye(2), [1.0, 0.0], 0.5)
    assert p.offset == 3.0 and p.couplings == {}
    np.testing.assert_array_equal(p.fields, [2.0, 0.0])
    assert ising_energy(p, [-1, -1]) == 1.0


def test_correction_problem_two_sites():
    A = np.array([[0.0, -1.0], [-1.0, 0.0]])
    p = correction_problem(A, [1.0, 0.0], 0.5)
    assert p.offset == 0.0 and p.couplings == {(0, 1): -0.5}
    np.testing.assert_array_equal(p.fields, [0.0, -1.0])
    direct = brute_force_quadratic(A, np.array([1.0, 0.0]), 0.5)
    assert direct.min() == -1.5
    assert tuple(all_spins(2)[direct.argmin()]) == (1, 1)
    assert ising_energy(p, [1, 1]) == -1.5


def test_correction_problem_small_gamma_limit(rng):
    A = rng.uniform(-1, 1, (3, 3))
    A = A + A.T
    psi = np.array([0.6, 0.0, 0.8])
    p = correction_problem(A, psi, 1e-9)
    assert np.abs(p.fields).max() < 1e-8
    assert max(map(abs, p.couplings.values()), default=0) < 1e-16
    assert p.offset == pytest.approx(psi @ A @ psi, abs=1e-12)


def test_correction_problem_preconditions():
    A = np.eye(2)
    with pytest.raises(ParameterError):
        correction_problem(A, [1.0, 1.0], 0.5)
    with pytest.raises(ParameterError):
        correction_problem(A, [1.0, 0.0], 0.0)
    with pytest.raises(ParameterError):
        correction_problem([[0, 1], [0, 0]], [1.0, 0.0], 0.5)


@st.composite
def encoding_cases(draw):
    n = draw(st.integers(1, 6))
    M = draw(arrays(np.float64, (n, n), elements=st.floats(-1, 1)))
    A = np.triu(M) + np.triu(M, 1).T
    v = draw(arrays(np.float64, n, elements=st.floats(-1, 1)))
    if np.linalg.norm(v) < 1e-3:
        v = np.eye(n)[0]
    gamma = draw(st.floats(1e-3, 2.0))
    return A, v / np.linalg.norm(v), gamma


@settings(max_examples=150, deadline=None)
@given(encoding_cases())
def test_correction_encoding_is_exact(case):
    A, psi, gamma = case
    p = correction_problem(A, psi, gamma)
    np.testing.assert_allclose(
        p.energies(all_spins(len(A))), brute_force_quadratic(A, psi, gamma), atol=1e-10
    )


@settings(max_examples=100, deadline=None)
@given(encoding_cases())
def test_binary_problem_is_zero_seed_specialization(case):
    A, _, _ = case
    p = binary_ground_problem(A)
    q = _expand(A, np.zeros(len(A)), 1.0)
    np.testing.assert_array_equal(p.fields, 0.0)
    np.testing.assert_array_equal(q.fields, 0.0)
    assert p.couplings == q.couplings and p.offset == q.offset
    S = all_spins(len(A))
    np.testing.assert_allclose(p.energies(S), p.energies(-S), atol=1e-12)
