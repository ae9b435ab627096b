import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeigen import (
    EigensolverConfig,
    ExhaustiveSampler,
    ParameterError,
    SamplerConfig,
    SimulatedAnnealingSampler,
    TightBindingParams,
    binary_seed,
    build_tight_binding,
    deflate,
    deviation,
    dispersion_multiset,
    jacobi_eigen,
    rayleigh_quotient,
    refine_step,
    solve_lowest,
    solve_spectrum,
    subspace_overlap,
)

from conftest import random_symmetric

EXACT = ExhaustiveSampler()
PAIR = np.array([[0.0, -1.0], [-1.0, 0.0]])


def ring(L=4, **kw):
    return build_tight_binding(TightBindingParams(L, **kw))


def test_rayleigh_quotient():
    assert rayleigh_quotient(PAIR, [1.0, 1.0]) == -1.0
    assert rayleigh_quotient(PAIR, [1.0, 0.0]) == 0.0
    v = np.array([0.3, -0.7])
    assert rayleigh_quotient(PAIR, 3 * v) == pytest.approx(rayleigh_quotient(PAIR, v), rel=1e-15)
    with pytest.raises(ParameterError):
        rayleigh_quotient(PAIR, [0.0, 0.0])


def test_deviation():
    assert deviation(-2.0, -2.0) == 0.0
    assert deviation(-2.0, -1.996) == pytest.approx(0.004)


def test_config_validation():
    for bad in (dict(max_outer_iters=0), dict(gamma_shrink=1.0), dict(gamma_grow=0.9),
                dict(gamma_min=2.0), dict(ortho_tol=0.0)):
        with pytest.raises(ParameterError):
            EigensolverConfig(**bad)


class TestBinarySeed:
    def test_ring_seed_is_exact(self):
        seed = binary_seed(ring(), EXACT)
        assert seed.energy == -2.0
        np.testing.assert_allclose(np.abs(seed.state), 0.5)
        assert len(set(np.sign(seed.state))) == 1

    def test_degenerate_diagonal(self):
        assert binary_seed(np.diag([1.0, 2.0]), EXACT).energy == pytest.approx(1.5, abs=1e-15)

    def test_ionic_seed_is_above_ground(self):
        H = ring(6, delta=0.6)
        e0 = jacobi_eigen(H).values[0]
        assert binary_seed(H, EXACT).energy > e0 + 1e-3

    @pytest.mark.parametrize("L", [6, 8, 10, 12])
    def test_uniform_metal_seed_matches_exact(self, L):
        H = ring(L)
        assert binary_seed(H, EXACT).energy == pytest.approx(jacobi_eigen(H).values[0], abs=1e-10)

    def test_seed_respects_orthogonality(self):
        H = ring()
        first = binary_seed(H, EXACT).state
        second = binary_seed(H, EXACT, orthogonal_to=[first])
        assert abs(second.state @ first) < 1e-12
        assert np.linalg.norm(second.state) == pytest.approx(1.0)


class TestRefineStep:
    def test_two_site_example(self):
        candidate = refine_step(PAIR, [1.0, 0.0], 0.5, EXACT)
        np.testing.assert_allclose(candidate, np.array([3.0, 1.0]) / np.sqrt(10), atol=1e-15)
        assert candidate == pytest.approx([0.9487, 0.3162], abs=1e-4)
        assert rayleigh_quotient(PAIR, candidate) == pytest.approx(-0.6)

    @pytest.mark.parametrize("gamma", [1.0, 0.3, 0.01])
    def test_cannot_beat_exact_ground_state(self, gamma):
        H = ring()
        ground = np.full(4, 0.5)
        candidate = refine_step(H, ground, gamma, EXACT)
        assert rayleigh_quotient(H, candidate) >= -2.0 - 1e-12
        result = solve_lowest(H, EXACT)
        np.testing.assert_allclose(np.abs(result.state), ground)

    def test_small_gamma_limit(self):
        psi = np.array([0.6, 0.8])
        candidate = refine_step(PAIR, psi, 1e-9, EXACT)
        np.testing.assert_allclose(candidate, psi, atol=1e-8)


class TestSolveLowest:
    def test_ring_converges_at_seed(self):
        result = solve_lowest(ring(), EXACT)
        assert deviation(-2.0, result.energy) < 5e-3
        assert result.trace[0] == (0, -2.0, 1.0)
        assert len(result.trace) == 1 and result.converged

    def test_ionic_six_sites(self):
        H = ring(6, delta=0.6)
        e0 = jacobi_eigen(H).values[0]
        result = solve_lowest(H, EXACT)
        assert result.iterations <= 200 and result.converged
        assert deviation(e0, result.energy) < 5e-3
        assert np.linalg.norm(result.state) == pytest.approx(1.0, abs=1e-10)

    def test_frustrated_chain_descends(self):
        # Positive t2 frustrates the chain so the ground state is not spin-representable.
        H = ring(10, t2=-1.0)
        dec = jacobi_eigen(H)
        result = solve_lowest(H, EXACT)
        assert binary_seed(H, EXACT).energy - dec.values[0] > 5e-3
        assert deviation(dec.values[0], result.energy) < 5e-3
        energies = [e for _, e, _ in result.trace]
        assert all(b < a for a, b in zip(energies, energies[1:]))
        assert subspace_overlap(result.state, dec.cluster_of(0)) >= 0.99

    def test_flags_non_convergence(self):
        result = solve_lowest(ring(8, delta=0.6), EXACT, EigensolverConfig(max_outer_iters=2))
        assert not result.converged
        assert result.stop_reason == "max_outer_iters"
        assert result.iterations == 2

    def test_simulated_annealing_backend(self):
        H = ring(6, delta=0.6)
        sampler = SimulatedAnnealingSampler(SamplerConfig(num_reads=20, sweeps=200, seed=5))
        result = solve_lowest(H, sampler)
        assert deviation(jacobi_eigen(H).values[0], result.energy) < 5e-3


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_trace_is_monotone_and_variational(n, seed):
    H = random_symmetric(np.random.default_rng(seed), n)
    e0 = jacobi_eigen(H).values[0]
    result = solve_lowest(H, EXACT)
    energies = [e for _, e, _ in result.trace]
    assert all(b < a for a, b in zip(energies, energies[1:]))
    assert min(energies) >= e0 - 1e-10
    assert energies[-1] == result.energy


class TestDeflate:
    def test_two_site_example(self):
        v = np.array([1.0, 1.0]) / np.sqrt(2)
        D = deflate(PAIR, [v], 2.0)
        np.testing.assert_allclose(D, np.eye(2), atol=1e-15)

    def test_empty_is_identity(self):
        np.testing.assert_array_equal(deflate(PAIR, [], 2.0), PAIR)

    def test_ring_mid_band(self):
        H = ring()
        dec = jacobi_eigen(H)
        mid = [dec.vectors[:, 1], dec.vectors[:, 2]]
        np.testing.assert_allclose(jacobi_eigen(deflate(H, mid, 4.0)).values, [-2, 2, 4, 4], atol=1e-12)
        found = [dec.vectors[:, 0], *mid]
        D = deflate(H, found, 4.0)
        np.testing.assert_allclose(jacobi_eigen(D).values, [2, 2, 4, 4], atol=1e-12)
        assert solve_lowest(D, EXACT, orthogonal_to=found).energy == pytest.approx(2.0, abs=1e-9)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ParameterError):
            deflate(PAIR, [np.array([1.0, 1.0])], 1.0)
        with pytest.raises(ParameterError):
            deflate(PAIR, [np.array([1.0, 0.0]), np.array([0.6, 0.8])], 1.0)
        with pytest.raises(ParameterError):
            deflate(PAIR, [np.array([1.0, 0.0])], 0.0)

    def test_spectrum_shift(self, rng):
        H = random_symmetric(rng, 6)
        dec = jacobi_eigen(H)
        lam = dec.values
        D = deflate(H, [dec.vectors[:, 0]], 3.5)
        np.testing.assert_allclose(
            jacobi_eigen(D).values, np.sort(np.r_[lam[0] + 3.5, lam[1:]]), atol=1e-8
        )


class TestSolveSpectrum:
    def test_ring(self):
        result = solve_spectrum(ring(), EXACT)
        np.testing.assert_allclose(result.energies, [-2, 0, 0, 2], atol=5e-3)
        assert result.deflation_weight == 4.0
        assert result.converged

    def test_ionic_six_sites(self):
        params = TightBindingParams(6, delta=0.6)
        result = solve_spectrum(build_tight_binding(params), EXACT)
        np.testing.assert_allclose(result.energies, dispersion_multiset(params), atol=5e-3)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_matrix_states_orthonormal(self, seed):
        H = random_symmetric(np.random.default_rng(seed), 5)
        result = solve_spectrum(H, EXACT)
        V = result.states
        assert np.max(np.abs(V.T @ V - np.eye(5))) <= 1e-8
        np.testing.assert_allclose(result.energies, jacobi_eigen(H).values, atol=5e-3)

    def test_reproducible(self):
        H = ring(6, delta=0.6)
        sampler = SimulatedAnnealingSampler(SamplerConfig(num_reads=10, sweeps=100, seed=2))
        a, b = solve_spectrum(H, sampler), solve_spectrum(H, sampler)
        np.testing.assert_array_equal(a.energies, b.energies)
        np.testing.assert_array_equal(a.states, b.states)

    def test_scalar_matrix(self):
        result = solve_spectrum(2.0 * np.eye(3), EXACT)
        np.testing.assert_allclose(result.energies, 2.0)
        np.testing.assert_allclose(result.states.T @ result.states, np.eye(3), atol=1e-12)
