import itertools

import numpy as np
import pytest


def all_spins(n):
    return np.array(list(itertools.product((-1, 1), repeat=n)), dtype=float)


def brute_force_quadratic(A, psi, gamma):
    """Direct (psi + gamma b)^T A (psi + gamma b) for every spin vector b, in enumeration order."""
    B = all_spins(len(A))
    X = psi + gamma * B
    return np.einsum("ij,jk,ik->i", X, A, X)


def random_symmetric(rng, n, low=-1.0, high=1.0):
    M = rng.uniform(low, high, (n, n))
    return np.triu(M) + np.triu(M, 1).T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
