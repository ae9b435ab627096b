"""Eigenvalues and eigenstates of real symmetric matrices from Ising ground-state samples.

A continuous eigenstate is grown out of an optimal binary (spin) vector by
repeatedly sampling spin-valued corrections, and excited levels follow by
deflation. Any Ising sampler can drive the loop; an exhaustive enumerator, a
simulated annealer and an HTTP client are provided.
"""

from .errors import (
    CapacityError,
    NumericalError,
    ParameterError,
    QEError,
    RetryableSamplerError,
    SamplerError,
    SamplerProtocolError,
    UsageError,
)
from .ising import IsingProblem, binary_ground_problem, correction_problem, ising_energy
from .lattice import (
    TightBindingParams,
    allowed_momenta,
    as_symmetric,
    build_tight_binding,
    dispersion_multiset,
    exact_dispersion,
    gershgorin_bounds,
)
from .oracle import EigenDecomposition, cosine_similarity, jacobi_eigen, subspace_overlap
from .samplers import (
    ExhaustiveSampler,
    RemoteSampler,
    SampleSet,
    SamplerConfig,
    SimulatedAnnealingSampler,
    exhaustive_sample,
    remote_sample,
    simulated_anneal,
)
from .solver import (
    EigenpairEstimate,
    EigensolverConfig,
    SpectrumResult,
    binary_seed,
    deflate,
    deviation,
    rayleigh_quotient,
    refine_step,
    solve_lowest,
    solve_spectrum,
)

__version__ = "0.1.0"
