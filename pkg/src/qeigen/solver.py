"""Iterative eigensolver driven by Ising ground-state samples.

The lowest eigenpair is found by repeatedly solving binary problems:

1. Seed with the best spin vector for ``s^T H s`` (normalized).
2. With ``E'`` the current Rayleigh quotient and ``A = H - E' I``, sample the
   spin vector ``b`` minimizing ``(psi' + gamma b)^T A (psi' + gamma b)``.
3. Replace ``psi'`` by ``normalize(psi' + gamma b)`` if that lowers the energy,
   otherwise shrink ``gamma``; repeat until the energy stops moving.

Excited levels come from deflation: each found state is lifted by ``w`` so the
same minimization lands on the next level, and candidates are kept orthogonal
to every state found so far.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

from .errors import ParameterError
from .ising import binary_ground_problem, correction_problem
from .lattice import as_symmetric, gershgorin_bounds
from .samplers import SampleSet

logger = logging.getLogger(__name__)


class Sampler(Protocol):
    def sample(self, problem) -> SampleSet: ...


@dataclass(frozen=True)
class EigensolverConfig:
    max_outer_iters: int = 200
    energy_tol: float = 1e-10
    gamma_initial: float = 1.0
    gamma_shrink: float = 0.5
    gamma_grow: float = 1.2
    gamma_min: float = 1e-6
    ortho_tol: float = 1e-8

    def __post_init__(self):
        if self.max_outer_iters < 1:
            raise ParameterError("max_outer_iters must be >= 1")
        if not 0 < self.gamma_shrink < 1:
            raise ParameterError("gamma_shrink must lie in (0, 1)")
        if not 1 <= self.gamma_grow < np.inf:
            raise ParameterError("gamma_grow must be finite and >= 1")
        if not 0 < self.gamma_min < self.gamma_initial:
            raise ParameterError("need 0 < gamma_min < gamma_initial")
        if self.energy_tol < 0 or self.ortho_tol <= 0:
            raise ParameterError("tolerances must be non-negative (ortho_tol positive)")


@dataclass
class EigenpairEstimate:
    energy: float
    state: np.ndarray
    iterations: int = 0
    trace: list[tuple[int, float, float]] = field(default_factory=list)
    converged: bool = True
    stop_reason: str = "seed"


@dataclass
class SpectrumResult:
    pairs: list[EigenpairEstimate]
    deflation_weight: float

    @property
    def energies(self) -> np.ndarray:
        return np.array([p.energy for p in self.pairs])

    @property
    def states(self) -> np.ndarray:
        """Matrix whose columns are the eigenstates, in ``pairs`` order."""
        return np.column_stack([p.state for p in self.pairs])

    @property
    def converged(self) -> bool:
        return all(p.converged for p in self.pairs)


def rayleigh_quotient(H, v) -> float:
    v = np.asarray(v, dtype=float)
    norm2 = float(v @ v)
    if norm2 == 0:
        raise ParameterError("Rayleigh quotient of the zero vector is undefined")
    return float(v @ (np.asarray(H) @ v)) / norm2


def deviation(e_exact: float, e_qe: float) -> float:
    return abs(e_exact - e_qe)


def _orthogonalize(v: np.ndarray, basis: Sequence[np.ndarray]) -> np.ndarray:
    # Two Gram-Schmidt passes keep the residual overlap at rounding level.
    for _ in range(2):
        for u in basis:
            v = v - (u @ v) * u
    return v


def binary_seed(H, sampler: Sampler, orthogonal_to: Sequence[np.ndarray] = ()) -> EigenpairEstimate:
    """Best spin vector for ``s^T H s``, normalized, as a starting state.

    With ``orthogonal_to`` the seed is projected off those states; ranked
    samples are tried in order until one leaves a usable remainder.
    """
    H = as_symmetric(H)
    samples = sampler.sample(binary_ground_problem(H))
    for spins in samples.spins:
        v = _orthogonalize(spins.astype(float), orthogonal_to)
        norm = np.linalg.norm(v)
        if norm > 1e-8 * np.sqrt(len(v)):
            state = v / norm
            return EigenpairEstimate(rayleigh_quotient(H, state), state)
    # Every sampled spin vector lies in the span of the found states.
    rng = np.random.default_rng(len(orthogonal_to))
    v = _orthogonalize(rng.standard_normal(len(H)), orthogonal_to)
    state = v / np.linalg.norm(v)
    return EigenpairEstimate(rayleigh_quotient(H, state), state, stop_reason="random-seed")


def refine_step(
    H, psi_prime, gamma: float, sampler: Sampler, orthogonal_to: Sequence[np.ndarray] = ()
) -> np.ndarray:
    """One correction move: ``normalize(psi' + gamma b*)`` with ``b*`` the best sampled spin vector.

    With ``orthogonal_to`` the shifted matrix is sandwiched by the projector
    onto their complement, so the sampler scores the candidate after the
    projection ``solve_lowest`` applies to it.
    """
    H = as_symmetric(H)
    psi = np.asarray(psi_prime, dtype=float)
    A = H - rayleigh_quotient(H, psi) * np.eye(len(H))
    if orthogonal_to:
        V = np.column_stack(orthogonal_to)
        P = np.eye(len(H)) - V @ V.T
        A = P @ A @ P
        A = (A + A.T) / 2
    b = sampler.sample(correction_problem(A, psi, gamma)).lowest
    candidate = psi + gamma * _orthogonalize(b.astype(float), orthogonal_to)
    norm = np.linalg.norm(candidate)
    if norm < 1e-12:
        return psi.copy()
    return candidate / norm


def solve_lowest(
    H,
    sampler: Sampler,
    cfg: EigensolverConfig | None = None,
    orthogonal_to: Sequence[np.ndarray] = (),
) -> EigenpairEstimate:
    """Lowest eigenpair of ``H`` (restricted to the complement of ``orthogonal_to``)."""
    cfg = cfg or EigensolverConfig()
    H = as_symmetric(H)
    seed = binary_seed(H, sampler, orthogonal_to)
    state, energy = seed.state, seed.energy
    # Moves that only reproduce psi' can "improve" by an ulp; those count as rejections.
    noise = 16 * np.finfo(float).eps * max(np.max(np.abs(H)), abs(energy))
    gamma = cfg.gamma_initial
    trace = [(0, energy, gamma)]
    accepted = [energy]
    reason = "max_outer_iters"
    iteration = 0
    while iteration < cfg.max_outer_iters:
        iteration += 1
        candidate = refine_step(H, state, gamma, sampler, orthogonal_to)
        if orthogonal_to:
            candidate = _orthogonalize(candidate, orthogonal_to)
            candidate /= np.linalg.norm(candidate)
        e_candidate = rayleigh_quotient(H, candidate)
        if e_candidate < energy - noise:
            state, energy = candidate, e_candidate
            trace.append((iteration, energy, gamma))
            gain = accepted[-1] - energy
            accepted.append(energy)
            if gain >= cfg.energy_tol:
                gamma = min(gamma * cfg.gamma_grow, cfg.gamma_initial)
            else:
                # Repeating the same spin move can creep toward a non-eigenvector
                # at fixed gamma; a tiny gain means the scale is too coarse.
                gamma *= cfg.gamma_shrink
            if len(accepted) > 5 and accepted[-6] - accepted[-1] < cfg.energy_tol:
                reason = "energy_tol"
                break
            if gamma < cfg.gamma_min:
                reason = "gamma_min"
                break
        else:
            gamma *= cfg.gamma_shrink
            if gamma < cfg.gamma_min:
                reason = "gamma_min"
                break
    converged = reason != "max_outer_iters"
    if not converged:
        logger.warning("solve_lowest stopped after %d iterations without converging", iteration)
    return EigenpairEstimate(energy, state, iteration, trace, converged, reason)


def deflate(H, found_states: Sequence[np.ndarray], w: float, ortho_tol: float = 1e-8) -> np.ndarray:
    """``H + w sum_j |psi_j><psi_j|``: lifts every found state by ``w``, leaves the rest alone."""
    H = as_symmetric(H)
    if not w > 0:
        raise ParameterError(f"deflation weight must be positive, got {w}")
    if not found_states:
        return H.copy()
    V = np.column_stack([np.asarray(v, dtype=float) for v in found_states])
    if V.shape[0] != len(H):
        raise ParameterError("found states must match the matrix order")
    if np.max(np.abs(V.T @ V - np.eye(V.shape[1]))) > ortho_tol:
        raise ParameterError("found states must be orthonormal")
    D = H + w * (V @ V.T)
    # Symmetrize exactly; V @ V.T can differ from its transpose in the last bit.
    return (D + D.T) / 2


def solve_spectrum(H, sampler: Sampler, cfg: EigensolverConfig | None = None) -> SpectrumResult:
    cfg = cfg or EigensolverConfig()
    H = as_symmetric(H)
    lower, upper = gershgorin_bounds(H)
    w = upper - lower
    if w <= 0:
        # H is a multiple of the identity; any positive lift separates levels.
        w = 1.0
    found: list[np.ndarray] = []
    pairs = []
    for level in range(len(H)):
        Hd = deflate(H, found, w, cfg.ortho_tol)
        pair = solve_lowest(Hd, sampler, cfg, orthogonal_to=found)
        pair.energy = rayleigh_quotient(H, pair.state)
        logger.debug("level %d: E=%.12g after %d iterations (%s)",
                     level, pair.energy, pair.iterations, pair.stop_reason)
        found.append(pair.state)
        pairs.append(pair)
    pairs.sort(key=lambda p: p.energy)
    return SpectrumResult(pairs, w)
