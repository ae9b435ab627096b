"""One-dimensional ionic t1-t2 tight-binding chain with periodic boundaries.

The Hamiltonian is

.. math::

    H = -t_1 \\sum_i (c_i^\\dagger c_{i+1} + h.c.)
        - t_2 \\sum_i (c_i^\\dagger c_{i+2} + h.c.)
        + \\sum_i [\\Delta (-1)^i - \\mu] n_i

on ``L`` sites (0-based, so even sites carry ``+delta``). Matrices are plain
``numpy`` arrays; :func:`as_symmetric` is the single gate that validates them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ParameterError, UsageError

Phase = Literal["metal", "ionic"]


def as_symmetric(H) -> np.ndarray:
    """Return ``H`` as a float64 array after checking it is square, finite and exactly symmetric."""
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] == 0:
        raise ParameterError(f"expected a non-empty square matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise ParameterError("matrix has non-finite entries")
    if not np.array_equal(H, H.T):
        raise ParameterError("matrix is not symmetric")
    return H


@dataclass(frozen=True)
class TightBindingParams:
    L: int
    t1: float = 1.0
    t2: float = 0.0
    delta: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 2:
            raise ParameterError(f"L must be an integer >= 2, got {self.L}")
        if self.L % 2:
            raise ParameterError(f"L must be even for the ionic pattern to close, got {self.L}")
        if self.t2 != 0 and self.L < 6:
            raise ParameterError(
                f"L >= 6 is required when t2 != 0 (next-nearest bonds double-count at L={self.L})"
            )
        for name in ("t1", "t2", "delta", "mu"):
            if not np.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")

    def phase(self) -> Phase:
        """Which closed-form dispersion applies; raises :class:`UsageError` if neither does."""
        if self.delta == 0 and self.mu == 0:
            return "metal"
        if self.t2 == 0 and self.mu == 0:
            return "ionic"
        raise UsageError(
            "no closed-form dispersion for these parameters "
            "(metal needs delta=mu=0, ionic needs t2=mu=0); use the 'spectrum' experiment"
        )


def build_tight_binding(params: TightBindingParams) -> np.ndarray:
    L = params.L
    H = np.zeros((L, L))
    for i in range(L):
        j = (i + 1) % L
        H[i, j] -= params.t1
        H[j, i] -= params.t1
        if params.t2 != 0:
            j = (i + 2) % L
            H[i, j] -= params.t2
            H[j, i] -= params.t2
        H[i, i] = params.delta * (-1) ** i - params.mu
    return H


def exact_dispersion(phase: Phase, k, params: TightBindingParams):
    """Closed-form band energy at momentum ``k`` (lattice constant 1).

    Returns a single energy for ``"metal"`` and a ``(lower, upper)`` pair
    for ``"ionic"``. ``k`` may be an array.
    """
    k = np.asarray(k, dtype=float)
    if phase == "metal":
        if params.delta != 0 or params.mu != 0:
            raise UsageError("metal dispersion requires delta == 0 and mu == 0")
        return -2 * params.t1 * np.cos(k) - 2 * params.t2 * np.cos(2 * k)
    if phase == "ionic":
        if params.t2 != 0 or params.mu != 0:
            raise UsageError("ionic dispersion requires t2 == 0 and mu == 0")
        e = np.sqrt((2 * params.t1 * np.cos(k)) ** 2 + params.delta**2)
        return -e, e
    raise UsageError(f"unknown phase {phase!r}")


def allowed_momenta(phase: Phase, L: int) -> np.ndarray:
    """Momenta quantized by the periodic ring.

    The ionic cell holds two sites, so only ``L/2`` momenta are returned and
    each carries both bands.
    """
    if L < 2 or L % 2:
        raise ParameterError(f"L must be a positive even integer, got {L}")
    if phase == "metal":
        return 2 * np.pi * np.arange(L) / L
    if phase == "ionic":
        if L < 4:
            raise ParameterError("ionic phase needs L >= 4")
        return 2 * np.pi * np.arange(L // 2) / L
    raise UsageError(f"unknown phase {phase!r}")


def dispersion_multiset(params: TightBindingParams, phase: Phase | None = None) -> np.ndarray:
    """All ``L`` closed-form energies, sorted ascending."""
    phase = phase or params.phase()
    k = allowed_momenta(phase, params.L)
    if phase == "metal":
        energies = exact_dispersion(phase, k, params)
    else:
        lower, upper = exact_dispersion(phase, k, params)
        energies = np.concatenate([lower, upper])
    return np.sort(energies)


def gershgorin_bounds(H) -> tuple[float, float]:
    H = as_symmetric(H)
    diag = np.diag(H)
    radius = np.abs(H).sum(axis=1) - np.abs(diag)
    return float(np.min(diag - radius)), float(np.max(diag + radius))
