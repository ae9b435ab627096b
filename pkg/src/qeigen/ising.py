r"""Ising problems built from quadratic forms over spin vectors.

Energy convention, fixed for every backend:

.. math::

    E(s) = c + \sum_i h_i s_i + \sum_{i<j} J_{ij} s_i s_j, \qquad s_i \in \{-1, +1\}

The two constructors here restrict a continuous minimization of a quadratic
form to spin-valued arguments:

* :func:`binary_ground_problem` minimizes :math:`s^T H s` directly.
* :func:`correction_problem` minimizes :math:`(\psi' + \gamma b)^T A (\psi' + \gamma b)`
  over spin vectors ``b``. The cross terms :math:`2\gamma b^T A \psi'` end up as
  linear fields, i.e. on the diagonal of the equivalent QUBO matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, UsageError
from .lattice import as_symmetric


@dataclass(frozen=True)
class IsingProblem:
    """Linear fields, upper-triangular couplings and a constant offset.

    ``couplings`` maps ``(i, j)`` with ``i < j`` to :math:`J_{ij}`. Zero
    couplings are dropped on construction.
    """

    n: int
    fields: np.ndarray
    couplings: dict[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n}")
        h = np.asarray(self.fields, dtype=float).reshape(-1)
        if h.shape != (self.n,):
            raise ParameterError(f"expected {self.n} fields, got {h.size}")
        h.setflags(write=False)
        object.__setattr__(self, "fields", h)
        clean = {}
        for (i, j), value in self.couplings.items():
            i, j = int(i), int(j)
            if not 0 <= i < j < self.n:
                raise ParameterError(f"coupling key ({i}, {j}) must satisfy 0 <= i < j < {self.n}")
            if value != 0:
                clean[(i, j)] = float(value)
        object.__setattr__(self, "couplings", clean)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_arrays(cls, fields, coupling_matrix, offset=0.0) -> "IsingProblem":
        """Build from a dense matrix; only the strict upper triangle is read."""
        J = np.asarray(coupling_matrix, dtype=float)
        n = J.shape[0]
        rows, cols = np.nonzero(np.triu(J, 1))
        couplings = {(int(i), int(j)): float(J[i, j]) for i, j in zip(rows, cols)}
        return cls(n, fields, couplings, offset)

    def coupling_matrix(self) -> np.ndarray:
        """Dense strictly upper-triangular coupling matrix."""
        J = np.zeros((self.n, self.n))
        for (i, j), value in self.couplings.items():
            J[i, j] = value
        return J

    def energies(self, spins) -> np.ndarray:
        """Vectorized energy of a ``(m, n)`` batch of spin rows."""
        S = np.asarray(spins, dtype=float)
        if S.ndim != 2 or S.shape[1] != self.n:
            raise UsageError(f"expected spin rows of length {self.n}, got shape {S.shape}")
        J = self.coupling_matrix()
        return self.offset + S @ self.fields + np.einsum("ij,ij->i", S @ J, S)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "h": [float(x) for x in self.fields],
            "J": [[i, j, v] for (i, j), v in sorted(self.couplings.items())],
            "offset": self.offset,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IsingProblem":
        couplings = {(int(i), int(j)): float(v) for i, j, v in data.get("J", [])}
        return cls(int(data["n"]), data["h"], couplings, float(data.get("offset", 0.0)))


def check_spins(s, n: int | None = None) -> np.ndarray:
    s = np.asarray(s)
    if s.ndim != 1 or not np.all((s == 1) | (s == -1)):
        raise ParameterError("spin configuration entries must be exactly -1 or +1")
    if n is not None and s.size != n:
        raise UsageError(f"spin configuration has length {s.size}, problem has {n} variables")
    return s.astype(np.int8)


def ising_energy(p: IsingProblem, s) -> float:
    s = check_spins(s, p.n).astype(float)
    energy = p.offset + float(p.fields @ s)
    for (i, j), value in p.couplings.items():
        energy += value * s[i] * s[j]
    return energy


def binary_ground_problem(H) -> IsingProblem:
    """Ising form of ``s^T H s``; the diagonal collapses into the offset since ``s_i**2 == 1``."""
    H = as_symmetric(H)
    return IsingProblem.from_arrays(np.zeros(len(H)), 2 * H, offset=float(np.trace(H)))


def correction_problem(A, psi_prime, gamma: float) -> IsingProblem:
    """Ising form of ``(psi' + gamma b)^T A (psi' + gamma b)`` over spin vectors ``b``."""
    A = as_symmetric(A)
    psi = np.asarray(psi_prime, dtype=float)
    if psi.shape != (len(A),):
        raise ParameterError(f"psi_prime must have length {len(A)}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
        raise ParameterError("psi_prime must be normalized")
    if not gamma > 0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    return _expand(A, psi, gamma)


def _expand(A: np.ndarray, psi: np.ndarray, gamma: float) -> IsingProblem:
    Apsi = A @ psi
    offset = float(psi @ Apsi + gamma**2 * np.trace(A))
    return IsingProblem.from_arrays(2 * gamma * Apsi, 2 * gamma**2 * A, offset)
