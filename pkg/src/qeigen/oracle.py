"""Exact diagonalization by cyclic Jacobi rotations, plus state-comparison helpers.

This module deliberately avoids LAPACK so that it stays an independent check
on the eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError
from .lattice import as_symmetric

JACOBI_MAX_ORDER = 512
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray  # column k pairs with values[k]

    def clusters(self, rel_gap: float = 1e-8) -> list[list[int]]:
        """Group indices of eigenvalues closer than ``rel_gap * ||H||`` into degenerate clusters."""
        scale = np.max(np.abs(self.values)) or 1.0
        groups = [[0]]
        for k in range(1, len(self.values)):
            if self.values[k] - self.values[k - 1] < rel_gap * scale:
                groups[-1].append(k)
            else:
                groups.append([k])
        return groups

    def cluster_of(self, k: int, rel_gap: float = 1e-8) -> np.ndarray:
        """Orthonormal basis (as columns) of the degenerate eigenspace containing level ``k``."""
        for group in self.clusters(rel_gap):
            if k in group:
                return self.vectors[:, group]
        raise IndexError(k)


def jacobi_eigen(H, tol: float = 1e-12) -> EigenDecomposition:
    A = as_symmetric(H).copy()
    n = len(A)
    if n > JACOBI_MAX_ORDER:
        raise ParameterError(f"order {n} exceeds the Jacobi oracle limit of {JACOBI_MAX_ORDER}")
    V = np.eye(n)
    norm = np.linalg.norm(A)
    threshold = tol * norm

    off_mask = ~np.eye(n, dtype=bool)

    def off_norm():
        return np.sqrt(np.sum(A[off_mask] ** 2))

    for _ in range(JACOBI_MAX_SWEEPS):
        if off_norm() <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                # Rotation angle that zeroes A[p, q]; the smaller root keeps |theta| <= pi/4.
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau == 0:
                    t = 1.0
                elif abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * Vp - s * Vq
                V[:, q] = s * Vp + c * Vq
    else:
        if off_norm() > threshold:
            raise NumericalError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    values = np.diag(A).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], V[:, order])


def _check_unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ParameterError(f"{name} must be normalized")
    return v


def cosine_similarity(a, b) -> float:
    """``|a . b|`` for two unit vectors."""
    a = _check_unit(a, "a")
    b = _check_unit(b, "b")
    return float(min(abs(a @ b), 1.0))


def subspace_overlap(a, basis) -> float:
    """Norm of the projection of unit vector ``a`` onto the span of orthonormal ``basis``.

    ``basis`` is either a sequence of vectors or a matrix whose columns are the
    basis vectors (as returned by :meth:`EigenDecomposition.cluster_of`).
    """
    a = _check_unit(a, "a")
    if isinstance(basis, (list, tuple)):
        B = np.column_stack([np.asarray(b, dtype=float) for b in basis])
    else:
        B = np.asarray(basis, dtype=float)
        if B.ndim == 1:
            B = B[:, None]
    if B.shape[0] != len(a):
        raise ParameterError("basis vectors must have the same length as a")
    gram = B.T @ B
    if not np.allclose(gram, np.eye(B.shape[1]), atol=1e-10):
        raise ParameterError("basis must be orthonormal")
    return float(min(np.linalg.norm(B @ (B.T @ a)), 1.0))
