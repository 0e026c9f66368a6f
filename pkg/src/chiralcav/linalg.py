"""Dense complex linear-algebra kernels shared by every simulation module.

Everything here works on plain ``numpy.ndarray`` matrices (complex128).  The
composite Hilbert space tops out at 900x900 for the truncations used in this
project, so dense kernels are both simpler and fast enough.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg


def dag(m: np.ndarray) -> np.ndarray:
    """Adjoint (conjugate transpose)."""
    return m.conj().T


def is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True when max|m - m†| is below tol relative to the largest entry."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    return float(np.max(np.abs(m - dag(m)))) <= tol * scale


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i, j) of the result equals a[i, j] * b."""
    return np.kron(a, b)


def mat_exp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a square matrix.

    Uses scaling-and-squaring with a Pade core.  Eigendecomposition-based
    exponentials are deliberately avoided: the coupled-cavity Hamiltonian is
    non-normal for asymmetric couplings and diagonalizing it can be badly
    conditioned.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"mat_exp requires a square matrix, got shape {a.shape}")
    return scipy.linalg.expm(a)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values of a (any shape), sorted descending."""
    return np.linalg.svd(np.asarray(a), compute_uv=False)


def trace_norm(a: np.ndarray) -> float:
    """Trace norm (sum of singular values) of a square matrix.

    Hermitian inputs take the cheaper eigenvalue route; their singular values
    are the absolute eigenvalues, so the result is identical.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"trace_norm requires a square matrix, got shape {a.shape}")
    if is_hermitian(a):
        return float(np.sum(np.abs(np.linalg.eigvalsh(a))))
    return float(np.sum(singular_values(a)))
