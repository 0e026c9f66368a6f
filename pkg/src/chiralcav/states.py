"""Initial-state preparation: Fock, coherent and displaced-squeezed kets.

Cavity A carries the interesting state; cavity B always starts in vacuum.
All kets are returned renormalized on the truncated space, and builders warn
when the requested mean occupation starts crowding the truncation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import dag, mat_exp
from .operators import annihilation

# Warn when |alpha|^2 + sinh^2|eps| exceeds this fraction of the truncation;
# beyond it the occupation tails stop being negligible at the 1e-8 level.
TRUNCATION_WARN_FRACTION = 0.25

COHERENT_DEFICIT_WARN = 1e-8
SQUEEZED_DEFICIT_LIMIT = 1e-6


@dataclass(frozen=True)
class StateSpec:
    """Declarative description of the cavity-A initial state.

    kind selects one of: "fock" (occupation n), "coherent" (amplitude alpha)
    or "squeezed" (amplitude alpha, squeezing parameter epsilon).
    """

    kind: str
    n: int = 1
    alpha: complex = 1.0 + 0.0j
    epsilon: complex = 0.1 + 0.0j

    def __post_init__(self) -> None:
        if self.kind not in ("fock", "coherent", "squeezed"):
            raise ValueError(f"unknown state kind {self.kind!r}")

    def ket(self, dim: int) -> np.ndarray:
        if self.kind == "fock":
            return fock_ket(self.n, dim)
        if self.kind == "coherent":
            return coherent_ket(self.alpha, dim)
        return squeezed_ket(self.alpha, self.epsilon, dim)


def _warn_if_crowded(alpha: complex, epsilon: complex, dim: int) -> None:
    occupation = abs(alpha) ** 2 + np.sinh(abs(epsilon)) ** 2
    if occupation > TRUNCATION_WARN_FRACTION * dim:
        warnings.warn(
            f"mean occupation {occupation:.3g} is large for truncation dim={dim}; "
            "occupation tails may be cut",
            stacklevel=3,
        )


def fock_ket(n: int, dim: int) -> np.ndarray:
    """Number state |n> on a dim-level space."""
    if not 0 <= n < dim:
        raise ValueError(f"Fock occupation n={n} outside the truncated space (dim={dim})")
    ket = np.zeros(dim, dtype=np.complex128)
    ket[n] = 1.0
    return ket


def coherent_ket(alpha: complex, dim: int) -> np.ndarray:
    """Truncated coherent state |alpha>, renormalized.

    Amplitudes follow c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), built by the
    stable recurrence c_n = c_{n-1} * alpha / sqrt(n).  A warning is emitted
    when the truncation cuts more than COHERENT_DEFICIT_WARN of the norm.
    """
    if dim < 2:
        raise ValueError(f"dim must be at least 2, got {dim}")
    _warn_if_crowded(alpha, 0.0, dim)
    ket = np.zeros(dim, dtype=np.complex128)
    ket[0] = 1.0
    for n in range(1, dim):
        ket[n] = ket[n - 1] * alpha / np.sqrt(n)
    ket *= np.exp(-abs(alpha) ** 2 / 2.0)
    norm = float(np.linalg.norm(ket))
    deficit = abs(1.0 - norm**2)
    if deficit > COHERENT_DEFICIT_WARN:
        warnings.warn(
            f"coherent state loses {deficit:.3e} of its norm to truncation at dim={dim}",
            stacklevel=2,
        )
    return ket / norm


def displacement(alpha: complex, dim: int) -> np.ndarray:
    """Single-mode displacement operator D(alpha) = exp(alpha a† - alpha* a)."""
    a = annihilation(dim)
    return mat_exp(alpha * dag(a) - np.conj(alpha) * a)


def squeeze(epsilon: complex, dim: int) -> np.ndarray:
    """Single-mode squeeze operator S(eps) = exp((eps* a^2 - eps a†^2)/2)."""
    a = annihilation(dim)
    ad = dag(a)
    return mat_exp(0.5 * (np.conj(epsilon) * (a @ a) - epsilon * (ad @ ad)))


def squeezed_ket(alpha: complex, epsilon: complex, dim: int) -> np.ndarray:
    """Displaced squeezed state D(alpha) S(epsilon) |0>, renormalized.

    Displacing after squeezing fixes the mean photon number at
    |alpha|^2 + sinh^2(eps); the opposite ordering would not.  Raises when
    the truncation eats more than SQUEEZED_DEFICIT_LIMIT of the norm.
    """
    if dim < 2:
        raise ValueError(f"dim must be at least 2, got {dim}")
    _warn_if_crowded(alpha, epsilon, dim)
    vacuum = fock_ket(0, dim)
    ket = displacement(alpha, dim) @ (squeeze(epsilon, dim) @ vacuum)
    norm = float(np.linalg.norm(ket))
    deficit = abs(1.0 - norm**2)
    if deficit >= SQUEEZED_DEFICIT_LIMIT:
        raise ValueError(
            f"truncation dim={dim} too small for alpha={alpha}, epsilon={epsilon}: "
            f"norm deficit {deficit:.3e}"
        )
    return ket / norm


def product_density(ket_a: np.ndarray, ket_b: np.ndarray) -> np.ndarray:
    """Projector onto ket_a (x) ket_b as a density matrix on the composite space."""
    ket_a = np.asarray(ket_a).reshape(-1)
    ket_b = np.asarray(ket_b).reshape(-1)
    if ket_a.shape != ket_b.shape:
        raise ValueError(
            f"single-mode kets must share a dimension, got {ket_a.shape} and {ket_b.shape}"
        )
    joint = np.kron(ket_a, ket_b)
    return np.outer(joint, joint.conj())
