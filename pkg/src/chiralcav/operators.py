"""Operators on the truncated two-mode Fock space.

Two identical cavities, A and B, exchange single photons through a chiral
mirror.  The A->B hop carries the coupling g*r and the B->A hop carries g, so
any r != 1 makes the Hamiltonian non-Hermitian even though both couplings are
real.  Cavity A is always the first tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import dag, kron

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianSpec:
    """Physical parameters of the coupled-cavity system.

    omega0 is the common resonance frequency (the time unit is 1/omega0 when
    omega0 = 1), g the base coupling strength and r the dimensionless
    non-reciprocity ratio.  dim is the per-mode Fock truncation.
    """

    omega0: float = 1.0
    g: float = 0.1
    r: float = 1.0
    dim: int = 25

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError(f"dim must be at least 2, got {self.dim}")
        if self.g < 0:
            raise ValueError(f"g must be nonnegative, got {self.g}")
        if self.r <= 0:
            raise ValueError(f"r must be positive, got {self.r}")

    @property
    def g_ab(self) -> float:
        """Coupling of the photon hop from cavity A into cavity B."""
        return self.g * self.r

    @property
    def g_ba(self) -> float:
        return self.g


@dataclass(frozen=True)
class TwoModeOperators:
    """The fixed operator set on the composite dim^2-dimensional space.

    sx2/sy2/sz2 are the cached squares of the pseudo-spin components; they are
    needed for every variance sample, so they are built once here.
    """

    spec: HamiltonianSpec
    a: np.ndarray
    b: np.ndarray
    n_total: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    splus: np.ndarray
    sminus: np.ndarray
    h: np.ndarray
    h_plus: np.ndarray
    h_minus: np.ndarray
    sx2: np.ndarray
    sy2: np.ndarray
    sz2: np.ndarray

    @property
    def dim(self) -> int:
        """Per-mode truncation dimension."""
        return self.spec.dim


def annihilation(dim: int) -> np.ndarray:
    """Single-mode annihilation operator on a dim-level truncated Fock space.

    Matrix elements a[n-1, n] = sqrt(n) in the number basis |0> .. |dim-1>.
    """
    if dim < 2:
        raise ValueError(f"dim must be at least 2, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(np.complex128)


def split(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a square matrix into its Hermitian and anti-Hermitian parts.

    h_plus = (h + h†)/2; h_minus is computed as h - h_plus so that the pair
    sums back to h exactly, entry for entry.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"split requires a square matrix, got shape {h.shape}")
    h_plus = 0.5 * (h + dag(h))
    h_minus = h - h_plus
    return h_plus, h_minus


def excitation_projector(dim: int, max_total: int) -> np.ndarray:
    """Projector onto two-mode basis states with n_a + n_b <= max_total.

    Truncation breaks the spin algebra and related operator identities only in
    the boundary excitation sectors; restricting checks to this subspace keeps
    them exact.
    """
    n = np.arange(dim)
    keep = (n[:, None] + n[None, :]) <= max_total
    return np.diag(keep.reshape(-1).astype(np.complex128))


def build_operators(spec: HamiltonianSpec) -> TwoModeOperators:
    """Construct all composite-space operators for the given parameters."""
    a1 = annihilation(spec.dim)
    eye = np.eye(spec.dim, dtype=np.complex128)
    a = kron(a1, eye)  # cavity A is the first tensor factor
    b = kron(eye, a1)
    ad, bd = dag(a), dag(b)

    n_total = ad @ a + bd @ b
    sx = 0.5 * (ad @ b + bd @ a)
    sy = -0.5j * (ad @ b - bd @ a)
    sz = 0.5 * (ad @ a - bd @ b)

    # splus/sminus are labelled by which coupling they carry in the
    # Hamiltonian (g_ab and g_ba respectively).  With the sx/sy definitions
    # above, the spin-raising combination sx + i*sy equals sminus, not splus:
    # the coupling labels track the photon-hop direction, not the Sz ladder.
    splus = a @ bd
    sminus = dag(splus)

    h = spec.omega0 * (ad @ a + bd @ b) + spec.g_ab * (a @ bd) + spec.g_ba * (ad @ b)
    h_from_spins = spec.omega0 * n_total + spec.g_ab * splus + spec.g_ba * sminus
    mismatch = float(np.max(np.abs(h - h_from_spins)))
    if mismatch > HERMITICITY_TOL:
        raise AssertionError(
            f"mode-operator and pseudo-spin Hamiltonian forms disagree by {mismatch:.3e}"
        )

    h_plus, h_minus = split(h)

    return TwoModeOperators(
        spec=spec,
        a=a,
        b=b,
        n_total=n_total,
        sx=sx,
        sy=sy,
        sz=sz,
        splus=splus,
        sminus=sminus,
        h=h,
        h_plus=h_plus,
        h_minus=h_minus,
        sx2=sx @ sx,
        sy2=sy @ sy,
        sz2=sz @ sz,
    )
