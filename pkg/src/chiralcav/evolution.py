"""Time evolution of the raw density matrix under the non-Hermitian master equation.

The equation of motion is

    d rho / dt = -i(H+ rho - rho H+) - i(H- rho + rho H-) = -i(H rho - rho H†),

with H+ and H- the Hermitian and anti-Hermitian halves of H.  The raw
(unnormalized) state is evolved as-is; normalization happens only when
observables are read out.

The equation is linear, so the classical fixed-step RK4 update collapses to a
constant matrix: one RK4 step of y' = G y is exactly y <- T4(dt*G) y with T4
the degree-4 Taylor polynomial.  ``integrate`` factors the (positive
semidefinite) initial state into pure columns, propagates them one-sidedly
with that matrix raised to the sampling stride, and reassembles rho at each
sample.  This is algebraically the same iteration as stepping the four-stage
scheme and keeps the cost per step at a matrix-vector product instead of
eight matrix-matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .linalg import dag, mat_exp
from .operators import HamiltonianSpec, TwoModeOperators, build_operators

TRACE_BLOWUP_LIMIT = 1e12
PSD_TOLERANCE = 1e-10
TRACE_IMAG_TOL = 1e-10
UNIT_TRACE_TOL = 1e-8


@dataclass(frozen=True)
class EvolutionConfig:
    """Time grid and physical parameters for one trajectory."""

    spec: HamiltonianSpec
    dt: float = 0.001
    t_max: float = 100.0
    sample_every: int = 100

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.t_max < self.dt:
            raise ValueError(f"t_max must be at least dt, got {self.t_max}")
        if self.sample_every < 1:
            raise ValueError(f"sample_every must be at least 1, got {self.sample_every}")

    @property
    def n_samples(self) -> int:
        """Number of post-t=0 samples on the trajectory."""
        return int(round(self.t_max / (self.dt * self.sample_every)))


@dataclass(frozen=True)
class TrajectoryState:
    """One raw sample: time, unnormalized rho and its (real) trace."""

    t: float
    rho_raw: np.ndarray
    trace_raw: float


def rhs(rho: np.ndarray, ops: TwoModeOperators) -> np.ndarray:
    """Master-equation right-hand side for a raw density matrix."""
    rho = np.asarray(rho)
    if rho.shape != ops.h.shape:
        raise ValueError(f"state shape {rho.shape} does not match operators {ops.h.shape}")
    commutator = ops.h_plus @ rho - rho @ ops.h_plus
    anticommutator = ops.h_minus @ rho + rho @ ops.h_minus
    return -1j * (commutator + anticommutator)


def rk4_step(y: np.ndarray, dt: float, deriv: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """One classical four-stage Runge-Kutta step for y' = deriv(y)."""
    k1 = deriv(y)
    k2 = deriv(y + 0.5 * dt * k1)
    k3 = deriv(y + 0.5 * dt * k2)
    k4 = deriv(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step_matrix(generator: np.ndarray, dt: float) -> np.ndarray:
    """The one-step RK4 update matrix for the linear system y' = G y.

    For an autonomous linear system the four-stage scheme reduces to the
    degree-4 Taylor polynomial of exp(dt*G); applying this matrix repeatedly
    is exactly the RK4 iteration.
    """
    x = dt * np.asarray(generator)
    x2 = x @ x
    x3 = x2 @ x
    x4 = x2 @ x2
    return np.eye(x.shape[0], dtype=np.complex128) + x + x2 / 2.0 + x3 / 6.0 + x4 / 24.0


def stride_propagator(ops: TwoModeOperators, dt: float, sample_every: int) -> np.ndarray:
    """RK4 one-step matrix for -iH, raised to the sampling stride."""
    step = rk4_step_matrix(-1j * ops.h, dt)
    return np.linalg.matrix_power(step, sample_every)


def pure_factors(rho: np.ndarray, tol: float = PSD_TOLERANCE) -> np.ndarray:
    """Factor a PSD matrix as Psi @ Psi† with one weighted column per eigenvalue.

    Raises when rho has an eigenvalue below -tol (not a density matrix).
    """
    rho = np.asarray(rho)
    hermitized = 0.5 * (rho + dag(rho))
    eigenvalues, eigenvectors = np.linalg.eigh(hermitized)
    if float(eigenvalues.min()) < -tol:
        raise ValueError(
            f"initial state is not positive semidefinite (min eigenvalue {eigenvalues.min():.3e})"
        )
    keep = eigenvalues > max(float(eigenvalues.max()), 1.0) * 1e-14
    return eigenvectors[:, keep] * np.sqrt(eigenvalues[keep])


def _check_sample(rho: np.ndarray, t: float) -> float:
    if not np.all(np.isfinite(rho)):
        raise RuntimeError(f"non-finite density matrix at t={t:g}")
    trace = complex(np.trace(rho))
    if abs(trace.imag) > TRACE_IMAG_TOL * max(1.0, abs(trace.real)):
        raise RuntimeError(f"trace developed an imaginary part {trace.imag:.3e} at t={t:g}")
    if trace.real <= 0.0:
        raise RuntimeError(f"nonpositive trace {trace.real:.3e} at t={t:g}")
    if trace.real > TRACE_BLOWUP_LIMIT:
        raise RuntimeError(f"trace blew up to {trace.real:.3e} at t={t:g}")
    return trace.real


def _propagate(
    factors: np.ndarray, first_rho: np.ndarray, cfg: EvolutionConfig, ops: TwoModeOperators
) -> Iterator[TrajectoryState]:
    yield TrajectoryState(0.0, first_rho, _check_sample(first_rho, 0.0))
    stride = stride_propagator(ops, cfg.dt, cfg.sample_every)
    dt_sample = cfg.dt * cfg.sample_every
    psi = factors
    for k in range(1, cfg.n_samples + 1):
        t = k * dt_sample
        psi = stride @ psi
        rho = psi @ dag(psi)
        yield TrajectoryState(t, rho, _check_sample(rho, t))


def integrate(
    rho0: np.ndarray, cfg: EvolutionConfig, ops: TwoModeOperators | None = None
) -> Iterator[TrajectoryState]:
    """Evolve a unit-trace PSD density matrix, yielding one raw sample per stride.

    Samples land on t = k * dt * sample_every, starting with the initial state
    at t = 0.  Aborts with RuntimeError (naming the failing time) on blow-up
    or non-finite entries.
    """
    if ops is None:
        ops = build_operators(cfg.spec)
    rho0 = np.asarray(rho0, dtype=np.complex128)
    if rho0.shape != ops.h.shape:
        raise ValueError(f"state shape {rho0.shape} does not match operators {ops.h.shape}")
    if abs(complex(np.trace(rho0)) - 1.0) > UNIT_TRACE_TOL:
        raise ValueError(f"initial state must have unit trace, got {np.trace(rho0):.12g}")
    return _propagate(pure_factors(rho0), rho0.copy(), cfg, ops)


def integrate_ket(
    psi0: np.ndarray, cfg: EvolutionConfig, ops: TwoModeOperators | None = None
) -> Iterator[TrajectoryState]:
    """Same trajectory as ``integrate`` for a pure initial state given as a ket."""
    if ops is None:
        ops = build_operators(cfg.spec)
    psi0 = np.asarray(psi0, dtype=np.complex128).reshape(-1)
    if psi0.size != ops.h.shape[0]:
        raise ValueError(f"ket length {psi0.size} does not match operators {ops.h.shape}")
    if abs(float(np.linalg.norm(psi0)) - 1.0) > UNIT_TRACE_TOL:
        raise ValueError("initial ket must be normalized")
    factors = psi0[:, None]
    return _propagate(factors, np.outer(psi0, psi0.conj()), cfg, ops)


def closed_form_propagate(rho0: np.ndarray, t: float, ops: TwoModeOperators) -> np.ndarray:
    """Exact solution exp(-iHt) rho0 exp(+iH†t) of the master equation.

    Serves as the independent oracle for the RK4 path.
    """
    u = mat_exp(-1j * t * ops.h)
    return u @ np.asarray(rho0) @ dag(u)


def normalize(state: TrajectoryState) -> np.ndarray:
    """Unit-trace density matrix rho_raw / Tr(rho_raw)."""
    if state.trace_raw <= 0.0:
        raise ValueError(f"cannot normalize state with trace {state.trace_raw:.3e}")
    return state.rho_raw / state.trace_raw


def expectation(rho_raw: np.ndarray, q: np.ndarray) -> complex:
    """Tr(rho q) / Tr(rho), evaluated without normalizing rho first."""
    rho_raw = np.asarray(rho_raw)
    q = np.asarray(q)
    if rho_raw.shape != q.shape:
        raise ValueError(f"shape mismatch: state {rho_raw.shape}, observable {q.shape}")
    trace = complex(np.trace(rho_raw))
    if abs(trace) < 1e-300:
        raise ValueError("state has zero trace")
    return complex(np.einsum("ij,ji->", rho_raw, q)) / trace
