"""Time evolution: dissipative relaxation and unitary charging.

The open-system dynamics follows

    d rho / dt = -i [H, rho]
                 + sum_k ( C_k rho C_k^dag - (1/2) {C_k^dag C_k, rho} )

with the two collapse operators C1 = sqrt(gamma) sx x 1 and
C2 = sqrt(gamma) 1 x sx.  Trajectories are integrated with fixed-step
classical RK4; the right-hand side is linear and traceless, so RK4
conserves the trace to round-off and the default dt = 1e-3 resolves the
regimes exercised here (gamma <= 0.2, couplings of order 10) comfortably.

Two independent cross-check routes are kept deliberately separate from
the stepper: `lindblad_superoperator` builds the 16x16 generator whose
matrix exponential propagates the column-stacked state exactly, and the
gamma = 0 limit must reproduce plain unitary conjugation.

Charging is closed-system: rho(t) = U(t) rho0 U(t)^dag with the
transverse-field propagator from `model.charging_unitary`.  The
alternative ordering U^dag rho U (a time-reversed convention that some
derivations use) is exposed as well; for this model every reported
metric is identical under the two orderings because the trajectories
are complex conjugates of each other.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import hermiticity_defect
from .model import (
    IDENTITY_2,
    SIGMA_X,
    build_hamiltonian,
    charging_unitary,
    kron,
)

TRACE_DRIFT_LIMIT = 1e-6
EIGENVALUE_FLOOR = -1e-6
DEFAULT_SAMPLES = 1000


@dataclass
class TimeGrid:
    """Uniform integration grid: t0 to t1 in steps of dt."""

    t0: float
    t1: float
    dt: float = 1e-3

    def __post_init__(self):
        self.t0, self.t1, self.dt = float(self.t0), float(self.t1), float(self.dt)
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if self.t1 <= self.t0:
            raise ValueError(f"need t1 > t0, got [{self.t0!r}, {self.t1!r}]")
        if (self.t1 - self.t0) / self.dt > 1e7:
            raise ValueError("grid would exceed 1e7 steps; enlarge dt")

    def n_steps(self):
        return int(round((self.t1 - self.t0) / self.dt))


class TimeSeries:
    """Sampled named metrics over strictly increasing times."""

    def __init__(self, times, columns):
        self.times = np.asarray(times, dtype=float)
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("times must be strictly increasing")
        self.columns = {}
        for name, values in columns.items():
            values = np.asarray(values, dtype=float)
            if values.shape != self.times.shape:
                raise ValueError(f"column {name!r} length {values.shape} != times {self.times.shape}")
            self.columns[name] = values

    def __getitem__(self, name):
        return self.columns[name]


def collapse_operators(p):
    g = np.sqrt(p.gamma)
    return [g * kron(SIGMA_X, IDENTITY_2), g * kron(IDENTITY_2, SIGMA_X)]


def lindblad_rhs(p, rho, h=None, cops=None):
    """Generator applied to one state; Hermitian and traceless output."""
    if h is None:
        h = build_hamiltonian(p)
    if cops is None:
        cops = collapse_operators(p)
    out = -1j * (h @ rho - rho @ h)
    for c in cops:
        cdc = c.conj().T @ c
        out += c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc)
    return out


def lindblad_superoperator(p):
    """16x16 generator on column-stacked states (cross-check route).

    evolve_lindblad results must agree with
    expm(L t) @ rho0.flatten(order="F") reshaped back in Fortran order.
    """
    h = build_hamiltonian(p)
    eye = np.eye(4, dtype=complex)
    sup = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for c in collapse_operators(p):
        cdc = c.conj().T @ c
        sup += np.kron(c.conj(), c) - 0.5 * (np.kron(eye, cdc) + np.kron(cdc.T, eye))
    return sup


class IntegrationAccuracyError(RuntimeError):
    """Raised when a trajectory leaves the valid-state neighbourhood."""


def _check_sample(rho, t):
    drift = abs(np.trace(rho).real - 1.0)
    if drift > TRACE_DRIFT_LIMIT:
        raise IntegrationAccuracyError(
            f"trace drift {drift:.3e} at t={t:.6g} exceeds {TRACE_DRIFT_LIMIT}; reduce dt"
        )
    w_min = float(np.linalg.eigvalsh(rho).min())
    if w_min < EIGENVALUE_FLOOR:
        raise IntegrationAccuracyError(
            f"eigenvalue {w_min:.3e} at t={t:.6g} below {EIGENVALUE_FLOOR}; reduce dt"
        )
    out = 0.5 * (rho + rho.conj().T)
    return out / np.trace(out).real


def evolve_lindblad(p, rho0, grid, n_samples=DEFAULT_SAMPLES):
    """Fixed-step RK4 trajectory of the dissipative dynamics.

    Returns (times, states): times include t0 and t1, states are
    re-Hermitized, trace-renormalized copies checked against the trace
    and positivity guards at every stored sample.
    """
    h = build_hamiltonian(p)
    cops = collapse_operators(p)
    rho = np.array(rho0, dtype=complex)
    n = grid.n_steps()
    stride = max(1, int(np.ceil(n / max(1, n_samples))))
    dt = grid.dt
    times = [grid.t0]
    states = [_check_sample(rho, grid.t0)]
    for i in range(n):
        k1 = lindblad_rhs(p, rho, h, cops)
        k2 = lindblad_rhs(p, rho + 0.5 * dt * k1, h, cops)
        k3 = lindblad_rhs(p, rho + 0.5 * dt * k2, h, cops)
        k4 = lindblad_rhs(p, rho + dt * k3, h, cops)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (i + 1) % stride == 0 or i == n - 1:
            t = grid.t0 + (i + 1) * dt
            times.append(t)
            states.append(_check_sample(rho, t))
    return np.array(times), states


def charge_trajectory(p, rho0, grid, ordering="left", n_samples=DEFAULT_SAMPLES):
    """Unitary charging orbit sampled on the grid's stored times.

    ordering "left" applies U rho U^dag (default); "dagger_left"
    applies U^dag rho U.  Eigenvalues of rho(t) are those of rho0 at
    every sample.
    """
    if ordering not in ("left", "dagger_left"):
        raise ValueError(f"unknown conjugation ordering {ordering!r}")
    rho0 = np.asarray(rho0, dtype=complex)
    n = grid.n_steps()
    stride = max(1, int(np.ceil(n / max(1, n_samples))))
    steps = [0] + [i for i in range(1, n + 1) if i % stride == 0 or i == n]
    times = np.array([grid.t0 + i * grid.dt for i in steps])
    states = []
    for t in times:
        u = charging_unitary(p, t)
        if ordering == "left":
            states.append(u @ rho0 @ u.conj().T)
        else:
            states.append(u.conj().T @ rho0 @ u)
    return times, states


def is_valid_state(rho, herm_tol=1e-9, trace_tol=1e-8, psd_tol=1e-8):
    """Cheap validity probe used by tests and the CLI's sanity checks."""
    if hermiticity_defect(rho) > herm_tol:
        return False
    if abs(np.trace(rho).real - 1.0) > trace_tol:
        return False
    return float(np.linalg.eigvalsh(rho).min()) >= -psd_tol
