"""Quantum-resource measures for two-qubit states.

* l1-norm coherence: sum of |off-diagonal| entries in the computational
  basis, range [0, 3] for two qubits.

* Concurrence: max(0, l1 - l2 - l3 - l4) over the decreasingly sorted
  square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).

* Quantum discord, measured on subsystem A: mutual information
  I = S(A) + S(B) - S(AB) minus the classical correlation

      C_A = sup_{theta, phi} [ S(B) - sum_i p_i S(B | outcome i) ],

  the supremum running over projective measurements along the Bloch
  direction (sin t cos f, sin t sin f, cos t) on A.  The optimizer is a
  64x64 coarse grid over (theta, phi) followed by Nelder-Mead polish
  from the five best cells; the objective is smooth in the two angles,
  so grid-plus-polish avoids local maxima without closed-form special
  cases.  All entropies are base-2.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import partial_trace, von_neumann_entropy
from .model import SIGMA_Y, kron

GRID_N = 64
POLISH_STARTS = 5


def l1_coherence(rho):
    """Sum of absolute off-diagonal entries in the computational basis."""
    rho = np.asarray(rho)
    return float(np.sum(np.abs(rho)) - np.sum(np.abs(np.diag(rho))))


def concurrence(rho):
    """Two-qubit entanglement monotone from the spin-flipped spectrum."""
    rho = np.asarray(rho, dtype=complex)
    yy = kron(SIGMA_Y, SIGMA_Y)
    prod = rho @ yy @ rho.conj() @ yy
    ev = np.linalg.eigvals(prod).real
    lams = np.sqrt(np.clip(ev, 0.0, None))
    lams.sort()
    return float(max(0.0, lams[3] - lams[2] - lams[1] - lams[0]))


@dataclass
class MeasurementDirection:
    """Bloch angles of the projective measurement axis."""

    theta: float
    phi: float

    def axis(self):
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])


@dataclass
class DiscordResult:
    discord: float
    classical_correlation: float
    mutual_information: float
    optimal_direction: MeasurementDirection
    optimizer_evals: int


def _projector_pairs(theta, phi):
    """(N,2,2,2) array of the +/- projectors for angle arrays."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    st, ct = np.sin(theta), np.cos(theta)
    nx, ny, nz = st * np.cos(phi), st * np.sin(phi), ct
    pairs = np.empty((theta.size, 2, 2, 2), dtype=complex)
    for k, sign in enumerate((1.0, -1.0)):
        pairs[:, k, 0, 0] = 0.5 * (1.0 + sign * nz)
        pairs[:, k, 1, 1] = 0.5 * (1.0 - sign * nz)
        pairs[:, k, 0, 1] = 0.5 * sign * (nx - 1j * ny)
        pairs[:, k, 1, 0] = 0.5 * sign * (nx + 1j * ny)
    return pairs


def _conditional_entropy(r4, theta, phi):
    """Average post-measurement entropy of B for angle arrays (vectorized).

    r4 is rho reshaped to (2, 2, 2, 2) as [a, b, a', b'].  For a
    projector E on A the unnormalized conditional of B is
    Tr_A[(E x 1) rho] = einsum('im,mkil->kl', E, r4).
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    e00 = 0.5 * (1.0 + np.cos(theta))
    e01 = 0.5 * np.sin(theta) * np.exp(-1j * phi)
    e10 = e01.conj()
    e11 = 1.0 - e00
    # only the (0,0), (0,1), (1,1) entries of the 2x2 conditional matter
    out = np.zeros(theta.shape)
    plus = []
    for k, l in ((0, 0), (0, 1), (1, 1)):
        plus.append(
            e00 * r4[0, k, 0, l]
            + e01 * r4[1, k, 0, l]
            + e10 * r4[0, k, 1, l]
            + e11 * r4[1, k, 1, l]
        )
    rho_b = r4[0, :, 0, :] + r4[1, :, 1, :]
    minus = [rho_b[0, 0] - plus[0], rho_b[0, 1] - plus[1], rho_b[1, 1] - plus[2]]
    for m00, m01, m11 in (plus, minus):
        a = m00.real
        d = m11.real
        prob = a + d
        half = 0.5 * (a + d)
        gap = np.sqrt(np.clip(0.25 * (a - d) ** 2 + np.abs(m01) ** 2, 0.0, None))
        for lam in (half + gap, half - gap):
            lam = np.clip(lam, 0.0, None)
            mask = lam > 0.0
            # p_i * S(rho_B|i): the p_i cancels one normalization power,
            # leaving -lam log2(lam/p) summed over the two eigenvalues
            term = np.zeros_like(lam)
            term[mask] = -lam[mask] * np.log2(lam[mask] / prob[mask])
            out += term
    return out


def _scalar_objective(r4):
    """Same conditional entropy as a fast scalar callable for the polish.

    M+[k,l] is a fixed linear combination of four 2x2 slices of r4, so
    the slices are lifted to plain complex numbers once and each
    evaluation is a handful of scalar operations; M- = rho_B - M+.
    """
    sl = [
        [complex(r4[m, k, i, l]) for (k, l) in ((0, 0), (0, 1), (1, 0), (1, 1))]
        for (m, i) in ((0, 0), (1, 0), (0, 1), (1, 1))
    ]
    a_, b_, c_, d_ = sl
    rb = [a_[j] + d_[j] for j in range(4)]  # rho_B entries (trace over A)
    log2 = math.log(2.0)

    def half_term(m00, m01, m11):
        a = m00.real
        d = m11.real
        p = a + d
        if p <= 0.0:
            return 0.0
        gap = math.sqrt(max(0.25 * (a - d) ** 2 + abs(m01) ** 2, 0.0))
        out = 0.0
        for lam in (0.5 * p + gap, 0.5 * p - gap):
            if lam > 0.0:
                out -= lam * math.log(lam / p) / log2
        return out

    def objective(x):
        theta, phi = x
        ct = math.cos(theta)
        st = math.sin(theta)
        e00 = 0.5 * (1.0 + ct)
        e11 = 0.5 * (1.0 - ct)
        e01 = 0.5 * st * complex(math.cos(phi), -math.sin(phi))
        e10 = e01.conjugate()
        m = [e00 * a_[j] + e01 * b_[j] + e10 * c_[j] + e11 * d_[j] for j in range(4)]
        total = half_term(m[0], m[1], m[3])
        total += half_term(rb[0] - m[0], rb[1] - m[1], rb[3] - m[3])
        return total

    return objective


def quantum_discord(rho, measure="A"):
    """Discord, classical correlation, and mutual information in bits.

    measure "A" (default) projects on the first qubit, matching the
    definition used throughout; "B" is a diagnostic that projects on the
    second qubit instead.
    """
    rho = np.asarray(rho, dtype=complex)
    if measure == "B":
        rho = rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    elif measure != "A":
        raise ValueError(f"measure must be 'A' or 'B', got {measure!r}")
    rho_a = partial_trace(rho, "A")
    rho_b = partial_trace(rho, "B")
    s_a = von_neumann_entropy(rho_a)
    s_b = von_neumann_entropy(rho_b)
    s_ab = von_neumann_entropy(rho)
    mutual = s_a + s_b - s_ab

    r4 = rho.reshape(2, 2, 2, 2)
    thetas = np.linspace(0.0, np.pi, GRID_N)
    phis = np.linspace(0.0, 2.0 * np.pi, GRID_N, endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    cond = _conditional_entropy(r4, tg.ravel(), pg.ravel())
    evals = tg.size
    best = np.argsort(cond)[:POLISH_STARTS]
    objective = _scalar_objective(r4)

    best_val = float(cond[best[0]])
    best_x = (float(tg.ravel()[best[0]]), float(pg.ravel()[best[0]]))
    for idx in best:
        res = minimize(
            objective,
            x0=[tg.ravel()[idx], pg.ravel()[idx]],
            method="Nelder-Mead",
            options={"xatol": 1e-5, "fatol": 1e-8, "maxiter": 400},
        )
        evals += int(res.nfev)
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = (float(res.x[0]), float(res.x[1]))
    classical = s_b - best_val
    discord = mutual - classical
    if -1e-9 < discord < 0.0:
        discord = 0.0
    theta = best_x[0] % (2.0 * np.pi)
    phi = best_x[1] % (2.0 * np.pi)
    if theta > np.pi:  # fold the redundant half of the sphere back
        theta = 2.0 * np.pi - theta
        phi = (phi + np.pi) % (2.0 * np.pi)
    return DiscordResult(
        discord=float(discord),
        classical_correlation=float(classical),
        mutual_information=float(mutual),
        optimal_direction=MeasurementDirection(theta=theta, phi=phi),
        optimizer_evals=evals,
    )
