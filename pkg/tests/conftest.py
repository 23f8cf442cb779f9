"""Shared helpers for the test suite."""

import numpy as np
import pytest

from dipolarqb import ModelParams


def random_density(rng, dim=4):
    """Random full-rank density matrix (Ginibre construction)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim=4, scale=1.0):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (g + g.conj().T) / 2.0


def random_params(rng, box=5.0, t_lo=0.05, t_hi=10.0):
    return ModelParams(
        delta=rng.uniform(-box, box),
        epsilon=rng.uniform(-box, box),
        dm=rng.uniform(-box, box),
        ksea=rng.uniform(-box, box),
        field=rng.uniform(-box, box),
        temperature=rng.uniform(t_lo, t_hi),
    )


def bell_state():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1.0 / np.sqrt(2.0)
    return np.outer(v, v.conj())


def ket00():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    return rho


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
