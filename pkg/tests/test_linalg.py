import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dipolarqb import (
    ModelParams,
    build_hamiltonian,
    entropy_2x2,
    hermitian_eigen,
    hermiticity_defect,
    matrix_exp,
    partial_trace,
    require_hermitian,
    von_neumann_entropy,
)
from conftest import bell_state, ket00, random_density, random_hermitian


class TestHermitianEigen:
    def test_diagonal_2x2(self):
        dec = hermitian_eigen(np.diag([2.0, -1.0]).astype(complex))
        assert np.allclose(dec.values, [-1.0, 2.0])
        assert dec.order == "ascending"

    def test_pauli_x(self):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        dec = hermitian_eigen(sx)
        assert np.allclose(dec.values, [-1.0, 1.0])
        # vectors are (|0> -+ |1>)/sqrt2 up to phase
        for k, sign in ((0, -1.0), (1, 1.0)):
            v = dec.vectors[:, k]
            expected = np.array([1.0, sign]) / np.sqrt(2.0)
            assert abs(abs(np.vdot(expected, v)) - 1.0) < 1e-12

    def test_model_degenerate_case(self):
        h = build_hamiltonian(ModelParams(delta=1.0))
        dec = hermitian_eigen(h)
        assert np.allclose(dec.values, [-4 / 3, 0.0, 2 / 3, 2 / 3], atol=1e-12)

    def test_descending(self, rng):
        m = random_hermitian(rng)
        dec = hermitian_eigen(m, order="descending")
        assert np.all(np.diff(dec.values) <= 1e-12)

    def test_non_hermitian_rejected(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError, match="1"):
            hermitian_eigen(m)

    def test_reconstruction_many_draws(self, rng):
        # spec asks 1000 trials of eigendecompose-then-reconstruct
        for k in range(1000):
            m = random_hermitian(rng, dim=4 if k % 2 else 2, scale=3.0)
            dec = hermitian_eigen(m)
            assert np.max(np.abs(dec.reconstruct() - m)) < 1e-10
            gram = dec.vectors.conj().T @ dec.vectors
            assert np.max(np.abs(gram - np.eye(m.shape[0]))) < 1e-12

    def test_iter_unpacks(self, rng):
        values, vectors = hermitian_eigen(random_hermitian(rng))
        assert values.shape == (4,) and vectors.shape == (4, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_matrix_exp_inverse_property(seed):
    # exp(A)exp(-A) = 1 degrades like e^(eigenvalue spread) * eps for any
    # floating-point method, so the norm is capped where 1e-9 has headroom
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, scale=5.0)
    norm = np.linalg.norm(a, 2)
    if norm > 7.0:
        a = a * (7.0 / norm)
    prod = matrix_exp(a) @ matrix_exp(-a)
    assert np.max(np.abs(prod - np.eye(4))) < 1e-9


class TestMatrixExp:
    def test_zero(self):
        assert np.allclose(matrix_exp(np.zeros((4, 4))), np.eye(4))

    def test_pauli_rotation(self):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        got = matrix_exp(-1j * (np.pi / 2) * sx)
        assert np.max(np.abs(got - (-1j * sx))) < 1e-12

    def test_diagonal(self):
        got = matrix_exp(np.diag([1.0, -2.0]).astype(complex))
        assert np.allclose(got, np.diag([np.e, np.exp(-2.0)]))

    def test_general_matrix_route(self, rng):
        # non-normal input exercises the fallback path
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        got = matrix_exp(m)
        # Taylor reference
        ref = np.eye(4, dtype=complex)
        term = np.eye(4, dtype=complex)
        for k in range(1, 60):
            term = term @ m / k
            ref = ref + term
        assert np.max(np.abs(got - ref)) < 1e-9


class TestPartialTrace:
    def test_ket00(self):
        assert np.allclose(partial_trace(ket00(), "A"), [[1, 0], [0, 0]])

    def test_bell_keep_b(self):
        assert np.max(np.abs(partial_trace(bell_state(), "B") - np.eye(2) / 2)) < 1e-15

    def test_product_recovers_factor(self, rng):
        ra = random_density(rng, 2)
        rb = random_density(rng, 2)
        rho = np.kron(ra, rb)
        assert np.max(np.abs(partial_trace(rho, "A") - ra)) < 1e-14
        assert np.max(np.abs(partial_trace(rho, "B") - rb)) < 1e-14

    def test_trace_preserved(self, rng):
        for _ in range(100):
            rho = random_density(rng)
            for keep in ("A", "B"):
                red = partial_trace(rho, keep)
                assert abs(np.trace(red) - 1.0) < 1e-14
                assert hermiticity_defect(red) < 1e-14


class TestEntropy:
    def test_pure_state(self):
        assert von_neumann_entropy(ket00()) == 0.0

    def test_maximally_mixed(self):
        assert abs(von_neumann_entropy(np.eye(4) / 4) - 2.0) < 1e-12

    def test_binary(self):
        got = von_neumann_entropy(np.diag([0.75, 0.25]).astype(complex))
        expected = -(0.75 * np.log2(0.75) + 0.25 * np.log2(0.25))
        assert abs(got - expected) < 1e-12
        assert abs(got - 0.8112781244591328) < 1e-12

    def test_unitary_invariance(self, rng):
        for _ in range(50):
            rho = random_density(rng)
            u = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
            s1 = von_neumann_entropy(rho)
            s2 = von_neumann_entropy(u @ rho @ u.conj().T)
            assert abs(s1 - s2) < 1e-10

    def test_trace_violation_rejected(self):
        with pytest.raises(ValueError):
            von_neumann_entropy(np.eye(4) / 2)

    def test_negative_eigenvalue_rejected(self):
        bad = np.diag([1.1, -0.1, 0.0, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            von_neumann_entropy(bad)

    def test_entropy_2x2_matches_dense(self, rng):
        for _ in range(200):
            rho = random_density(rng, 2)
            got = entropy_2x2(rho[0, 0].real, rho[1, 1].real, rho[0, 1])
            assert abs(got - von_neumann_entropy(rho)) < 1e-11


class TestHermiticityChecks:
    def test_defect_value(self):
        m = np.array([[1.0, 1.0 + 2.0j], [1.0, 1.0]], dtype=complex)
        assert abs(hermiticity_defect(m) - 2.0) < 1e-15

    def test_require_hermitian_names_offender(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError, match="charge matrix"):
            require_hermitian(m, name="charge matrix")

    def test_require_hermitian_passes(self, rng):
        require_hermitian(random_hermitian(rng))


def test_eigen_rejects_unknown_order(rng):
    with pytest.raises(ValueError, match="order"):
        hermitian_eigen(random_hermitian(rng), order="sideways")
