import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coherence_flow import backend, linalg
from coherence_flow.errors import NoConvergence, NotHermitian, NotPSD
from coherence_flow.linalg import SIGMA_0, SIGMA_1, SIGMA_3

from .conftest import random_density, random_hermitian, random_unitary

KET0 = np.array([[1, 0], [0, 0]], dtype=complex)
KET1 = np.array([[0, 0], [0, 1]], dtype=complex)


def test_kron_examples():
    np.testing.assert_array_equal(linalg.kron(SIGMA_0, SIGMA_0), np.eye(4))
    np.testing.assert_array_equal(linalg.kron(SIGMA_3, SIGMA_0), np.diag([1, 1, -1, -1]))
    proj = linalg.kron(KET0, KET1)
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    np.testing.assert_array_equal(proj, expected)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
       st.integers(0, 2**32 - 1))
def test_kron_index_formula(ra, ca, rb, cb, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((ra, ca)) + 1j * rng.standard_normal((ra, ca))
    b = rng.standard_normal((rb, cb)) + 1j * rng.standard_normal((rb, cb))
    out = linalg.kron(a, b)
    assert out.shape == (ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    ref = a[i, j] * b[k, l]
                    assert abs(out[i * rb + k, j * cb + l] - ref) <= 1e-14 * (1 + abs(ref))


def test_kron_associative_and_mixed_product(rng):
    a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
    left = linalg.kron(linalg.kron(a, b), c)
    right = linalg.kron(a, linalg.kron(b, c))
    assert np.abs(left - right).max() <= 1e-12
    mixed = linalg.kron(a, b) @ linalg.kron(c, d)
    assert np.abs(mixed - linalg.kron(a @ c, b @ d)).max() <= 1e-10


def test_pauli_constants_are_readonly():
    with pytest.raises(ValueError):
        SIGMA_1[0, 0] = 5


@pytest.mark.parametrize(
    "mat, expected",
    [
        (SIGMA_3, [1.0, -1.0]),
        (np.eye(4) / 4, [0.25] * 4),
        (0.5 * (SIGMA_0 + 0.6 * SIGMA_1 + 0.8 * SIGMA_3), [1.0, 0.0]),
    ],
)
def test_hermitian_eigenvalues_examples(mat, expected):
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(mat), expected, atol=1e-12)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6, 8])
def test_hermitian_eigenvalues_match_numpy(rng, d):
    for _ in range(20):
        h = random_hermitian(rng, d)
        w = linalg.hermitian_eigenvalues(h)
        assert np.all(np.diff(w) <= 0)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(h)[::-1], atol=1e-12)
        assert abs(w.sum() - np.trace(h).real) <= 1e-10


def test_eigh_vectors_diagonalize(rng):
    h = random_hermitian(rng, 6)
    w, v = linalg.hermitian_eigh(h)
    assert np.abs(v.conj().T @ v - np.eye(6)).max() <= 1e-12
    assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() <= 1e-12


def test_eigenvalues_stack_shape(rng):
    hs = np.stack([random_hermitian(rng, 3) for _ in range(5)]).reshape(5, 1, 3, 3)
    assert linalg.hermitian_eigenvalues(hs).shape == (5, 1, 3)


def test_degenerate_and_diagonal_inputs():
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(np.zeros((4, 4))), 0.0)
    np.testing.assert_allclose(linalg.hermitian_eigenvalues(np.diag([3.0, -1.0, 3.0])), [3, 3, -1])


@given(st.integers(0, 2**32 - 1), st.integers(2, 8))
def test_eigenvalues_unitarily_invariant(seed, d):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, d)
    u = random_unitary(rng, d)
    w1 = linalg.hermitian_eigenvalues(h)
    w2 = linalg.hermitian_eigenvalues(u @ h @ u.conj().T)
    assert np.abs(w1 - w2).max() <= 1e-9


def test_not_hermitian_raises():
    with pytest.raises(NotHermitian):
        linalg.hermitian_eigenvalues(np.array([[0, 1], [0, 0]], dtype=complex))


def test_no_convergence_raises(monkeypatch, rng):
    h = random_hermitian(rng, 8)
    w, v, failed = backend.eigh(h[None], max_sweeps=1)
    assert failed == 0

    def stuck(a):
        return backend.get_kernels().eigh(a, max_sweeps=1)

    monkeypatch.setattr(backend, "eigh", stuck)
    with pytest.raises(NoConvergence):
        linalg.hermitian_eigenvalues(h)


def test_psd_sqrt_examples():
    np.testing.assert_allclose(linalg.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2, 3]), atol=1e-12)
    np.testing.assert_allclose(linalg.psd_sqrt(np.eye(2)), np.eye(2), atol=1e-12)
    plus = 0.5 * np.ones((2, 2))
    np.testing.assert_allclose(linalg.psd_sqrt(plus), plus, atol=1e-12)


@pytest.mark.parametrize("rank", [1, 2, 4])
def test_psd_sqrt_squares_back(rng, rank):
    m = random_density(rng, 4, rank)
    s = linalg.psd_sqrt(m)
    assert linalg.is_hermitian(s)
    assert np.all(np.linalg.eigvalsh(s) >= -1e-12)
    assert np.abs(s @ s - m).max() <= 1e-9


def test_psd_sqrt_clamps_tiny_negative_and_rejects_large():
    s = linalg.psd_sqrt(np.diag([1.0, -1e-9]))
    np.testing.assert_allclose(s, np.diag([1.0, 0.0]), atol=1e-15)
    with pytest.raises(NotPSD):
        linalg.psd_sqrt(np.diag([1.0, -1e-6]))


def test_trace_norm_examples(rng):
    assert linalg.trace_norm(SIGMA_3) == pytest.approx(2.0, abs=1e-12)
    assert linalg.trace_norm(random_density(rng, 3)) == pytest.approx(1.0, abs=1e-12)
    assert linalg.trace_norm(np.zeros((3, 3))) == 0.0


def test_trace_norm_hermitian_and_general(rng):
    h = random_hermitian(rng, 5)
    assert abs(linalg.trace_norm(h) - np.abs(np.linalg.eigvalsh(h)).sum()) <= 1e-10
    x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert abs(linalg.trace_norm(x) - np.linalg.svd(x, compute_uv=False).sum()) <= 1e-10


def test_singular_values_keep_small_values_accurate():
    x = np.diag([1.0, 1e-12, 0.0]).astype(complex)
    np.testing.assert_allclose(linalg.singular_values(x), [1.0, 1e-12, 0.0], atol=1e-15)


def test_predicates(rng):
    u = random_unitary(rng, 3)
    assert linalg.is_unitary(u)
    assert not linalg.is_unitary(2 * u)
    assert linalg.is_psd(random_density(rng, 3))
    assert not linalg.is_psd(SIGMA_3)
    assert not linalg.is_hermitian(np.ones((2, 3)))
