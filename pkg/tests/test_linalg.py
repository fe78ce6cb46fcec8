import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spincrit.linalg import (
    NotPositiveSemidefiniteError,
    check_hermitian,
    eigh,
    partial_trace,
    psd_sqrt,
)


def _random_hermitian(rng, n, complex_=True):
    a = rng.normal(size=(n, n))
    if complex_:
        a = a + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1), st.booleans())
def test_jacobi_matches_lapack(n, seed, complex_):
    h = _random_hermitian(np.random.default_rng(seed), n, complex_)
    w, v = eigh(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12 * max(1, np.abs(h).max()))
    assert np.allclose(h @ v, v * w, atol=1e-11 * max(1, np.abs(h).max()))
    assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)


def test_ascending_and_phase_fixed(rng):
    h = _random_hermitian(rng, 4)
    w, v = eigh(h)
    assert np.all(np.diff(w) >= 0)
    for k in range(4):
        lead = v[np.flatnonzero(np.abs(v[:, k]) > 1e-12)[0], k]
        assert abs(lead.imag) < 1e-14 and lead.real > 0


def test_real_input_gives_real_vectors(rng):
    h = _random_hermitian(rng, 5, complex_=False)
    assert np.isrealobj(eigh(h).eigenvectors)


def test_degenerate_and_diagonal():
    w, v = eigh(np.diag([2.0, -1.0, 2.0, 0.0]))
    assert list(w) == [-1.0, 0.0, 2.0, 2.0]
    assert np.allclose(np.abs(v), np.eye(4)[:, [1, 3, 0, 2]])


def test_large_matrix_uses_lapack(rng):
    h = _random_hermitian(rng, 20)
    w, _ = eigh(h)
    assert np.allclose(w, np.linalg.eigvalsh(h))


def test_wide_dynamic_range():
    h = np.array([[1e-200, 1e100], [1e100, 1e200]])
    w, v = eigh(h)
    assert np.all(np.isfinite(w)) and np.all(np.isfinite(v))
    assert w[1] == pytest.approx(1e200, rel=1e-12)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        check_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        check_hermitian(np.ones((2, 3)))


class TestSqrt:
    def test_squares_back(self, rng):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = g @ g.conj().T
        root = psd_sqrt(rho)
        assert np.allclose(root @ root, rho, atol=1e-12)
        assert np.all(np.linalg.eigvalsh(root) >= -1e-14)

    def test_clips_tiny_negative(self):
        root = psd_sqrt(np.diag([1.0, -1e-12]))
        assert np.allclose(root, np.diag([1.0, 0.0]))

    def test_raises_on_negative(self):
        with pytest.raises(NotPositiveSemidefiniteError) as info:
            psd_sqrt(np.diag([1.0, -1e-6]))
        assert info.value.eigenvalue == pytest.approx(-1e-6)


class TestPartialTrace:
    def test_product_state(self, rng):
        a = np.diag([0.3, 0.7])
        b = np.array([[0.5, 0.2j], [-0.2j, 0.5]])
        rho = np.kron(a, b)
        assert np.allclose(partial_trace(rho, "A", 2, 2), a)
        assert np.allclose(partial_trace(rho, "B", 2, 2), b)

    def test_unequal_dims(self, rng):
        a = np.diag([0.2, 0.3, 0.5])
        b = np.diag([0.9, 0.1])
        assert np.allclose(partial_trace(np.kron(a, b), "A", 3, 2), a)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4), "C", 2, 2)
        with pytest.raises(ValueError):
            partial_trace(np.eye(4), "A", 2, 3)
