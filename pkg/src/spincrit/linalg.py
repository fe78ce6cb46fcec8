"""Dense Hermitian linear algebra for two-qubit states and small rings."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_MAX_DIM = 16


class NotPositiveSemidefiniteError(ValueError):
    def __init__(self, eigenvalue: float):
        self.eigenvalue = eigenvalue
        super().__init__(f"matrix has eigenvalue {eigenvalue:.3e} below the tolerance")


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns


def check_hermitian(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    resid = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if resid > tol * max(1.0, float(np.max(np.abs(h)))):
        raise ValueError(f"matrix is not Hermitian (residual {resid:.3e})")
    return h


def _jacobi(a: np.ndarray, max_sweeps: int = 60):
    """Cyclic Jacobi for a complex Hermitian matrix; returns (eigenvalues, V)."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(float(np.max(np.abs(a))), np.finfo(float).tiny)
    upper = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        if np.max(np.abs(a[upper]), initial=0.0) <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # phase-align column q, then the real symmetric rotation
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = [p, q]
                a[:, cols] = a[:, cols] @ g
                a[cols, :] = g.conj().T @ a[cols, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, cols] = v[:, cols] @ g
    return np.diag(a).real.copy(), v


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    vecs = vecs.copy()
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            lead = col[nz[0]]
            vecs[:, k] = col * (abs(lead) / lead)
    return vecs


def eigh(h) -> SpectralDecomposition:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.

    Each eigenvector is rephased so its first non-negligible component is
    real and positive. Matrices up to 16x16 go through cyclic Jacobi; larger
    ones through LAPACK.
    """
    h = check_hermitian(h)
    if h.shape[0] <= JACOBI_MAX_DIM:
        w, v = _jacobi(h)
    else:
        w, v = np.linalg.eigh(h)
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]
    v = _fix_phases(v)
    if np.isrealobj(h) and np.all(np.abs(v.imag) < 1e-14):
        v = v.real
    return SpectralDecomposition(w, v)


def psd_sqrt(rho, neg_tol: float = 1e-10) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-neg_tol, 0)`` are clipped to zero; anything more
    negative raises :class:`NotPositiveSemidefiniteError`.
    """
    w, v = eigh(rho)
    if w[0] < -neg_tol:
        raise NotPositiveSemidefiniteError(float(w[0]))
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return 0.5 * (root + root.conj().T)


def partial_trace(rho, keep: str, d_a: int, d_b: int) -> np.ndarray:
    """Reduce a state on ``A (x) B`` to subsystem ``keep`` ("A" or "B")."""
    rho = np.asarray(rho)
    if rho.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"shape {rho.shape} does not match d_A*d_B = {d_a * d_b}")
    r = rho.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
