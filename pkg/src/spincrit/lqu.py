"""Local quantum uncertainty of two-qubit states.

The closed form takes the top eigenvalue of the 3x3 matrix
``W_ij = tr(sqrt(rho) s_i sqrt(rho) s_j)`` with ``s_i`` a Pauli matrix on
the measured qubit. :func:`lqu_bruteforce` minimises the skew information
directly over a grid of measurement directions and serves as an oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from spincrit.linalg import eigh, psd_sqrt
from spincrit.state import (
    I2,
    PAULIS,
    STATE_NEG_TOL,
    TwoSiteState,
    random_density_matrix,
    random_x_state,
)


@dataclass(frozen=True)
class MeasurementDirection:
    r: tuple[float, float, float]

    def __post_init__(self):
        norm = float(np.linalg.norm(self.r))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"direction must be a unit vector, |r| = {norm}")

    @classmethod
    def normalized(cls, r) -> "MeasurementDirection":
        r = np.asarray(r, dtype=float)
        return cls(tuple(float(v) for v in r / np.linalg.norm(r)))

    @classmethod
    def spherical(cls, theta: float, phi: float) -> "MeasurementDirection":
        return cls.normalized(_direction(theta, phi))


@dataclass(frozen=True, eq=False)
class LquResult:
    u: float
    lambda_max: float
    w: np.ndarray
    optimal_r: MeasurementDirection


def _local_paulis(side: int):
    if side == 0:
        return [np.kron(s, I2) for s in PAULIS]
    if side == 1:
        return [np.kron(I2, s) for s in PAULIS]
    raise ValueError(f"side must be 0 or 1, got {side}")


def _direction(theta, phi):
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def skew_information(s: TwoSiteState, r, side: int = 0) -> float:
    """-1/2 tr([sqrt(rho), K]^2) for K = r.sigma on the measured qubit."""
    if not isinstance(r, MeasurementDirection):
        r = MeasurementDirection(tuple(float(v) for v in r))
    root = psd_sqrt(s.matrix, neg_tol=STATE_NEG_TOL)
    k = sum(c * p for c, p in zip(r.r, _local_paulis(side)))
    comm = root @ k - k @ root
    return float(-0.5 * np.trace(comm @ comm).real)


def w_matrix(s: TwoSiteState, side: int = 0) -> np.ndarray:
    root = psd_sqrt(s.matrix, neg_tol=STATE_NEG_TOL)
    sandwiched = [root @ p for p in _local_paulis(side)]
    w = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            w[i, j] = w[j, i] = np.trace(sandwiched[i] @ sandwiched[j]).real
    return w


def lqu(s: TwoSiteState, side: int = 0) -> LquResult:
    """Closed-form LQU, ``1 - lambda_max(W)``, clipped to [0, 1]."""
    w = w_matrix(s, side)
    vals, vecs = eigh(w)
    lam = float(vals[-1])
    top = np.real(vecs[:, -1])
    return LquResult(
        u=min(1.0, max(0.0, 1.0 - lam)),
        lambda_max=lam,
        w=w,
        optimal_r=MeasurementDirection.normalized(top),
    )


def lqu_bruteforce(
    s: TwoSiteState,
    polar_steps: int = 256,
    azimuthal_steps: int = 256,
    rounds: int = 3,
    side: int = 0,
) -> float:
    """Minimise the skew information over a (theta, phi) grid, then zoom in.

    Each refinement round re-grids a window four cells wide around the
    current best point at the same resolution. Uses LAPACK for sqrt(rho)
    and evaluates every commutator explicitly, sharing nothing with
    :func:`lqu` beyond the state itself. The result is an upper bound on
    the LQU.
    """
    vals, vecs = np.linalg.eigh(s.matrix)
    root = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    comms = np.stack([root @ p - p @ root for p in _local_paulis(side)])

    def scan(thetas, phis):
        tt, pp = np.meshgrid(thetas, phis, indexing="ij")
        dirs = _direction(tt.ravel(), pp.ravel())  # (3, M)
        c = np.einsum("km,kab->mab", dirs, comms)
        # -1/2 tr(C^2) = 1/2 ||C||_F^2 for anti-Hermitian C
        vals = 0.5 * np.sum(np.abs(c) ** 2, axis=(1, 2))
        best = int(np.argmin(vals))  # first minimum: lowest theta, then lowest phi
        i, j = divmod(best, len(phis))
        return float(vals[best]), float(thetas[i]), float(phis[j])

    thetas = np.linspace(0.0, np.pi, polar_steps)
    phis = 2 * np.pi * np.arange(azimuthal_steps) / azimuthal_steps
    best, th, ph = scan(thetas, phis)
    dth, dph = thetas[1] - thetas[0], phis[1] - phis[0]
    for _ in range(rounds):
        lo, hi = max(0.0, th - 2 * dth), min(np.pi, th + 2 * dth)
        thetas = np.linspace(lo, hi, polar_steps)
        if lo == 0.0 or hi == np.pi:
            # near a pole the azimuth is unresolved; keep the full circle
            phis = 2 * np.pi * np.arange(azimuthal_steps) / azimuthal_steps
        else:
            phis = np.linspace(ph - 2 * dph, ph + 2 * dph, azimuthal_steps)
        val, th_new, ph_new = scan(thetas, phis)
        if val < best:
            best, th, ph = val, th_new, ph_new
        dth, dph = thetas[1] - thetas[0], phis[1] - phis[0]
    return best


def compare_random_states(count: int, seed: int, steps: int = 256) -> dict[str, float]:
    """Max |closed form - brute force| over ``count`` random X-states and
    ``count`` random general mixed states drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    worst = {}
    for label, draw in (("x_state", random_x_state), ("mixed", random_density_matrix)):
        diffs = []
        for _ in range(count):
            s = TwoSiteState.from_matrix(draw(rng))
            diffs.append(abs(lqu(s).u - lqu_bruteforce(s, steps, steps)))
        worst[label] = float(max(diffs)) if diffs else 0.0
    return worst
