"""Exact diagonalization of small periodic XY / XYT rings.

Used only as an oracle for the free-fermion correlators. Site ``j`` is the
``j``-th tensor factor (most significant bit of the basis index), and
``|0>`` is spin up (sigma_z = +1).

Two weightings of the field and three-spin terms are supported:

``"dispersion"`` (default)
    H = -sum_j [(1+g)/2 XX + (1-g)/2 YY + lam Z_j + alpha (XZX + YZY)],
    whose single-particle energies are exactly
    eps_k = sqrt((lam - cos x - 2 alpha cos 2x)^2 + g^2 sin^2 x).
``"printed"``
    H = -1/2 sum_j [(1+g) XX + (1-g) YY + lam Z_j + alpha (XZX + YZY)],
    i.e. field and three-spin strengths halved relative to the above.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from spincrit.linalg import eigh
from spincrit.state import CorrelatorSet
from spincrit.xyt import XYTParams, xyt_correlators

N_MAX = 10
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DenseHamiltonian:
    N: int
    model: str
    params: XYTParams
    matrix: np.ndarray


def _pauli_string(ops: dict[int, str], n_sites: int):
    """Action of a Pauli string on basis states: P|b> = phase[b] |target[b]>."""
    basis = np.arange(2**n_sites)
    target = basis.copy()
    phase = np.ones(2**n_sites, dtype=complex)
    for site, op in ops.items():
        bit = (basis >> (n_sites - 1 - site)) & 1
        if op in ("x", "y"):
            target ^= 1 << (n_sites - 1 - site)
        if op == "y":
            phase *= np.where(bit == 0, 1j, -1j)
        elif op == "z":
            phase *= np.where(bit == 0, 1.0, -1.0)
    return target, phase


def _add_term(h, coeff, ops, n_sites):
    target, phase = _pauli_string(ops, n_sites)
    cols = np.arange(2**n_sites)
    np.add.at(h, (target, cols), coeff * phase)


def build_hamiltonian(model: str, p: XYTParams, convention: str = "dispersion") -> DenseHamiltonian:
    model = model.upper()
    if model not in ("XY", "XYT"):
        raise ValueError(f"model must be XY or XYT, got {model!r}")
    n_sites = p.N
    if not 2 <= n_sites <= N_MAX:
        raise ValueError(f"ED supports 2 <= N <= {N_MAX}, got {n_sites}")
    if convention == "dispersion":
        local = 2.0
    elif convention == "printed":
        local = 1.0
    else:
        raise ValueError(f"unknown convention {convention!r}")
    alpha = p.alpha if model == "XYT" else 0.0
    g, lam = p.gamma, p.lam

    h = np.zeros((2**n_sites, 2**n_sites), dtype=complex)
    for j in range(n_sites):
        right, left = (j + 1) % n_sites, (j - 1) % n_sites
        # on a 2-ring the two bonds of a site coincide and are both kept
        _add_term(h, -0.5 * (1 + g), _merge({j: "x"}, {right: "x"}), n_sites)
        _add_term(h, -0.5 * (1 - g), _merge({j: "y"}, {right: "y"}), n_sites)
        _add_term(h, -0.5 * local * lam, {j: "z"}, n_sites)
        if alpha:
            for op in ("x", "y"):
                _add_term(h, -0.5 * local * alpha, _merge({left: op, j: "z"}, {right: op}), n_sites)
    if np.max(np.abs(h.imag)) > 1e-12:
        raise AssertionError("Hamiltonian should be real in the computational basis")
    return DenseHamiltonian(n_sites, model, p, h.real.copy())


def _merge(a: dict[int, str], b: dict[int, str]):
    """Product of two Pauli strings; only equal-letter overlaps (P*P = I) occur here."""
    out = dict(a)
    for site, op in b.items():
        if site in out:
            if out[site] != op:
                raise ValueError("mixed-letter overlap not supported")
            del out[site]
        else:
            out[site] = op
    return out


def thermal_state(h: DenseHamiltonian, beta: float | None = None) -> np.ndarray:
    """Gibbs state exp(-beta H)/Z; ``beta=None`` gives the equal mixture over the ground space."""
    w, v = eigh(h.matrix)
    if beta is None:
        probs = (w <= w[0] + DEGENERACY_TOL).astype(float)
    else:
        probs = np.exp(-beta * (w - w[0]))
    probs /= probs.sum()
    return (v * probs) @ v.conj().T


def expectation(state, ops: dict[int, str], n_sites: int) -> float:
    # tr(rho P) = sum_b rho[b, target(b)] phase(b)
    target, phase = _pauli_string(ops, n_sites)
    cols = np.arange(2**n_sites)
    return float(np.sum(np.asarray(state)[cols, target] * phase).real)


def ed_correlators(state, N: int, i: int, j: int) -> CorrelatorSet:
    if not 0 <= i < j < N:
        raise ValueError(f"need 0 <= i < j < N, got i={i}, j={j}, N={N}")
    state = np.asarray(state)
    if state.shape != (2**N, 2**N):
        raise ValueError(f"state shape {state.shape} does not match N = {N}")
    z = 0.5 * (expectation(state, {i: "z"}, N) + expectation(state, {j: "z"}, N))
    return CorrelatorSet(
        n=j - i,
        sig_z=z,
        xx=expectation(state, {i: "x", j: "x"}, N),
        yy=expectation(state, {i: "y", j: "y"}, N),
        zz=expectation(state, {i: "z", j: "z"}, N),
    )


@dataclass(frozen=True)
class TrendPoint:
    N: int
    ed: CorrelatorSet
    analytic: CorrelatorSet

    @property
    def gaps(self) -> np.ndarray:
        return np.abs(np.subtract(self.ed.as_tuple(), self.analytic.as_tuple()))


def ed_trend(
    p: XYTParams, sizes=(6, 8, 10), n: int = 1, model: str = "XYT"
) -> list[TrendPoint]:
    """ED versus the finite-N fermion sums at each ring size in ``sizes``.

    ``p.N`` is ignored; every other field of ``p`` is used for both routes.
    """
    out = []
    for size in sizes:
        q = replace(p, N=size, alpha=p.alpha if model.upper() == "XYT" else 0.0)
        rho = thermal_state(build_hamiltonian(model, q), q.beta)
        out.append(TrendPoint(size, ed_correlators(rho, size, 0, n), xyt_correlators(n, q)))
    return out
