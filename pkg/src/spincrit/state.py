"""Two-site reduced density matrices built from translation-invariant correlators.

Basis order is |00>, |01>, |10>, |11> with sigma_z |0> = +|0>.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from spincrit.linalg import check_hermitian, eigh

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
PAULIS = (SX, SY, SZ)

# states within this distance below zero are treated as PSD everywhere downstream
STATE_NEG_TOL = 1e-8

# entries that vanish for an X-state (0-based)
_X_ZEROS = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2)]


class InvalidCorrelatorsError(ValueError):
    def __init__(self, correlators, min_eigenvalue):
        self.correlators = correlators
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"correlators {correlators} give a state with eigenvalue {min_eigenvalue:.3e}"
        )


@dataclass(frozen=True)
class CorrelatorSet:
    """<sigma_z> and the <sigma^k_0 sigma^k_n> correlators at separation ``n``."""

    n: int
    sig_z: float
    xx: float
    yy: float
    zz: float

    def as_tuple(self):
        return (self.sig_z, self.xx, self.yy, self.zz)

    def in_bounds(self, tol: float = 1e-10) -> bool:
        return all(abs(v) <= 1.0 + tol for v in self.as_tuple())


@dataclass(frozen=True, eq=False)
class TwoSiteState:
    matrix: np.ndarray
    source: CorrelatorSet | None = None

    @classmethod
    def from_matrix(cls, matrix) -> "TwoSiteState":
        """Wrap an arbitrary two-qubit density matrix (not necessarily an X-state)."""
        m = check_hermitian(np.asarray(matrix, dtype=complex))
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ValueError("density matrix must have unit trace")
        return cls(m)


class StateDiagnostics(NamedTuple):
    trace_deviation: float
    min_eigenvalue: float
    x_residual: float


def build_rho(c: CorrelatorSet) -> TwoSiteState:
    """rho = (I + s_z (Z.I + I.Z) + xx XX + yy YY + zz ZZ) / 4."""
    values = np.array(c.as_tuple(), dtype=float)
    if not np.all(np.isfinite(values)):
        raise InvalidCorrelatorsError(c, float("nan"))
    sz, xx, yy, zz = values
    # written out entrywise so the trace is exactly one
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1 + 2 * sz + zz
    m[1, 1] = 1 - zz
    m[2, 2] = 1 - zz
    m[3, 3] = 1 - 2 * sz + zz
    m[0, 3] = m[3, 0] = xx - yy
    m[1, 2] = m[2, 1] = xx + yy
    m /= 4.0
    lo = _min_eig_xstate(m)
    if lo < -STATE_NEG_TOL:
        raise InvalidCorrelatorsError(c, lo)
    return TwoSiteState(m, c)


def _min_eig_xstate(m):
    # an X-state splits into the {00,11} and {01,10} 2x2 blocks
    lows = []
    for i, j in ((0, 3), (1, 2)):
        a, d, b = m[i, i].real, m[j, j].real, abs(m[i, j])
        lows.append(0.5 * (a + d) - np.hypot(0.5 * (a - d), b))
    return float(min(lows))


def state_diagnostics(s: TwoSiteState) -> StateDiagnostics:
    m = s.matrix
    return StateDiagnostics(
        trace_deviation=float(abs(np.trace(m).real - 1.0)),
        min_eigenvalue=float(eigh(m).eigenvalues[0]),
        x_residual=float(max(abs(m[i, j]) for i, j in _X_ZEROS)),
    )


def random_density_matrix(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    """Full-rank mixed state from a complex Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_x_state(rng: np.random.Generator) -> np.ndarray:
    """Two-qubit X-state with complex coherences: independent PSD blocks on
    {|00>, |11>} and {|01>, |10>}."""
    m = np.zeros((4, 4), dtype=complex)
    for i, j in ((0, 3), (1, 2)):
        block = random_density_matrix(rng, 2) * rng.uniform()
        m[np.ix_([i, j], [i, j])] = block
    return m / np.trace(m).real
