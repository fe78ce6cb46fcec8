"""XY chain correlators in the thermodynamic limit.

Here ``lam`` multiplies the coupling, so the integrands carry ``1 + lam cos(phi)``
and the critical point sits at ``lam = 1``. ``beta=None`` means zero
temperature (``tanh(beta*omega) -> 1``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spincrit.numerics import integrate_adaptive, shifted_toeplitz_det
from spincrit.state import CorrelatorSet

MAX_SEPARATION = 32


@dataclass(frozen=True)
class XYParams:
    gamma: float
    lam: float
    beta: float | None = None
    quad_tol: float = 1e-10

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.lam < 0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")
        if self.beta is not None and not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not self.quad_tol > 0:
            raise ValueError("quad_tol must be positive")


def omega(phi, p: XYParams):
    """Quasi-particle energy sqrt((g l sin phi)^2 + (1 + l cos phi)^2) / 2."""
    return 0.5 * np.hypot(p.gamma * p.lam * np.sin(phi), 1.0 + p.lam * np.cos(phi))


def _thermal_weight(phi, p: XYParams):
    """tanh(beta*omega)/omega, with the omega -> 0 limits filled in."""
    w = omega(phi, p)
    safe = np.where(w > 0, w, 1.0)
    if p.beta is None:
        # at omega = 0 every numerator also vanishes; use 0 there
        return np.where(w > 0, 1.0 / safe, 0.0)
    return np.where(w > 0, np.tanh(p.beta * w) / safe, p.beta)


def _breakpoints(p: XYParams):
    # for gamma = 0 the zero-temperature integrand jumps where 1 + lam cos(phi) = 0,
    # and for small gamma it turns over on a scale ~gamma there; split in both cases
    if p.lam > 1.0:
        return (math.acos(-1.0 / p.lam),)
    return ()


def _g_integrands(ns, p: XYParams):
    ns = np.asarray(ns, dtype=float)[:, None]

    def f(phi):
        weight = _thermal_weight(phi, p) / (2.0 * np.pi)
        rows = np.cos(ns * phi) * (1.0 + p.lam * np.cos(phi))
        rows = rows - p.gamma * p.lam * np.sin(ns * phi) * np.sin(phi)
        return rows * weight

    return f


def xy_magnetization(p: XYParams) -> float:
    """<sigma_z> = -int_0^pi (1 + lam cos phi) tanh(beta w)/(2 pi w) dphi."""

    def f(phi):
        return -(1.0 + p.lam * np.cos(phi)) * _thermal_weight(phi, p) / (2.0 * np.pi)

    return integrate_adaptive(f, 0.0, np.pi, p.quad_tol, breakpoints=_breakpoints(p))


def xy_G_values(ns, p: XYParams) -> dict[int, float]:
    """The kernel G_k for every k in ``ns``, from one vector-valued quadrature."""
    ns = [int(k) for k in ns]
    vals = integrate_adaptive(
        _g_integrands(ns, p), 0.0, np.pi, p.quad_tol, breakpoints=_breakpoints(p)
    )
    return {k: float(v) for k, v in zip(ns, np.atleast_1d(vals))}


def xy_G(n: int, p: XYParams) -> float:
    return xy_G_values([n], p)[n]


def xy_correlators(n: int, p: XYParams) -> CorrelatorSet:
    """Magnetization and the xx, yy, zz correlators between sites 0 and ``n``."""
    if not 1 <= n <= MAX_SEPARATION:
        raise ValueError(f"separation must lie in [1, {MAX_SEPARATION}], got {n}")
    g = xy_G_values(range(-n, n + 1), p)
    sig_z = xy_magnetization(p)
    return CorrelatorSet(
        n=n,
        sig_z=sig_z,
        xx=shifted_toeplitz_det(g.__getitem__, n, -1),
        yy=shifted_toeplitz_det(g.__getitem__, n, +1),
        zz=sig_z * sig_z - g[n] * g[-n],
    )
