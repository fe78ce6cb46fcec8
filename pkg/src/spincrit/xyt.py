"""Finite-N correlators of the XY chain with three-spin interaction (XYT).

Momenta are ``x_k = 2 pi k / N`` with ``k`` running over ``-M..M``
(``mode_convention="paper"``), which for even ``N`` counts the ``x = +-pi``
mode twice. ``mode_convention="symmetric"`` drops ``k = -M`` for even ``N``
so exactly ``N`` modes remain. The normalisation is ``1/N`` either way.
Setting ``alpha = 0`` gives the finite-N XY chain with ``lam`` as the field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spincrit.numerics import shifted_toeplitz_det
from spincrit.state import CorrelatorSet

GAPLESS_EPS = 1e-14
MAX_SEPARATION = 32


@dataclass(frozen=True)
class XYTParams:
    gamma: float
    lam: float
    alpha: float = 0.0
    N: int = 2000
    beta: float | None = None
    mode_convention: str = "symmetric"

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N}")
        if self.beta is not None and not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.mode_convention not in ("paper", "symmetric"):
            raise ValueError(f"unknown mode convention {self.mode_convention!r}")


@dataclass(frozen=True)
class ModeData:
    k: int
    x_k: float
    zeta_k: float
    eps_k: float


class _Modes:
    """Array view of the mode grid shared by all kernel evaluations at one point."""

    def __init__(self, p: XYTParams):
        big_m = p.N // 2
        lo = -big_m + 1 if (p.mode_convention == "symmetric" and p.N % 2 == 0) else -big_m
        self.k = np.arange(lo, big_m + 1)
        self.x = 2.0 * np.pi * self.k / p.N
        self.zeta = p.lam - np.cos(self.x) - 2.0 * p.alpha * np.cos(2.0 * self.x)
        self.eps = np.sqrt(self.zeta**2 + (p.gamma * np.sin(self.x)) ** 2)
        gapless = self.eps < GAPLESS_EPS
        safe = np.where(gapless, 1.0, self.eps)
        if p.beta is None:
            self.weight = np.where(gapless, 0.0, 1.0 / safe)
        else:
            # tanh(beta*eps)/eps -> beta as eps -> 0
            self.weight = np.where(gapless, p.beta, np.tanh(p.beta * self.eps) / safe)
        self.N = p.N
        self.gamma = p.gamma


def mode_grid(p: XYTParams) -> list[ModeData]:
    m = _Modes(p)
    return [
        ModeData(int(k), float(x), float(z), float(e))
        for k, x, z, e in zip(m.k, m.x, m.zeta, m.eps)
    ]


def min_gap(p: XYTParams) -> float:
    return float(np.min(_Modes(p).eps))


def _magnetization(m: _Modes) -> float:
    return math.fsum(m.zeta * m.weight) / m.N


def _g(n: int, m: _Modes) -> float:
    terms = (np.cos(m.x * n) * m.zeta + m.gamma * np.sin(m.x * n) * np.sin(m.x)) * m.weight
    return -math.fsum(terms) / m.N


def xyt_magnetization(p: XYTParams) -> float:
    """<sigma_z> = (1/N) sum_k zeta_k tanh(beta eps_k) / eps_k."""
    return _magnetization(_Modes(p))


def xyt_g(n: int, p: XYTParams) -> float:
    return _g(n, _Modes(p))


def xyt_correlators(n: int, p: XYTParams) -> CorrelatorSet:
    if not 1 <= n <= MAX_SEPARATION:
        raise ValueError(f"separation must lie in [1, {MAX_SEPARATION}], got {n}")
    if not n < p.N / 2:
        raise ValueError(f"separation {n} must be below half the ring (N = {p.N})")
    m = _Modes(p)
    g = {k: _g(k, m) for k in range(-n, n + 1)}
    sig_z = _magnetization(m)
    return CorrelatorSet(
        n=n,
        sig_z=sig_z,
        xx=shifted_toeplitz_det(g.__getitem__, n, -1),
        yy=shifted_toeplitz_det(g.__getitem__, n, +1),
        zz=sig_z * sig_z - g[n] * g[-n],
    )
