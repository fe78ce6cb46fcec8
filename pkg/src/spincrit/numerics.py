"""Scalar numerics shared by the physics modules.

Adaptive Gauss-Legendre quadrature, finite differences on uniform grids,
peak detection and the shifted Toeplitz determinants used by the spin
correlators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.signal import peak_prominences


class QuadratureError(RuntimeError):
    """Adaptive refinement hit the depth limit before meeting the tolerance."""

    def __init__(self, estimate, error_bound, interval):
        self.estimate = estimate
        self.error_bound = error_bound
        self.interval = interval
        super().__init__(
            f"refinement budget exceeded near {interval}: "
            f"estimate={estimate!r}, error bound={error_bound!r}"
        )


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``start, start + step, ...`` not exceeding ``stop``."""

    start: float
    stop: float
    step: float
    values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ValueError(f"stop {self.stop} lies below start {self.start}")
        # the 1e-9 slack keeps e.g. 0:2.5:0.005 from losing its endpoint to rounding
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        values = self.start + self.step * np.arange(count, dtype=float)
        object.__setattr__(self, "values", values)

    @classmethod
    def parse(cls, text: str) -> "Grid1D":
        """Parse ``start:stop:step``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        return cls(start, stop, step)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class PeakReport:
    index: int
    location: float
    height: float
    kind: str  # "maximum" or "discontinuity-candidate"


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_legendre(order):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def _panel(f, a, b, order):
    nodes, weights = _gauss_legendre(order)
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * nodes
    y = np.asarray(f(x), dtype=float)
    if y.ndim == 0:
        y = np.full(x.shape, float(y))
    return half * (y @ weights)


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float = 1e-10,
    *,
    order: int = 10,
    max_depth: int = 30,
    breakpoints: Sequence[float] = (),
):
    """Integrate ``f`` over ``[a, b]`` by adaptive bisection of Gauss-Legendre panels.

    ``f`` is called with a 1-d array of nodes and must return either an
    array of the same length or a stacked ``(m, len(nodes))`` array, in
    which case all ``m`` integrals are computed together and the tolerance
    applies to each component.

    A panel is accepted once its two halves agree with the whole to within
    the panel's share ``abs_tol * width / (b - a)`` of the tolerance.
    ``breakpoints`` inside ``(a, b)`` start the bisection pre-split there,
    which is how known integrand kinks and jumps are handled.

    Raises
    ------
    QuadratureError
        If a panel at ``max_depth`` still fails the test; the exception
        carries the best estimate and the accumulated error bound.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not abs_tol > 0:
        raise ValueError("abs_tol must be positive")

    edges = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    total_width = b - a
    # stack is processed LIFO with the left half on top, so panels finish left to right
    stack = [
        (lo, hi, _panel(f, lo, hi, order), 0)
        for lo, hi in zip(edges[-2::-1], edges[:0:-1])
    ]
    accepted = []
    error_bound = 0.0
    failed_at = None
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid, order)
        right = _panel(f, mid, hi, order)
        err = float(np.max(np.abs(left + right - whole)))
        if err <= abs_tol * (hi - lo) / total_width:
            accepted.append(left + right)
            error_bound += err
        elif depth + 1 >= max_depth:
            accepted.append(left + right)
            error_bound += err
            if failed_at is None:
                failed_at = (lo, hi)
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))

    estimate = np.sum(np.stack(accepted), axis=0)
    if np.ndim(estimate) == 0:
        estimate = float(estimate)
    if failed_at is not None and error_bound > abs_tol:
        raise QuadratureError(estimate, error_bound, failed_at)
    return estimate


def central_derivative(xs: Grid1D, ys: Sequence[float]) -> np.ndarray:
    """Symmetric differences in the interior, one-sided at the two ends."""
    ys = np.asarray(ys, dtype=float)
    if ys.shape != xs.values.shape:
        raise ValueError(f"got {ys.shape[0] if ys.ndim else 0} values for a grid of {len(xs)}")
    if len(ys) < 3:
        raise ValueError("need at least 3 samples")
    return np.gradient(ys, xs.step, edge_order=1)


PROMINENCE_FACTOR = 1.0


def default_prominence(ys) -> float:
    """``PROMINENCE_FACTOR`` times the median of ``|ys|``."""
    return PROMINENCE_FACTOR * float(np.median(np.abs(np.asarray(ys, dtype=float))))


def find_peaks(xs: Grid1D, ys: Sequence[float], prominence: float | None = None) -> list[PeakReport]:
    """Interior strict local maxima of ``|ys|`` standing out by ``prominence``.

    Prominence is the usual topographic one: the height above the higher of
    the two lowest points separating the peak from taller terrain on either
    side. ``None`` selects :func:`default_prominence`.
    """
    mag = np.abs(np.asarray(ys, dtype=float))
    if mag.shape != xs.values.shape:
        raise ValueError("xs and ys differ in length")
    if prominence is None:
        prominence = default_prominence(mag)
    if prominence < 0:
        raise ValueError("prominence must be non-negative")

    inner = np.arange(1, len(mag) - 1)
    is_max = (mag[inner] > mag[inner - 1]) & (mag[inner] > mag[inner + 1])
    idx = inner[is_max]
    if idx.size == 0:
        return []
    prom = peak_prominences(mag, idx)[0]

    peaks = []
    for i, p in zip(idx, prom):
        if p < prominence or p <= 0:
            continue
        # a spike carried by a single sample points at a jump in the sampled quantity
        drop = mag[i] - max(mag[i - 1], mag[i + 1])
        kind = "discontinuity-candidate" if drop >= 0.5 * p else "maximum"
        peaks.append(PeakReport(int(i), float(xs.values[i]), float(ys[i]), kind))
    return peaks


def shifted_toeplitz_det(gen: Callable[[int], float], n: int, shift: int) -> float:
    """``det A`` with ``A[i][j] = gen(i - j + shift)`` for ``1 <= i, j <= n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return float(gen(shift))
    a = np.array([[gen(i - j + shift) for j in range(n)] for i in range(n)], dtype=float)
    # LAPACK getrf: LU with partial pivoting
    return float(np.linalg.det(a))
