"""Parameter sweeps of the LQU and detection of critical points.

A peak of |dU/d(axis)| is labelled ``qpt`` when one of the correlator
derivatives (d<sz>, d<xx>, d<yy>, d<zz>) also peaks within two grid steps;
otherwise it is a ``branch_switch``, i.e. a kink caused by the optimal
measurement direction jumping.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from spincrit.lqu import lqu
from spincrit.numerics import Grid1D, central_derivative, find_peaks
from spincrit.state import CorrelatorSet, build_rho
from spincrit.xy import XYParams, xy_correlators
from spincrit.xyt import XYTParams, xyt_correlators

QPT_WINDOW_STEPS = 2
MIN_SWEEP_POINTS = 16
CHANNELS = ("sig_z", "xx", "yy", "zz")


class SweepPointError(RuntimeError):
    """A single grid point failed; ``coordinates`` names it."""

    def __init__(self, message, coordinates):
        super().__init__(message, coordinates)
        self.coordinates = coordinates

    def __str__(self):
        where = ", ".join(f"{k}={v!r}" for k, v in self.coordinates.items())
        return f"{self.args[0]} (at {where})"


@dataclass(frozen=True)
class PointSpec:
    """Everything needed to evaluate one (model, parameters) point."""

    model: str = "xy"
    gamma: float = 0.5
    lam: float = 0.0
    alpha: float = 0.0
    N: int = 2000
    beta: float | None = None
    n: int = 1
    mode_convention: str = "symmetric"
    quad_tol: float = 1e-10

    def with_axis(self, name: str, value: float) -> "PointSpec":
        return replace(self, **{_FIELD[name]: float(value)})


_FIELD = {"lambda": "lam", "alpha": "alpha", "gamma": "gamma"}


@dataclass(frozen=True)
class SweepSpec:
    point: PointSpec
    axis: Grid1D
    axis_name: str = "lambda"
    prominence: float | None = None

    def __post_init__(self):
        if self.axis_name not in _FIELD:
            raise ValueError(f"unknown axis {self.axis_name!r}")
        if self.point.model == "xy" and self.axis_name == "alpha":
            raise ValueError("the XY model has no alpha axis")
        if len(self.axis) < MIN_SWEEP_POINTS:
            raise ValueError(f"a sweep needs at least {MIN_SWEEP_POINTS} points")
        if self.point.n < 1:
            raise ValueError("separation n must be at least 1")


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    correlators: CorrelatorSet
    u: float
    du: float
    d_correlators: tuple[float, float, float, float]


@dataclass(frozen=True)
class CriticalPoint:
    location: float
    axis: str
    classification: str  # "qpt" or "branch_switch"
    peak_height: float
    index: int


def evaluate_point(spec: PointSpec) -> tuple[CorrelatorSet, float]:
    """Correlators and LQU at one parameter point."""
    if spec.model == "xy":
        c = xy_correlators(spec.n, XYParams(spec.gamma, spec.lam, spec.beta, spec.quad_tol))
    elif spec.model == "xyt":
        p = XYTParams(spec.gamma, spec.lam, spec.alpha, spec.N, spec.beta, spec.mode_convention)
        c = xyt_correlators(spec.n, p)
    else:
        raise ValueError(f"unknown model {spec.model!r}")
    return c, lqu(build_rho(c)).u


def _guarded_point(args):
    spec, coords = args
    try:
        return evaluate_point(spec)
    except Exception as exc:  # re-raised with the failing coordinates attached
        raise SweepPointError(f"{type(exc).__name__}: {exc}", coords) from None


def evaluate_points(specs: list[PointSpec], coords: list[dict], workers: int = 1):
    """Evaluate points in order; results do not depend on ``workers``."""
    tasks = list(zip(specs, coords))
    if workers <= 1 or len(tasks) < 2:
        return [_guarded_point(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_guarded_point, tasks, chunksize=chunk))


def _rows_from_results(axis: Grid1D, results) -> list[SweepRow]:
    corr = np.array([c.as_tuple() for c, _ in results])
    u = np.array([v for _, v in results])
    if len(axis) >= 3:
        du = central_derivative(axis, u)
        dc = np.column_stack([central_derivative(axis, corr[:, k]) for k in range(4)])
    else:
        du = np.gradient(u, axis.step, edge_order=1)
        dc = np.gradient(corr, axis.step, axis=0, edge_order=1)
    return [
        SweepRow(float(x), c, float(uu), float(d), tuple(float(v) for v in dcs))
        for x, (c, _), uu, d, dcs in zip(axis.values, results, u, du, dc)
    ]


def sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    specs = [spec.point.with_axis(spec.axis_name, x) for x in spec.axis.values]
    coords = [{spec.axis_name: float(x)} for x in spec.axis.values]
    return _rows_from_results(spec.axis, evaluate_points(specs, coords, workers))


def _grid_of(rows: list[SweepRow]) -> Grid1D:
    xs = np.array([r.axis_value for r in rows])
    step = (xs[-1] - xs[0]) / (len(xs) - 1)
    grid = Grid1D(float(xs[0]), float(xs[-1]), float(step))
    if len(grid) != len(xs):
        raise ValueError("rows are not on a uniform grid")
    object.__setattr__(grid, "values", xs)
    return grid


def detect_critical_points(
    rows: list[SweepRow], prominence: float | None = None, axis: str = "lambda"
) -> list[CriticalPoint]:
    """Peaks of |du|, each classified by nearby correlator-derivative peaks.

    ``prominence`` applies to |du|; correlator channels always use the
    relative default of :func:`spincrit.numerics.find_peaks`.
    """
    if len(rows) < MIN_SWEEP_POINTS:
        raise ValueError(f"need at least {MIN_SWEEP_POINTS} rows")
    grid = _grid_of(rows)
    du = np.array([r.du for r in rows])
    channel_peaks = []
    dc = np.array([r.d_correlators for r in rows])
    for k in range(dc.shape[1]):
        channel_peaks.extend(p.location for p in find_peaks(grid, dc[:, k]))
    window = QPT_WINDOW_STEPS * grid.step * (1 + 1e-9)

    points = []
    for peak in find_peaks(grid, du, prominence):
        near = any(abs(loc - peak.location) <= window for loc in channel_peaks)
        points.append(
            CriticalPoint(
                location=peak.location,
                axis=axis,
                classification="qpt" if near else "branch_switch",
                peak_height=abs(peak.height),
                index=peak.index,
            )
        )
    return points


@dataclass(frozen=True, eq=False)
class PhaseMap:
    """U and dU/dlambda on a (second axis) x lambda grid, row-major."""

    second_axis: str
    second_values: np.ndarray
    lam_values: np.ndarray
    u: np.ndarray
    du: np.ndarray
    rows: list[list[SweepRow]]


def phase_map(
    point: PointSpec,
    lam_grid: Grid1D,
    second_grid: Grid1D,
    second_axis: str | None = None,
    workers: int = 1,
) -> PhaseMap:
    """Evaluate U over (alpha or gamma) x lambda; lambda-derivatives per row.

    The second axis defaults to ``gamma`` for the XY model and ``alpha`` for XYT.
    """
    if second_axis is None:
        second_axis = "gamma" if point.model == "xy" else "alpha"
    if second_axis not in ("gamma", "alpha"):
        raise ValueError(f"second axis must be gamma or alpha, got {second_axis!r}")
    if len(lam_grid) < 2 or len(second_grid) < 1:
        raise ValueError("grid too small")
    specs, coords = [], []
    for s in second_grid.values:
        base = point.with_axis(second_axis, s)
        for lam in lam_grid.values:
            specs.append(base.with_axis("lambda", lam))
            coords.append({second_axis: float(s), "lambda": float(lam)})
    results = evaluate_points(specs, coords, workers)

    width = len(lam_grid)
    rows = [
        _rows_from_results(lam_grid, results[i * width:(i + 1) * width])
        for i in range(len(second_grid))
    ]
    return PhaseMap(
        second_axis=second_axis,
        second_values=second_grid.values.copy(),
        lam_values=lam_grid.values.copy(),
        u=np.array([[r.u for r in row] for row in rows]),
        du=np.array([[r.du for r in row] for row in rows]),
        rows=rows,
    )


def gap_closing_lines(alphas: Grid1D):
    """Lines where the XYT gap closes: lam = 1 + 2 alpha (x = 0) and lam = 2 alpha - 1 (x = pi)."""
    upper = [(float(a), 1.0 + 2.0 * float(a)) for a in alphas.values]
    lower = [(float(a), 2.0 * float(a) - 1.0) for a in alphas.values]
    return upper, lower
