"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (run with
``-s`` to see them) and then asserts the same condition.
"""
import time

import numpy as np
import pytest

from spincrit.cli import data_section, main
from spincrit.criticality import PointSpec, SweepSpec, detect_critical_points, phase_map, sweep
from spincrit.ed import ed_trend
from spincrit.lqu import compare_random_states, lqu
from spincrit.numerics import Grid1D, find_peaks
from spincrit.state import TwoSiteState
from spincrit.xy import XYParams, xy_G, xy_magnetization
from spincrit.xyt import XYTParams, xyt_g, xyt_magnetization

XY_GRID = Grid1D(0.0, 2.5, 0.005)
XYT_GRID = Grid1D(-1.5, 2.5, 0.005)
ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)


def report(number, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    timing = f"{elapsed:.1f}s" + (f" (budget {budget:.0f}s)" if budget else "")
    print(f"\ncriterion {number}: {status}  {detail}  [{timing}]")
    assert ok, detail
    assert within, f"runtime {elapsed:.1f}s over budget {budget}s"


def _pure(psi):
    psi = np.asarray(psi, dtype=complex)
    psi /= np.linalg.norm(psi)
    return TwoSiteState.from_matrix(np.outer(psi, psi.conj()))


def _argmax_du(rows):
    i = int(np.argmax([abs(r.du) for r in rows]))
    return rows[i].axis_value, abs(rows[i].du)


def _xyt_lines(alpha, N=400):
    spec = SweepSpec(PointSpec(model="xyt", gamma=0.5, alpha=alpha, N=N), XYT_GRID)
    qpts = [p.location for p in detect_critical_points(sweep(spec)) if p.classification == "qpt"]
    lo, hi = XYT_GRID.values[0], XYT_GRID.values[-1]
    found = {}
    for line in (1 + 2 * alpha, 2 * alpha - 1):
        if lo < line < hi:
            near = [q for q in qpts if abs(q - line) <= 0.02]
            found[line] = min(near, key=lambda q: abs(q - line)) if near else None
    return found


def test_criterion_1_exact_values():
    t0 = time.perf_counter()
    bell = lqu(_pure([1, 0, 0, 1])).u
    rng = np.random.default_rng(1)
    products = [
        lqu(_pure(np.kron(rng.normal(size=2) + 1j * rng.normal(size=2),
                          rng.normal(size=2) + 1j * rng.normal(size=2)))).u
        for _ in range(10)
    ]
    mixed = lqu(TwoSiteState.from_matrix(np.eye(4) / 4)).u
    errs = [abs(bell - 1)] + [abs(u) for u in products] + [abs(mixed)]
    report(1, max(errs) <= 1e-12, f"max deviation {max(errs):.2e} (tol 1e-12)",
           time.perf_counter() - t0, 1.0)


def test_criterion_2_bruteforce_oracle():
    t0 = time.perf_counter()
    worst = compare_random_states(100, seed=7, steps=256)
    top = max(worst.values())
    detail = ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    report(2, top <= 1e-6, f"max |closed form - brute force|: {detail} (tol 1e-6)",
           time.perf_counter() - t0, 120.0)


def test_criterion_3_xy_critical_point():
    t0 = time.perf_counter()
    parts, ok = [], True
    for gamma in (0.0, 0.5, 1.0):
        rows = sweep(SweepSpec(PointSpec(model="xy", gamma=gamma), XY_GRID))
        loc, _ = _argmax_du(rows)
        label = {p.location: p.classification for p in detect_critical_points(rows)}.get(loc)
        ok &= abs(loc - 1.0) <= 0.01 and label == "qpt"
        parts.append(f"gamma={gamma}: argmax {loc:.3f} {label}")
    report(3, ok, "; ".join(parts), time.perf_counter() - t0, 300.0)


def test_criterion_4_xy_critical_line():
    t0 = time.perf_counter()
    pm = phase_map(PointSpec(model="xy"), XY_GRID, Grid1D(0.05, 1.0, 0.05))
    argmax = pm.lam_values[np.argmax(np.abs(pm.du), axis=1)]
    dev = np.abs(argmax - 1.0)
    worst = int(np.argmax(dev))
    report(4, bool(np.all(dev <= 0.02)),
           f"{len(argmax)} gamma rows, worst |argmax - 1| = {dev[worst]:.3f} at gamma={pm.second_values[worst]:.2f} (tol 0.02)",
           time.perf_counter() - t0, 900.0)


def test_criterion_5_xyt_critical_lines():
    t0 = time.perf_counter()
    parts, ok = [], True
    at_400 = {}
    for alpha in ALPHAS:
        found = _xyt_lines(alpha)
        at_400[alpha] = found
        ok &= all(v is not None for v in found.values())
        parts.append(f"alpha={alpha}: " + " ".join(
            f"{line:g}->{'miss' if v is None else f'{v:.3f}'}" for line, v in found.items()))
    big = _xyt_lines(0.5, N=2000)
    same = all(
        big[line] is not None and at_400[0.5][line] is not None and abs(big[line] - at_400[0.5][line]) <= 0.01
        for line in at_400[0.5]
    )
    ok &= same
    parts.append("N=2000 alpha=0.5: " + " ".join(f"{v}" for v in big.values()))
    report(5, ok, "; ".join(parts), time.perf_counter() - t0, 1200.0)


def test_criterion_6_internal_identities():
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    worst_xy, worst_xyt = 0.0, 0.0
    for _ in range(50):
        gamma, lam = rng.uniform(0, 1), rng.uniform(0, 2.5)
        beta = None if rng.uniform() < 0.5 else rng.uniform(0.5, 50)
        p = XYParams(gamma, lam, beta)
        worst_xy = max(worst_xy, abs(xy_magnetization(p) + xy_G(0, p)) / (2 * p.quad_tol))
        q = XYTParams(gamma, rng.uniform(-1.5, 2.5), rng.uniform(0, 1.5), int(rng.integers(10, 2001)), beta)
        worst_xyt = max(worst_xyt, abs(xyt_g(0, q) + xyt_magnetization(q)))
    ok = worst_xy <= 1.0 and worst_xyt <= 1e-14
    report(6, ok, f"XY |sz + G0| / (2 quad_tol) max {worst_xy:.2e}; XYT |g0 + sz| max {worst_xyt:.2e}",
           time.perf_counter() - t0, 60.0)


def test_criterion_7_ed_trend():
    t0 = time.perf_counter()
    trend = ed_trend(XYTParams(0.5, 0.5, 0.5), sizes=(6, 8, 10))
    gaps = np.array([t.gaps for t in trend])
    monotone = bool(np.all(np.diff(gaps, axis=0) <= 0.0))
    bounded = all(np.all(g <= 10.0 / t.N) for g, t in zip(gaps, trend))
    detail = "; ".join(f"N={t.N}: " + " ".join(f"{v:.3g}" for v in g) for g, t in zip(gaps, trend))
    report(7, monotone and bounded, f"gaps (sz xx yy zz) {detail}", time.perf_counter() - t0, 300.0)


def test_criterion_8_finite_temperature():
    t0 = time.perf_counter()
    warm = sweep(SweepSpec(PointSpec(model="xy", gamma=1.0, beta=10.0), XY_GRID))
    cold = sweep(SweepSpec(PointSpec(model="xy", gamma=1.0), XY_GRID))
    _, cold_height = _argmax_du(cold)
    peaks = [p for p in find_peaks(XY_GRID, [r.du for r in warm], prominence=0.0) if abs(p.location - 1.0) <= 0.05]
    best = max(peaks, key=lambda p: abs(p.height)) if peaks else None
    ok = best is not None and abs(best.height) < cold_height
    detail = "no local maximum near 1" if best is None else (
        f"beta=10 peak at {best.location:.3f} height {abs(best.height):.3f} < zero-T {cold_height:.3f}")
    report(8, ok, detail, time.perf_counter() - t0, 300.0)


def _cli_data(argv, workers, tmp_path):
    out = tmp_path / f"run_{len(list(tmp_path.iterdir()))}.csv"
    code = main(argv + ["--workers", str(workers), "--output", str(out)])
    assert code == 0
    return data_section(out.read_text())


def test_criterion_9_determinism(tmp_path):
    t0 = time.perf_counter()
    runs = [["sweep", "--model", "xy", "--gamma", str(g), "--lambda", "0:2.5:0.005", "--zero-temp"]
            for g in (0, 0.5, 1)]
    runs += [["sweep", "--model", "xyt", "--gamma", "0.5", "--N", "400", "--alpha", str(a),
              "--lambda", "-1.5:2.5:0.005", "--zero-temp"] for a in ALPHAS]
    mismatched = [
        " ".join(argv[1:7]) for argv in runs
        if _cli_data(argv, 1, tmp_path) != _cli_data(argv, 8, tmp_path)
    ]
    report(9, not mismatched,
           f"{len(runs)} sweeps, workers 1 vs 8 data sections differ in {len(mismatched)} {mismatched}",
           time.perf_counter() - t0)
