import numpy as np
import pytest

from spincrit.criticality import (
    PointSpec,
    SweepPointError,
    SweepSpec,
    detect_critical_points,
    evaluate_point,
    evaluate_points,
    gap_closing_lines,
    phase_map,
    sweep,
)
from spincrit.numerics import Grid1D


def _ising_sweep(workers=1, **kw):
    spec = SweepSpec(PointSpec(model="xy", gamma=1.0, **kw), Grid1D(0.8, 1.2, 0.01))
    return sweep(spec, workers=workers)


def test_ising_peak_is_qpt():
    rows = _ising_sweep()
    assert len(rows) == 41
    points = detect_critical_points(rows)
    top = max(points, key=lambda p: p.peak_height)
    assert top.location == pytest.approx(1.0, abs=0.01)
    assert top.classification == "qpt"


def test_xyt_lines_small_ring():
    spec = SweepSpec(
        PointSpec(model="xyt", gamma=0.5, alpha=0.5, N=200), Grid1D(-0.5, 2.5, 0.01)
    )
    qpts = [p.location for p in detect_critical_points(sweep(spec)) if p.classification == "qpt"]
    for line in (0.0, 2.0):
        assert any(abs(q - line) <= 0.02 for q in qpts)


def test_workers_do_not_change_rows():
    a = _ising_sweep(workers=1)
    b = _ising_sweep(workers=3)
    assert [(r.axis_value, r.correlators, r.u, r.du, r.d_correlators) for r in a] == [
        (r.axis_value, r.correlators, r.u, r.du, r.d_correlators) for r in b
    ]


def test_flat_sweep_has_no_critical_points():
    # gamma = 0, lam < 1: fully polarized, U = 0 everywhere
    spec = SweepSpec(PointSpec(model="xy", gamma=0.0), Grid1D(0.1, 0.5, 0.02))
    rows = sweep(spec)
    assert all(r.u == 0.0 for r in rows)
    assert detect_critical_points(rows) == []


def test_branch_switch_without_correlator_peak():
    # hand-built rows: |du| peaks where all correlator derivatives are smooth
    from spincrit.criticality import SweepRow
    from spincrit.state import CorrelatorSet

    xs = np.linspace(0.0, 1.0, 41)
    du = np.exp(-((xs - 0.5) ** 2) / 0.002)
    rows = [
        SweepRow(float(x), CorrelatorSet(1, x, 0, 0, 0), 0.0, float(d), (1.0, 0.1 * x, 0.0, 0.0))
        for x, d in zip(xs, du)
    ]
    (cp,) = detect_critical_points(rows)
    assert cp.classification == "branch_switch"
    assert cp.location == pytest.approx(0.5)


def test_gamma_axis():
    spec = SweepSpec(PointSpec(model="xy", lam=1.5), Grid1D(0.1, 1.0, 0.05), axis_name="gamma")
    rows = sweep(spec)
    assert rows[0].axis_value == pytest.approx(0.1)
    assert all(np.isfinite(r.du) for r in rows)


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(PointSpec(model="xy"), Grid1D(0, 1, 0.1))  # 11 points
    with pytest.raises(ValueError):
        SweepSpec(PointSpec(model="xy"), Grid1D(0, 1, 0.01), axis_name="alpha")
    with pytest.raises(ValueError):
        SweepSpec(PointSpec(model="xy"), Grid1D(0, 1, 0.01), axis_name="beta")
    with pytest.raises(ValueError):
        detect_critical_points(_ising_sweep()[:10])


def test_point_error_carries_coordinates():
    specs = [PointSpec(model="xy", gamma=0.5, lam=0.5), PointSpec(model="xy", gamma=2.0, lam=0.7)]
    coords = [{"lambda": 0.5}, {"lambda": 0.7}]
    with pytest.raises(SweepPointError) as info:
        evaluate_points(specs, coords)
    assert info.value.coordinates == {"lambda": 0.7}
    assert "lambda=0.7" in str(info.value)


def test_evaluate_point_product_state():
    c, u = evaluate_point(PointSpec(model="xy", gamma=1.0, lam=0.0))
    assert c.sig_z == pytest.approx(-1.0)
    assert u == 0.0


def test_phase_map_shape_and_rows():
    pm = phase_map(PointSpec(model="xyt", gamma=0.5, N=100), Grid1D(0.0, 1.0, 0.5), Grid1D(0.0, 0.5, 0.5))
    assert pm.second_axis == "alpha"
    assert pm.u.shape == pm.du.shape == (2, 3)
    assert list(pm.lam_values) == [0.0, 0.5, 1.0]
    single = evaluate_point(PointSpec(model="xyt", gamma=0.5, N=100, alpha=0.5, lam=1.0))[1]
    assert pm.u[1, 2] == single


def test_phase_map_validation():
    with pytest.raises(ValueError):
        phase_map(PointSpec(), Grid1D(0, 0, 1), Grid1D(0, 1, 0.5))
    with pytest.raises(ValueError):
        phase_map(PointSpec(), Grid1D(0, 1, 0.5), Grid1D(0, 1, 0.5), second_axis="lambda")


def test_gap_lines():
    upper, lower = gap_closing_lines(Grid1D(0.0, 1.0, 0.25))
    assert upper == [(0.0, 1.0), (0.25, 1.5), (0.5, 2.0), (0.75, 2.5), (1.0, 3.0)]
    assert lower == [(0.0, -1.0), (0.25, -0.5), (0.5, 0.0), (0.75, 0.5), (1.0, 1.0)]


def test_lower_line_found_at_larger_anisotropy():
    # this peak sits below 5x the median |du|; the default threshold must still catch it
    spec = SweepSpec(PointSpec(model="xyt", gamma=0.8, alpha=0.5, N=400), Grid1D(-1.5, 2.5, 0.005))
    qpts = [p.location for p in detect_critical_points(sweep(spec)) if p.classification == "qpt"]
    assert any(abs(q - 0.0) <= 0.02 for q in qpts)
    assert any(abs(q - 2.0) <= 0.02 for q in qpts)
