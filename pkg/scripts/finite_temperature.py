"""Thermal smoothing of the Ising (gamma = 1) LQU signature.

    python3 scripts/finite_temperature.py --betas 2 5 10 50
"""
from dataclasses import dataclass

from _common import default_workers, parse_config, write_rows

from spincrit.criticality import PointSpec, SweepSpec, sweep
from spincrit.numerics import Grid1D, find_peaks


@dataclass
class Config:
    betas: tuple = (2.0, 5.0, 10.0, 50.0)
    gamma: float = 1.0
    lam_start: float = 0.0
    lam_stop: float = 2.5
    lam_step: float = 0.005
    workers: int = default_workers()
    out: str = "results/finite_temperature.csv"


def main(cfg: Config):
    grid = Grid1D(cfg.lam_start, cfg.lam_stop, cfg.lam_step)
    rows = []
    for beta in (None,) + tuple(cfg.betas):
        result = sweep(SweepSpec(PointSpec(model="xy", gamma=cfg.gamma, beta=beta), grid), cfg.workers)
        peaks = find_peaks(grid, [r.du for r in result], prominence=0.0)
        top = max(peaks, key=lambda p: abs(p.height), default=None)
        label = "T=0" if beta is None else f"beta={beta:g}"
        if top is not None:
            print(f"{label}: highest |dU/dlambda| peak {abs(top.height):.3f} at lambda={top.location:.3f}")
        rows.extend([beta if beta is not None else "inf", r.axis_value, r.u, r.du] for r in result)
    write_rows(cfg.out, ["beta", "lambda", "u", "du"], rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
