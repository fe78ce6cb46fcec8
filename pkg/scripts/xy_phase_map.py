"""dU/dlambda over the (lambda, gamma) plane of the XY chain, with the per-gamma argmax.

    python3 scripts/xy_phase_map.py --out results/xy_map.csv
"""
from dataclasses import dataclass

import numpy as np
from _common import default_workers, parse_config, write_rows

from spincrit.criticality import PointSpec, phase_map
from spincrit.numerics import Grid1D


@dataclass
class Config:
    gamma_start: float = 0.05
    gamma_stop: float = 1.0
    gamma_step: float = 0.05
    lam_start: float = 0.0
    lam_stop: float = 2.5
    lam_step: float = 0.005
    workers: int = default_workers()
    out: str = "results/xy_map.csv"


def main(cfg: Config):
    pm = phase_map(
        PointSpec(model="xy"),
        Grid1D(cfg.lam_start, cfg.lam_stop, cfg.lam_step),
        Grid1D(cfg.gamma_start, cfg.gamma_stop, cfg.gamma_step),
        workers=cfg.workers,
    )
    for g, i in zip(pm.second_values, np.argmax(np.abs(pm.du), axis=1)):
        print(f"gamma={g:.2f}: argmax |dU/dlambda| at lambda={pm.lam_values[i]:.3f}")
    rows = [
        [float(g), float(lam), float(u), float(d)]
        for g, urow, drow in zip(pm.second_values, pm.u, pm.du)
        for lam, u, d in zip(pm.lam_values, urow, drow)
    ]
    write_rows(cfg.out, ["gamma", "lambda", "u", "du"], rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
