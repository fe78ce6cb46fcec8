"""U(lambda) and dU/dlambda for the XY chain at several anisotropies.

    python3 scripts/xy_sweeps.py --gammas 0 0.5 1 --out results/xy_sweeps.csv
"""
from dataclasses import dataclass

from _common import default_workers, parse_config, write_rows

from spincrit.criticality import PointSpec, SweepSpec, detect_critical_points, sweep
from spincrit.numerics import Grid1D


@dataclass
class Config:
    gammas: tuple = (0.0, 0.5, 1.0)
    lam_start: float = 0.0
    lam_stop: float = 2.5
    lam_step: float = 0.005
    n: int = 1
    workers: int = default_workers()
    out: str = "results/xy_sweeps.csv"


def main(cfg: Config):
    grid = Grid1D(cfg.lam_start, cfg.lam_stop, cfg.lam_step)
    rows = []
    for gamma in cfg.gammas:
        result = sweep(SweepSpec(PointSpec(model="xy", gamma=gamma, n=cfg.n), grid), cfg.workers)
        labels = {p.index: p.classification for p in detect_critical_points(result)}
        for i, r in enumerate(result):
            rows.append([gamma, r.axis_value, r.u, r.du, labels.get(i, "")])
        for p in detect_critical_points(result):
            print(f"gamma={gamma:g}: {p.classification} at lambda={p.location:.3f} |du|={p.peak_height:.3f}")
    write_rows(cfg.out, ["gamma", "lambda", "u", "du", "classification"], rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
