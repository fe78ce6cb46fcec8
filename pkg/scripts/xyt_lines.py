"""Critical points of the XYT chain against the gap-closing lines lambda = 2 alpha +/- 1.

    python3 scripts/xyt_lines.py --alphas 0 0.25 0.5 0.75 1 --N 400
"""
from dataclasses import dataclass

from _common import default_workers, parse_config, write_rows

from spincrit.criticality import PointSpec, SweepSpec, detect_critical_points, sweep
from spincrit.numerics import Grid1D


@dataclass
class Config:
    alphas: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    gamma: float = 0.5
    N: int = 400
    lam_start: float = -1.5
    lam_stop: float = 2.5
    lam_step: float = 0.005
    mode_convention: str = "symmetric"
    workers: int = default_workers()
    out: str = "results/xyt_lines.csv"


def main(cfg: Config):
    grid = Grid1D(cfg.lam_start, cfg.lam_stop, cfg.lam_step)
    rows = []
    for alpha in cfg.alphas:
        point = PointSpec(model="xyt", gamma=cfg.gamma, alpha=alpha, N=cfg.N,
                          mode_convention=cfg.mode_convention)
        for p in detect_critical_points(sweep(SweepSpec(point, grid), cfg.workers)):
            nearest = min((1 + 2 * alpha, 2 * alpha - 1), key=lambda line: abs(line - p.location))
            rows.append([alpha, p.location, p.classification, p.peak_height, nearest, p.location - nearest])
            print(f"alpha={alpha:g}: {p.classification:13s} lambda={p.location:+.3f} "
                  f"(nearest line {nearest:+g}, |du|={p.peak_height:.3f})")
    write_rows(cfg.out, ["alpha", "lambda", "classification", "peak_height", "nearest_line", "offset"], rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
