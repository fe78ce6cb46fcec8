"""Exact diagonalization of small XYT rings against the fermion sums.

    python3 scripts/ed_trend.py --gamma 0.5 --lam 0.5 --alpha 0.5
"""
from dataclasses import dataclass

from _common import parse_config, write_rows

from spincrit.ed import ed_trend
from spincrit.xyt import XYTParams


@dataclass
class Config:
    gamma: float = 0.5
    lam: float = 0.5
    alpha: float = 0.5
    sizes: tuple = (4.0, 6.0, 8.0, 10.0)
    mode_convention: str = "symmetric"
    out: str = "results/ed_trend.csv"


def main(cfg: Config):
    p = XYTParams(cfg.gamma, cfg.lam, cfg.alpha, mode_convention=cfg.mode_convention)
    rows = []
    for t in ed_trend(p, sizes=[int(s) for s in cfg.sizes]):
        print(f"N={t.N:2d} |analytic - ED| (sz xx yy zz): " + " ".join(f"{g:.3e}" for g in t.gaps))
        rows.append([t.N, *t.ed.as_tuple(), *t.analytic.as_tuple(), *t.gaps])
    cols = ["N"] + [f"{src}_{c}" for src in ("ed", "analytic", "gap") for c in ("sig_z", "xx", "yy", "zz")]
    write_rows(cfg.out, cols, rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
