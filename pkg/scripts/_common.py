"""Helpers shared by the experiment scripts."""
from __future__ import annotations

import argparse
import csv
import dataclasses
import os
from pathlib import Path


def parse_config(cls, description: str):
    """Build a dataclass ``cls`` instance from matching ``--field`` flags."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        kind = type(f.default) if f.default is not None else float
        if kind is tuple:
            parser.add_argument(f"--{f.name}", type=float, nargs="+", default=f.default)
        else:
            parser.add_argument(f"--{f.name}", type=kind, default=f.default)
    return cls(**{k: (tuple(v) if isinstance(v, list) else v) for k, v in vars(parser.parse_args()).items()})


def write_rows(path, columns, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        w.writerows([[format(v, ".17g") if isinstance(v, float) else v for v in r] for r in rows])
    print(f"wrote {len(rows)} rows to {path}")


def default_workers() -> int:
    return int(os.environ.get("SPINCRIT_WORKERS", 1))
