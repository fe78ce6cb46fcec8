"""Command-line front end.

    spincrit point  --model xy --gamma 1 --lambda 0 --n 1 --zero-temp
    spincrit sweep  --model xyt --gamma 0.5 --alpha 0.5 --N 400 --lambda -1.5:2.5:0.005
    spincrit map    --model xy --lambda 0:2.5:0.005 --gamma 0.05:1:0.05
    spincrit oracle --lqu-random 100 --seed 7
    spincrit lines  --alpha 0:1.5:0.25

Settings resolve as defaults < ``--config`` file (``key = value`` lines,
``#`` comments) < command-line flags. Every output starts with a header
block holding the resolved configuration; the rest is the data section.
Exit status: 0 success, 1 computation failure (error record as JSON on
stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import re
import sys

import numpy as np

from spincrit import __version__
from spincrit.criticality import (
    PointSpec,
    SweepSpec,
    detect_critical_points,
    evaluate_point,
    gap_closing_lines,
    phase_map,
    sweep,
)
from spincrit.ed import ed_trend
from spincrit.lqu import compare_random_states
from spincrit.numerics import Grid1D
from spincrit.xyt import XYTParams

COMMANDS = ("point", "sweep", "map", "oracle", "lines")

DEFAULTS = {
    "model": "xy",
    "gamma": "0.5",
    "lambda": None,  # command/model dependent, see _default_lambda
    "alpha": None,
    "N": 2000,
    "n": 1,
    "beta": None,
    "zero_temp": True,
    "quad_tol": 1e-10,
    "prominence": None,
    "mode_convention": "symmetric",
    "format": "csv",
    "output": None,
    "workers": None,
    "seed": 0,
    "lqu_random": 100,
    "grid_steps": 256,
    "ed_sizes": "6,8,10",
}


def _bool(text):
    if isinstance(text, bool):
        return text
    if text.lower() in ("1", "true", "yes", "on"):
        return True
    if text.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _opt_float(text):
    return None if text in (None, "", "none", "None") else float(text)


CONVERTERS = {
    "model": str,
    "gamma": str,
    "lambda": str,
    "alpha": str,
    "N": int,
    "n": int,
    "beta": _opt_float,
    "zero_temp": _bool,
    "quad_tol": float,
    "prominence": _opt_float,
    "mode_convention": str,
    "format": str,
    "output": str,
    "workers": int,
    "seed": int,
    "lqu_random": int,
    "grid_steps": int,
    "ed_sizes": str,
}


class UsageError(ValueError):
    pass


def read_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONVERTERS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    common.add_argument("--config", default=s, help="key = value settings file")
    common.add_argument("--output", default=s, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=s)
    common.add_argument("--workers", type=int, default=s, help="worker processes (env SPINCRIT_WORKERS)")
    common.add_argument("--quad-tol", dest="quad_tol", type=float, default=s)
    common.add_argument("--prominence", type=float, default=s)
    common.add_argument("--mode-convention", dest="mode_convention", choices=("paper", "symmetric"), default=s)
    common.add_argument("--seed", type=int, default=s)
    common.add_argument("--model", choices=("xy", "xyt"), default=s)
    common.add_argument("--gamma", default=s, help="scalar, or start:stop:step for map")
    common.add_argument("--lambda", dest="lambda", default=s, help="scalar or start:stop:step")
    common.add_argument("--alpha", default=s, help="scalar or start:stop:step")
    common.add_argument("--N", type=int, default=s, help="XYT ring length")
    common.add_argument("--n", type=int, default=s, help="site separation")
    temp = common.add_mutually_exclusive_group()
    temp.add_argument("--zero-temp", dest="zero_temp", action="store_true", default=s)
    temp.add_argument("--beta", type=float, default=s, help="inverse temperature")

    parser = argparse.ArgumentParser(prog="spincrit", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"spincrit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("point", "sweep", "map", "lines"):
        sub.add_parser(name, parents=[common])
    oracle = sub.add_parser("oracle", parents=[common])
    oracle.add_argument("--lqu-random", dest="lqu_random", type=int, default=s,
                        help="random states per family for the closed-form vs brute-force check")
    oracle.add_argument("--grid-steps", dest="grid_steps", type=int, default=s)
    oracle.add_argument("--ed-trend", dest="ed_trend", action="store_true", default=False,
                        help="also compare ED against the fermion sums")
    oracle.add_argument("--ed-sizes", dest="ed_sizes", default=s)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags into one typed settings dict."""
    given = vars(args).copy()
    command = given.pop("command")
    ed = given.pop("ed_trend", False)
    merged = dict(DEFAULTS)
    file_values = read_config(given.pop("config")) if "config" in given else {}
    merged.update(file_values)
    merged.update(given)
    if merged["workers"] is None:
        merged["workers"] = os.environ.get("SPINCRIT_WORKERS", 1)

    cfg = {}
    for key, value in merged.items():
        try:
            cfg[key] = CONVERTERS[key](value) if value is not None else None
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {key}: {value!r} ({exc})") from None

    # temperature: a flag beats the file; within the file the two keys must agree
    if "zero_temp" in given:
        cfg["beta"] = None
    elif "beta" not in given and "zero_temp" in file_values and "beta" in file_values:
        if cfg["zero_temp"] and cfg["beta"] is not None:
            raise UsageError("config sets both zero_temp = true and beta")
    if "zero_temp" in file_values and not cfg["zero_temp"] and cfg["beta"] is None:
        raise UsageError("zero_temp = false needs a beta")
    cfg["zero_temp"] = cfg["beta"] is None

    for key, allowed in (("model", ("xy", "xyt")), ("mode_convention", ("paper", "symmetric")),
                         ("format", ("csv", "json"))):
        if cfg[key] not in allowed:
            raise UsageError(f"{key} must be one of {allowed}, got {cfg[key]!r}")
    if cfg["workers"] < 1:
        raise UsageError("workers must be at least 1")
    if cfg["lambda"] is None:
        cfg["lambda"] = _default_lambda(command, cfg["model"])
    if cfg["alpha"] is None:
        ranged = command == "lines" or (command == "map" and cfg["model"] == "xyt")
        cfg["alpha"] = "0:1.5:0.05" if ranged else "0"
    if command == "map" and cfg["model"] == "xy" and ":" not in cfg["gamma"]:
        cfg["gamma"] = "0.05:1:0.05"
    cfg["command"] = command
    cfg["ed_trend"] = ed
    return cfg


def _default_lambda(command, model):
    if command in ("sweep", "map"):
        return "0:2.5:0.005" if model == "xy" else "-1.5:2.5:0.005"
    return "0.5"


def _scalar(cfg, key):
    text = cfg[key]
    if ":" in text:
        raise UsageError(f"--{key} must be a scalar for '{cfg['command']}', got {text!r}")
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--{key}: not a number: {text!r}") from None


def _grid(cfg, key):
    try:
        return Grid1D.parse(cfg[key])
    except ValueError as exc:
        raise UsageError(f"--{key}: {exc}") from None


def _point_spec(cfg, skip=()):
    vals = {k: (0.0 if k in skip else _scalar(cfg, k)) for k in ("gamma", "lambda", "alpha")}
    return PointSpec(
        model=cfg["model"],
        gamma=vals["gamma"],
        lam=vals["lambda"],
        alpha=vals["alpha"],
        N=cfg["N"],
        beta=cfg["beta"],
        n=cfg["n"],
        mode_convention=cfg["mode_convention"],
        quad_tol=cfg["quad_tol"],
    )


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, bool):
        return "true" if x else "false"
    return format(float(x), ".17g")


def _axis_values(spec_point: PointSpec, names):
    lookup = {"gamma": spec_point.gamma, "lambda": spec_point.lam, "alpha": spec_point.alpha}
    return [lookup[k] for k in names]


def cmd_point(cfg):
    spec = _point_spec(cfg)
    c, u = evaluate_point(spec)
    names = ["gamma", "lambda"] + (["alpha"] if spec.model == "xyt" else [])
    columns = names + ["sig_z", "xx", "yy", "zz", "u"]
    return columns, [_axis_values(spec, names) + list(c.as_tuple()) + [u]]


def _row_values(r):
    return list(r.correlators.as_tuple()) + [r.u, r.du] + list(r.d_correlators)


ROW_COLUMNS = ["sig_z", "xx", "yy", "zz", "u", "du", "d_sig_z", "d_xx", "d_yy", "d_zz"]


def cmd_sweep(cfg):
    ranged = [k for k in ("lambda", "alpha", "gamma") if ":" in cfg[k]]
    if len(ranged) != 1:
        raise UsageError("sweep needs exactly one of --lambda/--alpha/--gamma as start:stop:step")
    axis_name = ranged[0]
    if axis_name == "alpha" and cfg["model"] == "xy":
        raise UsageError("the XY model has no alpha axis")
    grid = _grid(cfg, axis_name)
    try:
        spec = SweepSpec(_point_spec(cfg, skip=(axis_name,)), grid, axis_name, cfg["prominence"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = sweep(spec, workers=cfg["workers"])
    labels = {cp.index: cp.classification for cp in detect_critical_points(rows, spec.prominence, axis_name)}
    out = [
        [r.axis_value] + _row_values(r) + [labels.get(i, "")]
        for i, r in enumerate(rows)
    ]
    return [axis_name] + ROW_COLUMNS + ["classification"], out


def cmd_map(cfg):
    second = "gamma" if cfg["model"] == "xy" else "alpha"
    lam_grid, second_grid = _grid(cfg, "lambda"), _grid(cfg, second)
    pm = phase_map(_point_spec(cfg, skip=("lambda", second)), lam_grid, second_grid, second, cfg["workers"])
    out = []
    for s, row in zip(pm.second_values, pm.rows):
        out.extend([s, r.axis_value] + _row_values(r) for r in row)
    return [second, "lambda"] + ROW_COLUMNS, out


def cmd_lines(cfg):
    upper, lower = gap_closing_lines(_grid(cfg, "alpha"))
    return ["alpha", "lambda_upper", "lambda_lower"], [
        [a, hi, lo] for (a, hi), (_, lo) in zip(upper, lower)
    ]


def cmd_oracle(cfg):
    rows = []
    tol = 1e-6
    worst = compare_random_states(cfg["lqu_random"], cfg["seed"], cfg["grid_steps"])
    for label, value in worst.items():
        rows.append(["lqu_bruteforce", label, cfg["lqu_random"], value, tol, value <= tol])
    if cfg["ed_trend"]:
        sizes = [int(s) for s in cfg["ed_sizes"].split(",")]
        p = XYTParams(
            _scalar(cfg, "gamma"), _scalar(cfg, "lambda"), _scalar(cfg, "alpha"),
            N=max(sizes), beta=cfg["beta"], mode_convention=cfg["mode_convention"],
        )
        trend = ed_trend(p, sizes, cfg["n"], model=cfg["model"].upper())
        gaps = np.array([t.gaps for t in trend])
        for k, channel in enumerate(("sig_z", "xx", "yy", "zz")):
            monotone = bool(np.all(np.diff(gaps[:, k]) <= 1e-12))
            for t, g in zip(trend, gaps[:, k]):
                ok = monotone and g <= 10.0 / t.N
                rows.append([f"ed_trend_N{t.N}", channel, t.N, g, 10.0 / t.N, ok])
    return ["check", "detail", "samples", "value", "tolerance", "passed"], rows


HANDLERS = {"point": cmd_point, "sweep": cmd_sweep, "map": cmd_map, "lines": cmd_lines, "oracle": cmd_oracle}


def render(cfg, columns, rows) -> str:
    header = {k: cfg[k] for k in sorted(cfg)}
    if cfg["format"] == "json":
        doc = {
            "header": {"artifact": "spincrit", "version": __version__, "config": header},
            "columns": columns,
            "rows": [[v if isinstance(v, (str, bool)) else (int(v) if isinstance(v, (int, np.integer)) else float(v)) for v in r] for r in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# spincrit {__version__}\n")
    for k, v in header.items():
        buf.write(f"# {k} = {v}\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(_fmt(v) for v in r) + "\n")
    return buf.getvalue()


def data_section(text: str) -> str:
    """Output with the header block removed (for reproducibility comparisons)."""
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        return json.dumps({"columns": doc["columns"], "rows": doc["rows"]})
    return "".join(line for line in text.splitlines(keepends=True) if not line.startswith("#"))


def _error_record(kind, exc, coordinates=None):
    record = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    if coordinates:
        record["coordinates"] = coordinates
    return json.dumps(record)


_VALUE_FLAGS = ("--gamma", "--lambda", "--alpha", "--beta")
_NEGATIVE = re.compile(r"^-(\d|\.\d)")


def _join_negative_values(argv):
    """``--lambda -1.5:2.5:0.005`` -> ``--lambda=-1.5:2.5:0.005`` (argparse would read a flag)."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        cfg = resolve_config(args)
        columns, rows = HANDLERS[cfg["command"]](cfg)
    except UsageError as exc:
        print(_error_record("usage", exc), file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except Exception as exc:
        print(_error_record("computation", exc, getattr(exc, "coordinates", None)), file=sys.stderr)
        return 1

    text = render(cfg, columns, rows)
    if cfg["output"]:
        with open(cfg["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg["command"] == "oracle" and not all(r[-1] for r in rows):
        return 1
    return 0


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
