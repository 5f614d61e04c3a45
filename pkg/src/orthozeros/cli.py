"""Command-line front end: zeros, limit-law tables, convergence and extreme-zero reports.

Every data file starts with ``#`` metadata lines (tool version, family,
schedules, tolerances) followed by a CSV table or a JSON document.  Output
contains no timestamps, so identical configurations give identical bytes.
"""
from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__, errors
from .empirics import COLUMNS, convergence_table, param_values, zero_sample
from .errors import DomainError, NumericalError
from .extremes import ismail_li_bound, predict_extremes
from .limitlaw import GeneralLaw, law_for_regime
from .params import FAMILIES, ParamSchedule, classify

SUBCOMMANDS = ("zeros", "density", "cdf", "compare", "extremes", "bound")
FORMATS = ("csv", "json")
TOL_RANGE = (1e-14, 1e-3)
DEFAULT_POINTS = 201

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    """Bad command line; the message names the offending flag."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    family: str = "jacobi"
    alpha: str | None = None
    beta: str | None = None
    gamma: str | None = None
    n: int | None = None
    n_list: tuple[int, ...] | None = None
    out: str | None = None
    format: str = "csv"
    tol: float = 1e-10
    general: tuple[float, float, float, float] | None = None
    grid_min: float | None = None
    grid_max: float | None = None
    grid_points: int = DEFAULT_POINTS

    def __post_init__(self):
        if self.n_list is not None:
            object.__setattr__(self, "n_list", tuple(int(v) for v in self.n_list))
        if self.general is not None:
            object.__setattr__(self, "general", tuple(float(v) for v in self.general))

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise UsageError(f"--config: unknown keys {sorted(unknown)}")
        return cls(**data)


# --- parsing ---------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _four_floats(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"expected a1,a2,b1,b2, got {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orthozeros", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"orthozeros {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="read the run configuration from a JSON file")
        p.add_argument("--print-config", action="store_true", help="print the configuration as JSON and exit")
        p.add_argument("--family", choices=FAMILIES, default=None)
        p.add_argument("--alpha", help="schedule c*n^p+d or a constant")
        p.add_argument("--beta", help="schedule c*n^p+d or a constant")
        p.add_argument("--gamma", help="Hermite schedule c*n^p+d or a constant")
        p.add_argument("--n", type=int)
        p.add_argument("--n-list", type=_int_list, dest="n_list")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=FORMATS, default=None)
        p.add_argument("--tol", type=float)
        p.add_argument("--general", type=_four_floats, help="a1,a2,b1,b2 of the four-parameter law")
        p.add_argument("--grid-min", type=float, dest="grid_min")
        p.add_argument("--grid-max", type=float, dest="grid_max")
        p.add_argument("--grid-points", type=int, dest="grid_points")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.subcommand is None:
        raise UsageError("missing subcommand (one of " + ", ".join(SUBCOMMANDS) + ")")
    base = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = dataclasses.asdict(RunConfig.from_json(fh.read()))
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise UsageError(f"--config: {exc}")
        if base["subcommand"] != args.subcommand:
            raise UsageError(f"--config: file is for {base['subcommand']!r}, not {args.subcommand!r}")
    base["subcommand"] = args.subcommand
    for f in dataclasses.fields(RunConfig):
        if f.name != "subcommand" and getattr(args, f.name, None) is not None:
            base[f.name] = getattr(args, f.name)
    cfg = RunConfig(**base)
    validate(cfg)
    return cfg


def _schedule(cfg: RunConfig, flag: str) -> ParamSchedule:
    text = getattr(cfg, flag)
    if text is None:
        raise UsageError(f"--{flag} is required for {cfg.family} {cfg.subcommand}")
    try:
        return ParamSchedule.parse(text)
    except DomainError as exc:
        raise UsageError(f"--{flag}: {exc}")


def schedules(cfg: RunConfig) -> tuple[ParamSchedule, ...]:
    if cfg.family == "jacobi":
        return _schedule(cfg, "alpha"), _schedule(cfg, "beta")
    if cfg.family == "laguerre":
        return (_schedule(cfg, "alpha"),)
    return (_schedule(cfg, "gamma"),)


def validate(cfg: RunConfig):
    if cfg.subcommand not in SUBCOMMANDS:
        raise UsageError(f"unknown subcommand {cfg.subcommand!r}")
    if cfg.family not in FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(FAMILIES)}")
    if cfg.format not in FORMATS:
        raise UsageError(f"--format must be csv or json, got {cfg.format!r}")
    if not TOL_RANGE[0] < cfg.tol < TOL_RANGE[1]:
        raise UsageError(f"--tol must lie in ({TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}), got {cfg.tol:g}")
    sub = cfg.subcommand
    if sub == "bound" and cfg.family != "jacobi":
        raise UsageError("--family: the bound subcommand is Jacobi only")
    if sub in ("zeros", "bound") and cfg.n is None:
        raise UsageError(f"--n is required for {sub}")
    if cfg.n is not None and cfg.n < (2 if sub == "bound" else 1):
        raise UsageError(f"--n must be >= {2 if sub == 'bound' else 1}, got {cfg.n}")
    if sub in ("compare", "extremes"):
        ns = cfg.n_list or ((cfg.n,) if cfg.n is not None else None)
        if not ns:
            raise UsageError(f"--n-list (or --n) is required for {sub}")
        if min(ns) < 1 or list(ns) != sorted(set(ns)):
            raise UsageError(f"--n-list must be strictly increasing positive integers, got {','.join(map(str, ns))}")
    if sub in ("density", "cdf"):
        if cfg.grid_points < 2:
            raise UsageError(f"--grid-points must be >= 2, got {cfg.grid_points}")
        if cfg.grid_min is not None and cfg.grid_max is not None and not cfg.grid_min < cfg.grid_max:
            raise UsageError("--grid-min must be below --grid-max")
    if cfg.general is None or sub not in ("density", "cdf"):
        schedules(cfg)


# --- output ----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        return None if not math.isfinite(v) else float(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def metadata(cfg: RunConfig, extra: dict | None = None) -> dict:
    meta = {"tool": f"orthozeros {__version__}", "subcommand": cfg.subcommand, "family": cfg.family}
    if cfg.general is not None and cfg.subcommand in ("density", "cdf"):
        meta["general"] = ",".join(_fmt(v) for v in cfg.general)
    else:
        names = {"jacobi": ("alpha", "beta"), "laguerre": ("alpha",), "hermite": ("gamma",)}[cfg.family]
        for name, s in zip(names, schedules(cfg)):
            meta[name] = str(s)
    meta["tol"] = _fmt(cfg.tol)
    meta.update(extra or {})
    return meta


def render(meta: dict, columns: Sequence[str], rows: Sequence[dict], fmt: str,
           notes: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}: {val}\n")
    for note in notes:
        buf.write(f"# {note}\n")
    if fmt == "csv":
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(row.get(c, math.nan)) for c in columns) + "\n")
    else:
        doc = {"meta": meta, "columns": list(columns),
               "rows": [{c: _json_value(row.get(c, math.nan)) for c in columns} for row in rows]}
        if notes:
            doc["notes"] = list(notes)
        buf.write(json.dumps(doc, indent=2) + "\n")
    return buf.getvalue()


# --- subcommands -----------------------------------------------------------

def _regime(cfg: RunConfig, scheds):
    return classify(scheds[0], scheds[1] if cfg.family == "jacobi" else None, cfg.family)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("OZ_THREADS", "1")))
    except ValueError:
        raise UsageError(f"OZ_THREADS must be an integer, got {os.environ['OZ_THREADS']!r}")


def cmd_zeros(cfg: RunConfig):
    scheds = schedules(cfg)
    regime = _regime(cfg, scheds)
    sample = zero_sample(cfg.family, scheds, cfg.n, regime)
    rows = [{"index": i + 1, "raw": r, "scaled": s}
            for i, (r, s) in enumerate(zip(sample.raw, sample.scaled))]
    meta = metadata(cfg, {"n": cfg.n, "regime": regime})
    return meta, ("index", "raw", "scaled"), rows, [], EXIT_OK


def _law(cfg: RunConfig):
    if cfg.general is not None:
        return GeneralLaw(*cfg.general)
    return law_for_regime(_regime(cfg, schedules(cfg)))


def _grid(cfg: RunConfig, law) -> np.ndarray:
    lo, hi = law.support
    lo = lo if cfg.grid_min is None else cfg.grid_min
    hi = hi if cfg.grid_max is None else cfg.grid_max
    if not lo < hi:
        raise UsageError(f"--grid-min/--grid-max: empty grid [{lo}, {hi}]")
    return np.linspace(lo, hi, cfg.grid_points)


def cmd_density(cfg: RunConfig):
    law = _law(cfg)
    xs = _grid(cfg, law)
    rows = [{"x": x, "density": float(law.density(x))} for x in xs]
    return metadata(cfg, {"law": law.describe()}), ("x", "density"), rows, [], EXIT_OK


def cmd_cdf(cfg: RunConfig):
    law = _law(cfg)
    notes = []
    if isinstance(law, GeneralLaw) and law.sub_unit_mass:
        notes.append(f"sub-unit mass {law.total_mass():.10f} (possible atoms outside the support)")
    xs = _grid(cfg, law)
    rows = [{"x": x, "cdf": law.cdf(float(x), cfg.tol)} for x in xs]
    return metadata(cfg, {"law": law.describe()}), ("x", "cdf"), rows, notes, EXIT_OK


def _n_list(cfg: RunConfig) -> tuple[int, ...]:
    return cfg.n_list or (cfg.n,)


def _row_errors(rows) -> tuple[list[str], int]:
    notes, status = [], EXIT_OK
    for row in rows:
        if "error" in row:
            notes.append(f"error at n={row['n']}: {row['error']}")
            kind = getattr(errors, row["error"].split(":")[0], None)
            domain = isinstance(kind, type) and issubclass(kind, DomainError)
            status = max(status, EXIT_DOMAIN if domain else EXIT_NUMERICAL)
    return notes, status


def cmd_compare(cfg: RunConfig):
    report = convergence_table(cfg.family, schedules(cfg), _n_list(cfg), workers=_threads())
    notes, status = _row_errors(report.rows)
    meta = metadata(cfg, {"regime": report.regime, "law": report.law})
    return meta, COLUMNS, report.rows, notes, status


EXTREME_COLUMNS = ("n", "min_zero", "max_zero", "scaled_min", "scaled_max", "limit_min", "limit_max",
                   "err_min", "err_max", "pred_min", "pred_max", "bound")


def _extreme_row(cfg, scheds, regime, n) -> dict:
    try:
        sample = zero_sample(cfg.family, scheds, n, regime)
        pred = predict_extremes(regime, scheds, n)
        lo, hi = pred.scaled_limits
        row = {
            "n": n,
            "min_zero": float(sample.raw[0]),
            "max_zero": float(sample.raw[-1]),
            "scaled_min": float(sample.scaled[0]),
            "scaled_max": float(sample.scaled[-1]),
            "limit_min": lo,
            "limit_max": hi,
            "err_min": abs(float(sample.scaled[0]) - lo),
            "err_max": abs(float(sample.scaled[-1]) - hi),
            "pred_min": pred.predicted_min,
            "pred_max": pred.predicted_max,
            "bound": math.nan,
        }
        if cfg.family == "jacobi" and n >= 2:
            p = param_values("jacobi", scheds, n)
            row["bound"] = ismail_li_bound(n, p["alpha"], p["beta"]).bound
        return row
    except (DomainError, NumericalError) as exc:
        row = {k: math.nan for k in EXTREME_COLUMNS}
        row["n"] = n
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row


def cmd_extremes(cfg: RunConfig):
    scheds = schedules(cfg)
    regime = _regime(cfg, scheds)
    rows = [_extreme_row(cfg, scheds, regime, n) for n in _n_list(cfg)]
    notes, status = _row_errors(rows)
    return metadata(cfg, {"regime": regime}), EXTREME_COLUMNS, rows, notes, status


def cmd_bound(cfg: RunConfig):
    p = param_values("jacobi", schedules(cfg), cfg.n)
    b = ismail_li_bound(cfg.n, p["alpha"], p["beta"])
    rows = [{"k": k, "value": v} for k, v in enumerate(b.per_k.tolist(), start=1)]
    rows.append({"k": "max", "value": b.bound})
    meta = metadata(cfg, {"n": cfg.n, "s1": _fmt(b.s1), "s2": _fmt(b.s2)})
    return meta, ("k", "value"), rows, [], EXIT_OK


COMMANDS = {
    "zeros": cmd_zeros,
    "density": cmd_density,
    "cdf": cmd_cdf,
    "compare": cmd_compare,
    "extremes": cmd_extremes,
    "bound": cmd_bound,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one configuration; returns the exit status."""
    stdout = stdout or sys.stdout
    meta, columns, rows, notes, status = COMMANDS[cfg.subcommand](cfg)
    text = render(meta, columns, rows, cfg.format, notes)
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        if args.print_config:
            print(cfg.to_json())
            return EXIT_OK
        return run(cfg)
    except UsageError as exc:
        print(f"orthozeros: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"orthozeros: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"orthozeros: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
