"""Config-driven command line: simulate | criteria | characteristics | wave
| scan.

Configs are flat key = value text files; any key can be overridden by a
--key flag.  Outputs (CSV data plus small matplotlib plot scripts) land in
output_dir, which defaults to $OHLAB_OUTPUT_DIR or the working directory.
Exit status: 0 success, 1 usage error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import characteristics as chars
from . import criteria as crit
from . import evolution, scan as scan_mod, waves
from .errors import InsufficientWindow, NoConvergence, OhlabError
from .evolution import SimulationConfig, Termination
from .initial import two_mode_quantities

_SCHEMA = {
    "gamma": float, "a": float, "b": float, "n": int, "dt": float,
    "t_max": float, "stop_slope": float, "n_xi": int, "stride": int,
    "sample_stride": int, "output_dir": str, "snapshots": str,
    "dealias": bool, "workers": int, "criteria_only": bool,
    "a_min": float, "a_max": float, "a_count": int,
    "b_min": float, "b_max": float, "b_count": int,
    "c_over_gamma": float, "corner": bool, "branch": bool, "wave_n": int,
    "branch_min": float, "branch_max": float, "branch_count": int,
    "fit_depth": float,
}

_DEFAULTS = {
    "gamma": 1.0, "a": 0.05, "b": 0.0, "n": 4096, "dt": 1e-3,
    "t_max": 25.0, "stop_slope": -200.0, "n_xi": 256, "stride": 1,
    "sample_stride": 10, "snapshots": "", "dealias": True, "workers": 1,
    "criteria_only": True, "a_min": 0.0, "a_max": 0.2, "a_count": 41,
    "b_min": 0.0, "b_max": 0.2, "b_count": 41, "c_over_gamma": 1.05,
    "corner": False, "branch": False, "wave_n": 256, "branch_min": 1.01,
    "branch_max": 1.09, "branch_count": 9, "fit_depth": -6.0,
}


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes", "on"):
        return True
    if t in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _SCHEMA:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            caster = _parse_bool if _SCHEMA[key] is bool else _SCHEMA[key]
            out[key] = caster(value)
    return out


def _settings(args) -> dict:
    cfg = dict(_DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for key in _SCHEMA:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if not cfg.get("output_dir"):
        cfg["output_dir"] = os.environ.get("OHLAB_OUTPUT_DIR", ".")
    return cfg


def _outdir(cfg) -> Path:
    path = Path(cfg["output_dir"])
    path.mkdir(parents=True, exist_ok=True)
    return path


def _sim_config(cfg) -> SimulationConfig:
    snaps = tuple(float(s) for s in cfg["snapshots"].split(",") if s.strip())
    return SimulationConfig(
        initial=two_mode_quantities(cfg["a"], cfg["b"]), gamma=cfg["gamma"],
        n=cfg["n"], dt=cfg["dt"], t_max=cfg["t_max"], dealias=cfg["dealias"],
        stop_slope=cfg["stop_slope"], stride=cfg["stride"],
        snapshot_times=snaps)


def _cmd_simulate(args) -> int:
    cfg = _settings(args)
    out = _outdir(cfg)
    record = evolution.simulate(_sim_config(cfg))
    est = None
    if record.terminated is Termination.SlopeBlowup:
        try:
            est = evolution.estimate_blowup(record, fit_depth=cfg["fit_depth"])
        except InsufficientWindow:
            pass
    evolution.write_timeseries(record, out / "timeseries.csv")
    evolution.write_summary(record, est, out / "summary.json")
    for t, f in record.snapshots.items():
        evolution.write_snapshot(f, out / f"snapshot_t{t:g}.csv")
    if est is not None:
        products = chars.rate_products(record, est)
        chars.write_rate_products_csv(products, out / "rate_products.csv")
        _emit_plot_script(out / "plot_rate_products.py", _RATE_PLOT)
    _emit_plot_script(out / "plot_timeseries.py", _TIMESERIES_PLOT)
    print(json.dumps(evolution.run_summary(record, est), indent=2))
    return 2 if record.terminated is Termination.NumericalFailure else 0


def _cmd_criteria(args) -> int:
    cfg = _settings(args)
    d = two_mode_quantities(cfg["a"], cfg["b"])
    reports = crit.all_reports(d, cfg["gamma"])
    payload = {name: rep.as_dict() for name, rep in reports.items()}
    payload["scalars"] = {"sup_abs": d.sup_abs, "l2": d.l2,
                          "min_slope": d.min_slope, "max_slope": d.max_slope,
                          "cube": d.cube}
    text = json.dumps(payload, indent=2)
    (_outdir(cfg) / "criteria.json").write_text(text + "\n")
    print(text)
    return 0


def _cmd_characteristics(args) -> int:
    cfg = _settings(args)
    out = _outdir(cfg)
    record, trace = chars.co_evolve(_sim_config(cfg), n_xi=cfg["n_xi"],
                                    sample_stride=cfg["sample_stride"])
    chars.write_ensemble_csv(trace, out / "ensemble.csv")
    summary = {
        "terminated": record.terminated.value,
        "t_end": float(record.times[-1]),
        "sup_consistency": float(trace.consistency.max()),
        "diffeomorphism": bool(trace.diffeo.all()),
    }
    if record.terminated is Termination.SlopeBlowup:
        try:
            est = evolution.estimate_blowup(record, fit_depth=cfg["fit_depth"])
            products = chars.rate_products(record, est)
            chars.write_rate_products_csv(products, out / "rate_products.csv")
            summary["blowup"] = {"B": est.b, "C": est.c, "T": est.t_blowup}
            _emit_plot_script(out / "plot_rate_products.py", _RATE_PLOT)
        except InsufficientWindow:
            pass
    print(json.dumps(summary, indent=2))
    return 2 if record.terminated is Termination.NumericalFailure else 0


def _cmd_wave(args) -> int:
    cfg = _settings(args)
    out = _outdir(cfg)
    if cfg["branch"]:
        lo, hi, count = cfg["branch_min"], cfg["branch_max"], cfg["branch_count"]
        step = (hi - lo) / max(count - 1, 1)
        ratios = [lo + i * step for i in range(count)]
        profiles = waves.continuation_branch(cfg["gamma"], ratios,
                                             n=cfg["wave_n"])
        waves.write_branch_csv(profiles, out / "branch.csv")
        print(json.dumps({"branch_points": len(profiles),
                          "max_residual": max(waves.ode_residual(w)
                                              for w in profiles)}))
        return 0
    if cfg["corner"]:
        w = waves.corner_wave(cfg["gamma"], n=cfg["wave_n"])
        residual = waves.ode_residual(w, scheme="fd", exclude_crest=4)
    else:
        w = waves.solve_periodic_wave(cfg["c_over_gamma"] * cfg["gamma"],
                                      cfg["gamma"], n=cfg["wave_n"])
        residual = waves.ode_residual(w)
    waves.write_profile_csv(w, out / "wave.csv")
    _emit_plot_script(out / "plot_wave.py", _WAVE_PLOT)
    print(json.dumps({"c_over_gamma": w.c / w.gamma,
                      "amplitude": w.amplitude, "residual": residual}))
    return 0


def _cmd_scan(args) -> int:
    cfg = _settings(args)
    out = _outdir(cfg)
    sconf = scan_mod.ScanConfig(
        a_range=(cfg["a_min"], cfg["a_max"], cfg["a_count"]),
        b_range=(cfg["b_min"], cfg["b_max"], cfg["b_count"]),
        gamma=cfg["gamma"], criteria_only=cfg["criteria_only"],
        workers=cfg["workers"], n=cfg["n"], dt=cfg["dt"],
        t_max=cfg["t_max"], stop_slope=cfg["stop_slope"])
    result = scan_mod.scan(sconf)
    if cfg["criteria_only"]:
        scan_mod.write_region_csv(result, out / "region.csv")
    else:
        scan_mod.write_simulation_csv(result, out / "region_sim.csv")
    _emit_plot_script(out / "plot_region.py", _REGION_PLOT)
    violations = scan_mod.region_ordering_violations(result)
    print(json.dumps({"points": len(result.rows),
                      "ordering_violations": len(violations)}))
    return 0


def _emit_plot_script(path: Path, body: str):
    path.write_text(body)


_TIMESERIES_PLOT = """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt("timeseries.csv", delimiter=",", names=True)
fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
ax1.plot(data["t"], data["min_ux"], label="min u_x")
ax1.plot(data["t"], data["max_ux"], label="max u_x")
ax1.set_ylabel("slope extrema")
ax1.legend()
ax2.plot(data["t"], -1.0 / data["min_ux"], label="-1/min u_x")
ax2.set_xlabel("t")
ax2.set_ylabel("-1/min u_x")
ax2.legend()
fig.tight_layout()
fig.savefig("timeseries.png", dpi=150)
"""

_RATE_PLOT = """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt("rate_products.csv", delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(data["t"], data["p_min"], label="(T-t) min u_x")
ax.plot(data["t"], data["p_max"], label="(T-t) max u_x")
ax.axhline(-1.0, color="k", lw=0.5)
ax.axhline(0.0, color="k", lw=0.5)
ax.set_xlabel("t")
ax.legend()
fig.tight_layout()
fig.savefig("rate_products.png", dpi=150)
"""

_WAVE_PLOT = """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt("wave.csv", delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(data["x"], data["phi"])
ax.set_xlabel("x")
ax.set_ylabel("phi")
fig.tight_layout()
fig.savefig("wave.png", dpi=150)
"""

_REGION_PLOT = """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt("region.csv", delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(6, 6))
for name, marker in (("hunter", "s"), ("cond1", "o"), ("charac", ".")):
    mask = data[name] > 0
    ax.plot(data["a"][mask], data["b"][mask], marker, ms=3, label=name,
            alpha=0.6)
ax.set_xlabel("a")
ax.set_ylabel("b")
ax.legend()
fig.tight_layout()
fig.savefig("region.png", dpi=150)
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ohlab",
        description="Wave-breaking laboratory for a nonlocal shallow-water "
                    "equation on the circle")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "simulate": _cmd_simulate,
        "criteria": _cmd_criteria,
        "characteristics": _cmd_characteristics,
        "wave": _cmd_wave,
        "scan": _cmd_scan,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.add_argument("--config", default=None,
                       help="flat key = value settings file")
        for key, typ in _SCHEMA.items():
            flag = "--" + key.replace("_", "-")
            if typ is bool:
                p.add_argument(flag, dest=key, default=None,
                               type=_parse_bool, metavar="BOOL")
            else:
                p.add_argument(flag, dest=key, default=None, type=typ)
        p.set_defaults(handler=fn)
    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ValueError, OhlabError) as exc:
        if isinstance(exc, (NoConvergence,)):
            print(f"numerical failure: {exc}", file=sys.stderr)
            return 2
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
