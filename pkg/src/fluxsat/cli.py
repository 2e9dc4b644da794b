"""Command-line front end: config parsing, dispatch, CSV/JSON artifacts.

Subcommands:

* ``simulate CONFIG``      evolve a datum, write trace and snapshot CSVs
* ``verify``               certify a subsolution parameter set (file or --auto)
* ``waiting-time CONFIG``  waiting-time measurements and the scaling study
* ``bounds``               analytic waiting-time bounds for given L
* ``subsolution``          emit a family profile as CSV

Exit codes: 0 success, 2 configuration error, 3 solver failure,
4 certification failure.  All floating-point CSV output uses 17
significant digits so reruns diff byte-identically.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bounds as bounds_mod
from . import solver as solver_mod
from . import subsolutions as subs_mod
from . import verify as verify_mod
from .errors import (
    CFLViolationError,
    ConfigurationError,
    SolverFailureError,
    SynthesisError,
)
from .model import ModelKind, relativistic_pm, speed_limited_pm

_FMT = "{:.17g}"


def _fmt(x) -> str:
    return _FMT.format(float(x))


# =============================================================================
# Config parsing
# =============================================================================


def _load_json(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise ConfigurationError(f"config file not found: {path}")
    try:
        with open(p, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigurationError("config root must be a JSON object")
    return doc


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ConfigurationError(f"missing required key '{key}' in {where}")
    return doc[key]


def parse_model(doc: dict) -> ModelKind:
    family = _require(doc, "family", "model section")
    exponent = float(_require(doc, "exponent", "model section"))
    dimension = int(doc.get("dimension", 1))
    try:
        if family in ("relativistic", "relativistic_pm"):
            return relativistic_pm(exponent, dimension)
        if family in ("speed_limited", "speed_limited_pm"):
            return speed_limited_pm(exponent, dimension)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    raise ConfigurationError(f"unknown model family '{family}'")


def parse_grid(doc: dict, dimension: int) -> solver_mod.RadialGrid:
    return solver_mod.RadialGrid(
        dimension,
        float(_require(doc, "r_max", "grid section")),
        int(_require(doc, "cells", "grid section")),
    )


def parse_datum(doc: dict, seed: int):
    kind = _require(doc, "type", "datum section")
    if kind == "zero":
        return solver_mod.ZeroDatum()
    if kind == "bump":
        return solver_mod.Bump(
            height=float(_require(doc, "height", "datum")),
            radius=float(_require(doc, "radius", "datum")),
        )
    if kind == "front_power_law":
        return solver_mod.FrontPowerLaw(
            L=float(_require(doc, "L", "datum")),
            power=float(_require(doc, "power", "datum")),
            front_radius=float(_require(doc, "front_radius", "datum")),
            cap=float(_require(doc, "cap", "datum")),
        )
    if kind == "ramp_power_law":
        return solver_mod.RampPowerLaw(
            L=float(_require(doc, "L", "datum")),
            power=float(_require(doc, "power", "datum")),
            outer_radius=float(_require(doc, "outer_radius", "datum")),
            cap=float(_require(doc, "cap", "datum")),
        )
    if kind == "m_subsolution":
        params, _ = subs_mod.synthesize_M_params(
            L=float(_require(doc, "L", "datum")),
            R=float(_require(doc, "R", "datum")),
            N=int(_require(doc, "N", "datum")),
            M=float(_require(doc, "exponent", "datum")),
            seed=seed,
        )
        scale = float(doc.get("scale", 1.0))
        return solver_mod.SubsolutionSnapshot(
            subs_mod.RadialSubsolution(params), scale=scale
        )
    if kind == "rel_subsolution":
        params, _ = subs_mod.synthesize_rel_params(
            L=float(_require(doc, "L", "datum")),
            R=float(_require(doc, "R", "datum")),
            N=int(_require(doc, "N", "datum")),
            m=float(_require(doc, "exponent", "datum")),
            seed=seed,
        )
        scale = float(doc.get("scale", 1.0))
        return solver_mod.SubsolutionSnapshot(
            subs_mod.RadialSubsolution(params), scale=scale
        )
    raise ConfigurationError(f"unknown datum type '{kind}'")


def _load_params(path: str):
    doc = _load_json(path)
    family = _require(doc, "family", "params file")
    try:
        if family == "speed_limited":
            return subs_mod.MSubParams.from_dict(doc)
        if family == "relativistic":
            return subs_mod.RelSubParams.from_dict(doc)
    except KeyError as exc:
        raise ConfigurationError(f"params file missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed params file: {exc}") from exc
    raise ConfigurationError(f"unknown params family '{family}'")


# =============================================================================
# Artifact writers
# =============================================================================


def _jsonable(value):
    """Recursively map non-finite floats to null so documents stay valid JSON."""
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def _write_json(path: Path, doc: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(doc), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def write_trace_csv(path: Path, trace: solver_mod.Trace):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,mass,support_radius,u_at_x0\n")
        for k in range(trace.t.size):
            u0 = trace.u_at_x0[k] if trace.u_at_x0 is not None else math.nan
            fh.write(
                ",".join(
                    (
                        _fmt(trace.t[k]),
                        _fmt(trace.mass[k]),
                        _fmt(trace.support_radius[k]),
                        _fmt(u0),
                    )
                )
                + "\n"
            )


def write_snapshot_csv(path: Path, radii: np.ndarray, values: np.ndarray):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("r,u\n")
        for r, u in zip(radii, values):
            fh.write(f"{_fmt(r)},{_fmt(u)}\n")


# =============================================================================
# Subcommands
# =============================================================================


def cmd_simulate(args) -> int:
    doc = _load_json(args.config)
    model = parse_model(_require(doc, "model", "config"))
    grid = parse_grid(_require(doc, "grid", "config"), model.dimension)
    datum = parse_datum(_require(doc, "datum", "config"), args.seed)
    run = _require(doc, "run", "config")
    t_end = float(_require(run, "t_end", "run section"))
    if t_end < 0.0:
        raise ConfigurationError(f"t_end must be nonnegative, got {t_end}")
    cfl = float(run.get("cfl", 0.4))
    interval = float(run.get("observe_interval", t_end / 16.0 if t_end > 0 else 1.0))
    x0_radius = run.get("x0_radius")
    snapshot_times = tuple(float(ts) for ts in run.get("snapshot_times", ()))
    prefix = doc.get("output", {}).get("prefix", "run")

    solver = solver_mod.RadialSolver(model, cfl=cfl)
    state = solver.init_state(grid, datum)
    observe = solver_mod.ObserverSpec(
        interval=interval,
        x0_radius=float(x0_radius) if x0_radius is not None else None,
        snapshot_times=snapshot_times,
    )
    final, trace = solver.run(state, t_end, observe=observe)

    out = Path(args.out)
    trace_path = out / f"{prefix}_trace.csv"
    write_trace_csv(trace_path, trace)
    snapshot_files = []
    for k, (ts, values) in enumerate(trace.snapshots):
        snap_path = out / f"{prefix}_snapshot_{k:03d}.csv"
        write_snapshot_csv(snap_path, grid.centers, values)
        snapshot_files.append({"t": ts, "file": snap_path.name})
    summary = {
        "model": {
            "family": model.family.value,
            "exponent": model.exponent,
            "dimension": model.dimension,
        },
        "t_end": final.t,
        "cells": grid.cells,
        "r_max": grid.r_max,
        "mass_initial": float(trace.mass[0]),
        "mass_final": float(trace.mass[-1]),
        "support_radius_final": float(trace.support_radius[-1]),
        "trace_file": trace_path.name,
        "snapshots": snapshot_files,
    }
    _write_json(out / f"{prefix}_summary.json", summary)
    print(f"wrote {trace_path}")
    return 0


def cmd_verify(args) -> int:
    if args.params is not None:
        params = _load_params(args.params)
    elif args.auto:
        missing = [k for k in ("L", "R", "N", "exponent") if getattr(args, k) is None]
        if missing:
            raise ConfigurationError(f"--auto needs --L --R --N --exponent ({missing})")
        if args.family == "speed-limited":
            params, _ = subs_mod.synthesize_M_params(
                args.L, args.R, args.N, args.exponent, seed=args.seed
            )
        else:
            params, _ = subs_mod.synthesize_rel_params(
                args.L, args.R, args.N, args.exponent, seed=args.seed
            )
    else:
        raise ConfigurationError("verify needs either --params FILE or --auto")

    if isinstance(params, subs_mod.MSubParams):
        if args.family != "speed-limited":
            raise ConfigurationError("params file holds a speed-limited record")
        report = verify_mod.certify_m_family(params)
    else:
        if args.family != "relativistic":
            raise ConfigurationError("params file holds a relativistic record")
        report = verify_mod.certify_rel_family(params, seed=args.seed)

    out = Path(args.out)
    path = out / "certification.json"
    _write_json(path, report.to_dict())
    print(f"wrote {path} (pass={report.passed})")
    return 0 if report.passed else 4


def cmd_waiting_time(args) -> int:
    doc = _load_json(args.config)
    model = parse_model(_require(doc, "model", "config"))
    study = _require(doc, "study", "config")
    L_values = [float(v) for v in _require(study, "L_values", "study section")]
    if len(L_values) == 0:
        raise ConfigurationError("study.L_values must not be empty")
    config = bounds_mod.WaitingTimeStudyConfig(
        cells=int(study.get("cells", 1024)),
        r_obs=float(study.get("r_obs", 1.0)),
        r_max=float(study.get("r_max", 2.5)),
        cap_ratio=float(study.get("cap_ratio", 0.6)),
        threshold_rel=float(study.get("threshold_rel", 1e-2)),
        t_max_factor=float(study.get("t_max_factor", 1.5)),
        cfl=float(study.get("cfl", 0.4)),
    )
    C = doc.get("bounds", {}).get("C")
    prefix = doc.get("output", {}).get("prefix", "wt")

    if len(L_values) >= 3:
        result = bounds_mod.scaling_study(model, L_values, config, jobs=args.jobs)
        reports = result.reports
        summary = result.summary()
        slope = result.slope
    else:
        reports, _ = bounds_mod.run_study_members(
            model, L_values, config, jobs=args.jobs
        )
        summary = {
            "slope": math.nan,
            "intercept": math.nan,
            "residual": math.nan,
            "n_conclusive": int(sum(r.conclusive for r in reports)),
            "all_within_upper": bool(
                all(
                    (not r.conclusive) or r.t_star_measured <= 1.1 * r.T_upper
                    for r in reports
                )
            ),
        }
        slope = math.nan

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{prefix}_scaling.csv"
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("L,t_star,T_upper,conclusive\n")
        for L, rep in zip(L_values, reports):
            fh.write(
                f"{_fmt(L)},{_fmt(rep.t_star_measured)},"
                f"{_fmt(rep.T_upper)},{int(rep.conclusive)}\n"
            )
    for L, rep in zip(L_values, reports):
        rep_doc = rep.to_dict()
        if C is not None:
            rep_doc["T_lower"] = bounds_mod.lower_bound_T_ell(L, float(C), model)
        _write_json(out / f"{prefix}_report_L{_fmt(L)}.json", rep_doc)
    _write_json(out / f"{prefix}_summary.json", summary)
    print(f"wrote {csv_path} (slope={slope:.4f})")
    return 0


def cmd_bounds(args) -> int:
    model = (
        relativistic_pm(args.exponent, args.dimension)
        if args.model == "relativistic"
        else speed_limited_pm(args.exponent, args.dimension)
    )
    T_u, W = bounds_mod.upper_bound_T_u(args.L, args.dimension, model)
    doc = {
        "model": args.model,
        "exponent": args.exponent,
        "dimension": args.dimension,
        "L": args.L,
        "W": W,
        "T_upper": T_u,
    }
    if args.C is not None:
        doc["C"] = args.C
        doc["T_lower"] = bounds_mod.lower_bound_T_ell(args.L, args.C, model)
    out = Path(args.out)
    path = out / "bounds.json"
    _write_json(path, doc)
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_subsolution(args) -> int:
    if args.params is not None:
        params = _load_params(args.params)
    else:
        missing = [k for k in ("L", "R", "N", "exponent") if getattr(args, k) is None]
        if missing:
            raise ConfigurationError(f"--auto needs --L --R --N --exponent ({missing})")
        if args.family == "speed-limited":
            params, _ = subs_mod.synthesize_M_params(
                args.L, args.R, args.N, args.exponent, seed=args.seed
            )
        else:
            params, _ = subs_mod.synthesize_rel_params(
                args.L, args.R, args.N, args.exponent, seed=args.seed
            )
    view = subs_mod.RadialSubsolution(params)
    t = args.time
    if t < 0.0 or t >= view.window:
        raise ConfigurationError(f"time {t} outside the validity window (0, {view.window})")
    radii = np.linspace(0.0, 1.2 * view.support_radius(t), args.samples)
    values = view.profile(t, radii)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "subsolution.csv"
    write_snapshot_csv(path, radii, values)
    params_path = out / "subsolution_params.json"
    _write_json(params_path, params.to_dict())
    print(f"wrote {path}")
    return 0


# =============================================================================
# Entry point
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxsat",
        description=(
            "Subsolution certification, waiting-time bounds and radial "
            "finite-volume simulation for flux-saturated porous medium models"
        ),
    )
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--jobs", type=int, default=1, help="parallel sweep runs")
    parser.add_argument("--seed", type=int, default=42, help="quasi-random seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a configured simulation")
    p_sim.add_argument("config")
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="certify a subsolution parameter set")
    p_ver.add_argument(
        "--family", choices=("speed-limited", "relativistic"), required=True
    )
    p_ver.add_argument("--params", help="JSON parameter record")
    p_ver.add_argument("--auto", action="store_true", help="synthesize parameters")
    p_ver.add_argument("--L", type=float)
    p_ver.add_argument("--R", type=float)
    p_ver.add_argument("--N", type=int)
    p_ver.add_argument("--exponent", type=float)
    p_ver.set_defaults(func=cmd_verify)

    p_wt = sub.add_parser("waiting-time", help="waiting-time scaling study")
    p_wt.add_argument("config")
    p_wt.set_defaults(func=cmd_waiting_time)

    p_b = sub.add_parser("bounds", help="analytic waiting-time bounds")
    p_b.add_argument("--model", choices=("relativistic", "speed-limited"), required=True)
    p_b.add_argument("--exponent", type=float, required=True)
    p_b.add_argument("--dimension", type=int, default=1)
    p_b.add_argument("--L", type=float, required=True)
    p_b.add_argument("--C", type=float, help="external lower-bound constant")
    p_b.set_defaults(func=cmd_bounds)

    p_sub = sub.add_parser("subsolution", help="emit a family profile as CSV")
    p_sub.add_argument(
        "--family", choices=("speed-limited", "relativistic"), required=True
    )
    p_sub.add_argument("--params", help="JSON parameter record")
    p_sub.add_argument("--L", type=float)
    p_sub.add_argument("--R", type=float)
    p_sub.add_argument("--N", type=int)
    p_sub.add_argument("--exponent", type=float)
    p_sub.add_argument("--time", type=float, default=0.0)
    p_sub.add_argument("--samples", type=int, default=512)
    p_sub.set_defaults(func=cmd_subsolution)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ConfigurationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (SolverFailureError, CFLViolationError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except SynthesisError as exc:
        print(f"synthesis failure: {exc}", file=sys.stderr)
        return 4


def console_main():  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
