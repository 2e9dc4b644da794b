"""CLI exit codes, artifact formats, determinism and schema validation."""

import dataclasses
import json
from pathlib import Path

import jsonschema
import pytest

from fluxsat.cli import main
from fluxsat.subsolutions import m_sub_w_upper

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def _schema(name):
    with open(SCHEMA_DIR / name, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
    return str(path)


def _sim_config(tmp_path, **overrides):
    doc = {
        "model": {"family": "speed_limited", "exponent": 2.0, "dimension": 1},
        "grid": {"r_max": 2.0, "cells": 128},
        "datum": {"type": "bump", "height": 0.5, "radius": 1.0},
        "run": {
            "t_end": 0.1,
            "observe_interval": 0.025,
            "snapshot_times": [0.0, 0.1],
            "cfl": 0.5,
            "x0_radius": 1.5,
        },
        "output": {"prefix": "demo"},
    }
    for key, value in overrides.items():
        doc[key] = value
    return _write(tmp_path / "sim.json", doc)


def test_simulate_success(tmp_path):
    cfg = _sim_config(tmp_path)
    assert main(["--out", str(tmp_path), "simulate", cfg]) == 0
    lines = (tmp_path / "demo_trace.csv").read_text().splitlines()
    assert lines[0] == "t,mass,support_radius,u_at_x0"
    ts = [float(line.split(",")[0]) for line in lines[1:]]
    assert ts == sorted(ts) and len(ts) >= 4
    snaps = sorted(tmp_path.glob("demo_snapshot_*.csv"))
    assert len(snaps) == 2
    assert snaps[0].read_text().splitlines()[0] == "r,u"
    summary = json.loads((tmp_path / "demo_summary.json").read_text())
    jsonschema.validate(summary, _schema("run_summary.schema.json"))


def test_simulate_datum_exceeds_grid(tmp_path):
    cfg = _sim_config(tmp_path, datum={"type": "bump", "height": 0.5, "radius": 3.0})
    assert main(["--out", str(tmp_path), "simulate", cfg]) == 2


def test_simulate_negative_t_end(tmp_path):
    cfg = _sim_config(
        tmp_path, run={"t_end": -1.0, "observe_interval": 0.1}
    )
    assert main(["--out", str(tmp_path), "simulate", cfg]) == 2


def test_simulate_missing_config(tmp_path):
    assert main(["--out", str(tmp_path), "simulate", str(tmp_path / "nope.json")]) == 2


def test_simulate_determinism(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    cfg = _sim_config(tmp_path)
    assert main(["--out", str(out1), "--seed", "42", "simulate", cfg]) == 0
    assert main(["--out", str(out2), "--seed", "42", "simulate", cfg]) == 0
    assert (out1 / "demo_trace.csv").read_bytes() == (out2 / "demo_trace.csv").read_bytes()
    for snap in ("demo_snapshot_000.csv", "demo_snapshot_001.csv"):
        assert (out1 / snap).read_bytes() == (out2 / snap).read_bytes()


def test_verify_auto_pass(tmp_path):
    code = main(
        [
            "--out", str(tmp_path), "verify", "--family", "speed-limited",
            "--auto", "--L", "1", "--R", "1", "--N", "1", "--exponent", "2",
        ]
    )
    assert code == 0
    doc = json.loads((tmp_path / "certification.json").read_text())
    assert doc["pass"] is True
    jsonschema.validate(doc, _schema("certification.schema.json"))


def test_verify_relativistic_auto_pass(tmp_path):
    code = main(
        [
            "--out", str(tmp_path), "verify", "--family", "relativistic",
            "--auto", "--L", "1", "--R", "1", "--N", "1", "--exponent", "2",
        ]
    )
    assert code == 0
    doc = json.loads((tmp_path / "certification.json").read_text())
    jsonschema.validate(doc, _schema("certification.schema.json"))


def test_verify_tampered_params_fail(tmp_path, m_desk):
    p, _ = m_desk
    bad = dataclasses.replace(p, w=1.1 * m_sub_w_upper(p))
    params_file = _write(tmp_path / "bad.json", bad.to_dict())
    code = main(
        ["--out", str(tmp_path), "verify", "--family", "speed-limited",
         "--params", params_file]
    )
    assert code == 4
    doc = json.loads((tmp_path / "certification.json").read_text())
    assert doc["pass"] is False
    jsonschema.validate(doc, _schema("certification.schema.json"))


def test_verify_params_missing_field(tmp_path, m_desk):
    p, _ = m_desk
    doc = p.to_dict()
    del doc["w"]
    params_file = _write(tmp_path / "short.json", doc)
    code = main(
        ["--out", str(tmp_path), "verify", "--family", "speed-limited",
         "--params", params_file]
    )
    assert code == 2


def test_verify_without_source(tmp_path):
    assert main(["--out", str(tmp_path), "verify", "--family", "relativistic"]) == 2


def test_waiting_time_study(tmp_path):
    cfg = _write(
        tmp_path / "wt.json",
        {
            "model": {"family": "relativistic", "exponent": 2.0, "dimension": 1},
            "study": {
                "L_values": [1, 2, 4],
                "cells": 128,
                "cfl": 0.85,
                "t_max_factor": 1.5,
            },
            "bounds": {"C": 1.0},
            "output": {"prefix": "wt"},
        },
    )
    assert main(["--out", str(tmp_path), "waiting-time", cfg]) == 0
    lines = (tmp_path / "wt_scaling.csv").read_text().splitlines()
    assert lines[0] == "L,t_star,T_upper,conclusive"
    assert len(lines) == 4
    summary = json.loads((tmp_path / "wt_summary.json").read_text())
    jsonschema.validate(summary, _schema("scaling_summary.schema.json"))
    assert -1.25 <= summary["slope"] <= -0.75
    report = json.loads((tmp_path / "wt_report_L1.json").read_text())
    jsonschema.validate(report, _schema("waiting_time_report.schema.json"))
    assert report["T_lower"] == pytest.approx(1.0)


def test_waiting_time_empty_L_list(tmp_path):
    cfg = _write(
        tmp_path / "wt.json",
        {
            "model": {"family": "relativistic", "exponent": 2.0, "dimension": 1},
            "study": {"L_values": []},
        },
    )
    assert main(["--out", str(tmp_path), "waiting-time", cfg]) == 2


def test_waiting_time_single_L(tmp_path):
    cfg = _write(
        tmp_path / "wt1.json",
        {
            "model": {"family": "relativistic", "exponent": 2.0, "dimension": 1},
            "study": {"L_values": [1.0], "cells": 128, "cfl": 0.85,
                      "t_max_factor": 1.5},
            "output": {"prefix": "one"},
        },
    )
    assert main(["--out", str(tmp_path), "waiting-time", cfg]) == 0
    summary = json.loads((tmp_path / "one_summary.json").read_text())
    jsonschema.validate(summary, _schema("scaling_summary.schema.json"))
    assert summary["slope"] is None
    report = json.loads((tmp_path / "one_report_L1.json").read_text())
    assert report["conclusive"] is True
    assert report["t_star_measured"] <= 1.1 * 16.0


def test_bounds_command(tmp_path):
    code = main(
        ["--out", str(tmp_path), "bounds", "--model", "relativistic",
         "--exponent", "2", "--L", "1", "--C", "3"]
    )
    assert code == 0
    doc = json.loads((tmp_path / "bounds.json").read_text())
    assert doc["W"] == 16.0
    assert doc["T_lower"] == pytest.approx(3.0)


def test_subsolution_emission(tmp_path):
    code = main(
        ["--out", str(tmp_path), "subsolution", "--family", "speed-limited",
         "--L", "1", "--R", "1", "--N", "1", "--exponent", "2"]
    )
    assert code == 0
    lines = (tmp_path / "subsolution.csv").read_text().splitlines()
    assert lines[0] == "r,u"
    assert len(lines) == 513
    params = json.loads((tmp_path / "subsolution_params.json").read_text())
    assert params["family"] == "speed_limited"


def test_subsolution_roundtrip_via_params_file(tmp_path, rel_desk):
    p, _ = rel_desk
    params_file = _write(tmp_path / "rel.json", p.to_dict())
    code = main(
        ["--out", str(tmp_path), "subsolution", "--family", "relativistic",
         "--params", params_file, "--time", "0.5"]
    )
    assert code == 0


def test_unknown_subcommand_exits_2(tmp_path):
    assert main(["--out", str(tmp_path), "frobnicate"]) == 2


EXAMPLE_DIR = Path(__file__).resolve().parents[1] / "docs" / "examples"


def test_shipped_simulate_config_runs(tmp_path):
    assert main(
        ["--out", str(tmp_path), "simulate", str(EXAMPLE_DIR / "simulate_slpm.json")]
    ) == 0
    summary = json.loads((tmp_path / "slpm_demo_summary.json").read_text())
    jsonschema.validate(summary, _schema("run_summary.schema.json"))
    assert summary["mass_final"] == pytest.approx(summary["mass_initial"], rel=1e-12)


def test_shipped_waiting_time_config_runs(tmp_path):
    assert main(
        ["--out", str(tmp_path), "waiting-time",
         str(EXAMPLE_DIR / "waiting_time_rel.json")]
    ) == 0
    summary = json.loads((tmp_path / "wt_rel_summary.json").read_text())
    assert -1.25 <= summary["slope"] <= -0.75


def test_csv_float_format_roundtrips():
    from fluxsat.cli import _fmt
    import numpy as np

    rng = np.random.default_rng(23)
    for _ in range(200):
        x = float(rng.standard_normal() * 10.0 ** rng.integers(-8, 8))
        assert float(_fmt(x)) == x
