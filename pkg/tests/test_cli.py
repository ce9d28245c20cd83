"""Command-line interface: determinism, layering, exit codes, formats."""

import io
import math
from contextlib import redirect_stderr, redirect_stdout

import pytest

from bohratom.cli import main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def parse_rows(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    return header, [ln.split(",") for ln in lines[1:]]


class TestDeterminismAndFormat:
    def test_byte_identical_without_timestamp(self):
        a = run_cli(["orbit", "--alpha", "1/137", "--n", "1,2"])
        b = run_cli(["orbit", "--alpha", "1/137", "--n", "1,2"])
        assert a == b and a[0] == 0

    def test_timestamp_breaks_determinism_knob(self):
        code, out, _ = run_cli(["orbit", "--alpha", "1/137", "--timestamp"])
        assert code == 0
        assert any(ln.startswith("# timestamp") for ln in out.splitlines())

    def test_metadata_preamble(self):
        code, out, _ = run_cli(["orbit", "--alpha", "1/137"])
        assert code == 0
        assert out.startswith("#")
        assert any("alpha" in ln for ln in out.splitlines() if ln.startswith("#"))

    def test_seventeen_digit_round_trip(self):
        code, out, _ = run_cli(["orbit", "--alpha", "1/137", "--n", "1"])
        header, rows = parse_rows(out)
        row = dict(zip(header, rows[0]))
        v = float(row["v"])
        r = float(row["r"])
        e = float(row["E"])
        # the printed values reproduce the closed forms bit-for-bit
        assert v == 1.0 / 137.0
        assert r == 1.0 * 137.0 * math.sqrt(1.0 - v * v)
        assert e == math.sqrt(1.0 - v * v)

    def test_output_file(self, tmp_path):
        target = tmp_path / "orbit.csv"
        code, out, _ = run_cli(["orbit", "--alpha", "1/3", "-o", str(target)])
        assert code == 0 and out == ""
        assert target.read_text().startswith("#")

    def test_table_command(self):
        code, out, _ = run_cli(["table", "--preset", "table2"])
        assert code == 0
        header, rows = parse_rows(out)
        table = {r[0]: r[1:] for r in rows}
        # n = 1 column of the alpha = 1/137 table
        idx = header.index("n=1") - 1
        assert table["m_plus"][idx] == "138"
        assert table["m_minus"][idx] == "136"
        # half-integer rows stay exact rationals
        idx_half = header.index("n=1/2") - 1
        assert table["m_plus"][idx_half] == "139/4"


class TestLayering:
    def test_flag_beats_env_beats_config(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.toml"
        cfg.write_text('alpha = "1/100"\nn = "2"\n')
        # config only
        _, out, _ = run_cli(["orbit", "--config", str(cfg)])
        _, rows = parse_rows(out)
        assert float(rows[0][0]) == 2.0
        # env over config
        monkeypatch.setenv("BOHRATOM_N", "3")
        _, out, _ = run_cli(["orbit", "--config", str(cfg)])
        _, rows = parse_rows(out)
        assert float(rows[0][0]) == 3.0
        # flag over env
        _, out, _ = run_cli(["orbit", "--config", str(cfg), "--n", "4"])
        _, rows = parse_rows(out)
        assert float(rows[0][0]) == 4.0

    def test_alpha_inv(self):
        a = run_cli(["orbit", "--alpha-inv", "137", "--n", "1"])
        b = run_cli(["orbit", "--alpha", "1/137", "--n", "1"])
        assert a[1] == b[1]

    def test_preset_overridable(self):
        code, out, _ = run_cli(["field-map", "--preset", "fig2",
                                "--grid-n", "16"])
        assert code == 0
        header, rows = parse_rows(out)
        assert len(rows) == 16 * 16

    def test_missing_alpha(self):
        code, _, err = run_cli(["orbit"])
        assert code == 2
        assert "alpha" in err

    def test_bad_config_file(self, tmp_path):
        cfg = tmp_path / "broken.toml"
        cfg.write_text("alpha = [unclosed")
        code, _, err = run_cli(["orbit", "--config", str(cfg)])
        assert code == 2


class TestExitCodes:
    def test_success(self):
        assert run_cli(["orbit", "--alpha", "1/137"])[0] == 0

    def test_config_error_is_2(self):
        assert run_cli(["orbit", "--alpha", "0.7"])[0] == 2  # past the bound
        assert run_cli(["orbit", "--alpha", "2"])[0] == 2
        assert run_cli(["orbit", "--alpha", "1/137", "--n", ""])[0] == 2

    def test_domain_error_is_3(self):
        # n below alpha: superluminal orbit, a runtime domain failure
        code, _, err = run_cli(["orbit", "--alpha", "1/3", "--n", "1/4"])
        assert code == 3

    def test_unknown_command_is_2(self):
        assert run_cli(["no-such-command"])[0] == 2

    def test_check_pass_is_0(self):
        code, out, _ = run_cli(["check", "--alpha", "1/3", "--n", "1,2"])
        assert code == 0
        assert "FAIL" not in out

    def test_check_grid_rejection(self):
        code, _, _ = run_cli(["field-map", "--preset", "fig2",
                              "--grid-n", "15"])
        assert code == 2


class TestPhysicsSmoke:
    def test_orbit_wave_notes(self):
        code, out, _ = run_cli(["orbit-wave", "--preset", "fig1", "--n", "1"])
        assert code == 0
        notes = dict(ln[2:].split(" = ", 1) for ln in out.splitlines()
                     if ln.startswith("# ") and " = " in ln)
        assert float(notes["phase_wave_zero_crossings.n=1"]) == 2.0
        assert float(notes["envelope_zero_crossings.n=1"]) == 6.0
        assert abs(float(notes["closure_distance.n=1"])) < 1e-9

    def test_integrate_drift_notes(self):
        code, out, _ = run_cli(["integrate", "--alpha", "1/137", "--n", "1",
                                "--periods", "2"])
        assert code == 0
        notes = dict(ln[2:].split(" = ", 1) for ln in out.splitlines()
                     if ln.startswith("# ") and " = " in ln)
        assert abs(float(notes["radius_drift_rel"])) < 1e-9
        assert abs(float(notes["action_loop_over_2pi"]) - 1.0) < 1e-8

    def test_integrate_detuned_slope(self):
        code, out, _ = run_cli(["integrate", "--alpha", "1/137", "--n", "1",
                                "--periods", "1", "--omega-p-scale", "1.01"])
        assert code == 0
        notes = dict(ln[2:].split(" = ", 1) for ln in out.splitlines()
                     if ln.startswith("# ") and " = " in ln)
        slope = float(notes["phase_residual_slope"])
        predicted = float(notes["phase_residual_slope_predicted"])
        assert slope == pytest.approx(predicted, rel=1e-4)
