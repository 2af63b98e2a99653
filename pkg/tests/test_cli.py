"""Command line behavior: exit codes, CSV shape, determinism, demos."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from phasekey import cli
from phasekey.checks import CheckResult
from phasekey.security import SecurityParams, encrypted_trace_distance, pgm_closed_form


def run_cli(args):
    return cli.main(list(args))


class TestArgumentParsing:
    def test_int_list_single(self):
        assert cli.parse_int_list("7") == [7]

    def test_int_list_commas_and_range(self):
        assert cli.parse_int_list("1,4,2-5") == [1, 2, 3, 4, 5]

    def test_int_list_dedupes_and_sorts(self):
        assert cli.parse_int_list("9,1,9") == [1, 9]

    def test_int_list_rejects_garbage(self):
        import argparse
        with pytest.raises(argparse.ArgumentTypeError):
            cli.parse_int_list("1,x")
        with pytest.raises(argparse.ArgumentTypeError):
            cli.parse_int_list("5-2")

    def test_energy_rule_fixed_is_none(self):
        assert cli.parse_energy_rule("fixed") is None

    def test_energy_rule_power(self):
        rule = cli.parse_energy_rule("m^0.3")
        assert rule(8) == pytest.approx(8 ** 0.3)

    def test_energy_rule_rejects_unknown(self):
        with pytest.raises(cli._UsageError):
            cli.parse_energy_rule("log")

    def test_alpha_grid_endpoint_inclusive(self):
        grid = cli.alpha_grid(0.0, 2.0, 0.02)
        assert len(grid) == 101
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(2.0, abs=1e-12)

    def test_alpha_grid_rejects_bad_step(self):
        with pytest.raises(cli._UsageError):
            cli.alpha_grid(0.0, 1.0, 0.0)
        with pytest.raises(cli._UsageError):
            cli.alpha_grid(1.0, 0.0, 0.1)


class TestExitCodes:
    def test_help_exits_zero(self, capsys):
        assert run_cli(["--help"]) == 0
        capsys.readouterr()

    def test_missing_command_is_usage(self, capsys):
        assert run_cli([]) == 1
        capsys.readouterr()

    def test_unknown_command_is_usage(self, capsys):
        assert run_cli(["frobnicate"]) == 1
        capsys.readouterr()

    def test_w_exceeding_m_is_usage(self, capsys):
        rc = run_cli(["security-sweep", "--quantity", "ratio", "--m", "2",
                      "--w", "3"])
        assert rc == 1
        assert "w" in capsys.readouterr().err

    def test_bad_energy_rule_is_usage(self, capsys):
        rc = run_cli(["mutinfo", "--m", "2", "--energy-rule", "m**2"])
        assert rc == 1
        capsys.readouterr()

    def test_capacity_exceeded_is_three(self, tmp_path, capsys):
        circuit = tmp_path / "big.json"
        circuit.write_text(
            '{"type":"circuit","gates":[{"kind":"nonlinear",'
            '"terms":[{"exps":[2,0,0,0],"g":1.0}],"t":0.5}]}')
        rc = run_cli(["protocol-demo", "--m", "4", "--circuit", str(circuit),
                      "--out", str(tmp_path / "t.jsonl")])
        assert rc == 3
        assert "capacity" in capsys.readouterr().err

    def test_failed_check_is_two(self, monkeypatch, capsys):
        monkeypatch.setattr(
            cli, "run_checks",
            lambda level: [CheckResult("stub", deviation=1.0, tolerance=1e-9)])
        assert run_cli(["oracle-check"]) == 2
        out = capsys.readouterr().out
        assert "FAIL stub" in out

    def test_failed_correctness_is_two(self, monkeypatch, tmp_path, capsys):
        real = cli.run_protocol

        def doctored(*a, **kw):
            tr = real(*a, **kw)
            tr.correctness["pass"] = False
            return tr

        monkeypatch.setattr(cli, "run_protocol", doctored)
        rc = run_cli(["protocol-demo", "--m", "1", "--out",
                      str(tmp_path / "t.jsonl")])
        assert rc == 2
        capsys.readouterr()


class TestSecuritySweep:
    def test_header_and_row_grid(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = run_cli(["security-sweep", "--quantity", "enc_distance",
                      "--m", "2,1", "--w", "0-1", "--d", "5",
                      "--alpha-min", "0.2", "--alpha-max", "0.6",
                      "--alpha-step", "0.2", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "quantity,m,d,abs_alpha,E,w,value"
        # 2 m-values x 2 w-values x 3 alphas
        assert len(lines) == 1 + 12
        ms = [int(line.split(",")[1]) for line in lines[1:]]
        assert ms == sorted(ms)

    def test_values_match_closed_form(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(["security-sweep", "--quantity", "enc_distance", "--m", "3",
                 "--w", "2", "--d", "7", "--alpha-min", "0.5",
                 "--alpha-max", "0.5", "--alpha-step", "0.1",
                 "--out", str(out)])
        row = out.read_text().splitlines()[1].split(",")
        p = SecurityParams(m=3, d=7, abs_alpha=0.5, w=2)
        assert float(row[3]) == 0.5
        assert float(row[4]) == pytest.approx(p.E, abs=1e-15)
        assert float(row[6]) == pytest.approx(encrypted_trace_distance(p), abs=1e-15)

    def test_ratio_undefined_at_alpha_zero_and_w_zero(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(["security-sweep", "--quantity", "ratio", "--m", "2",
                 "--w", "0,1", "--alpha-min", "0.0", "--alpha-max", "0.3",
                 "--alpha-step", "0.3", "--out", str(out)])
        lines = out.read_text().splitlines()[1:]
        undefined = [line for line in lines if line.endswith(",undefined")]
        # w=0 rows at both alphas, plus the alpha=0 row at w=1
        assert len(undefined) == 3
        defined = [line for line in lines if not line.endswith(",undefined")]
        assert len(defined) == 1 and defined[0].split(",")[5] == "1"

    def test_energy_rule_fixed_pins_alpha(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(["security-sweep", "--quantity", "ratio", "--m", "2-4",
                 "--w", "1", "--energy-rule", "fixed", "--E", "1.0",
                 "--out", str(out)])
        lines = out.read_text().splitlines()[1:]
        assert len(lines) == 3
        for line in lines:
            parts = line.split(",")
            m = int(parts[1])
            assert float(parts[3]) == pytest.approx(math.sqrt(1.0 / m), abs=1e-15)
            assert float(parts[4]) == pytest.approx(1.0, abs=1e-15)

    def test_energy_rule_power_scales_energy(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(["security-sweep", "--quantity", "ratio", "--m", "2,8",
                 "--w", "1", "--energy-rule", "m^0.3", "--out", str(out)])
        lines = out.read_text().splitlines()[1:]
        es = [float(line.split(",")[4]) for line in lines]
        assert es[0] == pytest.approx(2 ** 0.3, abs=1e-12)
        assert es[1] == pytest.approx(8 ** 0.3, abs=1e-12)

    def test_output_bytes_are_stable(self, tmp_path):
        args = ["security-sweep", "--quantity", "unenc_distance", "--m", "4",
                "--w", "1-4", "--alpha-min", "0.0", "--alpha-max", "1.0",
                "--alpha-step", "0.1"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(args + ["--out", str(a)])
        run_cli(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_floats_carry_round_trip_precision(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(["security-sweep", "--quantity", "enc_distance", "--m", "1",
                 "--w", "1", "--alpha-min", "0.3", "--alpha-max", "0.3",
                 "--alpha-step", "0.1", "--d", "3", "--out", str(out)])
        value = out.read_text().splitlines()[1].split(",")[6]
        assert float(value) == encrypted_trace_distance(
            SecurityParams(m=1, d=3, abs_alpha=0.3, w=1))


class TestMutinfo:
    def test_header_and_values(self, tmp_path):
        out = tmp_path / "mi.csv"
        rc = run_cli(["mutinfo", "--m", "2-4", "--energy-rule", "fixed",
                      "--E", "1.0", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "m,E,abs_alpha,i_total"
        for line in lines[1:]:
            m_s, e_s, a_s, i_s = line.split(",")
            m = int(m_s)
            assert float(e_s) == 1.0
            assert float(a_s) == pytest.approx(math.sqrt(1.0 / m), abs=1e-15)
            ref = pgm_closed_form(math.sqrt(1.0 / m), modes=m).i_total
            assert float(i_s) == pytest.approx(ref, abs=1e-15)

    def test_power_rule_grows_information(self, tmp_path):
        out = tmp_path / "mi.csv"
        run_cli(["mutinfo", "--m", "2-12", "--energy-rule", "m^0.3",
                 "--out", str(out)])
        vals = [float(line.split(",")[3])
                for line in out.read_text().splitlines()[1:]]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_d_flag_accepted_without_effect(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(["mutinfo", "--m", "3", "--d", "2", "--out", str(a)])
        run_cli(["mutinfo", "--m", "3", "--d", "999", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestOracleCheck:
    def test_fast_level_passes_and_prints_one_line_per_check(self, capsys):
        assert run_cli(["oracle-check", "--level", "fast"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert all(line.startswith("PASS ") for line in out[:-1])
        assert out[-1] == f"{len(out) - 1}/{len(out) - 1} checks passed at level fast"
        for line in out[:-1]:
            assert "max deviation" in line and "tolerance" in line

    def test_output_is_deterministic(self, capsys):
        run_cli(["oracle-check", "--level", "fast"])
        first = capsys.readouterr().out
        run_cli(["oracle-check", "--level", "fast"])
        assert capsys.readouterr().out == first


class TestProtocolDemo:
    def test_swap_demo_decodes_swapped_bits(self, tmp_path, capsys):
        out = tmp_path / "t.jsonl"
        rc = run_cli(["protocol-demo", "--m", "2", "--x", "01", "--alpha",
                      "1.1", "--circuit", "swap", "--seed", "5",
                      "--out", str(out)])
        assert rc == 0
        text = capsys.readouterr().out
        assert "decoded y = 10" in text
        records = [json.loads(line) for line in out.read_text().splitlines()]
        kinds = [r["type"] for r in records]
        assert kinds == ["params", "key", "message", "message", "message",
                         "decrypt_ops", "correctness", "output"]
        assert records[-1]["y"] == "10" and records[-1]["match"] is True

    def test_kerr_cat_transcript_has_high_fidelity_record(self, tmp_path, capsys):
        out = tmp_path / "t.jsonl"
        rc = run_cli(["protocol-demo", "--m", "1", "--x", "0", "--alpha",
                      "1.5", "--circuit", "kerr-cat", "--out", str(out)])
        assert rc == 0
        capsys.readouterr()
        last = json.loads(out.read_text().splitlines()[-1])
        assert last["type"] == "cat_fidelity"
        assert 1 - 1e-8 <= last["value"] <= 1.0

    def test_random_bits_are_seed_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        for path in (a, b):
            run_cli(["protocol-demo", "--m", "6", "--seed", "42",
                     "--out", str(path)])
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_x_must_match_m(self, tmp_path, capsys):
        rc = run_cli(["protocol-demo", "--m", "3", "--x", "01"])
        assert rc == 1
        assert "--x" in capsys.readouterr().err

    def test_bad_x_characters_are_usage(self, capsys):
        rc = run_cli(["protocol-demo", "--m", "2", "--x", "ab"])
        assert rc == 1
        capsys.readouterr()

    def test_kerr_cat_needs_one_mode(self, capsys):
        rc = run_cli(["protocol-demo", "--m", "2", "--circuit", "kerr-cat"])
        assert rc == 1
        capsys.readouterr()

    def test_circuit_file_round_trip(self, tmp_path, capsys):
        circuit = tmp_path / "c.json"
        circuit.write_text(
            '{"type":"circuit","gates":[{"kind":"interferometer",'
            '"matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]}]}')
        out = tmp_path / "t.jsonl"
        rc = run_cli(["protocol-demo", "--m", "2", "--x", "10", "--circuit",
                      str(circuit), "--out", str(out)])
        assert rc == 0
        assert "decoded y = 01" in capsys.readouterr().out

    def test_malformed_circuit_file_is_usage(self, tmp_path, capsys):
        circuit = tmp_path / "bad.json"
        circuit.write_text('{"type":"circuit","gates":[{')
        rc = run_cli(["protocol-demo", "--m", "1", "--circuit", str(circuit)])
        assert rc == 1
        assert "bad circuit file" in capsys.readouterr().err


class TestSubprocessSurface:
    def test_module_help_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "phasekey.cli", "--help"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "security-sweep" in proc.stdout

    def test_module_usage_error_exits_one(self):
        proc = subprocess.run(
            [sys.executable, "-m", "phasekey.cli", "security-sweep"],
            capture_output=True, text=True)
        assert proc.returncode == 1
        assert "--quantity" in proc.stderr
