"""End-to-end tests of the command line interface.

Each test runs the CLI in a subprocess so the exit-code contract is
exercised exactly as a shell user would see it: 0 success, 2 check
failure, 3 resource guard, 4 bad configuration or invocation.
"""

import json
import subprocess
import sys

import numpy as np

from pspinlab import load_field


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "pspinlab.cli", *args],
        capture_output=True,
        text=True,
    )


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestSample:
    def test_writes_loadable_field_pair(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "sample.json",
            {"experiment": "sample", "n": 5, "p": 2, "master_seed": 7},
        )
        proc = run_cli("sample", "--config", cfg, "--out", str(tmp_path / "out"))
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.startswith("wrote ")
        data_path = proc.stdout.split()[1]
        assert data_path.endswith(".f64")
        field = load_field(data_path[: -len(".f64")], verify=True)
        assert field.n == 5
        assert field.values.shape == (32,)
        assert np.all(np.isfinite(field.values))

    def test_resource_guard_exits_3(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "huge.json",
            {"experiment": "sample", "n": 27, "p": 2},
        )
        proc = run_cli("sample", "--config", cfg, "--out", str(tmp_path))
        assert proc.returncode == 3
        assert "resource limit" in proc.stderr


class TestPhaseDiagram:
    def test_success_writes_tables_and_pass_lines(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "phase.json",
            {
                "experiment": "phase_diagram",
                "temperature_list": [2.0, 0.5],
                "gamma_list": [0.0, 2.0],
            },
        )
        out = tmp_path / "out"
        proc = run_cli("phase-diagram", "--config", cfg, "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        written = [ln for ln in proc.stdout.splitlines() if ln.startswith("wrote ")]
        assert len(written) == 3  # results + gamma_c curve + freezing line
        assert (out / "phase_diagram.csv").exists()
        first = (out / "phase_diagram.csv").read_text().splitlines()[0]
        assert first.startswith("# config_hash=")
        assert all(
            ln.startswith("PASS ")
            for ln in proc.stdout.splitlines()
            if not ln.startswith("wrote ")
        )

    def test_json_format_single_file(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "phase.json",
            {
                "experiment": "phase_diagram",
                "temperature_list": [1.0],
                "gamma_list": [0.0],
            },
        )
        out = tmp_path / "out"
        proc = run_cli(
            "phase-diagram", "--config", cfg, "--out", str(out), "--format", "json"
        )
        assert proc.returncode == 0, proc.stderr
        payload = json.loads((out / "phase_diagram.json").read_text())
        assert set(payload["tables"]) == {"results", "gamma_c_curve", "freezing_line"}
        assert payload["checks"] == {}  # the diagram is analytic, nothing to test
        assert len(payload["config_hash"]) == 16


class TestExitCodes:
    def test_failed_check_exits_2(self, tmp_path):
        # a gap threshold of zero cannot be met by any finite-size run
        cfg = write_config(
            tmp_path,
            "converge.json",
            {
                "experiment": "converge",
                "n_list": [4, 6],
                "p_rule": "equal_n",
                "points": [[1.0, 0.5]],
                "realizations": 3,
                "gap_threshold": 0.0,
            },
        )
        proc = run_cli("converge", "--config", cfg, "--out", str(tmp_path / "o"))
        assert proc.returncode == 2
        assert any(ln.startswith("FAIL ") for ln in proc.stdout.splitlines())

    def test_unknown_config_key_exits_4(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "typo.json",
            {"experiment": "sample", "n": 5, "p": 2, "realisations": 3},
        )
        proc = run_cli("sample", "--config", cfg)
        assert proc.returncode == 4
        assert "config error" in proc.stderr

    def test_subcommand_experiment_mismatch_exits_4(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "sample.json",
            {"experiment": "sample", "n": 5, "p": 2},
        )
        proc = run_cli("clusters", "--config", cfg)
        assert proc.returncode == 4
        assert "not 'clusters'" in proc.stderr

    def test_unreadable_config_exits_4(self, tmp_path):
        proc = run_cli("sample", "--config", str(tmp_path / "missing.json"))
        assert proc.returncode == 4
        assert "cannot read config" in proc.stderr

    def test_missing_config_flag_exits_4(self):
        proc = run_cli("sample")
        assert proc.returncode == 4


class TestDeterminism:
    def test_thread_count_does_not_change_bytes(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "press.json",
            {
                "experiment": "pressure",
                "n": 6,
                "p": 2,
                "beta": 1.0,
                "gamma": 0.5,
                "master_seed": 11,
            },
        )
        outputs = []
        for threads, sub in ((1, "a"), (4, "b")):
            out = tmp_path / sub
            proc = run_cli(
                "pressure",
                "--config",
                cfg,
                "--out",
                str(out),
                "--threads",
                str(threads),
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append((out / "pressure.csv").read_bytes())
        assert outputs[0] == outputs[1]

    def test_seed_override_changes_hash(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "press.json",
            {
                "experiment": "pressure",
                "n": 5,
                "p": 2,
                "beta": 1.0,
                "gamma": 0.0,
                "master_seed": 1,
            },
        )
        hashes = []
        for seed, sub in ((1, "a"), (2, "b")):
            out = tmp_path / sub
            proc = run_cli(
                "pressure", "--config", cfg, "--out", str(out), "--seed", str(seed)
            )
            assert proc.returncode == 0, proc.stderr
            hashes.append((out / "pressure.csv").read_text().splitlines()[0])
        assert hashes[0] != hashes[1]
