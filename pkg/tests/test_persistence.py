"""Field files, CSV/JSON tables, and config hashing."""

import csv
import json
import math

import numpy as np
import pytest

from pspinlab import (
    ContractViolationError,
    ModelParameters,
    sample_field,
)
from pspinlab.persistence import (
    FORMAT_VERSION,
    canonical_json,
    config_hash,
    load_field,
    save_field,
    write_table_csv,
    write_tables_json,
)


class TestFieldFiles:
    def test_round_trip_is_exact(self, tmp_path):
        field = sample_field(ModelParameters.sk(6, 3), seed=11)
        base = str(tmp_path / "field")
        data_path, meta_path = save_field(field, base)
        assert data_path.endswith(".f64") and meta_path.endswith(".json")
        back = load_field(base)
        assert np.array_equal(back.values, field.values)
        assert back.params == field.params
        assert back.seed == field.seed and back.sampler == field.sampler

    def test_data_bytes_are_little_endian_float64(self, tmp_path):
        field = sample_field(ModelParameters.sk(4, 2), seed=12)
        base = str(tmp_path / "field")
        data_path, _ = save_field(field, base)
        raw = open(data_path, "rb").read()
        assert raw == field.values.astype("<f8").tobytes()
        assert len(raw) == 16 * 8

    def test_sidecar_schema(self, tmp_path):
        field = sample_field(ModelParameters.rem(5), seed=13)
        base = str(tmp_path / "field")
        _, meta_path = save_field(field, base)
        sidecar = json.load(open(meta_path))
        assert sidecar == {
            "format_version": FORMAT_VERSION,
            "n": 5,
            "p": "inf",
            "kind": "rem",
            "seed": 13,
            "sampler": "iid_rem",
        }

    def test_infinite_order_round_trip(self, tmp_path):
        field = sample_field(ModelParameters.rem(5), seed=14)
        base = str(tmp_path / "field")
        save_field(field, base)
        back = load_field(base, verify=True)
        assert back.params.p == math.inf

    def test_verify_accepts_genuine_file(self, tmp_path):
        field = sample_field(ModelParameters.sk(6, 2), seed=15)
        base = str(tmp_path / "field")
        save_field(field, base)
        load_field(base, verify=True)

    def test_verify_detects_tampering(self, tmp_path):
        field = sample_field(ModelParameters.sk(6, 2), seed=16)
        base = str(tmp_path / "field")
        data_path, _ = save_field(field, base)
        raw = bytearray(open(data_path, "rb").read())
        raw[8] ^= 1  # flip one mantissa bit of the second value
        open(data_path, "wb").write(bytes(raw))
        load_field(base)  # unverified load stays permissive
        with pytest.raises(ContractViolationError):
            load_field(base, verify=True)

    def test_rejects_unknown_format_version(self, tmp_path):
        field = sample_field(ModelParameters.sk(4, 2), seed=17)
        base = str(tmp_path / "field")
        _, meta_path = save_field(field, base)
        sidecar = json.load(open(meta_path))
        sidecar["format_version"] = FORMAT_VERSION + 1
        json.dump(sidecar, open(meta_path, "w"))
        with pytest.raises(ValueError):
            load_field(base)


class TestTables:
    def test_csv_layout(self, tmp_path):
        path = str(tmp_path / "out.csv")
        rows = [
            {"n": 4, "value": 0.1 + 0.2, "label": None, "ok": True},
            {"n": 5, "value": -1.5, "label": "x", "ok": False},
        ]
        write_table_csv(path, rows, ["n", "value", "label", "ok"], "abc123")
        lines = open(path).read().splitlines()
        assert lines[0] == "# config_hash=abc123"
        assert lines[1] == "n,value,label,ok"
        assert lines[2].split(",") == ["4", repr(0.1 + 0.2), "", "True"]

    def test_csv_floats_round_trip(self, tmp_path):
        path = str(tmp_path / "out.csv")
        value = math.pi / 7
        write_table_csv(path, [{"v": value}], ["v"], "h")
        with open(path) as fh:
            fh.readline()
            row = next(csv.DictReader(fh))
        assert float(row["v"]) == value

    def test_json_tables(self, tmp_path):
        path = str(tmp_path / "out.json")
        write_tables_json(
            path,
            {"results": [{"a": 1}]},
            "deadbeef",
            checks={"ok": True},
        )
        blob = json.load(open(path))
        assert blob["config_hash"] == "deadbeef"
        assert blob["tables"]["results"] == [{"a": 1}]
        assert blob["checks"] == {"ok": True}


class TestConfigHash:
    def test_key_order_invariant(self):
        assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})

    def test_value_sensitive(self):
        assert config_hash({"a": 1}) != config_hash({"a": 2})

    def test_is_short_hex(self):
        digest = config_hash({"a": 1})
        assert len(digest) == 16
        int(digest, 16)

    def test_canonical_json_handles_special_values(self):
        out = canonical_json({"p": math.inf, "x": np.float64(0.5), "n": np.int64(3)})
        assert json.loads(out) == {"p": "inf", "x": 0.5, "n": 3}
