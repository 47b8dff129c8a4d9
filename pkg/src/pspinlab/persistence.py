"""On-disk formats: field files, CSV/JSON tables, config hashing.

Field files are raw little-endian float64 arrays in vertex-index order
(`<base>.f64`) plus a JSON sidecar (`<base>.json`) holding the metadata
needed to regenerate the field bit-exactly. Tables are CSV with a leading
comment line carrying the config hash, or a single JSON document.
"""

import hashlib
import json
import math
import os
from enum import Enum

import numpy as np

from .configurations import INFINITE_ORDER, ModelKind, ModelParameters
from .disorder import DisorderField, SamplerKind, sample_field
from .errors import ContractViolationError

FORMAT_VERSION = 1


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


def config_hash(config_dict: dict) -> str:
    """Stable 16-hex-digit digest of a configuration mapping."""
    return hashlib.sha256(canonical_json(config_dict).encode()).hexdigest()[:16]


def save_field(field: DisorderField, base_path: str):
    """Write <base>.f64 and <base>.json; returns the two paths."""
    data_path = base_path + ".f64"
    meta_path = base_path + ".json"
    with open(data_path, "wb") as fh:
        fh.write(field.values.astype("<f8").tobytes())
    p = field.params.p
    sidecar = {
        "format_version": FORMAT_VERSION,
        "n": field.params.n,
        "p": "inf" if p == INFINITE_ORDER else int(p),
        "kind": field.params.kind.value,
        "seed": field.seed,
        "sampler": field.sampler.value,
    }
    with open(meta_path, "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return data_path, meta_path


def load_field(base_path: str, verify: bool = False) -> DisorderField:
    """Read a field back; verify=True regenerates it and requires bit equality."""
    with open(base_path + ".json") as fh:
        sidecar = json.load(fh)
    if sidecar.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported field format version {sidecar.get('format_version')}")
    p = sidecar["p"]
    p = INFINITE_ORDER if p == "inf" else int(p)
    params = ModelParameters(n=int(sidecar["n"]), p=p, kind=ModelKind(sidecar["kind"]))
    values = np.fromfile(base_path + ".f64", dtype="<f8").astype(np.float64)
    field = DisorderField(
        values=values,
        params=params,
        seed=int(sidecar["seed"]),
        sampler=SamplerKind(sidecar["sampler"]),
    )
    if verify:
        regenerated = sample_field(field.params, field.seed, field.sampler)
        if not np.array_equal(regenerated.values, field.values):
            raise ContractViolationError(
                f"stored field at {base_path} does not match its regeneration"
            )
    return field


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_table_csv(path: str, rows: list, fieldnames: list, cfg_hash: str):
    """CSV with a `# config_hash=` comment line, a header, and repr floats."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# config_hash={cfg_hash}\n")
        fh.write(",".join(fieldnames) + "\n")
        for row in rows:
            fh.write(",".join(_format_cell(row.get(name)) for name in fieldnames) + "\n")
    return path


def write_tables_json(path: str, tables: dict, cfg_hash: str, checks: dict = None):
    payload = {"config_hash": cfg_hash, "tables": _jsonable(tables)}
    if checks is not None:
        payload["checks"] = _jsonable(checks)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
