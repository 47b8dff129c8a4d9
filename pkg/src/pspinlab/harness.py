"""Experiment drivers: reproducible sweeps over disorder realizations.

Every experiment is a pure function of its ExperimentConfig. Realization
seeds derive from (master_seed, experiment, grid labels, realization
index) through a cryptographic hash, so results are independent of
thread count and identical across re-runs. Runners return tables of
plain dicts plus named pass/fail checks; `emit` writes them out.
"""

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field, fields as dataclass_fields
import json
import os

import numpy as np

from .analytics import (
    BETA_CRITICAL,
    critical_field,
    gibbs_lower_bound,
    golden_thompson_upper_bound,
    qrem_pressure,
)
from .configurations import INFINITE_ORDER, ModelKind, ModelParameters
from .disorder import SamplerKind, covariance_profile, default_sampler, sample_field
from .errors import ConfigError
from .geometry import cluster_report, deviation_set
from .operators import (
    DENSE_CAP_DIMENSION,
    apply_boundary,
    operator_norm_estimate,
)
from .persistence import (
    config_hash,
    ensure_dir,
    write_table_csv,
    write_tables_json,
)
from .pressure import (
    PressureEstimate,
    PressureMethod,
    SLQ_PROBES_DEFAULT,
    SLQ_STEPS_DEFAULT,
    dense_spectrum,
    pressure_classical,
    pressure_exact,
    pressure_from_spectrum,
    pressure_slq,
)

EXPERIMENTS = (
    "sample",
    "pressure",
    "covariance",
    "self_average",
    "converge",
    "audit_bounds",
    "phase_diagram",
    "clusters",
    "monotonicity",
)

_REQUIRED_FIELDS = {
    "sample": ("n",),
    "pressure": ("n", "beta", "gamma"),
    "covariance": ("cases", "realizations"),
    "self_average": ("n_list", "p", "beta", "gamma_list", "realizations"),
    "converge": ("n_list", "p_rule", "points", "realizations"),
    "audit_bounds": ("n", "p_list", "beta_list", "gamma_list", "eps_list", "realizations"),
    "phase_diagram": ("temperature_list", "gamma_list"),
    "clusters": ("n", "eps_list", "realizations"),
    "monotonicity": ("n", "beta", "p_list", "realizations"),
}


def _parse_p(value):
    if value is None:
        return None
    if value == "inf" or value == INFINITE_ORDER:
        return INFINITE_ORDER
    if isinstance(value, (int, float)) and float(value).is_integer():
        return int(value)
    raise ConfigError(f"p must be a positive integer or 'inf', got {value!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment run."""

    experiment: str
    master_seed: int = 0
    threads: int = 1
    out_dir: str = None
    out_format: str = "csv"
    kind: str = "sk"
    sampler: str = None
    n: int = None
    n_list: tuple = None
    p: float = None
    p_list: tuple = None
    beta: float = None
    beta_list: tuple = None
    gamma: float = None
    gamma_list: tuple = None
    temperature_list: tuple = None
    eps_list: tuple = None
    points: tuple = None
    cases: tuple = None
    realizations: int = None
    method: str = "auto"
    dense_limit: int = DENSE_CAP_DIMENSION
    probes: int = SLQ_PROBES_DEFAULT
    steps: int = SLQ_STEPS_DEFAULT
    k_factor: float = 4.0
    p_rule: str = None
    rho_factor: float = 2.0
    containment_threshold: float = 0.95
    diameter_cap: int = None
    gap_threshold: float = 0.15
    se_multiple: float = 5.0
    mean_se_multiple: float = 2.0

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        allowed = {f.name for f in dataclass_fields(cls)}
        unknown = set(raw) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = dict(raw)
        if "experiment" not in data:
            raise ConfigError("config needs an 'experiment' key")
        if data["experiment"] not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment {data['experiment']!r}; choose from {EXPERIMENTS}"
            )
        for key in ("n_list", "beta_list", "gamma_list", "temperature_list", "eps_list"):
            if data.get(key) is not None:
                data[key] = tuple(data[key])
        if data.get("p_list") is not None:
            data["p_list"] = tuple(_parse_p(v) for v in data["p_list"])
        if data.get("p") is not None:
            data["p"] = _parse_p(data["p"])
        if data.get("points") is not None:
            pts = []
            for pt in data["points"]:
                if isinstance(pt, dict):
                    pts.append((float(pt["beta"]), float(pt["gamma"])))
                else:
                    beta, gamma = pt
                    pts.append((float(beta), float(gamma)))
            data["points"] = tuple(pts)
        if data.get("cases") is not None:
            data["cases"] = tuple(dict(c) for c in data["cases"])
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"out_format must be csv or json, got {self.out_format!r}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if self.master_seed < 0:
            raise ConfigError("master_seed must be >= 0")
        if self.kind not in ("sk", "spherical", "rem"):
            raise ConfigError(f"kind must be sk, spherical, or rem, got {self.kind!r}")
        if self.method not in ("auto", "exact", "classical", "slq"):
            raise ConfigError(f"unknown method {self.method!r}")
        if self.p_rule is not None and self.p_rule not in ("equal_n", "log_squared", "rem"):
            raise ConfigError(f"unknown p_rule {self.p_rule!r}")
        missing = [
            key for key in _REQUIRED_FIELDS[self.experiment] if getattr(self, key) is None
        ]
        if missing:
            raise ConfigError(
                f"experiment {self.experiment!r} needs config keys {missing}"
            )
        if self.realizations is not None and self.realizations < 2:
            raise ConfigError("realizations must be >= 2")
        if self.experiment == "audit_bounds" and self.n > DENSE_CAP_DIMENSION:
            raise ConfigError(
                f"audit_bounds needs exact pressures, so n <= {DENSE_CAP_DIMENSION}"
            )
        if self.experiment == "monotonicity":
            for p in self.p_list:
                if p == INFINITE_ORDER or p % 2:
                    raise ConfigError("monotonicity needs even finite p values")
            if list(self.p_list) != sorted(self.p_list):
                raise ConfigError("p_list must be ascending")
        if self.experiment in ("sample", "pressure", "clusters"):
            _params_for(self.kind, self.n, self.p)  # raises on inconsistency

    def to_dict(self) -> dict:
        out = {}
        for f in dataclass_fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            out[f.name] = value
        return out

    def identity_dict(self) -> dict:
        # threads/output routing must not affect emitted bytes
        out = self.to_dict()
        for key in ("threads", "out_dir", "out_format"):
            out.pop(key, None)
        return out


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return ExperimentConfig.from_dict(raw)


def _params_for(kind: str, n: int, p, beta: float = 0.0, gamma: float = 0.0) -> ModelParameters:
    try:
        if kind == "rem":
            if p not in (None, INFINITE_ORDER):
                raise ConfigError("kind rem requires p = 'inf' or omitted")
            return ModelParameters.rem(n, gamma=gamma, beta=beta)
        if p is None:
            raise ConfigError(f"kind {kind} requires a finite p")
        if kind == "sk":
            return ModelParameters.sk(n, int(p), gamma=gamma, beta=beta)
        return ModelParameters.spherical(n, int(p), gamma=gamma, beta=beta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _sampler_for(config_sampler, params: ModelParameters):
    if config_sampler is None:
        return None
    try:
        return SamplerKind(config_sampler)
    except ValueError as exc:
        raise ConfigError(f"unknown sampler {config_sampler!r}") from exc


def derive_seed(master_seed: int, *labels) -> int:
    """Deterministic child seed from a master seed and hashable labels."""
    payload = "|".join([str(int(master_seed))] + [repr(l) for l in labels])
    return int.from_bytes(hashlib.sha256(payload.encode()).digest()[:8], "little")


def _run_indexed(fn, keys, threads: int) -> dict:
    """Evaluate fn over keys, optionally threaded; assembly is key-ordered."""
    keys = list(keys)
    if threads <= 1 or len(keys) <= 1:
        return {key: fn(key) for key in keys}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {key: pool.submit(fn, key) for key in keys}
        return {key: futures[key].result() for key in keys}


def _select_method(method: str, n: int, gamma: float, dense_limit: int) -> str:
    if method == "auto":
        if gamma == 0.0:
            return "classical"
        if n <= dense_limit:
            return "exact"
        return "slq"
    if method == "classical" and gamma != 0.0:
        raise ConfigError("classical method requires gamma = 0")
    if method == "exact" and n > DENSE_CAP_DIMENSION:
        raise ConfigError(f"exact method is capped at n={DENSE_CAP_DIMENSION}")
    return method


def _estimate(field, beta, gamma, method, config: ExperimentConfig, seed: int) -> PressureEstimate:
    if method == "classical":
        return pressure_classical(field, beta)
    if method == "exact":
        return pressure_exact(field, beta, gamma)
    return pressure_slq(
        field,
        beta,
        gamma,
        probes=config.probes,
        steps=config.steps,
        seed=derive_seed(seed, "slq"),
    )


@dataclass(frozen=True)
class SweepRecord:
    """Aggregate over disorder realizations at one grid point."""

    n: int
    p: float
    beta: float
    gamma: float
    values: tuple
    mean: float
    std: float
    std_error: float
    extras: dict = dataclass_field(default_factory=dict)

    @classmethod
    def from_values(cls, n, p, beta, gamma, values, extras=None):
        arr = np.asarray(values, dtype=np.float64)
        std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
        return cls(
            n=n,
            p=p,
            beta=beta,
            gamma=gamma,
            values=tuple(float(v) for v in arr),
            mean=float(np.mean(arr)),
            std=std,
            std_error=std / math.sqrt(arr.size) if arr.size > 1 else 0.0,
            extras=dict(extras or {}),
        )


@dataclass
class HarnessResult:
    experiment: str
    config: ExperimentConfig
    tables: dict  # name -> (fieldnames, rows)
    checks: dict  # name -> bool
    sweeps: list = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def emit(result: HarnessResult, out_dir: str, out_format: str = None) -> list:
    """Write the result tables; returns the created paths."""
    out_format = out_format or result.config.out_format
    ensure_dir(out_dir)
    cfg_hash = config_hash(result.config.identity_dict())
    paths = []
    if out_format == "json":
        tables = {name: rows for name, (_, rows) in result.tables.items()}
        path = os.path.join(out_dir, f"{result.experiment}.json")
        paths.append(write_tables_json(path, tables, cfg_hash, checks=result.checks))
        return paths
    for name, (fieldnames, rows) in result.tables.items():
        base = (
            f"{result.experiment}.csv"
            if name == "results"
            else f"{result.experiment}_{name}.csv"
        )
        paths.append(
            write_table_csv(os.path.join(out_dir, base), rows, fieldnames, cfg_hash)
        )
    return paths


def _p_label(p) -> str:
    return "inf" if p == INFINITE_ORDER else str(int(p))


def run_covariance(config: ExperimentConfig) -> HarnessResult:
    """Empirical vs exact covariance for each sampler case.

    For each case, M realizations give an empirical covariance matrix
    whose entrywise deviation from the exact one is scored in units of
    the Gaussian standard error sqrt((n**2 + C_ab**2)/M); the empirical
    field mean is scored against sqrt(n/M) the same way.
    """
    M = config.realizations
    rows = []
    for ci, case in enumerate(config.cases):
        for key in case:
            if key not in ("kind", "sampler", "n", "p"):
                raise ConfigError(f"unknown covariance case key {key!r}")
        params = _params_for(case.get("kind", "sk"), case["n"], _parse_p(case.get("p")))
        sampler = _sampler_for(case.get("sampler"), params)
        n = params.n

        def draw(r, ci=ci, params=params, sampler=sampler):
            seed = derive_seed(config.master_seed, "covariance", ci, r)
            return sample_field(params, seed, sampler).values

        drawn = _run_indexed(draw, range(M), config.threads)
        vals = np.stack([drawn[r] for r in range(M)])
        emp = vals.T @ vals / M
        idx = np.arange(1 << n, dtype=np.int64)
        dist = np.bitwise_count(idx[:, None] ^ idx[None, :]).astype(np.int64)
        exact = covariance_profile(params)[dist]
        se = np.sqrt((float(n) ** 2 + exact**2) / M)
        cov_mult = float(np.max(np.abs(emp - exact) / se))
        mean_mult = float(np.max(np.abs(vals.mean(axis=0))) / math.sqrt(n / M))
        actual_sampler = (sampler or default_sampler(params.kind)).value
        rows.append(
            {
                "case": ci,
                "kind": params.kind.value,
                "sampler": actual_sampler,
                "n": n,
                "p": _p_label(params.p),
                "realizations": M,
                "max_abs_dev": float(np.max(np.abs(emp - exact))),
                "max_cov_se_multiple": cov_mult,
                "max_mean_se_multiple": mean_mult,
                "passed": cov_mult <= config.se_multiple and mean_mult <= config.se_multiple,
            }
        )
    checks = {
        "covariance_within_se": all(r["max_cov_se_multiple"] <= config.se_multiple for r in rows),
        "mean_within_se": all(r["max_mean_se_multiple"] <= config.se_multiple for r in rows),
    }
    fieldnames = list(rows[0].keys()) if rows else []
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={"results": (fieldnames, rows)},
        checks=checks,
    )


def run_self_average(config: ExperimentConfig) -> HarnessResult:
    """Sample std of the pressure across realizations, per (n, gamma).

    The normalized ratio rho = std * sqrt(n) / beta should be roughly flat
    in n; the check requires max/min rho <= rho_factor for each gamma.
    """
    M = config.realizations
    beta = float(config.beta)
    p = config.p
    detail_rows, summary_rows = [], []
    sweeps = []
    checks = {}
    for gamma in config.gamma_list:
        gamma = float(gamma)
        rhos = []
        for n in config.n_list:
            params = _params_for(config.kind, n, p)
            method = _select_method(config.method, n, gamma, config.dense_limit)

            def one(r, params=params, n=n, gamma=gamma, method=method):
                seed = derive_seed(
                    config.master_seed, "self_average", n, repr(gamma), r
                )
                field = sample_field(params, seed, _sampler_for(config.sampler, params))
                est = _estimate(field, beta, gamma, method, config, seed)
                return seed, est

            results = _run_indexed(one, range(M), config.threads)
            values = np.array([results[r][1].value for r in range(M)])
            slq_ses = [results[r][1].std_error for r in range(M)]
            rho = float(np.std(values, ddof=1) * math.sqrt(n) / beta) if beta > 0 else 0.0
            sweep = SweepRecord.from_values(
                n, p, beta, gamma, values, extras={"rho": rho, "method": method}
            )
            sweeps.append(sweep)
            rhos.append(rho)
            for r in range(M):
                detail_rows.append(
                    {
                        "n": n,
                        "p": _p_label(p),
                        "beta": beta,
                        "gamma": gamma,
                        "realization": r,
                        "seed": results[r][0],
                        "method": method,
                        "value": results[r][1].value,
                        "slq_std_error": results[r][1].std_error,
                    }
                )
            summary_rows.append(
                {
                    "n": n,
                    "p": _p_label(p),
                    "beta": beta,
                    "gamma": gamma,
                    "realizations": M,
                    "method": method,
                    "mean": sweep.mean,
                    "std": sweep.std,
                    "std_error": sweep.std_error,
                    "rho": rho,
                    "mean_slq_se": float(np.mean(slq_ses)),
                }
            )
        if beta > 0:
            positive = [r for r in rhos if r > 0]
            ok = bool(positive) and max(positive) / min(positive) <= config.rho_factor
            ok = ok and len(positive) == len(rhos)
            checks[f"rho_within_factor[gamma={gamma}]"] = ok
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={
            "results": (list(summary_rows[0].keys()), summary_rows),
            "realizations": (list(detail_rows[0].keys()), detail_rows),
        },
        checks=checks,
        sweeps=sweeps,
    )


def _p_for_rule(rule: str, n: int):
    if rule == "equal_n":
        return "sk", n
    if rule == "log_squared":
        return "sk", max(1, math.ceil(math.log(n) ** 2))
    return "rem", INFINITE_ORDER


def run_converge(config: ExperimentConfig) -> HarnessResult:
    """Disorder-mean pressure against the infinite-order limit formula.

    For each (beta, gamma) point the grid walks n upward with p tied to n
    by p_rule; the gap to max(REM branch, paramagnet branch) should shrink
    as n grows and end below gap_threshold.
    """
    M = config.realizations
    rows = []
    checks = {}
    sweeps = []
    for pi, (beta, gamma) in enumerate(config.points):
        gaps = []
        target = qrem_pressure(beta, gamma).qrem
        for n in config.n_list:
            kind, p = _p_for_rule(config.p_rule, n)
            params = _params_for(kind, n, p)
            method = _select_method(config.method, n, gamma, config.dense_limit)

            def one(r, params=params, pi=pi, n=n, gamma=gamma, beta=beta, method=method):
                seed = derive_seed(config.master_seed, "converge", pi, n, r)
                field = sample_field(params, seed)
                return _estimate(field, beta, gamma, method, config, seed).value

            results = _run_indexed(one, range(M), config.threads)
            values = np.array([results[r] for r in range(M)])
            sweep = SweepRecord.from_values(n, p, beta, gamma, values)
            sweeps.append(sweep)
            gap = abs(sweep.mean - target)
            gaps.append(gap)
            rows.append(
                {
                    "point": pi,
                    "beta": beta,
                    "gamma": gamma,
                    "n": n,
                    "p_rule": config.p_rule,
                    "p": _p_label(p),
                    "realizations": M,
                    "method": method,
                    "mean": sweep.mean,
                    "std": sweep.std,
                    "std_error": sweep.std_error,
                    "target": target,
                    "gap": gap,
                }
            )
        checks[f"gap_decreasing[point={pi}]"] = all(
            b < a for a, b in zip(gaps, gaps[1:])
        )
        checks[f"final_gap[point={pi}]"] = gaps[-1] <= config.gap_threshold
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={"results": (list(rows[0].keys()), rows)},
        checks=checks,
        sweeps=sweeps,
    )


def run_audit_bounds(config: ExperimentConfig) -> HarnessResult:
    """Sandwich audit: variational lower bound <= exact <= splitting bound.

    Per realization, the exact pressure comes from the dense spectrum; the
    lower bound from the two Gibbs trial states; the upper bound from the
    deviation-set decomposition, whose boundary norm is estimated once per
    (field, eps) by Lanczos.
    """
    n = config.n
    slack = 1e-10

    def one(key):
        p, r = key
        seed = derive_seed(config.master_seed, "audit_bounds", _p_label(p), r)
        params = _params_for(config.kind, n, p)
        field = sample_field(params, seed, _sampler_for(config.sampler, params))
        norms, sizes = {}, {}
        for eps in config.eps_list:
            region = deviation_set(field, eps)
            sizes[eps] = region.size
            if region.size == 0:
                norms[eps] = 0.0
            else:
                norms[eps] = operator_norm_estimate(
                    lambda x: apply_boundary(region, x), 1 << n
                )
        out = []
        for gamma in config.gamma_list:
            eigs = dense_spectrum(field, gamma)
            for beta in config.beta_list:
                exact = pressure_from_spectrum(eigs, beta, n)
                lower = gibbs_lower_bound(field, beta, gamma)
                phi_cl = pressure_classical(field, beta).value
                for eps in config.eps_list:
                    upper = golden_thompson_upper_bound(
                        phi_cl, eps, norms[eps], beta, gamma, n
                    )
                    out.append(
                        {
                            "n": n,
                            "p": _p_label(p),
                            "realization": r,
                            "seed": seed,
                            "beta": beta,
                            "gamma": gamma,
                            "eps": eps,
                            "set_size": sizes[eps],
                            "boundary_norm": norms[eps],
                            "lower": lower,
                            "exact": exact,
                            "upper": upper,
                            "lower_ok": exact >= lower - slack,
                            "upper_ok": exact <= upper + slack,
                        }
                    )
        return out

    keys = [(p, r) for p in config.p_list for r in range(config.realizations)]
    results = _run_indexed(one, keys, config.threads)
    rows = [row for key in keys for row in results[key]]
    checks = {
        "no_lower_violations": all(r["lower_ok"] for r in rows),
        "no_upper_violations": all(r["upper_ok"] for r in rows),
    }
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={"results": (list(rows[0].keys()), rows)},
        checks=checks,
    )


def run_phase_diagram(config: ExperimentConfig) -> HarnessResult:
    """Limit phase diagram over a (temperature, gamma) grid.

    Emits the pointwise table plus two curve tables: the critical field
    gamma_c(beta) per temperature, and the freezing line at the critical
    temperature, which spans gammas up to the critical field there.
    """
    rows = []
    for temperature in config.temperature_list:
        if temperature <= 0:
            raise ConfigError(f"temperatures must be > 0, got {temperature}")
        beta = 1.0 / float(temperature)
        gamma_c = critical_field(beta)
        for gamma in config.gamma_list:
            point = qrem_pressure(beta, float(gamma))
            rows.append(
                {
                    "temperature": float(temperature),
                    "beta": beta,
                    "gamma": float(gamma),
                    "rem": point.rem,
                    "par": point.par,
                    "qrem": point.qrem,
                    "phase": point.phase.value,
                    "gamma_c_at_beta": gamma_c,
                }
            )
    curve_rows = [
        {
            "temperature": float(t),
            "beta": 1.0 / float(t),
            "gamma_c": critical_field(1.0 / float(t)),
        }
        for t in config.temperature_list
    ]
    t_freeze = 1.0 / BETA_CRITICAL
    gamma_top = critical_field(BETA_CRITICAL)
    freeze_rows = [
        {"temperature": t_freeze, "gamma": float(g)}
        for g in np.linspace(0.0, gamma_top, 51)
    ]
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={
            "results": (list(rows[0].keys()), rows),
            "gamma_c_curve": (list(curve_rows[0].keys()), curve_rows),
            "freezing_line": (list(freeze_rows[0].keys()), freeze_rows),
        },
        checks={},
    )


def run_clusters(config: ExperimentConfig) -> HarnessResult:
    """Deviation-set cluster geometry across realizations.

    Per (realization, eps) the component structure is summarized; the
    checks require the containment fraction (every component inside a
    ball of radius k_factor * ceil(n/p)) to reach containment_threshold,
    and optionally cap the observed component diameters.
    """
    n = config.n
    params = _params_for(config.kind, n, config.p)

    def one(r):
        seed = derive_seed(config.master_seed, "clusters", r)
        field = sample_field(params, seed, _sampler_for(config.sampler, params))
        return seed, {eps: cluster_report(field, eps, config.k_factor) for eps in config.eps_list}

    results = _run_indexed(one, range(config.realizations), config.threads)
    rows = []
    for r in range(config.realizations):
        seed, reports = results[r]
        for eps in config.eps_list:
            rep = reports[eps]
            rows.append(
                {
                    "n": n,
                    "p": _p_label(params.p),
                    "eps": float(eps),
                    "realization": r,
                    "seed": seed,
                    "set_size": rep.set_size,
                    "n_components": len(rep.components),
                    "max_diameter": rep.max_component_diameter,
                    "largest_radius": rep.contained_in_radius,
                    "radius_cap": rep.radius_cap,
                    "all_contained": rep.all_contained,
                }
            )
    summary_rows = []
    checks = {}
    for eps in config.eps_list:
        sub = [row for row in rows if row["eps"] == float(eps)]
        fraction = sum(row["all_contained"] for row in sub) / len(sub)
        max_diam = max(row["max_diameter"] for row in sub)
        summary_rows.append(
            {
                "eps": float(eps),
                "realizations": len(sub),
                "mean_set_size": float(np.mean([row["set_size"] for row in sub])),
                "containment_fraction": fraction,
                "max_diameter": max_diam,
                "max_radius": max(row["largest_radius"] for row in sub),
                "radius_cap": sub[0]["radius_cap"],
            }
        )
        checks[f"containment[eps={float(eps)}]"] = fraction >= config.containment_threshold
        if config.diameter_cap is not None:
            checks[f"diameter_cap[eps={float(eps)}]"] = max_diam <= config.diameter_cap
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={
            "results": (list(summary_rows[0].keys()), summary_rows),
            "realizations": (list(rows[0].keys()), rows),
        },
        checks=checks,
    )


def run_monotonicity(config: ExperimentConfig) -> HarnessResult:
    """Disorder-mean classical pressure vs interaction order, at gamma = 0.

    Fields for different even p share white noise (same realization seed,
    spectral sampler), so consecutive-p differences are common-random-
    number coupled and their standard errors are computed directly from
    the per-realization differences. The REM column uses its own
    independent draws. Checks: means do not decrease along p_list and do
    not exceed the REM mean, each within mean_se_multiple standard errors
    of the relevant difference.
    """
    n = config.n
    beta = float(config.beta)
    labels = [_p_label(p) for p in config.p_list] + ["rem"]

    def one(r):
        seed = derive_seed(config.master_seed, "monotonicity", r)
        row = {}
        for p in config.p_list:
            field = sample_field(ModelParameters.sk(n, int(p)), seed)
            row[_p_label(p)] = pressure_classical(field, beta).value
        rem_field = sample_field(ModelParameters.rem(n), seed)
        row["rem"] = pressure_classical(rem_field, beta).value
        return seed, row

    results = _run_indexed(one, range(config.realizations), config.threads)
    M = config.realizations
    columns = {lab: np.array([results[r][1][lab] for r in range(M)]) for lab in labels}
    detail_rows = []
    for r in range(M):
        row = {"realization": r, "seed": results[r][0]}
        for lab in labels:
            row[f"phi_{lab}"] = float(columns[lab][r])
        detail_rows.append(row)
    summary_rows = [
        {
            "column": lab,
            "mean": float(np.mean(columns[lab])),
            "std": float(np.std(columns[lab], ddof=1)),
            "std_error": float(np.std(columns[lab], ddof=1) / math.sqrt(M)),
        }
        for lab in labels
    ]
    pair_rows = []
    checks = {}

    def pair_check(name, lower_lab, upper_lab):
        diffs = columns[upper_lab] - columns[lower_lab]
        mean_diff = float(np.mean(diffs))
        se = float(np.std(diffs, ddof=1) / math.sqrt(M))
        ok = mean_diff >= -config.mean_se_multiple * max(se, 1e-300)
        pair_rows.append(
            {
                "pair": f"{lower_lab}->{upper_lab}",
                "mean_diff": mean_diff,
                "se_diff": se,
                "ok": ok,
            }
        )
        checks[name] = ok

    for a, b in zip(config.p_list, config.p_list[1:]):
        pair_check(f"nondecreasing[p={_p_label(a)}->p={_p_label(b)}]", _p_label(a), _p_label(b))
    for p in config.p_list:
        pair_check(f"below_rem[p={_p_label(p)}]", _p_label(p), "rem")
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={
            "results": (list(summary_rows[0].keys()), summary_rows),
            "pairs": (list(pair_rows[0].keys()), pair_rows),
            "realizations": (list(detail_rows[0].keys()), detail_rows),
        },
        checks=checks,
    )


def run_pressure(config: ExperimentConfig) -> HarnessResult:
    """One field, one pressure estimate, as a single-row table."""
    gamma = float(config.gamma)
    beta = float(config.beta)
    params = _params_for(config.kind, config.n, config.p)
    seed = derive_seed(config.master_seed, "pressure")
    field = sample_field(params, seed, _sampler_for(config.sampler, params))
    method = _select_method(config.method, config.n, gamma, config.dense_limit)
    est = _estimate(field, beta, gamma, method, config, seed)
    row = {
        "n": config.n,
        "p": _p_label(params.p),
        "kind": params.kind.value,
        "beta": beta,
        "gamma": gamma,
        "method": est.method.value,
        "value": est.value,
        "std_error": est.std_error,
        "probes": est.probes,
        "lanczos_steps": est.lanczos_steps,
        "seed": seed,
    }
    return HarnessResult(
        experiment=config.experiment,
        config=config,
        tables={"results": (list(row.keys()), [row])},
        checks={},
    )


RUNNERS = {
    "covariance": run_covariance,
    "self_average": run_self_average,
    "converge": run_converge,
    "audit_bounds": run_audit_bounds,
    "phase_diagram": run_phase_diagram,
    "clusters": run_clusters,
    "monotonicity": run_monotonicity,
    "pressure": run_pressure,
}


def run_experiment(config: ExperimentConfig) -> HarnessResult:
    if config.experiment not in RUNNERS:
        raise ConfigError(f"experiment {config.experiment!r} has no runner")
    return RUNNERS[config.experiment](config)
