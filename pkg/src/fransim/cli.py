"""Command-line front end.

Subcommands: redshift, budget, linkbudget, simulate, fit, g2. Each takes a
YAML config (--config) and/or a shipped preset (--preset); explicit config
keys override preset values. Unknown keys are rejected. Every run writes a
JSON report (with the fully resolved config embedded) plus CSV artifacts into
--out, which defaults to $FRANSIM_OUT or the working directory. --format
picks the stdout rendering: csv prints key,value lines, json the full report.

Exit codes: 0 success; 2 structural config problems (missing file, bad YAML,
unknown key or preset, wrong type); 3 values the models reject.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .budget import ThermalParams, reference_noise_budget
from .calibration import ThermalScan, cte_from_phase_fit, fit_phase_vs_temperature, suppression_ratio
from .channel import (
    AttenuationProcess,
    LinkBudget,
    acquisition_time,
    detected_rate,
    geometric_loss,
    total_link_budget,
)
from .detection import (
    CampaignConfig,
    DetectionScheme,
    SpadModel,
    inconsistency_slopes,
    simulate_campaign,
    simulate_coherent_stream,
    simulate_fringe_scan,
    simulate_single_photon_stream,
)
from .estimation import CountRecord, PhaseSeries, detrend_linear, fit_visibility, g2_correlation
from .gravity import OrbitPoint, RedshiftConfig, doppler_phase, precision_target, redshift_phase
from .core import SeededRng

__all__ = ["main", "ConfigError", "SCHEMA_VERSION", "ENV_OUT"]

SCHEMA_VERSION = 1
ENV_OUT = "FRANSIM_OUT"
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(Exception):
    """Structural problem with the configuration input."""


# Allowed keys per command; a nested dict constrains a mapping, LIST marks a
# list value whose elements are validated by the caller.
_LIST = "list"

_SCHEMAS: dict[str, dict] = {
    "redshift": {
        "command": None,
        "delta_l_m": None,
        "wavelength_m": None,
        "altitude_m": None,
        "altitude_m_2": None,
        "radial_velocity_mps": None,
        "n_sigma": None,
    },
    "budget": {
        "command": None,
        "wavelength_m": None,
        "sample_counts": None,
        "visibility": None,
        "attenuation_cv": None,
        "thermal": {
            "conductivity": None,
            "pillar_area": None,
            "pillar_length": None,
            "cte": None,
            "heat_capacity": None,
            "mass": None,
            "surface_area": None,
            "emissivity": None,
            "ambient_temp": None,
            "delta_temp": None,
        },
    },
    "linkbudget": {
        "command": None,
        "source_rate_hz": None,
        "items": _LIST,
        "geometric": {
            "rx_aperture_m": None,
            "divergence_rad": None,
            "range_m": None,
        },
        "target": {
            "shot_noise_rad": None,
            "visibility": None,
        },
    },
    "simulate": {
        "command": None,
        "mode": None,
        "duration_s": None,
        "sample_period_s": None,
        "true_phase_rad": None,
        "drift_rate_rad_s": None,
        "visibility": None,
        "detected_mean_rate_hz": None,
        "seed": None,
        "scheme": {
            "kind": None,
            "time_division_delay_s": None,
        },
        "attenuation": {
            "mean_loss_db": None,
            "modulation_amplitude_db": None,
            "modulation_period_s": None,
            "stochastic_cv": None,
        },
        "spad_inconsistency_rms_rad": None,
        "spads": _LIST,
        "scan": {
            "points": None,
            "cycles": None,
            "counts_per_point": None,
            "phase_offset_rad": None,
        },
    },
    "fit": {
        "command": None,
        "kind": None,
        "input": None,
        "arm_diff_m": None,
        "wavelength_m": None,
        "reference_cte": None,
        "window_halfwidth_k": None,
    },
    "g2": {
        "command": None,
        "mode": None,
        "rate_hz": None,
        "duration_s": None,
        "g2_zero": None,
        "dead_time_s": None,
        "window_s": None,
        "bin_width_s": None,
        "seed": None,
        "input_a": None,
        "input_b": None,
    },
}


def _load_yaml(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"top level of {path} must be a mapping, got {type(data).__name__}")
    return data


def _preset_names() -> list[str]:
    root = resources.files("fransim").joinpath("presets")
    return sorted(p.name.removesuffix(".yaml") for p in root.iterdir() if p.name.endswith(".yaml"))


def _load_preset(command: str, name: str) -> dict:
    root = resources.files("fransim").joinpath("presets")
    candidate = root.joinpath(f"{name}.yaml")
    if not candidate.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(_preset_names())}")
    data = yaml.safe_load(candidate.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ConfigError(f"preset {name!r} is malformed")
    declared = data.get("command")
    if declared is not None and declared != command:
        raise ConfigError(f"preset {name!r} belongs to the {declared!r} command, not {command!r}")
    return data


def _merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _validate_keys(config: dict, schema: dict, prefix: str = "") -> None:
    for key, value in config.items():
        if key not in schema:
            allowed = ", ".join(sorted(schema))
            raise ConfigError(f"unknown config key {prefix}{key!r}; allowed keys: {allowed}")
        sub = schema[key]
        if isinstance(sub, dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config key {prefix}{key!r} must be a mapping")
            _validate_keys(value, sub, prefix=f"{prefix}{key}.")


def _fnum(config: dict, key: str, default: float | None) -> float:
    value = config.get(key, default)
    if value is None:
        raise ConfigError(f"config key {key!r} is required")
    if isinstance(value, bool):
        raise ConfigError(f"config key {key!r} must be a number, got a boolean")
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config key {key!r} must be a number, got {value!r}") from exc


def _inum(config: dict, key: str, default: int | None) -> int:
    return int(round(_fnum(config, key, default)))


def _resolve_config(args, command: str) -> dict:
    config: dict = {}
    if args.preset:
        config = _load_preset(command, args.preset)
    if args.config:
        config = _merge(config, _load_yaml(args.config))
    _validate_keys(config, _SCHEMAS[command])
    if getattr(args, "seed", None) is not None:
        config["seed"] = args.seed
    if getattr(args, "input", None) is not None:
        config["input"] = args.input
    return config


def _out_dir(args) -> Path:
    out = args.out or os.environ.get(ENV_OUT) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    return value


def _write_json(path: Path, payload: dict) -> None:
    doc = dict(payload)
    doc["schema_version"] = SCHEMA_VERSION
    path.write_text(json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _flatten(payload: dict, prefix: str = "") -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            rows.extend(_flatten(value, prefix=f"{prefix}{key}."))
        elif isinstance(value, (list, tuple)):
            rows.append((f"{prefix}{key}", json.dumps(_jsonable(value))))
        else:
            rows.append((f"{prefix}{key}", value))
    return rows


def _emit_stdout(payload: dict, fmt: str) -> None:
    if fmt == "json":
        doc = dict(payload)
        doc["schema_version"] = SCHEMA_VERSION
        print(json.dumps(_jsonable(doc), sort_keys=True, indent=2))
    else:
        for key, value in _flatten(payload):
            if key.startswith("config."):
                continue
            print(f"{key},{value}")


def _write_csv(path: Path, header: str, columns, formats) -> None:
    arrays = [np.asarray(col) for col in columns]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {header}\n")
        for row in zip(*arrays):
            fh.write(",".join(fmt % v for fmt, v in zip(formats, row)) + "\n")


def _read_csv(path: str | Path, n_columns: int) -> list[np.ndarray]:
    try:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except OSError as exc:
        raise ConfigError(f"input file not found: {path}") from exc
    except ValueError as exc:
        raise ConfigError(f"could not parse CSV {path}: {exc}") from exc
    if data.shape[1] < n_columns:
        raise ConfigError(f"{path} has {data.shape[1]} columns, need {n_columns}")
    return [data[:, i] for i in range(n_columns)]


def cmd_redshift(config: dict, out_dir: Path, fmt: str) -> int:
    rs_config = RedshiftConfig(
        delta_l=_fnum(config, "delta_l_m", 50.0),
        wavelength=_fnum(config, "wavelength_m", 893.2e-9),
    )
    n_sigma = _fnum(config, "n_sigma", 5.0)
    altitude = _fnum(config, "altitude_m", None)
    payload: dict = {"command": "redshift", "config": config}
    if "altitude_m_2" in config:
        point_a = OrbitPoint(altitude)
        point_b = OrbitPoint(_fnum(config, "altitude_m_2", None))
        phase_a = redshift_phase(rs_config, point_a)
        phase_b = redshift_phase(rs_config, point_b)
        signal = abs(phase_b - phase_a)
        payload["phase_low_rad"] = phase_a
        payload["phase_high_rad"] = phase_b
        payload["phase_difference_rad"] = signal
    else:
        signal = redshift_phase(rs_config, OrbitPoint(altitude))
        payload["phase_rad"] = signal
    payload["precision_target_rad"] = precision_target(signal, n_sigma)
    payload["n_sigma"] = n_sigma
    if "radial_velocity_mps" in config:
        payload["doppler_phase_rad"] = doppler_phase(
            rs_config, _fnum(config, "radial_velocity_mps", None)
        )
    _write_json(out_dir / "redshift.json", payload)
    _emit_stdout(payload, fmt)
    return 0


def cmd_budget(config: dict, out_dir: Path, fmt: str) -> int:
    thermal_cfg = config.get("thermal", {})
    thermal = ThermalParams(
        conductivity=_fnum(thermal_cfg, "conductivity", 0.2),
        pillar_area=_fnum(thermal_cfg, "pillar_area", 8.5e-5),
        pillar_length=_fnum(thermal_cfg, "pillar_length", 0.05),
        cte=_fnum(thermal_cfg, "cte", 550e-9),
        heat_capacity=_fnum(thermal_cfg, "heat_capacity", 703.0),
        mass=_fnum(thermal_cfg, "mass", 0.846),
        surface_area=_fnum(thermal_cfg, "surface_area", 0.04),
        emissivity=_fnum(thermal_cfg, "emissivity", 0.139),
        ambient_temp=_fnum(thermal_cfg, "ambient_temp", 294.0),
        delta_temp=_fnum(thermal_cfg, "delta_temp", 1.0),
    )
    budget = reference_noise_budget(
        wavelength=_fnum(config, "wavelength_m", 893.2e-9),
        sample_counts=_fnum(config, "sample_counts", 72600.0),
        visibility=_fnum(config, "visibility", 0.863),
        attenuation_cv=_fnum(config, "attenuation_cv", 0.71),
        thermal=thermal,
    )
    payload = {
        "command": "budget",
        "config": config,
        "rows": [
            {
                "name": src.name,
                "magnitude": src.display_magnitude,
                "unit": src.unit,
                "kind": src.kind,
            }
            for src in budget.sources
        ],
        "static_total_rad": budget.static_total,
    }
    _write_json(out_dir / "budget.json", payload)
    budget.to_csv(out_dir / "budget.csv")
    (out_dir / "budget.txt").write_text(budget.format_table() + "\n", encoding="utf-8")
    if fmt == "json":
        _emit_stdout(payload, fmt)
    else:
        print(budget.format_table())
    return 0


_DEFAULT_LINK_ITEMS = [
    ["Geometric (diffraction)", 59.0],
    ["Atmospheric absorption", 3.0],
    ["Internal optics", 5.5],
]


def cmd_linkbudget(config: dict, out_dir: Path, fmt: str) -> int:
    raw_items = config.get("items", _DEFAULT_LINK_ITEMS)
    if not isinstance(raw_items, list):
        raise ConfigError("config key 'items' must be a list of [name, loss_db] pairs")
    items = []
    for entry in raw_items:
        if isinstance(entry, dict):
            if set(entry) != {"name", "loss_db"}:
                raise ConfigError(f"link item {entry!r} must have exactly 'name' and 'loss_db'")
            items.append((str(entry["name"]), float(entry["loss_db"])))
        elif isinstance(entry, (list, tuple)) and len(entry) == 2:
            items.append((str(entry[0]), float(entry[1])))
        else:
            raise ConfigError(f"link item {entry!r} must be a [name, loss_db] pair")
    budget = LinkBudget(items=items, source_rate=_fnum(config, "source_rate_hz", 0.4e9))
    total = total_link_budget(budget)
    rate = detected_rate(budget)
    payload: dict = {
        "command": "linkbudget",
        "config": config,
        "items": [{"name": n, "loss_db": v} for n, v in budget.items],
        "total_loss_db": total,
        "detected_rate_hz": rate,
    }
    if "geometric" in config:
        geo = config["geometric"]
        payload["geometric_check_db"] = geometric_loss(
            rx_aperture=_fnum(geo, "rx_aperture_m", None),
            divergence=_fnum(geo, "divergence_rad", None),
            range_m=_fnum(geo, "range_m", None),
        )
    if "target" in config:
        target = config["target"]
        t_acq = acquisition_time(
            target_shot_noise=_fnum(target, "shot_noise_rad", None),
            visibility=_fnum(target, "visibility", 0.863),
            rate=rate,
        )
        payload["acquisition_time_s"] = t_acq
        payload["acquisition_time_h"] = t_acq / 3600.0
    _write_json(out_dir / "linkbudget.json", payload)
    _write_csv(
        out_dir / "linkbudget.csv",
        "item,loss_db",
        ([n for n, _ in budget.items], [v for _, v in budget.items]),
        ("%s", "%.6g"),
    )
    _emit_stdout(payload, fmt)
    return 0


def _attenuation_from(config: dict) -> AttenuationProcess:
    att = config.get("attenuation", {})
    return AttenuationProcess(
        mean_loss=_fnum(att, "mean_loss_db", 0.0),
        modulation_amplitude=_fnum(att, "modulation_amplitude_db", 0.0),
        modulation_period=_fnum(att, "modulation_period_s", 38.0),
        stochastic_cv=_fnum(att, "stochastic_cv", 0.0),
    )


def _spads_from(config: dict, process: AttenuationProcess, visibility: float):
    if "spad_inconsistency_rms_rad" in config:
        target = _fnum(config, "spad_inconsistency_rms_rad", None)
        up, down = inconsistency_slopes(target, process, visibility)
        return SpadModel(rate_efficiency_slope=up), SpadModel(rate_efficiency_slope=down)
    raw = config.get("spads")
    if raw is None:
        return SpadModel(), SpadModel()
    if not isinstance(raw, list) or len(raw) != 2:
        raise ConfigError("config key 'spads' must list exactly two detector mappings")
    spads = []
    for entry in raw:
        if not isinstance(entry, dict):
            raise ConfigError("each spads entry must be a mapping")
        unknown = set(entry) - {"base_efficiency", "dark_rate", "rate_efficiency_slope"}
        if unknown:
            raise ConfigError(f"unknown spad keys: {sorted(unknown)}")
        spads.append(
            SpadModel(
                base_efficiency=_fnum(entry, "base_efficiency", 1.0),
                dark_rate=_fnum(entry, "dark_rate", 0.0),
                rate_efficiency_slope=_fnum(entry, "rate_efficiency_slope", 0.0),
            )
        )
    return tuple(spads)


def cmd_simulate(config: dict, out_dir: Path, fmt: str) -> int:
    mode = config.get("mode", "campaign")
    if mode not in ("campaign", "scan"):
        raise ConfigError(f"simulate mode must be 'campaign' or 'scan', got {mode!r}")
    visibility = _fnum(config, "visibility", 0.863)
    seed = _inum(config, "seed", 0)
    process = _attenuation_from(config)

    if mode == "scan":
        scan_cfg = config.get("scan", {})
        points = _inum(scan_cfg, "points", 24)
        cycles = _fnum(scan_cfg, "cycles", 2.0)
        counts_per_point = _fnum(scan_cfg, "counts_per_point", 1e5)
        offset = _fnum(scan_cfg, "phase_offset_rad", 0.0)
        settings = np.linspace(0.0, 2.0 * math.pi * cycles, points, endpoint=False)
        scan = simulate_fringe_scan(
            settings, counts_per_point, visibility, SeededRng(seed), phase_offset=offset
        )
        _write_csv(
            out_dir / "fringe.csv",
            "phase_rad,c1,c2",
            (
                [phi for phi, _ in scan],
                [rec.c1 for _, rec in scan],
                [rec.c2 for _, rec in scan],
            ),
            ("%.12g", "%d", "%d"),
        )
        payload = {
            "command": "simulate",
            "mode": "scan",
            "config": config,
            "seed": seed,
            "n_points": points,
            "counts_per_point": counts_per_point,
            "total_counts": int(sum(rec.total for _, rec in scan)),
        }
        _write_json(out_dir / "simulate.json", payload)
        _emit_stdout(payload, fmt)
        return 0

    campaign = CampaignConfig(
        duration=_fnum(config, "duration_s", 940.0),
        sample_period=_fnum(config, "sample_period_s", 10.0),
        true_phase=_fnum(config, "true_phase_rad", math.pi / 2.0),
        drift_rate=_fnum(config, "drift_rate_rad_s", 0.0),
        visibility=visibility,
        detected_mean_rate=_fnum(config, "detected_mean_rate_hz", 7260.0),
        attenuation=process,
        scheme=DetectionScheme(
            kind=config.get("scheme", {}).get("kind", "dual_spad"),
            time_division_delay=_fnum(config.get("scheme", {}), "time_division_delay_s", 3.1e-9),
        ),
        spads=_spads_from(config, process, visibility),
        seed=seed,
    )
    result = simulate_campaign(campaign)
    _write_csv(
        out_dir / "counts.csv",
        "t_s,c1,c2",
        (
            result.series.t,
            [r.c1 for r in result.records],
            [r.c2 for r in result.records],
        ),
        ("%.9g", "%d", "%d"),
    )
    _write_csv(
        out_dir / "phase.csv",
        "t_s,phase_rad,clamped",
        (result.series.t, result.series.phase, result.series.clamped.astype(int)),
        ("%.9g", "%.12g", "%d"),
    )
    payload = {
        "command": "simulate",
        "mode": "campaign",
        "config": config,
        "seed": seed,
        "summary": result.summary.to_dict(),
    }
    _write_json(out_dir / "simulate.json", payload)
    _emit_stdout(payload, fmt)
    return 0


def cmd_fit(config: dict, out_dir: Path, fmt: str) -> int:
    kind = config.get("kind", "detrend")
    if kind not in ("detrend", "visibility", "thermal"):
        raise ConfigError(f"fit kind must be 'detrend', 'visibility' or 'thermal', got {kind!r}")
    source = config.get("input")
    if not source:
        raise ConfigError("fit needs an input CSV (config key 'input' or --input)")
    payload: dict = {"command": "fit", "kind": kind, "config": config, "input": str(source)}

    if kind == "detrend":
        t, phase = _read_csv(source, 2)
        series = PhaseSeries(t=t, phase=phase)
        result = detrend_linear(series)
        payload["slope_rad_per_s"] = result.slope
        payload["slope_sigma_rad_per_s"] = result.sigma_slope
        payload["residual_std_rad"] = result.residual_std
        trend = result.slope * (series.t - series.t.mean())
        residuals = series.phase - series.phase.mean() - trend
        _write_csv(
            out_dir / "residuals.csv",
            "t_s,residual_rad",
            (series.t, residuals),
            ("%.9g", "%.12g"),
        )
    elif kind == "visibility":
        phis, c1, c2 = _read_csv(source, 3)
        scan = [
            (float(p), CountRecord(float(i), int(a), int(b)))
            for i, (p, a, b) in enumerate(zip(phis, c1, c2))
        ]
        fit = fit_visibility(scan)
        payload["visibility"] = fit.visibility
        payload["sigma_visibility"] = fit.sigma_visibility
        payload["phase_offset_rad"] = fit.phase_offset
    else:
        temp, phase = _read_csv(source, 2)
        scan = ThermalScan(
            temperature=temp,
            phase=phase,
            arm_diff=_fnum(config, "arm_diff_m", 1.2),
            wavelength=_fnum(config, "wavelength_m", 893.2e-9),
        )
        fit = fit_phase_vs_temperature(scan)
        line = cte_from_phase_fit(fit, scan)
        window = _fnum(config, "window_halfwidth_k", 0.2)
        reference = _fnum(config, "reference_cte", 550e-9)
        edge_cte = max(
            abs(line.cte_at(line.zero_crossing - window)),
            abs(line.cte_at(line.zero_crossing + window)),
        )
        payload["quadratic_a_rad_per_k2"] = fit.a
        payload["quadratic_b_rad_per_k"] = fit.b
        payload["r_squared"] = fit.r_squared
        payload["cte_slope_per_k2"] = line.slope
        payload["zero_crossing_c"] = line.zero_crossing
        payload["zero_crossing_sigma_c"] = line.zero_crossing_sigma
        payload["cte_bound_in_window"] = edge_cte
        payload["window_halfwidth_k"] = window
        if edge_cte > 0.0:
            payload["suppression_ratio"] = suppression_ratio(reference, edge_cte)
    _write_json(out_dir / "fit.json", payload)
    _emit_stdout(payload, fmt)
    return 0


def cmd_g2(config: dict, out_dir: Path, fmt: str) -> int:
    mode = config.get("mode", "simulate")
    if mode not in ("simulate", "coherent", "ingest"):
        raise ConfigError(f"g2 mode must be 'simulate', 'coherent' or 'ingest', got {mode!r}")
    window = _fnum(config, "window_s", 50e-9)
    bin_width = _fnum(config, "bin_width_s", 1e-9)
    seed = _inum(config, "seed", 0)
    payload: dict = {"command": "g2", "mode": mode, "config": config}

    if mode == "ingest":
        path_a, path_b = config.get("input_a"), config.get("input_b")
        if not path_a or not path_b:
            raise ConfigError("g2 ingest mode needs 'input_a' and 'input_b' CSV paths")
        (t_a,) = _read_csv(path_a, 1)
        (t_b,) = _read_csv(path_b, 1)
    else:
        rate = _fnum(config, "rate_hz", 2e6)
        duration = _fnum(config, "duration_s", 3.0)
        rng = SeededRng(seed)
        payload["seed"] = seed
        if mode == "coherent":
            t_a, t_b = simulate_coherent_stream(rate, duration, rng)
        else:
            t_a, t_b = simulate_single_photon_stream(
                rate,
                duration,
                rng,
                g2_zero=_fnum(config, "g2_zero", 0.071),
                dead_time=_fnum(config, "dead_time_s", 2e-9),
            )
    result = g2_correlation(t_a, t_b, window=window, bin_width=bin_width)
    payload["g2_zero"] = result.g2_zero
    payload["plateau"] = result.plateau
    payload["zero_bin_pairs"] = result.zero_bin_pairs
    payload["events_a"] = int(len(t_a))
    payload["events_b"] = int(len(t_b))
    _write_json(out_dir / "g2.json", payload)
    _write_csv(out_dir / "histogram.csv", "tau_s,g2", (result.tau, result.g2), ("%.6g", "%.9g"))
    _emit_stdout(payload, fmt)
    return 0


_COMMANDS = {
    "redshift": (cmd_redshift, "Redshift and Doppler phases for a satellite link"),
    "budget": (cmd_budget, "Assemble the interferometer phase noise budget"),
    "linkbudget": (cmd_linkbudget, "Total a link budget and the acquisition time"),
    "simulate": (cmd_simulate, "Monte Carlo a phase campaign or a fringe scan"),
    "fit": (cmd_fit, "Fit a CSV: linear drift, fringe visibility, or thermal scan"),
    "g2": (cmd_g2, "Second-order correlation from simulated or ingested streams"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fransim",
        description="Single-photon interferometry link simulator and analysis tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", help="YAML config file")
        sp.add_argument("--preset", help="named preset shipped with the package")
        sp.add_argument("--out", help=f"output directory (default ${ENV_OUT} or '.')")
        sp.add_argument(
            "--format",
            choices=("csv", "json"),
            default="csv",
            help="stdout rendering (artifact files are always written)",
        )
        if name in ("simulate", "g2"):
            sp.add_argument("--seed", type=int, help="override the config seed")
        if name == "fit":
            sp.add_argument("--input", help="input CSV (overrides the config key)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler, _ = _COMMANDS[args.command]
    try:
        config = _resolve_config(args, args.command)
        out_dir = _out_dir(args)
        return handler(config, out_dir, args.format)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
