"""Command-line front end: ``gzk run <config>`` and ``gzk list-experiments``.

Configs are YAML documents with a versioned schema (see ``configs/`` and the
README).  Every run writes a manifest, CSV tables, a JSON report and, for
simulations, raw little-endian float64 field dumps with a JSON sidecar.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import json
import logging
import math
import os
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import __version__
from .audit import (Ensemble, EstimateId, blowup_sweep, contraction_report, default_sweep_times,
                    run_audit, smoothing_report, weighted_decay_norms, weighted_decay_scaling)
from .blowup_data import BlowupSpec, PeriodizationWarning, ProfileSpec, build_u0, sample_profile
from .grid import Grid3, RealField, make_grid
from .norms import Trajectory
from .solver import CFLViolation, SolverAbort, SolverConfig, cfl_bound, integrate, invariants

log = logging.getLogger("gzk")

SCHEMA_VERSION = 1
OUTPUT_ROOT_ENV = "GZK_OUTPUT_ROOT"
EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
DT_CAP = 0.01


class ConfigError(ValueError):
    def __init__(self, field_path: str, msg: str, line: int | None = None):
        where = f"line {line}, " if line else ""
        super().__init__(f"{where}field '{field_path}': {msg}")
        self.field_path = field_path
        self.line = line


# ---------------------------------------------------------------------------
# config sections


@dataclass(frozen=True)
class GridSection:
    n_axis: int
    box_len: float


@dataclass(frozen=True)
class SolverSection:
    k: int = 1
    dt: float | None = None          # None: derived from the CFL bound, capped at DT_CAP
    T: float = 1.0
    dealias_fraction: float = 2.0 / 3.0
    snapshot_stride: int = 10
    cfl_constant: float = 1.0
    nonlinear: bool = True


@dataclass(frozen=True)
class DataSection:
    kind: str = "blowup"             # blowup | profile | gaussian | zero
    amplitude: float = 1.0
    b: float = 2.0
    j_max: int = 3
    k_max: int = 2
    window: list | None = None       # [lo, hi] for retained singular times
    width: float = 1.0               # gaussian data only


@dataclass(frozen=True)
class ProbeSection:
    delta: float | None = None       # None: 4 * spacing
    times: list | None = None
    source: str = "linear"
    eps: float = 0.05
    spike_factor: float = 5.0
    armed_ratio: float = 10.0
    duhamel_ratio: float = 2.0
    s_probe: float = 3.0
    t: float = 0.5
    n_axes: list | None = None
    a: float = 1.0
    alphas: list | None = None
    t_samples: list | None = None
    slope_tol: float = 0.15
    estimate: str = "kato_forward"
    gamma: float = 0.4
    beta: float = 0.6
    s: float = 1.5
    r: float = 0.5
    audit_T: float = 1.0
    growth_bound: float = 2.0
    ensemble_count: int = 20
    ensemble_generator: str = "band_limited"
    k_cut: float = 2.0
    quad_points: int = 33
    n_iters: int = 10
    mass_tol: float = 1e-8
    ham_tol: float = 1e-6


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    grid: GridSection
    solver: SolverSection = SolverSection()
    data: DataSection = DataSection()
    probe: ProbeSection = ProbeSection()
    seed: int = 0
    output: str | None = None
    schema_version: int = SCHEMA_VERSION


SECTIONS = {"grid": GridSection, "solver": SolverSection, "data": DataSection,
            "probe": ProbeSection}


def defaults_table() -> dict:
    """All physical and probe defaults in one place; echoed into every manifest."""
    out = {"grid": {"n_axis": 64, "box_len": 30.0}}
    for name, cls in SECTIONS.items():
        if name == "grid":
            continue
        out[name] = {f.name: f.default for f in dataclasses.fields(cls)}
    out["solver"]["dt"] = f"min({DT_CAP}, cfl_bound / 2)"
    out["probe"]["delta"] = "4 * spacing"
    return out


# ---------------------------------------------------------------------------
# loading and validation


def _line_index(text: str) -> dict[str, int]:
    """Map dotted key paths to 1-based source lines."""
    lines: dict[str, int] = {}

    def walk(node, prefix):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                path = f"{prefix}.{k.value}" if prefix else str(k.value)
                lines[path] = k.start_mark.line + 1
                walk(v, path)

    try:
        walk(yaml.compose(text), "")
    except yaml.YAMLError:
        pass
    return lines


def _coerce(value: Any, annotation: str, path: str, line: int | None):
    optional = "None" in annotation
    if value is None:
        if optional:
            return None
        raise ConfigError(path, "must not be null", line)
    base = annotation.replace("| None", "").strip()
    if base == "bool":
        if not isinstance(value, bool):
            raise ConfigError(path, f"expected true/false, got {value!r}", line)
        return value
    if base == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(path, f"expected an integer, got {value!r}", line)
        return value
    if base == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(path, f"expected a number, got {value!r}", line)
        return float(value)
    if base == "str":
        if not isinstance(value, str):
            raise ConfigError(path, f"expected a string, got {value!r}", line)
        return value
    if base == "list":
        if not isinstance(value, list):
            raise ConfigError(path, f"expected a list, got {value!r}", line)
        return value
    raise AssertionError(annotation)


def _build_section(cls, raw: Any, name: str, lines: dict[str, int]):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(name, "expected a mapping", lines.get(name))
    known = {f.name: f for f in dataclasses.fields(cls)}
    for key in raw:
        if key not in known:
            raise ConfigError(f"{name}.{key}", "unknown field", lines.get(f"{name}.{key}"))
    kwargs = {}
    for fname, f in known.items():
        path = f"{name}.{fname}"
        if fname not in raw:
            if f.default is dataclasses.MISSING:
                raise ConfigError(path, "required field is missing", lines.get(name))
            continue
        kwargs[fname] = _coerce(raw[fname], str(f.type), path, lines.get(path))
    return cls(**kwargs)


EXPERIMENTS: dict[str, dict] = {}


def load_config(path: str | Path) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError("<document>", f"not valid YAML ({exc})",
                          mark.line + 1 if mark else None) from None
    return parse_config(raw, _line_index(text))


def parse_config(raw: Any, lines: dict[str, int] | None = None) -> ExperimentConfig:
    lines = lines or {}
    if not isinstance(raw, dict):
        raise ConfigError("<document>", "top level must be a mapping")
    top = {"experiment", "seed", "output", "schema_version", *SECTIONS}
    for key in raw:
        if key not in top:
            raise ConfigError(str(key), "unknown field", lines.get(str(key)))
    version = raw.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"unsupported version {version!r} "
                          f"(this build reads {SCHEMA_VERSION})", lines.get("schema_version"))
    exp = raw.get("experiment")
    if exp is None:
        raise ConfigError("experiment", "required field is missing")
    if exp not in EXPERIMENTS:
        raise ConfigError("experiment", f"unknown experiment {exp!r}; "
                          f"choose from {sorted(EXPERIMENTS)}", lines.get("experiment"))
    if "grid" not in raw:
        raise ConfigError("grid.n_axis", "required field is missing (no grid section)")
    sections = {name: _build_section(cls, raw.get(name), name, lines)
                for name, cls in SECTIONS.items()}
    seed = _coerce(raw.get("seed", 0), "int", "seed", lines.get("seed"))
    output = _coerce(raw.get("output"), "str | None", "output", lines.get("output"))
    cfg = ExperimentConfig(exp, seed=seed, output=output, schema_version=version, **sections)
    _check_values(cfg, lines)
    return cfg


def _check_values(cfg: ExperimentConfig, lines: dict[str, int]):
    g = cfg.grid
    if g.n_axis < 8 or g.n_axis % 2:
        raise ConfigError("grid.n_axis", f"must be even and >= 8, got {g.n_axis}",
                          lines.get("grid.n_axis"))
    if not g.box_len > 0:
        raise ConfigError("grid.box_len", "must be positive", lines.get("grid.box_len"))
    if cfg.data.kind not in ("blowup", "profile", "gaussian", "zero"):
        raise ConfigError("data.kind", f"unknown data kind {cfg.data.kind!r}",
                          lines.get("data.kind"))
    if cfg.probe.source not in ("linear", "nonlinear", "duhamel"):
        raise ConfigError("probe.source", f"unknown field source {cfg.probe.source!r}",
                          lines.get("probe.source"))
    w = cfg.data.window
    if w is not None and (len(w) != 2 or not all(isinstance(v, (int, float)) for v in w)):
        raise ConfigError("data.window", "expected [lo, hi]", lines.get("data.window"))


# ---------------------------------------------------------------------------
# output handling


class RunWriter:
    """Writes run outputs and tracks them for the manifest."""

    def __init__(self, outdir: Path):
        self.outdir = outdir
        outdir.mkdir(parents=True, exist_ok=True)
        self.files: list[Path] = []

    def _path(self, name: str) -> Path:
        p = self.outdir / name
        self.files.append(p)
        return p

    def csv(self, name: str, header: list[str], rows):
        with self._path(name).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_cell(v) for v in row])

    def json(self, name: str, obj):
        with self._path(name).open("w") as fh:
            json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def field_dump(self, name: str, traj: Trajectory):
        data = np.ascontiguousarray(traj.array(), dtype="<f8")
        data.tofile(self._path(name + ".f64"))
        self.json(name + ".json", {
            "dtype": "float64", "byte_order": "little", "order": "C",
            "dims": ["t", "x", "y1", "y2"], "shape": list(data.shape),
            "n_axis": traj.grid.n_axis, "box_len": traj.grid.box_len,
            "origin": "box centered at 0; sample i at -L/2 + i*L/n",
            "times": [float(t) for t in traj.times], "provenance": traj.provenance,
        })

    def manifest(self, cfg: ExperimentConfig, wall: float, verdict: str, extra: dict | None = None):
        entries = []
        for p in self.files:
            entries.append({"file": p.name, "bytes": p.stat().st_size,
                            "sha256": hashlib.sha256(p.read_bytes()).hexdigest()})
        body = {"artifact_version": __version__, "schema_version": SCHEMA_VERSION,
                "config": dataclasses.asdict(cfg), "defaults": defaults_table(),
                "wall_time_s": round(wall, 3), "verdict": verdict, "outputs": entries}
        if extra:
            body.update(extra)
        with (self.outdir / "manifest.json").open("w") as fh:
            json.dump(_jsonable(body), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


# ---------------------------------------------------------------------------
# experiments


def _register(name: str, anchor: str, claim: str, params: str):
    def deco(fn):
        EXPERIMENTS[name] = {"fn": fn, "anchor": anchor, "claim": claim, "params": params}
        return fn
    return deco


def _grid(cfg: ExperimentConfig, n_axis: int | None = None) -> Grid3:
    return make_grid(n_axis or cfg.grid.n_axis, cfg.grid.box_len)


def _blowup_spec(cfg: ExperimentConfig) -> BlowupSpec:
    d = cfg.data
    window = tuple(float(v) for v in d.window) if d.window else (0.0, math.inf)
    return BlowupSpec(d.j_max, d.k_max, ProfileSpec(d.b), window=window)


def _initial_data(cfg: ExperimentConfig, grid: Grid3) -> RealField:
    d = cfg.data
    if d.kind == "zero":
        return RealField.zeros(grid)
    if d.kind == "gaussian":
        x, y1, y2 = grid.coords()
        return RealField(grid, d.amplitude * np.exp(-(x ** 2 + y1 ** 2 + y2 ** 2) / (2 * d.width ** 2)))
    if d.kind == "profile":
        return d.amplitude * sample_profile(ProfileSpec(d.b), grid)
    return d.amplitude * build_u0(_blowup_spec(cfg), grid)[0]


def _solver_config(cfg: ExperimentConfig, u0: RealField, T: float | None = None) -> SolverConfig:
    s = cfg.solver
    dt = s.dt
    if dt is None:
        umax = float(np.abs(u0.samples).max())
        dt = min(DT_CAP, 0.5 * cfl_bound(umax, u0.grid, s.cfl_constant))
        T_ = s.T if T is None else T
        dt = T_ / math.ceil(T_ / dt - 1e-9)
    return SolverConfig(k=s.k, dt=dt, T=s.T if T is None else T,
                        dealias_fraction=s.dealias_fraction, snapshot_stride=s.snapshot_stride,
                        cfl_constant=s.cfl_constant, nonlinear=s.nonlinear)


def _rel_drift(series: list[float]) -> float:
    ref = abs(series[0])
    dev = max(abs(v - series[0]) for v in series)
    if ref == 0:
        return dev
    return dev / ref


@_register("simulate", "the gZK equation itself (local and small-data global flow)", "gZK flow from configured data; mass and Hamiltonian conservation",
           "grid, solver, data, probe.mass_tol, probe.ham_tol")
def _simulate(cfg: ExperimentConfig, out: RunWriter) -> tuple[str, dict]:
    g = _grid(cfg)
    u0 = _initial_data(cfg, g)
    scfg = _solver_config(cfg, u0)
    traj = integrate(u0, scfg)
    inv = [invariants(f, scfg.k) for f in traj.snapshots]
    out.field_dump("u", traj)
    out.csv("invariants.csv", ["t", "mass", "mean", "hamiltonian"],
            [(t, *v) for t, v in zip(traj.times, inv)])
    mass_drift = _rel_drift([v[0] for v in inv])
    ham_drift = _rel_drift([v[2] for v in inv])
    ok = mass_drift < cfg.probe.mass_tol and ham_drift < cfg.probe.ham_tol
    report = {"dt": scfg.dt, "steps": scfg.n_steps, "mass_drift": mass_drift,
              "hamiltonian_drift": ham_drift, "mass_tol": cfg.probe.mass_tol,
              "ham_tol": cfg.probe.ham_tol}
    return ("PASS" if ok else "FAIL"), report


@_register("blowup-sweep", "dispersive blow-up theorems (linear and nonlinear); C1 regularity theorem "
           "for the Duhamel term", "dispersive blow-up: C1 failure of the flow exactly at the armed "
           "rational times, none at golden-ratio irrational times; no spike in the Duhamel term",
           "data (blowup spec), probe.source, probe.eps, probe.delta, probe.times")
def _blowup(cfg: ExperimentConfig, out: RunWriter) -> tuple[str, dict]:
    g = _grid(cfg)
    spec = _blowup_spec(cfg)
    p = cfg.probe
    _, armed_all = build_u0(spec, g)
    times = p.times or default_sweep_times(armed_all)
    window = (min(times), max(times))
    solver = None
    if p.source != "linear":
        u0 = p.eps * build_u0(spec, g)[0]
        solver = _solver_config(cfg, u0, T=max(times))
    res = blowup_sweep(spec, g, times, p.delta, p.source, p.eps, window=window, solver=solver)
    out.csv("sweep.csv", ["t", "score", "is_armed_rational"], res.rows)
    if p.source == "duhamel":
        ok = not res.max_armed_ratio() > p.duhamel_ratio
    else:
        ok = res.spikes_match_armed(p.spike_factor) and res.min_armed_ratio() >= p.armed_ratio
    report = {"source": p.source, "delta": res.delta, "baseline": res.baseline,
              "armed": [str(q) for q in res.armed.times],
              "armed_coefficients": res.armed.coefficients,
              "spike_set": res.spike_set(p.spike_factor),
              "min_armed_ratio": res.min_armed_ratio(), "max_armed_ratio": res.max_armed_ratio(),
              "genericity_margin": {repr(t): m for t, m in res.genericity.items()}}
    return ("PASS" if ok else "FAIL"), report


@_register("weighted-decay", "weighted decay lemma for the free flow", "weighted decay of the free flow: derivative loss t^(-|alpha|/2) "
           "against the growth e^(3 a^3 t) under an exponential weight",
           "probe.a, probe.alphas, probe.t_samples, probe.slope_tol")
def _weighted(cfg: ExperimentConfig, out: RunWriter) -> tuple[str, dict]:
    g = _grid(cfg)
    p = cfg.probe
    alphas = [tuple(a) for a in (p.alphas or [[1, 0, 0], [2, 0, 0]])]
    ts = np.asarray(p.t_samples or np.geomspace(0.1, 1.0, 8).tolist(), dtype=float)
    prof = ProfileSpec(cfg.data.b)
    rows, norms, slopes, ok = [], [], {}, True
    for al in alphas:
        slope = weighted_decay_scaling(p.a, al, ts, g, prof)
        bound = -sum(al) / 2 - p.slope_tol
        slopes[str(al)] = slope
        ok &= slope >= bound
        rows.append((" ".join(map(str, al)), slope, bound, slope >= bound))
        for t, N in zip(ts, weighted_decay_norms(p.a, al, ts, g, prof)):
            norms.append((" ".join(map(str, al)), t, N))
    out.csv("slopes.csv", ["alpha", "slope", "lower_bound", "ok"], rows)
    out.csv("norms.csv", ["alpha", "t", "norm"], norms)
    return ("PASS" if ok else "FAIL"), {"a": p.a, "slopes": slopes}


def _estimate_id(p: ProbeSection) -> EstimateId:
    if p.estimate == "strichartz":
        return EstimateId.strichartz(p.gamma, p.beta)
    if p.estimate == "maximal":
        return EstimateId.maximal(p.s)
    if p.estimate == "weighted_commutator":
        return EstimateId.weighted_commutator(p.r, p.s)
    return EstimateId(p.estimate)


@_register("estimate-audit", "Kato smoothing lemma, maximal function estimate, Strichartz corollary", "linear estimates (Kato smoothing and its dual, maximal function, "
           "Strichartz): ratio sup stays bounded under grid refinement",
           "probe.estimate, probe.gamma, probe.beta, probe.s, probe.audit_T, probe.ensemble_*")
def _estimates(cfg: ExperimentConfig, out: RunWriter) -> tuple[str, dict]:
    p = cfg.probe
    eid = _estimate_id(p)
    ens = Ensemble(p.ensemble_count, p.ensemble_generator, cfg.seed, p.k_cut)
    g = _grid(cfg)
    rep = run_audit(eid, ens, g, p.audit_T, growth_bound=p.growth_bound)
    rows = [(i, g.n_axis, r) for i, r in enumerate(rep.ratios)]
    rows += [(i, 2 * g.n_axis, r) for i, r in enumerate(rep.refined_ratios or [])]
    out.csv("ratios.csv", ["member", "n_axis", "ratio"], rows)
    return rep.verdict, rep.as_dict()


@_register("smoothing", "nonlinear smoothing theorems for the Duhamel term", "nonlinear smoothing: the Duhamel term stays grid-stable in H^s_probe "
           "while the linear flow of the cusp data does not",
           "data.amplitude, solver.k, probe.s_probe, probe.t, probe.n_axes")
def _smoothing(cfg: ExperimentConfig, out: RunWriter) -> tuple[str, dict]:
    p = cfg.probe
    ns = p.n_axes or [cfg.grid.n_axis, 2 * cfg.grid.n_axis]
    grids = [_grid(cfg, n) for n in ns]
    make = lambda g: _initial_data(cfg, g)  # noqa: E731
    scfg = _solver_config(cfg, make(grids[-1]), T=p.t)
    rep = smoothing_report(make, scfg, p.s_probe, grids, p.t)
    out.csv("growth.csv", ["n_axis", "G_lin", "G_duh"], zip(rep.n_axes, rep.G_lin, rep.G_duh))
    ok = rep.verdict == "SMOOTHING"
    return ("PASS" if ok else "FAIL"), {**rep.as_dict(), "dt": scfg.dt}


@_register("contraction", "local well-posedness theorem in the weighted space", "local well-posedness by contraction: Picard iterates of the Duhamel "
           "map contract and converge to the solver's solution",
           "probe.eps, solver.T, probe.quad_points, probe.n_iters")
def _contraction(cfg: ExperimentConfig, out: RunWriter) -> tuple[str, dict]:
    p = cfg.probe
    g = _grid(cfg)
    u0 = p.eps * sample_profile(ProfileSpec(cfg.data.b), g)
    rep = contraction_report(u0, cfg.solver.T, k=cfg.solver.k, quad_points=p.quad_points,
                             n_iters=p.n_iters)
    ratios = [math.nan] + rep.ratios
    out.csv("picard.csv", ["iteration", "distance", "ratio"],
            [(i, d, r) for i, (d, r) in enumerate(zip(rep.distances, ratios))])
    return rep.verdict, rep.as_dict()


# ---------------------------------------------------------------------------
# entry points


def listing() -> str:
    lines = [f"gzk experiments (listing v{SCHEMA_VERSION})"]
    for name in sorted(EXPERIMENTS):
        e = EXPERIMENTS[name]
        lines.append(f"{name}")
        lines.append(f"    anchor: {e['anchor']}")
        lines.append(f"    claim:  {e['claim']}")
        lines.append(f"    params: {e['params']}")
    return "\n".join(lines)


def output_root() -> Path:
    return Path(os.environ.get(OUTPUT_ROOT_ENV, "runs"))


def run(config_path: str | Path) -> int:
    try:
        cfg = load_config(config_path)
    except FileNotFoundError:
        print(f"error: config file not found: {config_path}", file=sys.stderr)
        return EXIT_ERROR
    except ConfigError as exc:
        print(f"error: invalid config {config_path}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    outdir = output_root() / (cfg.output or f"{cfg.experiment}-seed{cfg.seed}")
    writer = RunWriter(outdir)
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default", PeriodizationWarning)
            verdict, report = EXPERIMENTS[cfg.experiment]["fn"](cfg, writer)
    except SolverAbort as exc:
        print(f"error: solver aborted ({exc}); last valid time {exc.last_time}", file=sys.stderr)
        writer.manifest(cfg, time.perf_counter() - t0, "ERROR", {"error": str(exc),
                        "last_valid_time": exc.last_time})
        return EXIT_ERROR
    except (CFLViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        writer.manifest(cfg, time.perf_counter() - t0, "ERROR", {"error": str(exc)})
        return EXIT_ERROR
    writer.json("report.json", {"experiment": cfg.experiment, "verdict": verdict, **report})
    writer.manifest(cfg, time.perf_counter() - t0, verdict)
    print(f"{cfg.experiment}: {verdict} -> {outdir}")
    return EXIT_PASS if verdict == "PASS" else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="gzk", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the experiment described by a YAML config")
    p_run.add_argument("config")
    sub.add_parser("list-experiments", help="list experiments and the claim each checks")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "list-experiments":
        print(listing())
        return EXIT_PASS
    return run(args.config)


if __name__ == "__main__":
    sys.exit(main())
