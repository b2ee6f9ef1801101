"""Command-line harness: JSON-configured runs with reproducible reports.

Every run writes ``<command>.csv`` or ``<command>.json`` plus
``<command>.certificates.json`` into the output directory.  Reports carry the
sha256 of the validated configuration and contain no timestamps, so equal
configs give byte-identical files.

Exit codes: 0 success, 2 invalid configuration, 3 precision contract violated.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import detectors as det
from . import envsemi
from .errors import ConfigurationError, DomainError, PrecisionError
from .hyperspace import FiniteSubset, hausdorff_distance, set_recurrence_scan
from .precision import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    format_rational,
    format_real,
    make_constants,
    require_resolution,
    to_fraction,
    working_precision,
)
from .systems import (
    GROUP,
    CircleFamilySystem,
    FiniteMapSystem,
    ProductSystem,
    RotationSystem,
    SkewProductSystem,
    TimeSet,
)

COMMANDS = ("constants", "simulate", "detect", "hyper", "envsemi", "table")
DETECTORS = ("uniform-rigidity", "weak-rigidity", "equicontinuity-violation", "proximal",
             "rigidity-relation", "regionally-proximal", "classify")
FORMATS = ("csv", "json")

_TOP_KEYS = {"system", "precision", "time_set", "grid", "epsilons", "candidate_times", "seed",
             "format", "out", "points", "times", "sets", "horizon", "systems", "systems_dir",
             "pairs", "approach_radius", "wr_horizon", "exhaustive_horizon", "K_alpha"}


# ---------------------------------------------------------------- config


@dataclass
class ExperimentConfig:
    system: dict = field(default_factory=lambda: {"kind": "skew"})
    precision: int = DEFAULT_PRECISION
    time_set: TimeSet = field(default_factory=lambda: TimeSet(GROUP, 32))
    grid_size: int = 32
    epsilon_witness: Fraction = det.EPSILON_WITNESS
    epsilon_refute: Fraction = det.EPSILON_REFUTE
    epsilon_relation: Fraction = det.TOL_RELATION
    candidate_times: Optional[List[int]] = None
    seed: int = 0
    format: str = "csv"
    out: str = "rigidlab-out"
    extra: dict = field(default_factory=dict)

    def canonical(self) -> dict:
        return {"system": self.system, "precision": self.precision,
                "time_set": {"mode": self.time_set.mode, "horizon": self.time_set.horizon,
                             "s_min": self.time_set.s_min},
                "grid": {"size": self.grid_size},
                "epsilons": {"witness": format_rational(self.epsilon_witness),
                             "refute": format_rational(self.epsilon_refute),
                             "relation": format_rational(self.epsilon_relation)},
                "candidate_times": self.candidate_times, "seed": self.seed,
                "format": self.format, "extra": self.extra}

    def hash(self, command: str, argument: str = "") -> str:
        payload = {"command": command, "argument": argument, "config": self.canonical()}
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _int(value, name: str, lo: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}", field=name)
    if lo is not None and value < lo:
        raise ConfigurationError(f"{name} must be >= {lo}", field=name)
    return value


def _rational(value, name: str) -> Fraction:
    if isinstance(value, float):
        raise ConfigurationError(f"{name} must be an exact rational string or integer", field=name)
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigurationError(f"{name} is not a rational: {value!r}", field=name) from None


def _validate_system(spec, name: str = "system") -> dict:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigurationError("system needs a 'kind'", field=f"{name}.kind")
    kind = spec["kind"]
    out = {"kind": kind}
    if kind == "skew":
        out["K_phi"] = _int(spec.get("K_phi", 3), f"{name}.K_phi", 1)
        out["K_alpha"] = _int(spec.get("K_alpha", 4), f"{name}.K_alpha", 1)
        if out["K_phi"] >= out["K_alpha"]:
            raise ConfigurationError("K_phi must be < K_alpha", field=f"{name}.K_phi")
        make_constants(out["K_alpha"])
    elif kind == "circle":
        out["M"] = _int(spec.get("M", 24), f"{name}.M", 2)
    elif kind == "rotation":
        out["rho"] = format_rational(_rational(spec.get("rho", "377/610"), f"{name}.rho"))
    elif kind == "finite":
        table = spec.get("table")
        if not isinstance(table, list) or not table:
            raise ConfigurationError("finite system needs a nonempty table", field=f"{name}.table")
        out["table"] = [_int(v, f"{name}.table", 0) for v in table]
    elif kind == "product":
        out["a"] = _validate_system(spec.get("a"), f"{name}.a")
        out["b"] = _validate_system(spec.get("b"), f"{name}.b")
    else:
        raise ConfigurationError(f"unknown system kind {kind!r}", field=f"{name}.kind")
    unknown = set(spec) - set(out)
    if unknown:
        raise ConfigurationError(f"unknown system keys {sorted(unknown)}",
                                 field=f"{name}.{sorted(unknown)[0]}")
    return out


def load_config(raw: dict, seed: Optional[int] = None, fmt: Optional[str] = None,
                out: Optional[str] = None) -> ExperimentConfig:
    """Validate a raw JSON config; CLI flags and RIGIDLAB_PRECISION take priority."""
    if not isinstance(raw, dict):
        raise ConfigurationError("config must be a JSON object", field="config")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        name = sorted(unknown)[0]
        raise ConfigurationError(f"unknown config key {name!r}", field=name)
    cfg = ExperimentConfig()
    cfg.system = _validate_system(raw.get("system", {"kind": "skew"}))
    env = os.environ.get("RIGIDLAB_PRECISION")
    if env is not None:
        try:
            cfg.precision = int(env)
        except ValueError:
            raise ConfigurationError("RIGIDLAB_PRECISION must be an integer",
                                     field="RIGIDLAB_PRECISION") from None
    else:
        cfg.precision = _int(raw.get("precision", DEFAULT_PRECISION), "precision")
    if cfg.precision < MIN_PRECISION:
        raise ConfigurationError(f"precision must be >= {MIN_PRECISION}", field="precision")
    ts = raw.get("time_set", {})
    if not isinstance(ts, dict):
        raise ConfigurationError("time_set must be an object", field="time_set")
    cfg.time_set = TimeSet(ts.get("mode", GROUP), _int(ts.get("horizon", 32), "time_set.horizon"),
                           _int(ts.get("s_min", 1), "time_set.s_min"))
    grid = raw.get("grid", {})
    cfg.grid_size = _int(grid.get("size", 32) if isinstance(grid, dict) else grid, "grid.size", 1)
    eps = raw.get("epsilons", {})
    if not isinstance(eps, dict):
        raise ConfigurationError("epsilons must be an object", field="epsilons")
    cfg.epsilon_witness = _rational(eps.get("witness", det.EPSILON_WITNESS), "epsilons.witness")
    cfg.epsilon_refute = _rational(eps.get("refute", det.EPSILON_REFUTE), "epsilons.refute")
    cfg.epsilon_relation = _rational(eps.get("relation", det.TOL_RELATION), "epsilons.relation")
    for name, v in (("epsilons.witness", cfg.epsilon_witness), ("epsilons.refute", cfg.epsilon_refute),
                    ("epsilons.relation", cfg.epsilon_relation)):
        if v <= 0:
            raise ConfigurationError(f"{name} must be positive", field=name)
    ct = raw.get("candidate_times")
    if ct is not None:
        if not isinstance(ct, list) or not ct:
            raise ConfigurationError("candidate_times must be a nonempty list",
                                     field="candidate_times")
        cfg.candidate_times = [_int(t, "candidate_times") for t in ct]
        for t in cfg.candidate_times:
            if not cfg.time_set.allows(t):
                raise ConfigurationError(f"candidate time {t} is outside the time set",
                                         field="candidate_times")
    cfg.seed = _int(seed if seed is not None else raw.get("seed", 0), "seed", 0)
    if cfg.seed >= 2 ** 64:
        raise ConfigurationError("seed must fit in 64 bits", field="seed")
    cfg.format = fmt or raw.get("format", "csv")
    if cfg.format not in FORMATS:
        raise ConfigurationError(f"format must be one of {FORMATS}", field="format")
    cfg.out = out or raw.get("out", "rigidlab-out")
    for key in ("horizon", "wr_horizon", "exhaustive_horizon", "K_alpha"):
        if key in raw:
            cfg.extra[key] = _int(raw[key], key, 1)
    for key in ("points", "times", "sets", "pairs", "systems"):
        if key in raw:
            if not isinstance(raw[key], list):
                raise ConfigurationError(f"{key} must be a list", field=key)
            cfg.extra[key] = raw[key]
    if "times" in cfg.extra:
        cfg.extra["times"] = [_int(t, "times") for t in cfg.extra["times"]]
    if "approach_radius" in raw:
        cfg.extra["approach_radius"] = format_rational(_rational(raw["approach_radius"],
                                                                 "approach_radius"))
    if "systems_dir" in raw:
        cfg.extra["systems_dir"] = str(raw["systems_dir"])
    return cfg


def build_system(spec: dict, precision: int, time_mode: str):
    kind = spec["kind"]
    if kind == "skew":
        return SkewProductSystem.create(spec["K_phi"], spec["K_alpha"], precision, time_mode)
    if kind == "circle":
        return CircleFamilySystem(spec["M"], precision, time_mode)
    if kind == "rotation":
        return RotationSystem(Fraction(spec["rho"]), precision, time_mode)
    if kind == "finite":
        return FiniteMapSystem(tuple(spec["table"]), time_mode)
    return ProductSystem(build_system(spec["a"], precision, time_mode),
                         build_system(spec["b"], precision, time_mode))


# ---------------------------------------------------------------- reports


def _cell(v) -> str:
    j = det.jsonable(v)
    if isinstance(j, (dict, list)):
        return json.dumps(j, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    if isinstance(j, bool):
        return "true" if j else "false"
    return "" if j is None else str(j)


@dataclass
class Report:
    command: str
    columns: List[str]
    rows: List[list]
    summary: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)


def write_report(report: Report, cfg: ExperimentConfig, config_hash: str) -> List[Path]:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    if cfg.format == "csv":
        buf = io.StringIO()
        buf.write(f"# config_sha256={config_hash}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for row in report.rows:
            w.writerow([_cell(v) for v in row])
        path = out / f"{report.command}.csv"
        path.write_text(buf.getvalue(), encoding="utf-8")
    else:
        doc = {"command": report.command, "config_sha256": config_hash,
               "columns": report.columns, "rows": [[det.jsonable(v) for v in r] for r in report.rows],
               "summary": det.jsonable(report.summary)}
        path = out / f"{report.command}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                        encoding="utf-8")
    paths.append(path)
    cert = {"command": report.command, "config_sha256": config_hash, "config": cfg.canonical(),
            "summary": det.jsonable(report.summary), "certificates": report.certificates}
    cpath = out / f"{report.command}.certificates.json"
    cpath.write_text(json.dumps(cert, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                     encoding="utf-8")
    paths.append(cpath)
    return paths


# ---------------------------------------------------------------- commands


def cmd_constants(cfg: ExperimentConfig, arg: str) -> Report:
    K = cfg.extra.get("K_alpha", cfg.system.get("K_alpha", 4))
    try:
        c = make_constants(K, cfg.precision)
    except ConfigurationError as exc:
        raise ConfigurationError(str(exc), field="K_alpha") from None
    rows = []
    for k, n in enumerate(c.n_seq, start=1):
        rows.append([k, str(n), format_rational(c.frac_multiple(n))])
    with working_precision(cfg.precision):
        alpha_digits = format_real(c.alpha.value, cfg.precision)
    table = [[format_rational(v) for v in row] for row in c.phase_table()]
    summary = {"K_alpha": K, "n": [str(n) for n in c.n_seq],
               "alpha": format_rational(c.alpha.value), "alpha_digits": alpha_digits,
               "phase_table": table}
    return Report("constants", ["k", "n_k", "frac_n_k_alpha"], rows, summary,
                  [{"kind": "phase_table", "rows": table}])


def _states(sys, raw, fallback):
    if raw is None:
        return fallback
    try:
        return [sys.state_from_json(o) for o in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad state in config: {exc}", field="points") from None


def cmd_simulate(cfg: ExperimentConfig, arg: str) -> Report:
    sys_ = build_system(cfg.system, cfg.precision, cfg.time_set.mode)
    points = _states(sys_, cfg.extra.get("points"), sys_.grid(cfg.grid_size)[:4])
    times = cfg.extra.get("times") or cfg.candidate_times or sys_.default_candidate_times()
    rows = []
    with working_precision(cfg.precision):
        for p in points:
            for t in times:
                if not cfg.time_set.allows(t):
                    raise ConfigurationError(f"time {t} is outside the time set", field="times")
                q = sys_.power(p, t)
                rows.append([sys_.state_to_json(p), t, sys_.state_to_json(q), sys_.distance(q, p)])
    return Report("simulate", ["point", "time", "image", "displacement"], rows,
                  {"n_points": len(points), "times": times}, [])


def _detect_report(name: str, rep: det.WitnessReport, rows, columns) -> Report:
    return Report(f"detect-{name}", columns, rows,
                  {"property": rep.property, "verdict": rep.verdict}, [rep.to_json()])


def cmd_detect(cfg: ExperimentConfig, arg: str) -> Report:
    if arg not in DETECTORS:
        raise ConfigurationError(f"unknown detector {arg!r}; choose from {DETECTORS}", field="detector")
    sys_ = build_system(cfg.system, cfg.precision, cfg.time_set.mode)
    rng = random.Random(cfg.seed)
    cand = cfg.candidate_times or sys_.default_candidate_times()
    grid = sys_.grid(cfg.grid_size)
    require_resolution(cfg.epsilon_witness, cfg.precision, "epsilons.witness")
    require_resolution(cfg.epsilon_relation, cfg.precision, "epsilons.relation")
    if arg == "uniform-rigidity":
        rep = det.uniform_rigidity_witness(sys_, cand, grid, cfg.epsilon_witness,
                                           epsilon_refute=cfg.epsilon_refute,
                                           horizon=cfg.extra.get("exhaustive_horizon"),
                                           time_set=cfg.time_set)
        rows = [[r["time"], r["sup_displacement"], r["argmax"]] for r in rep.witness["profile"]]
        return _detect_report(arg, rep, rows, ["time", "sup_displacement", "argmax"])
    if arg == "weak-rigidity":
        points = _states(sys_, cfg.extra.get("points"), [sys_.random_state(rng) for _ in range(10)])
        rep = det.weak_rigidity_witness(sys_, points, cfg.epsilon_witness,
                                        cfg.extra.get("wr_horizon", det.HORIZON), cfg.time_set)
        rows = [[rep.witness.get("time"), rep.witness.get("max_displacement"), rep.verdict]]
        return _detect_report(arg, rep, rows, ["time", "max_displacement", "verdict"])
    if arg == "equicontinuity-violation":
        rep = det.equicontinuity_violation_witness(sys_)
        rows = [[e["time"], e["distance"], e["probe"]] for e in rep.witness["schedule"]]
        return _detect_report(arg, rep, rows, ["time", "distance", "probe"])
    if arg == "proximal":
        rows = []
        for _ in range(8):
            p, q = sys_.random_state(rng), sys_.random_state(rng)
            d, t = det.proximal_scan(sys_, p, q, cfg.time_set)
            rows.append([t, d, [sys_.state_to_json(p), sys_.state_to_json(q)]])
        return Report("detect-proximal", ["time", "min_distance", "pair"], rows,
                      {"time_set": cfg.canonical()["time_set"]}, [])
    if arg in ("rigidity-relation", "regionally-proximal"):
        pairs = _pairs(sys_, cfg, rng)
        if arg == "rigidity-relation":
            ur = det.uniform_rigidity_witness(sys_, cand, grid, cfg.epsilon_witness,
                                              time_set=cfg.time_set)
            times = [r["time"] for r in ur.witness["profile"]
                     if r["sup_displacement"] < cfg.epsilon_witness]
            found = det.rigidity_relation_sample(sys_, pairs, times, cfg.epsilon_relation)
            certs = [ur.to_json()]
        else:
            radius = Fraction(cfg.extra.get("approach_radius", "0"))
            found = det.regionally_proximal_sample(sys_, pairs, cfg.time_set.horizon,
                                                   cfg.epsilon_relation, radius)
            certs = []
        rows = [[[sys_.state_to_json(p), sys_.state_to_json(q)], (p, q) in found]
                for p, q in pairs]
        return Report(f"detect-{arg}", ["pair", "in_relation"], rows,
                      {"sampled": len(pairs), "in_relation": len(found)}, certs)
    ccfg = det.ClassifyConfig(grid_size=cfg.grid_size, candidate_times=cfg.candidate_times,
                              epsilon_witness=cfg.epsilon_witness, epsilon_refute=cfg.epsilon_refute,
                              exhaustive_horizon=cfg.extra.get("exhaustive_horizon"),
                              time_set=cfg.time_set, seed=cfg.seed,
                              wr_horizon=cfg.extra.get("wr_horizon", det.HORIZON))
    result = det.classify_system(sys_, ccfg)
    return Report("detect-classify", ["label", "hierarchy_consistent"],
                  [[result.label, result.hierarchy_consistent]], {"label": result.label},
                  [result.to_json()])


def _pairs(sys_, cfg, rng):
    raw = cfg.extra.get("pairs")
    if raw is not None:
        try:
            return [(sys_.state_from_json(a), sys_.state_from_json(b)) for a, b in raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"bad pair in config: {exc}", field="pairs") from None
    grid = sys_.grid(min(cfg.grid_size, 4))
    return [(p, q) for p in grid for q in grid]


def cmd_hyper(cfg: ExperimentConfig, arg: str) -> Report:
    sys_ = build_system(cfg.system, cfg.precision, cfg.time_set.mode)
    raw_sets = cfg.extra.get("sets")
    if raw_sets is None:
        if hasattr(sys_, "reference_sets"):
            sets = [list(s) for s in sys_.reference_sets()]
        else:
            rng = random.Random(cfg.seed)
            sets = [[sys_.random_state(rng) for _ in range(4)]]
    else:
        sets = [_states(sys_, s, None) for s in raw_sets]
    subsets = [FiniteSubset(tuple(s), sys_) for s in sets]
    if "horizon" in cfg.extra:
        times = list(range(1, cfg.extra["horizon"] + 1))
    else:
        times = cfg.candidate_times or sys_.default_candidate_times()
    eps = cfg.epsilon_witness
    require_resolution(eps, cfg.precision, "epsilons.witness")
    rows, certs, hit_sets = [], [], []
    for i, A in enumerate(subsets):
        hits, profile = set_recurrence_scan(sys_, A, times, eps)
        hit_sets.append({t for t, _ in hits})
        for t, d in hits:
            rows.append([i, t, d])
        certs.append({"set": A.to_json(), "hits": [[t, det.jsonable(d)] for t, d in hits]})
    common = sorted(set.intersection(*hit_sets)) if hit_sets else []
    summary = {"epsilon": eps, "n_times": len(times), "first_common_time": common[0] if common else None}
    if common:
        t = common[0]
        with working_precision(cfg.precision):
            summary["distances_at_first_common_time"] = [
                hausdorff_distance(A, FiniteSubset(tuple(sys_.power(a, t) for a in A), sys_))
                for A in subsets]
    return Report("hyper", ["set", "time", "hausdorff"], rows, summary, certs)


def cmd_envsemi(cfg: ExperimentConfig, arg: str) -> Report:
    systems = []
    directory = arg or cfg.extra.get("systems_dir")
    if directory:
        if not Path(directory).is_dir():
            raise ConfigurationError(f"{directory} is not a directory", field="systems_dir")
        systems.extend(envsemi.load_systems(directory))
    for obj in cfg.extra.get("systems", []):
        systems.append(envsemi.FiniteSystem.from_json(obj))
    if not systems:
        raise ConfigurationError("no finite systems given", field="systems")
    rows, certs = [], []
    cols = ["index", "n", "mode", "closure_size", "idempotents", "distal", "group",
            "unique_identity_idempotent", "generators_bijective", "transitive"]
    for i, s in enumerate(systems):
        row = envsemi.summarize(s)
        rows.append([i] + [row[c] for c in cols[1:]])
        E = envsemi.closure(s)
        certs.append({"system": s.to_json(), "closure": E.to_json(),
                      "minimal_idempotents": [list(u.table) for u in envsemi.minimal_idempotents(E)],
                      "proximal_pairs": [list(p) for p in envsemi.proximal_pairs(E)]})
    exceptions = sum(1 for r in rows if not (r[5] == r[6] == r[7]))
    return Report("envsemi", cols, rows, {"systems": len(rows), "ellis_exceptions": exceptions}, certs)


def reference_systems(cfg: ExperimentConfig):
    """The three reference systems of the summary table, in column order."""
    P = cfg.precision
    return [("rotation-377/610", RotationSystem(Fraction(377, 610), P, GROUP), None, det.HORIZON),
            ("skew-product", SkewProductSystem.create(3, 4, P, GROUP), None, det.HORIZON),
            ("circle-family", CircleFamilySystem(24, P, GROUP), 2 ** 22, 2 ** 25)]


def cmd_table(cfg: ExperimentConfig, arg: str) -> Report:
    rows, certs = [], []
    cols = ["system", "label", "distal_pass", "equicontinuity_violation", "uniform_rigidity",
            "ur_best_time", "ur_best_sup", "weak_rigidity", "wr_time", "hierarchy_consistent"]
    for name, sys_, horizon, wr_horizon in reference_systems(cfg):
        ccfg = det.ClassifyConfig(grid_size=cfg.grid_size if name != "circle-family" else 8,
                                  epsilon_witness=cfg.epsilon_witness,
                                  epsilon_refute=cfg.epsilon_refute,
                                  exhaustive_horizon=horizon, seed=cfg.seed,
                                  wr_horizon=wr_horizon)
        res = det.classify_system(sys_, ccfg)
        ur = res.evidence["uniform_rigidity"]
        wr = res.evidence["weak_rigidity"]
        best = ur.witness.get("best") or {}
        if not best and "exhaustive" in ur.witness:
            best = {"time": ur.witness["exhaustive"]["argmin_time"],
                    "sup_displacement": ur.witness["exhaustive"]["min_sup_displacement"]}
        rows.append([name, res.label, res.evidence["distality"]["pass"],
                     res.evidence["equicontinuity_violation"].verdict, ur.verdict,
                     best.get("time"), best.get("sup_displacement"), wr.verdict,
                     wr.witness.get("time"), res.hierarchy_consistent])
        certs.append({"system": name, "classification": res.to_json()})
    return Report("table", cols, rows, {"labels": [r[1] for r in rows]}, certs)


_HANDLERS = {"constants": cmd_constants, "simulate": cmd_simulate, "detect": cmd_detect,
             "hyper": cmd_hyper, "envsemi": cmd_envsemi, "table": cmd_table}


def run(command: str, cfg: ExperimentConfig, argument: str = "") -> List[Path]:
    if command not in _HANDLERS:
        raise ConfigurationError(f"unknown command {command!r}", field="command")
    with working_precision(cfg.precision):
        report = _HANDLERS[command](cfg, argument)
    return write_report(report, cfg, cfg.hash(command, argument))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidlab", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("argument", nargs="?", default="",
                        help="detector name for 'detect', systems directory for 'envsemi'")
    parser.add_argument("--config", help="JSON experiment config")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    parser.add_argument("--format", choices=FORMATS)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = {}
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    raw = json.load(fh)
            except OSError as exc:
                raise ConfigurationError(f"cannot read config: {exc}", field="config") from None
            except json.JSONDecodeError as exc:
                raise ConfigurationError(f"config is not valid JSON: {exc}", field="config") from None
        cfg = load_config(raw, seed=args.seed, fmt=args.format, out=args.out)
        paths = run(args.command, cfg, args.argument)
    except ConfigurationError as exc:
        print(f"rigidlab: invalid configuration [{exc.field}]: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"rigidlab: invalid configuration [system]: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"rigidlab: precision contract violated: {exc}", file=sys.stderr)
        return 3
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
