"""Scale-stamped witnesses and refutations for the EQ / SR / D hierarchy.

No detector proves a property.  A verdict is ``witnessed`` when a finite
certificate exhibits it, ``refuted-at-scale`` when an exhaustive scan at the
stated scale found nothing, and ``inconclusive`` otherwise.  Every report
carries the inputs needed to replay it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .errors import ConfigurationError
from .hyperspace import FiniteSubset, set_recurrence_scan
from .precision import format_rational, format_real, to_fraction, working_precision
from .systems import GROUP, TimeSet, time_order_key

WITNESSED = "witnessed"
REFUTED = "refuted-at-scale"
INCONCLUSIVE = "inconclusive"

EQ_CONSISTENT = "EQ-consistent"
SR_NOT_EQ_CONSISTENT = "SR∖EQ-consistent"
D_NOT_SR_CONSISTENT = "D∖SR-consistent"
NON_DISTAL = "non-distal-evidence"

EPSILON_WITNESS = Fraction(1, 10 ** 6)
EPSILON_REFUTE = Fraction(1, 2)
TOL_RELATION = Fraction(1, 64)
HORIZON = 2 ** 22


def jsonable(v):
    """Convert report payloads to JSON: rationals as "n/d", reals as fixed-digit strings."""
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if abs(v) < 2 ** 53 else str(v)
    if isinstance(v, float):
        return format_real(v, 17)
    if isinstance(v, np.integer):
        return int(v)
    return format_real(v, 40)


@dataclass
class WitnessReport:
    property: str
    verdict: str
    witness: dict = field(default_factory=dict)
    scale: dict = field(default_factory=dict)

    @property
    def witnessed(self) -> bool:
        return self.verdict == WITNESSED

    def to_json(self) -> dict:
        return {"property": self.property, "verdict": self.verdict,
                "witness": jsonable(self.witness), "scale": jsonable(self.scale)}


def _state(sys, p):
    return sys.state_to_json(p)


def _times(times) -> List[int]:
    if isinstance(times, TimeSet):
        return list(times)
    return sorted(set(int(t) for t in times), key=time_order_key)


def proximal_scan(sys, p, q, times):
    """(min over t of d(tp, tq), earliest argmin); ties go to smallest |t|, then t > 0."""
    best, arg = None, None
    with working_precision(getattr(sys, "precision", None)):
        for t in _times(times):
            d = sys.distance(sys.power(p, t), sys.power(q, t))
            if best is None or d < best:
                best, arg = d, t
                if d == 0:
                    break
    return best, arg


def sup_displacement(sys, grid: Sequence, t: int):
    """max over the grid of d(t p, p) with the first maximiser in grid order."""
    best, arg = None, None
    with working_precision(getattr(sys, "precision", None)):
        for p in grid:
            d = sys.distance(sys.power(p, t), p)
            if best is None or d > best:
                best, arg = d, p
    return best, arg


def _check_candidates(candidate_times, time_set: Optional[TimeSet]):
    times = [int(t) for t in candidate_times]
    if not times:
        raise ConfigurationError("candidate_times must be nonempty", field="candidate_times")
    if time_set is not None:
        bad = [t for t in times if not time_set.allows(t)]
        if bad:
            raise ConfigurationError(f"candidate times {bad} lie outside the time set",
                                     field="candidate_times")
    return times


def uniform_rigidity_witness(sys, candidate_times, grid: Sequence, epsilon=EPSILON_WITNESS, *,
                             epsilon_refute=EPSILON_REFUTE, horizon: Optional[int] = None,
                             time_set: Optional[TimeSet] = None) -> WitnessReport:
    """Search for a time t with S(t) = max_grid d(t p, p) < epsilon.

    With ``horizon`` set, a failed search is followed by an exhaustive scan of
    every forward time up to the horizon; the verdict is ``refuted-at-scale``
    when the smallest S(t) there is at least ``epsilon_refute``.
    """
    if not grid:
        raise ConfigurationError("grid must be nonempty", field="grid")
    times = _check_candidates(candidate_times, time_set)
    eps = to_fraction(epsilon)
    profile = []
    for t in times:
        s, arg = sup_displacement(sys, grid, t)
        profile.append({"time": t, "sup_displacement": s, "argmax": _state(sys, arg)})
    best = min(profile, key=lambda r: (r["sup_displacement"], time_order_key(r["time"])))
    scale = {"epsilon": eps, "grid_size": len(grid), "candidate_times": times}
    if best["sup_displacement"] < eps:
        return WitnessReport("uniform-rigidity", WITNESSED,
                             {"best": best, "profile": profile}, scale)
    if horizon is None:
        return WitnessReport("uniform-rigidity", INCONCLUSIVE, {"profile": profile}, scale)

    start = time_set.s_min if time_set is not None and time_set.mode != GROUP else 1
    scale.update({"horizon": horizon, "epsilon_refute": to_fraction(epsilon_refute),
                  "exhaustive_range": [start, horizon]})
    t_min, s_min = _exhaustive_min(sys, grid, start, horizon)
    s_exact, arg = sup_displacement(sys, grid, t_min)
    certificate = {"argmin_time": t_min, "min_sup_displacement": s_exact,
                   "argmax_at_argmin": _state(sys, arg), "screened_min": s_min}
    witness = {"exhaustive": certificate, "profile": profile}
    if s_exact >= to_fraction(epsilon_refute) and s_min >= float(to_fraction(epsilon_refute)) - 1e-9:
        return WitnessReport("uniform-rigidity", REFUTED, witness, scale)
    return WitnessReport("uniform-rigidity", INCONCLUSIVE, witness, scale)


def _exhaustive_min(sys, grid, start: int, horizon: int):
    """Smallest sup displacement over [start, horizon] and its earliest time."""
    if hasattr(sys, "sup_displacement_batch"):
        best_t, best_s = None, None
        chunk = 1 << 20
        for lo in range(start, horizon + 1, chunk):
            block = np.arange(lo, min(lo + chunk, horizon + 1), dtype=np.int64)
            s = sys.sup_displacement_batch(grid, block)
            i = int(np.argmin(s))
            if best_s is None or s[i] < best_s:
                best_t, best_s = int(block[i]), float(s[i])
        return best_t, best_s
    best_t, best_s = None, None
    for t in range(start, horizon + 1):
        s, _ = sup_displacement(sys, grid, t)
        if best_s is None or s < best_s:
            best_t, best_s = t, s
    return best_t, float(best_s)


def weak_rigidity_witness(sys, points: Sequence, epsilon=EPSILON_WITNESS, horizon: int = HORIZON,
                          time_set: Optional[TimeSet] = None,
                          candidate_times: Optional[Iterable[int]] = None) -> WitnessReport:
    """Smallest t in [1, horizon] (t >= s_min in semigroup mode) with
    max_i d(t x_i, x_i) < epsilon."""
    if not points:
        raise ConfigurationError("points must be nonempty", field="points")
    eps = to_fraction(epsilon)
    start = time_set.s_min if time_set is not None and time_set.mode != GROUP else 1
    if candidate_times is None:
        times: Iterable[int] = range(start, horizon + 1)
    else:
        times = sorted(t for t in set(int(t) for t in candidate_times) if start <= t <= horizon)
    if hasattr(sys, "prescreen"):
        times = sys.prescreen(points, times, eps)
    scale = {"epsilon": eps, "horizon": horizon, "start": start, "n_points": len(points)}
    with working_precision(getattr(sys, "precision", None)):
        for t in times:
            worst = None
            for p in points:
                d = sys.distance(sys.power(p, t), p)
                if worst is None or d > worst:
                    worst = d
                if worst >= eps:
                    break
            if worst < eps:
                return WitnessReport("weak-rigidity", WITNESSED,
                                     {"time": t, "max_displacement": worst,
                                      "points": [_state(sys, p) for p in points]}, scale)
    return WitnessReport("weak-rigidity", REFUTED,
                         {"points": [_state(sys, p) for p in points]}, scale)


def equicontinuity_violation_witness(sys, base=None, probe_schedule=None,
                                     delta=None) -> WitnessReport:
    """Look for a probe within eta < delta of ``base`` that separates by more
    than delta at its scheduled time."""
    d_base, d_sched, d_delta = sys.default_probe_schedule()
    if base is None:
        base = d_base
    if probe_schedule is None:
        probe_schedule = d_sched
    delta = to_fraction(delta if delta is not None else d_delta)
    entries = []
    hit = None
    with working_precision(getattr(sys, "precision", None)):
        for probe, t in probe_schedule:
            eta = sys.distance(probe, base)
            if not eta < delta:
                continue
            dist = sys.distance(sys.power(probe, t), sys.power(base, t))
            entry = {"probe": _state(sys, probe), "time": t, "eta": eta, "distance": dist}
            entries.append(entry)
            if hit is None and dist > delta:
                hit = entry
    scale = {"delta": delta, "base": _state(sys, base), "n_probes": len(entries)}
    if hit is not None:
        return WitnessReport("equicontinuity-violation", WITNESSED,
                             {"violation": hit, "schedule": entries}, scale)
    verdict = REFUTED if entries else INCONCLUSIVE
    return WitnessReport("equicontinuity-violation", verdict, {"schedule": entries}, scale)


def rigidity_relation_sample(sys, pair_grid: Sequence, witness_times: Sequence[int],
                             tol=TOL_RELATION) -> list:
    """Pairs (p, q) with min over the uniform-rigidity witness times of d(tp, tq) < tol.

    With no witness times the relation is empty.
    """
    times = list(witness_times)
    if not times:
        return []
    tol = to_fraction(tol)
    out = []
    with working_precision(getattr(sys, "precision", None)):
        for p, q in pair_grid:
            if any(sys.distance(sys.power(p, t), sys.power(q, t)) < tol for t in times):
                out.append((p, q))
    return out


def regionally_proximal_sample(sys, pair_grid: Sequence, times, tol=TOL_RELATION,
                               approach_radius=0) -> list:
    """Pairs (p, q) for which some lattice probes p', q' within approach_radius
    satisfy d(t p', t q') < tol at some sampled time.

    ``times`` is either an int horizon (group times up to it) or explicit times.
    """
    if isinstance(times, int):
        times = TimeSet(GROUP, times)
    times = _times(times)
    tol = to_fraction(tol)
    out = []
    with working_precision(getattr(sys, "precision", None)):
        for p, q in pair_grid:
            if sys.distance(p, q) == 0:
                out.append((p, q))
                continue
            found = False
            for p2 in sys.probe_lattice(p, approach_radius):
                for q2 in sys.probe_lattice(q, approach_radius):
                    if any(sys.distance(sys.power(p2, t), sys.power(q2, t)) < tol for t in times):
                        found = True
                        break
                if found:
                    break
            if found:
                out.append((p, q))
    return out


def rp_evidence_from_violation(sys, report: WitnessReport):
    """Turn an equicontinuity violation into an off-diagonal RP pair.

    If probe and base separate to distance > delta at time m, then their
    images u = T^m probe, v = T^m base are a separated pair brought back to
    distance eta by T^-m.  Returns ((u, v), -m).
    """
    if report.verdict != WITNESSED:
        raise ConfigurationError("report does not contain a violation", field="report")
    hit = report.witness["violation"]
    probe = sys.state_from_json(hit["probe"])
    base = sys.state_from_json(report.scale["base"])
    m = hit["time"]
    return (sys.power(probe, m), sys.power(base, m)), -m


@dataclass
class ClassifyConfig:
    grid_size: int = 32
    grid: Optional[list] = None
    candidate_times: Optional[List[int]] = None
    epsilon_witness: Fraction = EPSILON_WITNESS
    epsilon_refute: Fraction = EPSILON_REFUTE
    exhaustive_horizon: Optional[int] = None
    time_set: TimeSet = field(default_factory=lambda: TimeSet(GROUP, 1))
    seed: int = 0
    proximal_pairs: int = 8
    proximal_horizon: int = 32
    proximal_tol: Fraction = Fraction(1, 10 ** 9)
    wr_points: int = 10
    wr_horizon: int = 2 ** 22
    recurrence_points: int = 5


@dataclass
class Classification:
    label: str
    evidence: dict
    hierarchy_consistent: bool
    scale: dict

    def to_json(self) -> dict:
        ev = {k: (v.to_json() if isinstance(v, WitnessReport) else jsonable(v))
              for k, v in self.evidence.items()}
        return {"label": self.label, "hierarchy_consistent": self.hierarchy_consistent,
                "scale": jsonable(self.scale), "evidence": ev}


def classify_system(sys, config: Optional[ClassifyConfig] = None) -> Classification:
    """Run every detector at the configured scales and report which column of
    the EQ / SR∖EQ / D∖SR hierarchy the evidence is consistent with."""
    cfg = config or ClassifyConfig()
    rng = random.Random(cfg.seed)
    grid = cfg.grid if cfg.grid is not None else sys.grid(cfg.grid_size)
    candidates = cfg.candidate_times or sys.default_candidate_times()

    pairs = [(sys.random_state(rng), sys.random_state(rng)) for _ in range(cfg.proximal_pairs)]
    prox_times = TimeSet(cfg.time_set.mode, cfg.proximal_horizon, cfg.time_set.s_min)
    prox = []
    for p, q in pairs:
        if sys.distance(p, q) == 0:
            continue
        d, t = proximal_scan(sys, p, q, prox_times)
        prox.append({"p": _state(sys, p), "q": _state(sys, q), "min_distance": d, "argmin": t})
    distal_pass = all(r["min_distance"] >= cfg.proximal_tol for r in prox)

    eq = equicontinuity_violation_witness(sys)
    ur = uniform_rigidity_witness(sys, candidates, grid, cfg.epsilon_witness,
                                  epsilon_refute=cfg.epsilon_refute,
                                  horizon=cfg.exhaustive_horizon, time_set=cfg.time_set)
    wr_pts = [sys.random_state(rng) for _ in range(cfg.wr_points)]
    wr = weak_rigidity_witness(sys, wr_pts, cfg.epsilon_witness, cfg.wr_horizon, cfg.time_set)

    A = FiniteSubset(tuple(sys.random_state(rng) for _ in range(cfg.recurrence_points)), sys)
    hits, profile = set_recurrence_scan(sys, A, candidates, cfg.epsilon_witness)
    recurrence = {"set": A.to_json(), "epsilon": cfg.epsilon_witness,
                  "recurrent_times": [t for t, _ in hits],
                  "profile": [{"time": t, "hausdorff": d} for t, d in profile]}

    if not distal_pass:
        label = NON_DISTAL
    elif ur.verdict == WITNESSED and eq.verdict != WITNESSED:
        label = EQ_CONSISTENT
    elif ur.verdict == WITNESSED:
        label = SR_NOT_EQ_CONSISTENT
    else:
        label = D_NOT_SR_CONSISTENT
    consistent = label == NON_DISTAL or (distal_pass and wr.verdict == WITNESSED)
    evidence = {"distality": {"pairs": prox, "tol": cfg.proximal_tol, "pass": distal_pass},
                "equicontinuity_violation": eq, "uniform_rigidity": ur,
                "weak_rigidity": wr, "set_recurrence": recurrence}
    scale = {"grid_size": len(grid), "candidate_times": candidates,
             "epsilon_witness": cfg.epsilon_witness, "epsilon_refute": cfg.epsilon_refute,
             "exhaustive_horizon": cfg.exhaustive_horizon, "wr_horizon": cfg.wr_horizon,
             "time_mode": cfg.time_set.mode, "s_min": cfg.time_set.s_min, "seed": cfg.seed}
    return Classification(label, evidence, consistent, scale)
