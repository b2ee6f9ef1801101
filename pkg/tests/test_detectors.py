from fractions import Fraction

import gmpy2
import pytest

from rigidlab import detectors as det
from rigidlab.errors import ConfigurationError
from rigidlab.precision import working_precision
from rigidlab.systems import (
    GROUP,
    SEMIGROUP,
    CircleFamilySystem,
    FiniteMapSystem,
    RotationSystem,
    SkewProductSystem,
    TimeSet,
    TorusPoint,
)


@pytest.fixture(scope="module")
def skew():
    return SkewProductSystem.create(3, 4, 120)


def test_uniform_rigidity_rotation():
    rot = RotationSystem(Fraction(377, 610))
    rep = det.uniform_rigidity_witness(rot, [610, 1], rot.grid(8))
    assert rep.witnessed
    assert rep.witness["best"]["time"] == 610
    assert rep.witness["best"]["sup_displacement"] == 0


def test_uniform_rigidity_skew_profile(skew):
    rep = det.uniform_rigidity_witness(skew, skew.default_candidate_times(), skew.grid(8))
    assert rep.witnessed
    s = [r["sup_displacement"] for r in rep.witness["profile"]]
    assert s[0] > s[1] > s[2]
    assert rep.to_json()["verdict"] == det.WITNESSED


def test_uniform_rigidity_inconclusive_then_refuted():
    circle = CircleFamilySystem(8)
    grid = circle.grid(4)
    rep = det.uniform_rigidity_witness(circle, [1, 2, 4], grid)
    assert rep.verdict == det.INCONCLUSIVE
    rep = det.uniform_rigidity_witness(circle, [1, 2, 4], grid, horizon=2 ** 6)
    assert rep.verdict == det.REFUTED
    assert rep.witness["exhaustive"]["min_sup_displacement"] >= Fraction(1, 2)


def test_uniform_rigidity_input_errors(skew):
    with pytest.raises(ConfigurationError):
        det.uniform_rigidity_witness(skew, [], skew.grid(2))
    with pytest.raises(ConfigurationError):
        det.uniform_rigidity_witness(skew, [1], [])
    with pytest.raises(ConfigurationError) as exc:
        det.uniform_rigidity_witness(skew, [0], skew.grid(2), time_set=TimeSet(GROUP, 4))
    assert exc.value.field == "candidate_times"


def test_weak_rigidity(skew):
    pts = [TorusPoint(Fraction(1, 3), 0), TorusPoint(Fraction(2, 7), Fraction(1, 2))]
    eps = Fraction(1, 5)
    rep = det.weak_rigidity_witness(skew, pts, eps, horizon=200)
    assert rep.witnessed
    t = rep.witness["time"]
    with working_precision(120):
        worst = [max(skew.displacement(p, s) for p in pts) for s in range(1, t + 1)]
    assert worst[-1] < eps and all(w >= eps for w in worst[:-1])
    rep = det.weak_rigidity_witness(skew, pts, eps, horizon=t - 1)
    assert rep.verdict == det.REFUTED


def test_weak_rigidity_semigroup_start():
    f = FiniteMapSystem((1, 0, 2))
    rep = det.weak_rigidity_witness(f, [0, 1, 2], Fraction(1, 2), 10, TimeSet(SEMIGROUP, 10, 3))
    assert rep.witness["time"] == 4


def test_equicontinuity_violation_skew(skew):
    rep = det.equicontinuity_violation_witness(skew)
    assert rep.witnessed
    hit = rep.witness["violation"]
    assert hit["time"] == 10 ** 16
    assert hit["distance"] > Fraction(1, 1000)


def test_equicontinuity_refuted_for_rotation():
    rep = det.equicontinuity_violation_witness(RotationSystem(Fraction(377, 610)))
    assert rep.verdict == det.REFUTED


def test_equicontinuity_circle():
    circle = CircleFamilySystem(6)
    rep = det.equicontinuity_violation_witness(circle)
    assert rep.witnessed


def test_proximal_scan():
    f = FiniteMapSystem((1, 1, 0))
    d, t = det.proximal_scan(f, 0, 1, range(1, 5))
    assert (d, t) == (0, 1)
    rot = RotationSystem(Fraction(1, 5))
    d, t = det.proximal_scan(rot, rot.grid(5)[0], rot.grid(5)[2], TimeSet(GROUP, 3))
    assert (d, t) == (Fraction(2, 5), 1)


def test_rigidity_relation_diagonal(skew):
    grid = skew.grid(3)
    pairs = [(p, q) for p in grid for q in grid]
    found = det.rigidity_relation_sample(skew, pairs, [10 ** 6, 10 ** 24])
    assert found == [(p, p) for p in grid]
    assert det.rigidity_relation_sample(skew, pairs, []) == []


def test_regionally_proximal_sample():
    rot = RotationSystem(Fraction(1, 4))
    p, q = rot.grid(4)[0], rot.grid(4)[1]
    assert det.regionally_proximal_sample(rot, [(p, q)], 8) == []
    found = det.regionally_proximal_sample(rot, [(p, q)], [1], Fraction(1, 64), Fraction(1, 4))
    assert found == [(p, q)]
    assert det.regionally_proximal_sample(rot, [(p, p)], 1) == [(p, p)]


def test_rp_evidence_from_violation(skew):
    rep = det.equicontinuity_violation_witness(skew)
    (u, v), t = det.rp_evidence_from_violation(skew, rep)
    assert t == -10 ** 16
    with working_precision(120):
        assert skew.distance(u, v) > Fraction(1, 1000)
        back = skew.distance(skew.power(u, t), skew.power(v, t))
        assert abs(back - gmpy2.mpfr(10) ** -8) < gmpy2.mpfr(10) ** -90
    with pytest.raises(ConfigurationError):
        det.rp_evidence_from_violation(RotationSystem(Fraction(1, 3)),
                                       det.equicontinuity_violation_witness(RotationSystem(Fraction(1, 3))))


def test_jsonable():
    with working_precision(40):
        out = det.jsonable({"a": Fraction(1, 3), "b": [2 ** 60, 1.5, None], "c": gmpy2.mpfr(2)})
    assert out == {"a": "1/3", "b": [str(2 ** 60), "1.5000000000000000e+0", None],
                   "c": "2.000000000000000000000000000000000000000e+0"}


def test_classify_rotation_is_eq():
    rot = RotationSystem(Fraction(377, 610))
    res = det.classify_system(rot, det.ClassifyConfig(grid_size=8, wr_horizon=2000))
    assert res.label == det.EQ_CONSISTENT
    assert res.hierarchy_consistent
    assert res.to_json()["label"] == det.EQ_CONSISTENT


def test_classify_non_distal():
    f = FiniteMapSystem((0, 0, 1, 2), SEMIGROUP)
    cfg = det.ClassifyConfig(time_set=TimeSet(SEMIGROUP, 1), wr_horizon=8, proximal_pairs=12)
    assert det.classify_system(f, cfg).label == det.NON_DISTAL


def test_classify_circle_small():
    circle = CircleFamilySystem(8)
    cfg = det.ClassifyConfig(grid_size=4, exhaustive_horizon=2 ** 6, wr_horizon=2 ** 10)
    res = det.classify_system(circle, cfg)
    assert res.label == det.D_NOT_SR_CONSISTENT
    assert res.evidence["uniform_rigidity"].verdict == det.REFUTED
