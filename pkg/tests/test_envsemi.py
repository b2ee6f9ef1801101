import itertools
import json
import random

import pytest

from oracles import brute_closure
from rigidlab.envsemi import (
    FLOW,
    SEMIFLOW,
    FiniteSystem,
    TransformMap,
    all_nonempty_subsets,
    almost_periodic_sets,
    almost_periodic_sets_direct,
    closure,
    dp_operator,
    envelope_orbit_transitive,
    idempotents,
    is_distal_equiv_group,
    load_systems,
    minimal_idempotents,
    minimal_left_ideals,
    proximal_pairs,
    summarize,
)
from rigidlab.errors import ConfigurationError, DomainError

T = TransformMap


def system(n, *gens, mode=SEMIFLOW):
    return FiniteSystem(n, tuple(T(g) for g in gens), mode)


def all_maps(n):
    return itertools.product(range(n), repeat=n)


def test_transform_map_basics():
    f, g = T((1, 2, 0)), T((0, 0, 2))
    assert (f * g).table == (1, 1, 0)
    assert (f * f.inverse()).is_identity()
    assert T.constant(3, 2).rank() == 1
    assert dp_operator(g, {1, 2}) == frozenset({0, 2})
    with pytest.raises(DomainError):
        T((0, 3, 1))
    with pytest.raises(DomainError):
        g.inverse()


def test_system_validation():
    with pytest.raises(DomainError):
        system(2, (0, 0), mode=FLOW)
    with pytest.raises(ConfigurationError) as exc:
        FiniteSystem(3, (T((0, 1)),))
    assert exc.value.field == "generators"
    with pytest.raises(ConfigurationError):
        FiniteSystem(2, (T((0, 1)),), "cascade")
    with pytest.raises(ConfigurationError):
        FiniteSystem(2, ())


def test_cyclic_group_closure():
    E = closure(system(4, (1, 2, 3, 0), mode=FLOW))
    assert len(E) == 4 and E.contains_identity
    assert idempotents(E) == [T.identity(4)]
    assert minimal_left_ideals(E) == [E.elements]
    assert minimal_idempotents(E) == [T.identity(4)]
    assert proximal_pairs(E) == []
    assert envelope_orbit_transitive(system(4, (1, 2, 3, 0), mode=FLOW))


def test_constant_closure():
    c = T.constant(3, 2)
    E = closure(FiniteSystem(3, (c,)))
    assert E.elements == (c,)
    assert idempotents(E) == [c]


def test_collapsing_idempotent():
    f = T((1, 1, 1))
    E = closure(FiniteSystem(3, (f,)))
    assert E.elements == (f,) and idempotents(E) == [f]
    assert minimal_left_ideals(E) == [(f,)]
    assert proximal_pairs(E) == [(0, 1), (0, 2), (1, 2)]


def test_full_monoid_on_two_states():
    s = system(2, (1, 0), (0, 0))
    E = closure(s)
    assert len(E) == 4
    assert idempotents(E) == [T((0, 0)), T((0, 1)), T((1, 1))]
    assert minimal_left_ideals(E) == [(T((0, 0)), T((1, 1)))]
    assert minimal_idempotents(E) == [T((0, 0)), T((1, 1))]
    assert envelope_orbit_transitive(s)


def test_two_constants_not_transitive():
    assert not envelope_orbit_transitive(system(2, (0, 0), (1, 1)))


def test_two_disjoint_cycles():
    s = system(4, (1, 0, 3, 2))
    assert proximal_pairs(closure(s)) == []
    assert almost_periodic_sets(s) == all_nonempty_subsets(4)


def test_ellis_examples():
    assert is_distal_equiv_group(system(3, (1, 2, 0))) == (True, True, True)
    assert is_distal_equiv_group(system(3, (1, 1, 1))) == (False, False, False)
    E = closure(system(3, (1, 0, 2)))
    assert set(E.elements) == {T((1, 0, 2)), T.identity(3)}
    assert is_distal_equiv_group(system(3, (1, 0, 2))) == (True, True, True)


def test_almost_periodic_constant():
    assert almost_periodic_sets(system(3, (1, 1, 1))) == [frozenset({1})]


def test_cayley_consistent():
    E = closure(system(3, (1, 2, 0), (0, 0, 1)))
    rng = random.Random(0)
    for _ in range(50):
        i, j = rng.randrange(len(E)), rng.randrange(len(E))
        assert E.elements[E.cayley[i][j]] == E.elements[i] * E.elements[j]


def test_closure_matches_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randrange(n) for _ in range(n)) for _ in range(rng.randint(1, 2))]
        E = closure(FiniteSystem(n, tuple(T(g) for g in gens)))
        assert {e.table for e in E.elements} == brute_closure(gens)


def test_closure_independent_of_generator_order():
    gens = [(1, 2, 0, 3), (0, 0, 2, 3), (3, 2, 1, 0)]
    ref = closure(system(4, *gens)).elements
    rng = random.Random(2)
    for _ in range(10):
        rng.shuffle(gens)
        assert closure(system(4, *gens)).elements == ref


def test_surjectivity_exhaustive():
    for n in range(1, 6):
        for tab in all_maps(n):
            distal, _, _ = is_distal_equiv_group(system(n, tab))
            if distal:
                assert len(set(tab)) == n


def test_minimal_ideals_exhaustive_small():
    for n in range(1, 4):
        for tab in all_maps(n):
            E = closure(system(n, tab))
            idem = set(idempotents(E))
            members = set()
            for I in minimal_left_ideals(E):
                assert idem.intersection(I)
                members.update(I)
            assert set(minimal_idempotents(E)) == idem & members


def test_minimal_ideals_two_generators_n4():
    rng = random.Random(4)
    for _ in range(60):
        gens = [tuple(rng.randrange(4) for _ in range(4)) for _ in range(2)]
        E = closure(system(4, *gens))
        minimal_left_ideals(E)
        proximal_pairs(E)


def test_dp_idempotent_exhaustive():
    for n in range(1, 6):
        subsets = all_nonempty_subsets(n)
        for tab in all_maps(n):
            u = T(tab)
            if u * u != u:
                continue
            for A in subsets:
                assert dp_operator(u, dp_operator(u, A)) == dp_operator(u, A)
    with pytest.raises(DomainError):
        dp_operator(T((0,)), set())


def test_almost_periodic_cross_check_exhaustive():
    for n in range(1, 5):
        for tab in all_maps(n):
            s = system(n, tab)
            assert almost_periodic_sets(s, check=False) == almost_periodic_sets_direct(s)


def test_distal_systems_all_sets_almost_periodic():
    s = system(5, (1, 2, 0, 4, 3), mode=FLOW)
    assert almost_periodic_sets(s) == all_nonempty_subsets(5)


def test_json_roundtrip_and_loading(tmp_path):
    s = system(3, (1, 2, 0), (0, 0, 1))
    again = FiniteSystem.from_json(json.loads(json.dumps(s.to_json())))
    assert again == s
    (tmp_path / "b.json").write_text(json.dumps(s.to_json()))
    (tmp_path / "a.json").write_text(json.dumps({"n": 2, "generators": [[1, 0]], "mode": "flow"}))
    loaded = load_systems(tmp_path)
    assert [x.n for x in loaded] == [2, 3]
    with pytest.raises(ConfigurationError) as exc:
        FiniteSystem.from_json({"generators": [[0]]})
    assert exc.value.field == "n"
    assert closure(s).to_json()["contains_identity"] is True
    assert closure(system(3, (0, 0, 1))).to_json()["contains_identity"] is False


def test_summarize():
    row = summarize(system(3, (1, 2, 0), mode=FLOW))
    assert row["closure_size"] == 3 and row["distal"] and row["transitive"]
