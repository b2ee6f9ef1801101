"""Exact enveloping semigroups of finite systems.

On a finite discrete X the pointwise closure of the acting maps is just the
set of maps they generate, so every semigroup notion below is computed
exactly.  Maps compose right-to-left: ``(f * g)(x) == f(g(x))``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .errors import ConfigurationError, ConsistencyError, DomainError

FLOW = "flow"
SEMIFLOW = "semiflow"


@dataclass(frozen=True, order=True)
class TransformMap:
    table: Tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        n = len(table)
        if any(not 0 <= v < n for v in table):
            raise DomainError(f"{table} is not a self-map of {{0..{n - 1}}}")
        object.__setattr__(self, "table", table)

    @classmethod
    def identity(cls, n: int) -> "TransformMap":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, c: int) -> "TransformMap":
        return cls((c,) * n)

    @property
    def n(self) -> int:
        return len(self.table)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __mul__(self, other: "TransformMap") -> "TransformMap":
        t = self.table
        return TransformMap(tuple(t[v] for v in other.table))

    def is_bijective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_identity(self) -> bool:
        return self.table == tuple(range(len(self.table)))

    def inverse(self) -> "TransformMap":
        if not self.is_bijective():
            raise DomainError(f"{self.table} is not bijective")
        inv = [0] * len(self.table)
        for i, v in enumerate(self.table):
            inv[v] = i
        return TransformMap(tuple(inv))

    def image(self, A: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.table[a] for a in A)

    def rank(self) -> int:
        return len(set(self.table))


@dataclass(frozen=True)
class FiniteSystem:
    n: int
    generators: Tuple[TransformMap, ...]
    mode: str = SEMIFLOW

    def __post_init__(self):
        gens = tuple(g if isinstance(g, TransformMap) else TransformMap(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.mode not in (FLOW, SEMIFLOW):
            raise ConfigurationError(f"unknown mode {self.mode!r}", field="mode")
        if not gens:
            raise ConfigurationError("at least one generator is required", field="generators")
        if any(g.n != self.n for g in gens):
            raise ConfigurationError(f"every generator must act on {self.n} states",
                                     field="generators")
        if self.mode == FLOW and not all(g.is_bijective() for g in gens):
            raise DomainError("flow mode needs bijective generators; use semiflow mode")

    def to_json(self) -> dict:
        return {"n": self.n, "mode": self.mode, "generators": [list(g.table) for g in self.generators]}

    @classmethod
    def from_json(cls, obj) -> "FiniteSystem":
        try:
            return cls(int(obj["n"]), tuple(TransformMap(tuple(g)) for g in obj["generators"]),
                       obj.get("mode", SEMIFLOW))
        except KeyError as exc:
            raise ConfigurationError(f"missing field {exc.args[0]!r}", field=exc.args[0]) from None


@dataclass(frozen=True)
class SemigroupClosure:
    elements: Tuple[TransformMap, ...]
    generators: Tuple[TransformMap, ...]
    contains_identity: bool

    @cached_property
    def index(self) -> Dict[TransformMap, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def cayley(self) -> List[List[int]]:
        """cayley[i][j] = index of elements[i] * elements[j]."""
        idx = self.index
        return [[idx[a * b] for b in self.elements] for a in self.elements]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p: TransformMap) -> bool:
        return p in self.index

    def to_json(self) -> dict:
        return {"elements": [list(e.table) for e in self.elements],
                "generators": [list(g.table) for g in self.generators],
                "contains_identity": self.contains_identity}


def _left_closure(seeds: Iterable[TransformMap], actors: Sequence[TransformMap]) -> set:
    seen = set(seeds)
    frontier = list(seen)
    while frontier:
        nxt = []
        for e in frontier:
            for g in actors:
                p = g * e
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return seen


def closure(sys: FiniteSystem) -> SemigroupClosure:
    """All maps generated by the system's generators.

    Flow mode seeds the search with the identity and the generator inverses;
    semiflow mode uses nonempty forward words only.
    """
    gens = list(sys.generators)
    if sys.mode == FLOW:
        if not all(g.is_bijective() for g in gens):
            raise DomainError("flow mode needs bijective generators")
        actors = gens + [g.inverse() for g in gens]
        seeds = [TransformMap.identity(sys.n)] + actors
    else:
        actors = gens
        seeds = gens
    elements = tuple(sorted(_left_closure(seeds, actors)))
    ident = TransformMap.identity(sys.n)
    return SemigroupClosure(elements, tuple(sys.generators), ident in set(elements))


def idempotents(E: SemigroupClosure) -> List[TransformMap]:
    return [u for u in E.elements if u * u == u]


def minimal_left_ideals(E: SemigroupClosure) -> List[Tuple[TransformMap, ...]]:
    """Inclusion-minimal principal left ideals E*p, each in canonical order."""
    ideals = {frozenset(q * p for q in E.elements) for p in E.elements}
    minimal = [I for I in ideals if not any(J < I for J in ideals)]
    out = sorted(tuple(sorted(I)) for I in minimal)
    idem = set(idempotents(E))
    for I in out:
        if not idem.intersection(I):
            raise ConsistencyError(f"minimal left ideal without an idempotent: {I}")
    return out


def minimal_idempotents(E: SemigroupClosure) -> List[TransformMap]:
    members = set()
    for I in minimal_left_ideals(E):
        members.update(I)
    return [u for u in idempotents(E) if u in members]


def proximal_pairs(E: SemigroupClosure, check: bool = True) -> List[Tuple[int, int]]:
    """Pairs x < y collapsed by some element of E.

    With ``check`` the answer is compared with the minimal-idempotent
    criterion (u x == u y for a minimal idempotent u).
    """
    if not E.elements:
        return []
    n = E.elements[0].n
    pairs = sorted({(x, y) for p in E.elements for x, y in combinations(range(n), 2)
                    if p.table[x] == p.table[y]})
    if check:
        via_u = sorted({(x, y) for u in minimal_idempotents(E)
                        for x, y in combinations(range(n), 2) if u.table[x] == u.table[y]})
        if via_u != pairs:
            raise ConsistencyError(f"proximal pairs {pairs} disagree with idempotent test {via_u}")
    return pairs


def is_distal_equiv_group(sys: FiniteSystem, E: SemigroupClosure | None = None):
    """(distal, group, unique_identity_idempotent), computed independently.

    ``group`` means E is a group whose identity element is the identity map.
    """
    E = E if E is not None else closure(sys)
    distal = not proximal_pairs(E, check=False)
    ident = TransformMap.identity(sys.n)
    group = ident in E and all(p.is_bijective() and p.inverse() in E for p in E.elements)
    idem = idempotents(E)
    unique = len(idem) == 1 and idem[0] == ident
    return distal, group, unique


def dp_operator(p: TransformMap, A: Iterable[int]) -> FrozenSet[int]:
    """D_p(A) = pA for finite A."""
    A = frozenset(A)
    if not A:
        raise DomainError("dp_operator needs a nonempty set")
    return p.image(A)


def all_nonempty_subsets(n: int) -> List[FrozenSet[int]]:
    out = []
    for k in range(1, n + 1):
        out.extend(frozenset(c) for c in combinations(range(n), k))
    return out


def _induced_actors(sys: FiniteSystem) -> List[TransformMap]:
    gens = list(sys.generators)
    if sys.mode == FLOW:
        gens += [g.inverse() for g in gens]
    return gens


def almost_periodic_sets_direct(sys: FiniteSystem, subsets=None) -> List[FrozenSet[int]]:
    """Subsets lying in a minimal set of the induced system on nonempty subsets."""
    subsets = all_nonempty_subsets(sys.n) if subsets is None else [frozenset(s) for s in subsets]
    actors = _induced_actors(sys)
    memo: Dict[FrozenSet[int], set] = {}

    def reach(A):
        # sets reachable from A in one or more steps
        if A not in memo:
            seen = set()
            frontier = [A]
            while frontier:
                nxt = []
                for B in frontier:
                    for g in actors:
                        C = g.image(B)
                        if C not in seen:
                            seen.add(C)
                            nxt.append(C)
                frontier = nxt
            memo[A] = seen
        return memo[A]

    out = []
    for A in subsets:
        R = reach(A)
        if A in R and all(A in reach(B) for B in R):
            out.append(A)
    return out


def almost_periodic_sets(sys: FiniteSystem, subsets=None, check: bool = True) -> List[FrozenSet[int]]:
    """Subsets A with uA = A for some minimal idempotent u."""
    subsets = all_nonempty_subsets(sys.n) if subsets is None else [frozenset(s) for s in subsets]
    us = minimal_idempotents(closure(sys))
    out = [A for A in subsets if any(dp_operator(u, A) == A for u in us)]
    if check:
        direct = almost_periodic_sets_direct(sys, subsets)
        if direct != out:
            raise ConsistencyError(f"almost periodic sets {out} disagree with orbit test {direct}")
    return out


def envelope_orbit_transitive(sys: FiniteSystem, E: SemigroupClosure | None = None) -> bool:
    """Whether some orbit of the generator action on E covers E.

    Times act by p -> p * g (apply g, then p), starting from the identity in
    flow mode and from each generator in semiflow mode.
    """
    E = E if E is not None else closure(sys)
    actors = _induced_actors(sys)
    if sys.mode == FLOW:
        starts = [TransformMap.identity(sys.n)]
    else:
        starts = list(dict.fromkeys(sys.generators))
    target = set(E.elements)
    for s in starts:
        seen = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for p in frontier:
                for g in actors:
                    q = p * g
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        if seen == target:
            return True
    return False


def summarize(sys: FiniteSystem) -> dict:
    """One batch row: closure size and every predicate of this module."""
    E = closure(sys)
    distal, group, unique = is_distal_equiv_group(sys, E)
    idem = idempotents(E)
    gens_bijective = all(g.is_bijective() for g in sys.generators)
    return {"n": sys.n, "mode": sys.mode, "generators": [list(g.table) for g in sys.generators],
            "closure_size": len(E), "contains_identity": E.contains_identity,
            "idempotents": len(idem), "distal": distal, "group": group,
            "unique_identity_idempotent": unique, "generators_bijective": gens_bijective,
            "transitive": envelope_orbit_transitive(sys, E)}


def load_systems(directory) -> List[FiniteSystem]:
    """Read every ``*.json`` system file of a directory, in name order."""
    out = []
    for path in sorted(Path(directory).glob("*.json")):
        with open(path) as fh:
            out.append(FiniteSystem.from_json(json.load(fh)))
    return out
