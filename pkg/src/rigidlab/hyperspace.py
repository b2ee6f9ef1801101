"""Finite subsets of a system's state space under the Hausdorff metric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import ConfigurationError, DomainError
from .precision import to_fraction, working_precision


@dataclass(frozen=True, eq=False)
class FiniteSubset:
    """A nonempty finite set of states of ``space``, deduplicated at ``dedup_tol``.

    Points are kept in the space's deterministic order.  Equality means
    Hausdorff distance 0.
    """

    points: Tuple
    space: object
    dedup_tol: Fraction = Fraction(0)

    def __post_init__(self):
        pts = sorted(self.points, key=self.space.sort_key)
        if not pts:
            raise DomainError("a FiniteSubset must be nonempty")
        tol = to_fraction(self.dedup_tol)
        kept = []
        for p in pts:
            if tol == 0:
                dup = any(self.space.distance(p, q) == 0 for q in kept)
            else:
                dup = any(self.space.distance(p, q) <= tol for q in kept)
            if not dup:
                kept.append(p)
        object.__setattr__(self, "points", tuple(kept))
        object.__setattr__(self, "dedup_tol", tol)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, FiniteSubset):
            return NotImplemented
        return hausdorff_distance(self, other) == 0

    def __hash__(self):
        return hash(len(self.points))

    def union(self, other: "FiniteSubset") -> "FiniteSubset":
        _check_space(self, other)
        return FiniteSubset(self.points + other.points, self.space, self.dedup_tol)

    def to_json(self):
        return [self.space.state_to_json(p) for p in self.points]

    @classmethod
    def from_json(cls, obj, space, dedup_tol=Fraction(0)) -> "FiniteSubset":
        return cls(tuple(space.state_from_json(o) for o in obj), space, dedup_tol)


def _check_space(A: FiniteSubset, B: FiniteSubset):
    if A.space != B.space:
        raise ConfigurationError("subsets live in different state spaces", field="space")


def _directed(A, B, metric):
    """sup_{a in A} d(a, B) with the first maximiser in A's order."""
    best, arg = None, None
    for a in A:
        d = min(metric(a, b) for b in B)
        if best is None or d > best:
            best, arg = d, a
    return best, arg


def hausdorff_witness(A: FiniteSubset, B: FiniteSubset, metric=None):
    """(d_H, point realising it, "A" or "B" naming the side it belongs to)."""
    _check_space(A, B)
    metric = metric or A.space.distance
    with working_precision(getattr(A.space, "precision", None)):
        da, pa = _directed(A.points, B.points, metric)
        db, pb = _directed(B.points, A.points, metric)
    if db > da:
        return db, pb, "B"
    return da, pa, "A"


def hausdorff_distance(A: FiniteSubset, B: FiniteSubset, metric=None):
    return hausdorff_witness(A, B, metric)[0]


def induced_image(sys, A: FiniteSubset, n: int) -> FiniteSubset:
    """tA = {t a : a in A}."""
    if n == 0:
        return A
    return FiniteSubset(tuple(sys.power(a, n) for a in A), A.space, A.dedup_tol)


def fn_projection(states: Sequence, space, n: int | None = None,
                  dedup_tol=Fraction(0)) -> FiniteSubset:
    """The factor map X^n -> F_n(X) sending a tuple to its underlying set."""
    if len(states) == 0:
        raise DomainError("fn_projection needs a nonempty tuple")
    if n is not None and len(states) > n:
        raise DomainError(f"tuple of length {len(states)} exceeds n={n}")
    return FiniteSubset(tuple(states), space, dedup_tol)


def _float_hausdorff(base: np.ndarray, images: np.ndarray) -> np.ndarray:
    """Hausdorff distances between a fixed planar set and a batch of planar sets."""
    diff = images[:, :, None, :] - base[None, None, :, :]
    d = np.sqrt((diff ** 2).sum(axis=-1))  # [t, image point, base point]
    return np.maximum(d.min(axis=2).max(axis=1), d.min(axis=1).max(axis=1))


def set_recurrence_scan(sys, A: FiniteSubset, candidate_times: Iterable[int], epsilon,
                        screen_slack: float = 1e-9):
    """Times t with d_H(A, tA) < epsilon, plus the (time, distance) profile.

    Systems offering ``embed_batch`` are screened in float64 first; every time
    whose float distance is within ``screen_slack`` of epsilon or below it is
    recomputed exactly, and those exact values replace the float ones.
    """
    times = list(candidate_times)
    if not times:
        raise ConfigurationError("candidate_times must be nonempty", field="candidate_times")
    eps = to_fraction(epsilon)
    if hasattr(sys, "embed_batch"):
        base = sys.embed_batch(list(A.points), [0])[0]
        profile = []
        chunk = 4096
        for start in range(0, len(times), chunk):
            block = times[start:start + chunk]
            approx = _float_hausdorff(base, sys.embed_batch(list(A.points), block))
            for t, v in zip(block, approx):
                if v < float(eps) + screen_slack:
                    profile.append((t, hausdorff_distance(A, induced_image(sys, A, t))))
                else:
                    profile.append((t, float(v)))
    else:
        profile = [(t, hausdorff_distance(A, induced_image(sys, A, t))) for t in times]
    hits = [(t, d) for t, d in profile if d < eps]
    return hits, profile
