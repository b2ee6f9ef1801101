"""Concrete cascades: the torus skew product, the circle family, rotations,
products and finite maps.

Every system exposes the same duck-typed surface used by the hyperspace and
detector layers::

    step(p), power(p, n), distance(p, q), sort_key(p),
    grid(size), random_state(rng), probe_lattice(p, radius),
    default_candidate_times(), default_probe_schedule(),
    state_to_json(p), state_from_json(obj)

Some systems also provide vectorised float screening helpers
(``displacement_batch``, ``embed_batch``, ``prescreen``); detectors use them
only to prune work and always confirm survivors with the exact path.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import gmpy2
import numpy as np
from gmpy2 import mpfr

from .errors import ConfigurationError, DomainError
from .precision import (
    Angle1,
    RigidConstants,
    centered,
    cos2pi,
    default_precision,
    format_rational,
    format_real,
    frac,
    harmonic_birkhoff_sum,
    make_constants,
    real_frac,
    ring_distance,
    sin2pi,
    sinpi,
    to_fraction,
    to_real,
    working_precision,
)

GROUP = "group"
SEMIGROUP = "semigroup"
_RANDOM_DENOMINATOR = 2 ** 40


@dataclass(frozen=True)
class TimeSet:
    """Acting times: [-N, N] minus {0} (group) or [s_min, N] (semigroup)."""

    mode: str = GROUP
    horizon: int = 1
    s_min: int = 1

    def __post_init__(self):
        if self.mode not in (GROUP, SEMIGROUP):
            raise ConfigurationError(f"unknown time-set mode {self.mode!r}", field="time_set.mode")
        if self.horizon < 1:
            raise ConfigurationError("horizon must be >= 1", field="time_set.horizon")
        if self.mode == SEMIGROUP and self.s_min < 1:
            raise ConfigurationError("s_min must be >= 1", field="time_set.s_min")

    def __contains__(self, t: int) -> bool:
        if self.mode == GROUP:
            return t != 0 and abs(t) <= self.horizon
        return self.s_min <= t <= self.horizon

    def allows(self, t: int) -> bool:
        """Membership ignoring the horizon (candidate times may exceed it)."""
        if self.mode == GROUP:
            return t != 0
        return t >= self.s_min

    def __iter__(self):
        # canonical scan order: smallest |t| first, positive before negative
        if self.mode == GROUP:
            for t in range(1, self.horizon + 1):
                yield t
                yield -t
        else:
            yield from range(self.s_min, self.horizon + 1)

    def forward(self) -> range:
        start = 1 if self.mode == GROUP else self.s_min
        return range(start, self.horizon + 1)


def time_order_key(t: int):
    return (abs(t), t < 0)


# ---------------------------------------------------------------- torus


@dataclass(frozen=True)
class TorusPoint:
    """(x, y) on R/Z x R/Z; x stays exact, y becomes real once a cocycle is added."""

    x: Angle1
    y: object

    def __post_init__(self):
        if not isinstance(self.x, Angle1):
            object.__setattr__(self, "x", Angle1(to_fraction(self.x)))
        y = self.y
        if isinstance(y, Angle1):
            y = y.value
        if isinstance(y, (int, str, Fraction)):
            y = frac(to_fraction(y))
        else:
            y = real_frac(y)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class SkewProductSystem:
    """T(x, y) = (x + alpha, y + phi(x)) with phi truncated to K_phi harmonics.

    phi(x) = sum_k 2 [cos(2 pi n_k (x + alpha)) - cos(2 pi n_k x)], the real form
    of the two-sided series obtained by pairing n_{-k} = -n_k.
    """

    constants: RigidConstants
    K_phi: int
    precision: int = field(default_factory=default_precision)
    time_mode: str = GROUP

    def __post_init__(self):
        if not isinstance(self.K_phi, int) or self.K_phi < 1:
            raise ConfigurationError("K_phi must be a positive integer", field="K_phi")
        if self.K_phi >= self.constants.K_alpha:
            raise ConfigurationError(
                f"K_phi={self.K_phi} must be < K_alpha={self.constants.K_alpha}", field="K_phi")

    @classmethod
    def create(cls, K_phi: int = 3, K_alpha: int = 4, precision: Optional[int] = None,
               time_mode: str = GROUP) -> "SkewProductSystem":
        precision = precision or default_precision()
        return cls(make_constants(K_alpha, precision), K_phi, precision, time_mode)

    @property
    def alpha(self) -> Fraction:
        return self.constants.alpha.value

    @property
    def harmonics(self) -> Tuple[int, ...]:
        return self.constants.n_seq[: self.K_phi]

    @property
    def coeffs(self) -> List[Tuple]:
        """c_k = exp(2 pi i n_k alpha) - 1 as (real, imag), relative-precision safe."""
        out = []
        with working_precision(self.precision):
            for n in self.harmonics:
                q = frac(n * self.alpha)
                s = sinpi(q)
                out.append((-2 * s * s, sin2pi(q)))
        return out

    def psi(self, t) -> "mpfr":
        """Transfer function: phi(x) = psi(x + alpha) - psi(x)."""
        t = to_fraction(t)
        with working_precision(self.precision):
            return sum((2 * cos2pi(n * t) for n in self.harmonics), mpfr(0))

    def phi_eval(self, x) -> "mpfr":
        x = to_fraction(x)
        a = self.alpha
        with working_precision(self.precision):
            total = mpfr(0)
            for n in self.harmonics:
                total += 2 * (cos2pi(n * (x + a)) - cos2pi(n * x))
            return total

    def birkhoff_sum(self, x, n: int, method: str = "geometric") -> "mpfr":
        """B_n(x) = sum_{j=0}^{n-1} phi(x + j alpha), in O(K_phi) for any n >= 0."""
        if n < 0:
            raise DomainError("birkhoff_sum needs n >= 0; use power() for negative times")
        x = to_fraction(x)
        with working_precision(self.precision):
            if method == "telescoping":
                return self.psi(x + n * self.alpha) - self.psi(x)
            if method != "geometric":
                raise ConfigurationError(f"unknown Birkhoff method {method!r}", field="method")
            total = mpfr(0)
            for n_k, (c_re, c_im) in zip(self.harmonics, self.coeffs):
                h_re, h_im = harmonic_birkhoff_sum(n_k, x, n, self.alpha, self.precision)
                total += 2 * (c_re * h_re - c_im * h_im)
            return total

    def step(self, p: TorusPoint) -> TorusPoint:
        with working_precision(self.precision):
            return TorusPoint(p.x + self.alpha, to_real(p.y) + self.phi_eval(p.x.value))

    def inverse_step(self, q: TorusPoint) -> TorusPoint:
        x = q.x - self.alpha
        with working_precision(self.precision):
            return TorusPoint(x, to_real(q.y) - self.phi_eval(x.value))

    def power(self, p: TorusPoint, n: int, method: str = "geometric") -> TorusPoint:
        if n == 0:
            return p
        with working_precision(self.precision):
            if n > 0:
                shift = self.birkhoff_sum(p.x.value, n, method)
                return TorusPoint(p.x + n * self.alpha, to_real(p.y) + shift)
            x = p.x + n * self.alpha
            shift = self.birkhoff_sum(x.value, -n, method)
            return TorusPoint(x, to_real(p.y) - shift)

    def iterate(self, p: TorusPoint, n: int) -> TorusPoint:
        """n applications of step(), accumulating y one phi value at a time."""
        if n < 0:
            raise DomainError("iterate needs n >= 0")
        a = self.alpha
        x0 = p.x.value
        den = math.lcm(x0.denominator, a.denominator)
        xn = x0.numerator * (den // x0.denominator)
        an = a.numerator * (den // a.denominator)
        harmonics = self.harmonics
        with working_precision(self.precision):
            two_pi = 2 * gmpy2.const_pi()
            den_r = mpfr(den)

            def cos_at(num, n_k):
                r = (n_k * num) % den
                if 2 * r >= den:
                    r -= den
                return gmpy2.cos(two_pi * (mpfr(r) / den_r))

            y = to_real(p.y)
            for _ in range(n):
                nxt = (xn + an) % den
                for n_k in harmonics:
                    y += 2 * (cos_at(nxt, n_k) - cos_at(xn, n_k))
                xn = nxt
            return TorusPoint(Angle1(Fraction(xn, den)), y)

    def distance(self, p: TorusPoint, q: TorusPoint):
        return max(ring_distance(p.x, q.x), ring_distance(p.y, q.y))

    def displacement(self, p: TorusPoint, n: int):
        return self.distance(self.power(p, n), p)

    def sort_key(self, p: TorusPoint):
        y = p.y if isinstance(p.y, Fraction) else to_fraction(gmpy2.mpq(p.y))
        return (p.x.value, y)

    def grid(self, size: int = 32) -> List[TorusPoint]:
        return [TorusPoint(Fraction(i, size), Fraction(j, size))
                for i in range(size) for j in range(size)]

    def random_state(self, rng: random.Random) -> TorusPoint:
        return TorusPoint(Fraction(rng.randrange(_RANDOM_DENOMINATOR), _RANDOM_DENOMINATOR),
                          Fraction(rng.randrange(_RANDOM_DENOMINATOR), _RANDOM_DENOMINATOR))

    def probe_lattice(self, p: TorusPoint, radius) -> List[TorusPoint]:
        r = to_fraction(radius)
        if r == 0:
            return [p]
        offsets = (-r, Fraction(0), r)
        return [TorusPoint(p.x + dx, (p.y + dy) if isinstance(p.y, Fraction) else p.y + to_real(dy))
                for dx in offsets for dy in offsets]

    def default_candidate_times(self) -> List[int]:
        # n_{K_alpha} is excluded: frac(n_{K_alpha} alpha) = 0 makes it a truncation period
        return list(self.constants.n_seq[: self.constants.K_alpha - 1])

    def rigidity_phase_shifts(self, n: int) -> List[Fraction]:
        """frac(n_k * n * alpha): the exact phase each harmonic is shifted by at time n."""
        return [frac(n_k * n * self.alpha) for n_k in self.harmonics]

    def separation_probes(self) -> List[Tuple[TorusPoint, int]]:
        """Probes (1/(n_1 n_l), 0) at times n_l^3 / n_1 for the usable l >= 2."""
        n = self.constants.n_seq
        out = []
        for l in range(2, min(self.K_phi, self.constants.K_alpha - 1) + 1):
            n_l = n[l - 1]
            out.append((TorusPoint(Fraction(1, n[0] * n_l), 0), n_l ** 3 // n[0]))
        return out

    def default_probe_schedule(self):
        return TorusPoint(0, 0), self.separation_probes(), Fraction(1, 1000)

    def rotation_factor(self) -> "RotationSystem":
        """The x-coordinate factor (rotation by alpha)."""
        return RotationSystem(Angle1(self.alpha, self.precision), self.precision, self.time_mode)

    def state_to_json(self, p: TorusPoint):
        y = format_rational(p.y) if isinstance(p.y, Fraction) else format_real(p.y, self.precision)
        return {"x": format_rational(p.x.value), "y": y}

    def state_from_json(self, obj) -> TorusPoint:
        y = obj["y"]
        if "/" in y:
            y = Fraction(y)
        else:
            with working_precision(self.precision):
                y = mpfr(y)
        return TorusPoint(Fraction(obj["x"]), y)

    def prescreen(self, points, times: Iterable[int], epsilon) -> Iterable[int]:
        """Times whose x-rotation alone is within epsilon of the identity.

        Sound under the max metric: the displacement of every point is at least
        the ring distance of frac(t * alpha) to 0.
        """
        eps = to_fraction(epsilon)
        a = self.alpha
        num, den = a.numerator, a.denominator
        if isinstance(times, range) and times.step == 1:
            acc = (times.start * num) % den
            for t in times:
                r = min(acc, den - acc)
                if r < eps * den:
                    yield t
                acc += num
                if acc >= den:
                    acc -= den
            return
        for t in times:
            acc = (t * num) % den
            if min(acc, den - acc) < eps * den:
                yield t


# ---------------------------------------------------------------- circle family


@dataclass(frozen=True)
class CirclePoint:
    """A point on circle ``level`` (None = outer circle r = 1) at angle ``theta`` turns."""

    level: Optional[int]
    theta: Angle1

    def __post_init__(self):
        if not isinstance(self.theta, Angle1):
            object.__setattr__(self, "theta", Angle1(to_fraction(self.theta)))


def circle_radius(level: Optional[int]) -> Fraction:
    if level is None:
        return Fraction(1)
    return 1 - Fraction(1, 2 ** level)


def circle_embed(q: CirclePoint, precision: Optional[int] = None):
    """Planar coordinates (r cos 2 pi theta, r sin 2 pi theta)."""
    r = circle_radius(q.level)
    with working_precision(precision):
        rr = to_real(r)
        return rr * cos2pi(q.theta.value), rr * sin2pi(q.theta.value)


@dataclass(frozen=True)
class CircleFamilySystem:
    """Circles of radius 1 - 2^-m (m <= M) plus the unit circle; each rotates by its radius."""

    M: int = 24
    precision: int = field(default_factory=default_precision)
    time_mode: str = GROUP

    def __post_init__(self):
        if not isinstance(self.M, int) or self.M < 2:
            raise ConfigurationError("M must be an integer >= 2", field="M")

    def levels(self) -> List[Optional[int]]:
        return list(range(1, self.M + 1)) + [None]

    def _check(self, q: CirclePoint):
        if q.level is not None and not 1 <= q.level <= self.M:
            raise DomainError(f"level {q.level} outside 1..{self.M}")

    def step(self, q: CirclePoint) -> CirclePoint:
        return self.power(q, 1)

    def power(self, q: CirclePoint, n: int) -> CirclePoint:
        self._check(q)
        return CirclePoint(q.level, q.theta + n * circle_radius(q.level))

    def embed(self, q: CirclePoint):
        return circle_embed(q, self.precision)

    def distance(self, p: CirclePoint, q: CirclePoint):
        """Euclidean distance of the embeddings.

        Written as sqrt((r1-r2)^2 + 4 r1 r2 sin^2(pi dtheta)) with dtheta exact,
        so same-level distances depend only on the exact angle difference.
        """
        r1, r2 = circle_radius(p.level), circle_radius(q.level)
        dtheta = centered(p.theta.value - q.theta.value)
        with working_precision(self.precision):
            s = sinpi(dtheta)
            return gmpy2.sqrt(to_real((r1 - r2) ** 2) + 4 * to_real(r1 * r2) * s * s)

    def displacement(self, q: CirclePoint, n: int):
        return self.distance(self.power(q, n), q)

    def sort_key(self, q: CirclePoint):
        return (self.M + 1 if q.level is None else q.level, q.theta.value)

    def grid(self, size: int = 8) -> List[CirclePoint]:
        return [CirclePoint(m, Fraction(j, size)) for m in self.levels() for j in range(size)]

    def random_state(self, rng: random.Random) -> CirclePoint:
        level = rng.choice(self.levels())
        return CirclePoint(level, Fraction(rng.randrange(_RANDOM_DENOMINATOR), _RANDOM_DENOMINATOR))

    def probe_lattice(self, q: CirclePoint, radius) -> List[CirclePoint]:
        r = to_fraction(radius)
        if r == 0:
            return [q]
        # angular offset r/7 turns moves a point of radius <= 1 by less than r
        d = r / 7
        return [CirclePoint(q.level, q.theta + off) for off in (-d, Fraction(0), d)]

    def default_candidate_times(self) -> List[int]:
        return [2 ** k for k in range(0, self.M - 1)]

    def default_probe_schedule(self):
        """Base on the fixed outer circle; probe on level m at time 2^(m-1) lands antipodally."""
        base = CirclePoint(None, 0)
        schedule = [(CirclePoint(m, 0), 2 ** (m - 1)) for m in range(1, self.M + 1)]
        return base, schedule, Fraction(1, 2)

    def reference_sets(self) -> Tuple[List[CirclePoint], List[CirclePoint]]:
        """The sets A (angle 0 on every circle) and B (angle r on the circle of radius r)."""
        A = [CirclePoint(m, 0) for m in self.levels()]
        B = [CirclePoint(m, circle_radius(m)) for m in self.levels()]
        return A, B

    def state_to_json(self, q: CirclePoint):
        return {"level": "outer" if q.level is None else q.level,
                "theta": format_rational(q.theta.value)}

    def state_from_json(self, obj) -> CirclePoint:
        level = obj["level"]
        return CirclePoint(None if level == "outer" else int(level), Fraction(obj["theta"]))

    # float screening helpers -------------------------------------------------

    @staticmethod
    def _level_ring(level, times: np.ndarray) -> np.ndarray:
        if level is None:
            return np.zeros(times.shape, dtype=np.float64)
        mod = 1 << level
        k = np.mod(times, mod)
        return np.minimum(k, mod - k).astype(np.float64) / mod

    def displacement_batch(self, points: Sequence[CirclePoint], times) -> np.ndarray:
        """float64 array [time, point] of chord displacements 2 r sin(pi ring(n r))."""
        times = np.asarray(times, dtype=np.int64)
        out = np.empty((times.size, len(points)), dtype=np.float64)
        cache = {}
        for j, q in enumerate(points):
            if q.level not in cache:
                r = float(circle_radius(q.level))
                cache[q.level] = 2 * r * np.sin(np.pi * self._level_ring(q.level, times))
            out[:, j] = cache[q.level]
        return out

    def sup_displacement_batch(self, points: Sequence[CirclePoint], times) -> np.ndarray:
        levels = sorted({q.level for q in points}, key=lambda m: (m is None, m or 0))
        reps = [CirclePoint(m, 0) for m in levels]
        return self.displacement_batch(reps, times).max(axis=1)

    def embed_batch(self, points: Sequence[CirclePoint], times) -> np.ndarray:
        """float64 array [time, point, 2] of planar positions after each time."""
        times = np.asarray(times, dtype=np.int64)
        out = np.empty((times.size, len(points), 2), dtype=np.float64)
        for j, q in enumerate(points):
            r = float(circle_radius(q.level))
            theta = float(q.theta.value)
            if q.level is None:
                ang = np.full(times.shape, theta)
            else:
                mod = 1 << q.level
                ang = theta - np.mod(times, mod).astype(np.float64) / mod
            out[:, j, 0] = r * np.cos(2 * np.pi * ang)
            out[:, j, 1] = r * np.sin(2 * np.pi * ang)
        return out

    def prescreen(self, points, times: Iterable[int], epsilon) -> Iterable[int]:
        eps = float(epsilon)
        times = np.fromiter(times, dtype=np.int64)
        chunk = 1 << 20
        for start in range(0, times.size, chunk):
            block = times[start:start + chunk]
            worst = self.displacement_batch(points, block).max(axis=1)
            # float slack: survivors are re-checked exactly
            for t in block[worst < eps + 1e-9]:
                yield int(t)


# ---------------------------------------------------------------- rotations


@dataclass(frozen=True)
class RotationSystem:
    """Rotation of R/Z by rho: an isometry, hence equicontinuous."""

    rho: Angle1
    precision: int = field(default_factory=default_precision)
    time_mode: str = GROUP

    def __post_init__(self):
        if not isinstance(self.rho, Angle1):
            object.__setattr__(self, "rho", Angle1(to_fraction(self.rho)))

    def step(self, p: Angle1) -> Angle1:
        return p + self.rho

    def power(self, p: Angle1, n: int) -> Angle1:
        return p + n * self.rho

    def distance(self, p: Angle1, q: Angle1):
        return ring_distance(p, q)

    def displacement(self, p: Angle1, n: int):
        return ring_distance(n * self.rho, 0)

    def sort_key(self, p: Angle1):
        return p.value

    def grid(self, size: int = 32) -> List[Angle1]:
        return [Angle1(Fraction(j, size)) for j in range(size)]

    def random_state(self, rng: random.Random) -> Angle1:
        return Angle1(Fraction(rng.randrange(_RANDOM_DENOMINATOR), _RANDOM_DENOMINATOR))

    def probe_lattice(self, p: Angle1, radius) -> List[Angle1]:
        r = to_fraction(radius)
        if r == 0:
            return [p]
        return [p - r, p, p + r]

    def default_candidate_times(self) -> List[int]:
        q = self.rho.value.denominator
        if q <= 10 ** 9:
            return [q]
        return [10, 100, 1000]

    def default_probe_schedule(self):
        base = Angle1(0)
        schedule = [(Angle1(Fraction(1, 10 ** j)), t) for j in range(4, 9)
                    for t in (1, 10 ** 3, 10 ** 6, 10 ** 16)]
        return base, schedule, Fraction(1, 1000)

    def state_to_json(self, p: Angle1):
        return format_rational(p.value)

    def state_from_json(self, obj) -> Angle1:
        return Angle1(Fraction(obj))

    def displacement_batch(self, points, times) -> np.ndarray:
        times = list(times)
        vals = [float(ring_distance(t * self.rho, 0)) for t in times]
        return np.repeat(np.asarray(vals, dtype=np.float64)[:, None], len(points), axis=1)

    def prescreen(self, points, times: Iterable[int], epsilon) -> Iterable[int]:
        eps = to_fraction(epsilon)
        num, den = self.rho.value.numerator, self.rho.value.denominator
        for t in times:
            acc = (t * num) % den
            if min(acc, den - acc) < eps * den:
                yield t


# ---------------------------------------------------------------- products


@dataclass(frozen=True)
class ProductSystem:
    """Coordinatewise dynamics on X x Y under the max metric."""

    a: object
    b: object

    def __post_init__(self):
        ma = getattr(self.a, "time_mode", GROUP)
        mb = getattr(self.b, "time_mode", GROUP)
        if ma != mb:
            raise ConfigurationError(f"time-set modes differ: {ma} vs {mb}", field="time_mode")

    @property
    def time_mode(self) -> str:
        return getattr(self.a, "time_mode", GROUP)

    @property
    def precision(self) -> int:
        return max(getattr(self.a, "precision", 0), getattr(self.b, "precision", 0)) or default_precision()

    def step(self, p):
        return (self.a.step(p[0]), self.b.step(p[1]))

    def power(self, p, n: int):
        return (self.a.power(p[0], n), self.b.power(p[1], n))

    def distance(self, p, q):
        return max(self.a.distance(p[0], q[0]), self.b.distance(p[1], q[1]))

    def displacement(self, p, n: int):
        return self.distance(self.power(p, n), p)

    def sort_key(self, p):
        return (self.a.sort_key(p[0]), self.b.sort_key(p[1]))

    def grid(self, size: int = 8):
        return [(u, v) for u in self.a.grid(size) for v in self.b.grid(size)]

    def random_state(self, rng: random.Random):
        return (self.a.random_state(rng), self.b.random_state(rng))

    def probe_lattice(self, p, radius):
        return [(u, v) for u in self.a.probe_lattice(p[0], radius)
                for v in self.b.probe_lattice(p[1], radius)]

    def default_candidate_times(self) -> List[int]:
        common = sorted(set(self.a.default_candidate_times()) & set(self.b.default_candidate_times()))
        return common or sorted(set(self.a.default_candidate_times()))

    def default_probe_schedule(self):
        base_a, sched_a, delta = self.a.default_probe_schedule()
        base_b = self.b.grid(1)[0]
        return (base_a, base_b), [((p, base_b), t) for p, t in sched_a], delta

    def project(self, p, index: int):
        return p[index]

    def state_to_json(self, p):
        return [self.a.state_to_json(p[0]), self.b.state_to_json(p[1])]

    def state_from_json(self, obj):
        return (self.a.state_from_json(obj[0]), self.b.state_from_json(obj[1]))

    def prescreen(self, points, times, epsilon):
        pa = [p[0] for p in points]
        pb = [p[1] for p in points]
        if hasattr(self.a, "prescreen"):
            times = self.a.prescreen(pa, times, epsilon)
        if hasattr(self.b, "prescreen"):
            times = self.b.prescreen(pb, times, epsilon)
        return times


def product_system(a, b) -> ProductSystem:
    return ProductSystem(a, b)


# ---------------------------------------------------------------- finite maps


@dataclass(frozen=True)
class FiniteMapSystem:
    """Iterates of one self-map of {0..n-1} under the discrete metric."""

    table: Tuple[int, ...]
    time_mode: str = SEMIGROUP

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        n = len(table)
        if n == 0 or any(not 0 <= v < n for v in table):
            raise ConfigurationError("table must map {0..n-1} into itself", field="table")
        object.__setattr__(self, "table", table)
        if self.time_mode == GROUP and len(set(table)) != n:
            raise ConfigurationError("group mode needs a bijective map", field="table")

    @property
    def precision(self) -> int:
        return default_precision()

    def step(self, p: int) -> int:
        return self.table[p]

    def power(self, p: int, n: int) -> int:
        if n < 0:
            if len(set(self.table)) != len(self.table):
                raise DomainError("negative powers need a bijective map")
            inv = [0] * len(self.table)
            for i, v in enumerate(self.table):
                inv[v] = i
            for _ in range(-n):
                p = inv[p]
            return p
        # orbits are eventually periodic: skip whole periods
        seen = {}
        k = 0
        while k < n:
            if p in seen:
                period = k - seen[p]
                for _ in range((n - k) % period):
                    p = self.table[p]
                return p
            seen[p] = k
            p = self.table[p]
            k += 1
        return p

    def distance(self, p: int, q: int):
        return Fraction(0) if p == q else Fraction(1)

    def displacement(self, p: int, n: int):
        return self.distance(self.power(p, n), p)

    def sort_key(self, p: int):
        return p

    def grid(self, size: int = 0) -> List[int]:
        return list(range(len(self.table)))

    def random_state(self, rng: random.Random) -> int:
        return rng.randrange(len(self.table))

    def probe_lattice(self, p: int, radius) -> List[int]:
        return [p]

    def default_candidate_times(self) -> List[int]:
        return list(range(1, len(self.table) + 1))

    def default_probe_schedule(self):
        return 0, [], Fraction(1, 2)

    def state_to_json(self, p: int):
        return p

    def state_from_json(self, obj) -> int:
        return int(obj)
