"""Exact arithmetic on the circle R/Z and high-precision real views.

Angles are measured in turns.  Coordinates that are rational stay
``Fraction``s; anything that has passed through a trigonometric function
is a ``gmpy2.mpfr`` at the working precision.  All reductions mod 1 (and
mod 2 for half-angle sines) happen on exact rationals before rounding.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Tuple, Union

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import ConfigurationError, DomainError, PrecisionError

DEFAULT_PRECISION = 120
GUARD_DIGITS = 20
MIN_PRECISION = 30
MAX_K_ALPHA = 6
N1 = 100

Real = Union[Fraction, int, "mpfr"]


def default_precision() -> int:
    raw = os.environ.get("RIGIDLAB_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        digits = int(raw)
    except ValueError:
        raise ConfigurationError(f"RIGIDLAB_PRECISION must be an integer, got {raw!r}",
                                 field="RIGIDLAB_PRECISION") from None
    if digits < MIN_PRECISION:
        raise ConfigurationError(f"RIGIDLAB_PRECISION must be >= {MIN_PRECISION}",
                                 field="RIGIDLAB_PRECISION")
    return digits


def precision_bits(digits: int) -> int:
    return int(math.ceil((digits + GUARD_DIGITS) * math.log2(10))) + 8


@contextmanager
def working_precision(digits: int | None = None) -> Iterator[int]:
    """Run the body with an MPFR context carrying at least ``digits`` plus guard digits.

    An already-active context of higher precision is kept.  gmpy2 contexts
    are thread-local, so concurrent callers do not interfere.
    """
    if digits is None:
        digits = default_precision()
    bits = precision_bits(digits)
    if gmpy2.get_context().precision >= bits:
        yield bits
        return
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        yield bits


def resolution(digits: int) -> Fraction:
    """Smallest absolute value the real views at ``digits`` are certified to resolve."""
    return Fraction(1, 10 ** (digits - 10))


def require_resolution(tol, digits: int, name: str = "tolerance") -> None:
    if tol is None:
        return
    if Fraction(tol) != 0 and Fraction(tol) < resolution(digits):
        raise PrecisionError(
            f"{name}={tol} is below the certified resolution 1e-{digits - 10} "
            f"at precision {digits}; raise the precision")


def to_fraction(v) -> Fraction:
    """Parse ints, Fractions, Angle1 and strings such as ``"377/610"`` or ``"1e-6"``."""
    if isinstance(v, Angle1):
        return v.value
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        return Fraction(v)
    if isinstance(v, type(mpq())):
        return Fraction(int(v.numerator), int(v.denominator))
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


def frac(q: Fraction) -> Fraction:
    """Canonical representative of q mod 1 in [0, 1)."""
    return q - math.floor(q)


def centered(q: Fraction, period: int = 1) -> Fraction:
    """Representative of q mod ``period`` in [-period/2, period/2)."""
    half = Fraction(period, 2)
    return q - period * math.floor((q + half) / period)


def real_frac(v):
    """Fractional part of a real (mpfr or rational) in [0, 1)."""
    if isinstance(v, (Fraction, int)):
        return frac(Fraction(v))
    # never round below the input's own precision
    ctx = gmpy2.get_context()
    if ctx.precision >= v.precision:
        return v - gmpy2.floor(v)
    with gmpy2.context(ctx, precision=v.precision):
        return v - gmpy2.floor(v)


def to_real(q) -> "mpfr":
    if isinstance(q, Fraction):
        return mpfr(mpq(q.numerator, q.denominator))
    if isinstance(q, Angle1):
        return to_real(q.value)
    return mpfr(q)


def _pi():
    return gmpy2.const_pi()


def cos2pi(q: Fraction):
    """cos(2*pi*q) for exact rational q, reduced to [-1/2, 1/2) first."""
    return gmpy2.cos(2 * _pi() * to_real(centered(q)))


def sin2pi(q: Fraction):
    return gmpy2.sin(2 * _pi() * to_real(centered(q)))


def sinpi(q: Fraction):
    """sin(pi*q); q is reduced mod 2 so tiny arguments keep full relative precision."""
    return gmpy2.sin(_pi() * to_real(centered(q, 2)))


@dataclass(frozen=True)
class Angle1:
    """A point of R/Z held as an exact rational in [0, 1)."""

    value: Fraction
    precision: int = field(default_factory=default_precision, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "value", frac(to_fraction(self.value)))

    def __add__(self, other):
        if isinstance(other, (Angle1, Fraction, int)):
            return Angle1(self.value + to_fraction(other), self.precision)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Angle1, Fraction, int)):
            return Angle1(self.value - to_fraction(other), self.precision)
        return NotImplemented

    def __neg__(self):
        return Angle1(-self.value, self.precision)

    def __mul__(self, n):
        if isinstance(n, int):
            return Angle1(n * self.value, self.precision)
        return NotImplemented

    __rmul__ = __mul__

    def real(self):
        with working_precision(self.precision):
            return to_real(self.value)

    def __str__(self):
        return format_rational(self.value)


def ring_distance(x, y):
    """Distance on R/Z: min(|x-y|, 1-|x-y|).

    Exact (a ``Fraction``) when both arguments are rational, otherwise an
    mpfr at the current working precision.
    """
    a = x.value if isinstance(x, Angle1) else x
    b = y.value if isinstance(y, Angle1) else y
    if isinstance(a, (Fraction, int)) and isinstance(b, (Fraction, int)):
        d = frac(Fraction(a) - Fraction(b))
        return min(d, 1 - d)
    with working_precision():
        d = real_frac(to_real(a) - to_real(b))
        return min(d, 1 - d)


def frac_scalar_mult(n: int, a) -> Angle1:
    """frac(n*a), exactly."""
    prec = a.precision if isinstance(a, Angle1) else default_precision()
    return Angle1(n * to_fraction(a), prec)


def harmonic_birkhoff_sum(m: int, x, n: int, a, precision: int | None = None) -> Tuple:
    """Closed form of sum_{j<n} exp(2*pi*i*m*(x + j*a)) as (real, imag).

    Uses exp(2*pi*i*m*x) * exp(i*pi*(n-1)*q) * sin(pi*n*q) / sin(pi*q)
    with q = frac(m*a); the degenerate case q == 0 is detected exactly.
    """
    if n < 0:
        raise DomainError("harmonic_birkhoff_sum needs n >= 0")
    x = to_fraction(x)
    a = to_fraction(a)
    with working_precision(precision or default_precision()):
        if n == 0:
            return mpfr(0), mpfr(0)
        q = frac(m * a)
        if q == 0:
            return n * cos2pi(m * x), n * sin2pi(m * x)
        ratio = sinpi(n * q) / sinpi(q)
        phase = m * x + Fraction(n - 1, 2) * q
        return ratio * cos2pi(phase), ratio * sin2pi(phase)


@dataclass(frozen=True)
class RigidConstants:
    """n_1 = 100, n_{k+1} = (n_1 ... n_k)^3, and alpha = sum of 1/n_j truncated."""

    K_alpha: int
    n_seq: Tuple[int, ...]
    alpha: Angle1

    def frac_multiple(self, n: int) -> Fraction:
        return frac(n * self.alpha.value)

    def phase_table(self):
        """frac(n_j * n_k * alpha) for all retained j, k."""
        return [[self.frac_multiple(nj * nk) for nk in self.n_seq] for nj in self.n_seq]


def make_constants(K_alpha: int, precision: int | None = None) -> RigidConstants:
    if isinstance(K_alpha, bool) or not isinstance(K_alpha, int) or not 1 <= K_alpha <= MAX_K_ALPHA:
        raise ConfigurationError(
            f"K_alpha must be an integer in [1, {MAX_K_ALPHA}], got {K_alpha!r}", field="K_alpha")
    seq = [N1]
    prod = N1
    while len(seq) < K_alpha:
        nxt = prod ** 3
        seq.append(nxt)
        prod *= nxt
    alpha = sum((Fraction(1, n) for n in seq), Fraction(0))
    return RigidConstants(K_alpha, tuple(seq), Angle1(alpha, precision or default_precision()))


def format_rational(q) -> str:
    q = to_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_real(v, digits: int = 40) -> str:
    """Deterministic scientific notation for mpfr/rational values."""
    if isinstance(v, (Fraction, int, float)):
        with working_precision(max(digits, MIN_PRECISION)):
            v = to_real(Fraction(v))
    if v == 0:
        return "0"
    mant, exp, _ = v.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    return f"{sign}{mant[0]}.{mant[1:]}e{exp - 1:+d}"
