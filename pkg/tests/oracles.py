"""Independent reference computations used to freeze expected values.

Nothing here imports rigidlab.  Constants come from plain Fraction
recurrences; real values from mpmath or from raw gmpy2 loops that sum the
cocycle term by term.
"""

from fractions import Fraction

import gmpy2
import mpmath

# distance between T^m(1e-8, 0) and T^m(0, 0) at m = 1e16 for K_phi=3,
# K_alpha=4, computed by oracle_probe_distance() at 200 digits and frozen
PROBE_DISTANCE = mpmath.mpf("0.0078775111630874209166577078003")


def oracle_sequence(K):
    seq, prod = [], 1
    for k in range(K):
        n = 100 if k == 0 else prod ** 3
        seq.append(n)
        prod *= n
    return seq


def oracle_alpha(K):
    total = Fraction(0)
    for n in oracle_sequence(K):
        total += Fraction(1, n)
    return total


def _frac(q):
    return q - (q.numerator // q.denominator)


def oracle_psi(t, harmonics, dps=200):
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for n in harmonics:
            r = _frac(n * t)
            total += 2 * mpmath.cospi(2 * mpmath.mpf(r.numerator) / r.denominator)
        return total


def oracle_probe_distance(x, m, K_phi=3, K_alpha=4, dps=200):
    """Max-metric distance of T^m(x, 0) and T^m(0, 0) via the psi second difference."""
    n = oracle_sequence(K_alpha)[:K_phi]
    a = _frac(m * oracle_alpha(K_alpha))
    with mpmath.workdps(dps):
        dy = oracle_psi(x + a, n, dps) - oracle_psi(x, n, dps) - oracle_psi(a, n, dps) + oracle_psi(Fraction(0), n, dps)
        dy -= mpmath.floor(dy)
        dy = min(dy, 1 - dy)
        r = min(_frac(x), 1 - _frac(x))
        dx = mpmath.mpf(r.numerator) / r.denominator
        return max(dx, dy)


def direct_birkhoff(x, n, alpha, harmonics, bits=500):
    """sum_{j<n} phi(x + j alpha), every term evaluated on its own."""
    den = x.denominator * alpha.denominator
    xn = x.numerator * alpha.denominator
    an = alpha.numerator * x.denominator
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        two_pi_over = 2 * gmpy2.const_pi() / den

        def c(num, h):
            r = (h * num) % den
            if 2 * r >= den:
                r -= den
            return gmpy2.cos(two_pi_over * r)

        total = gmpy2.mpfr(0)
        for j in range(n):
            u = xn + j * an
            for h in harmonics:
                total += 2 * (c(u + an, h) - c(u, h))
        return total


def brute_closure(gens):
    """Every nonempty composition word of the generators, as tuples."""
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                for h in (tuple(f[v] for v in g), tuple(g[v] for v in f)):
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
        frontier = nxt
    return seen
