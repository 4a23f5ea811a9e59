"""Independent oracles for the Gaussian unitary ensemble at small N."""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import mpmath

from ..exactalg import MPoly
from .partitions import moments_to_cumulants


def gaussian_moment(a):
    """E[y^a] for a standard normal y."""
    if a % 2:
        return 0
    out = 1
    for k in range(a - 1, 0, -2):
        out *= k
    return out


@lru_cache(maxsize=None)
def vandermonde_squared(N):
    lam = [MPoly.var(f"l{i}") for i in range(N)]
    out = MPoly.const(1)
    for i, j in combinations(range(N), 2):
        d = lam[i] - lam[j]
        out = out * d * d
    names = tuple(f"l{i}" for i in range(N))
    terms = []
    for mon, c in out.terms():
        e = dict(zip(out.vars, mon))
        terms.append((tuple(e.get(n, 0) for n in names), c))
    return tuple(terms)


def gue_z_factor(N):
    """int Delta^2 e^{-|l|^2/2} dl divided by (2 pi)^{N/2}, exactly."""
    return sum(c * _prod(gaussian_moment(a) for a in mon) for mon, c in vandermonde_squared(N))


def gue_moment_oracle(N, k):
    """t_k^(N) = E[Tr L^k] for the eigenvalue density Delta^2 e^{-Tr L^2/2} / Z."""
    num = Fraction(0)
    for mon, c in vandermonde_squared(N):
        for i in range(N):
            a = list(mon)
            a[i] += k
            num += c * _prod(gaussian_moment(e) for e in a)
    return num / gue_z_factor(N)


def _prod(it):
    out = 1
    for v in it:
        out *= v
    return out


def _one_dim(a, poles, prec):
    # int y^a prod 1/(x - y) e^{-y^2/2} dy / sqrt(2 pi)
    def f(y):
        v = y ** a * mpmath.exp(-y * y / 2)
        for x in poles:
            v = v / (x - y)
        return v

    nodes = sorted({mpmath.mpf(0)} | {mpmath.re(x) for x in poles})
    val, err = mpmath.quad(f, [-mpmath.inf] + nodes + [mpmath.inf], error=True, maxdegree=10)
    s = mpmath.sqrt(2 * mpmath.pi)
    return val / s, err / s


def joint_resolvent_oracle(N, points, prec=64):
    """Moments hat W and cumulants W of resolvents at the given points.

    Delta^2 is expanded into monomials, so every N-dimensional integral
    becomes a sum of products of one-dimensional quadratures.
    Returns (hat, cum, err) with dicts keyed by frozensets of point indices.
    """
    with mpmath.workprec(prec + 20):
        pts = [mpmath.mpmathify(p) for p in points]
        n = len(pts)
        z = gue_z_factor(N)
        vd = vandermonde_squared(N)
        cache = {}
        err_total = mpmath.mpf(0)

        def integral(a, idx):
            nonlocal err_total
            key = (a, idx)
            if key not in cache:
                v, e = _one_dim(a, [pts[i] for i in idx], prec)
                cache[key] = v
                err_total += e
            return cache[key]

        hat = {}
        for r in range(1, n + 1):
            for S in combinations(range(n), r):
                acc = mpmath.mpf(0)
                for assign in product(range(N), repeat=r):
                    for mon, c in vd:
                        term = mpmath.mpf(c.numerator) / c.denominator
                        for j in range(N):
                            idx = tuple(i for i, aj in zip(S, assign) if aj == j)
                            term *= integral(mon[j], idx)
                        acc += term
                acc = acc / z
                if r == 2:
                    i, j = S
                    acc += 1 / (pts[i] - pts[j]) ** 2
                hat[frozenset(S)] = acc
        cum = moments_to_cumulants(hat, range(n), one=mpmath.mpf(1))
        return hat, cum, err_total / abs(z)


def gue_w1_shifted(N, x, prec=64):
    """-x/2 + E Tr 1/(x - L): the one-point function seen by the x-ODE and N-recursion.

    Uses the one-point density sum_{k<N} p_k^2 e^{-y^2/2} / h_k.
    """
    from .special import h_norm, hermite_eval

    with mpmath.workprec(prec + 20):
        x = mpmath.mpmathify(x)

        def f(y):
            dens = sum(hermite_eval(k, y) ** 2 / h_norm(k) for k in range(N))
            return dens * mpmath.exp(-y * y / 2) / (x - y)

        val = mpmath.quad(f, [-mpmath.inf, 0, mpmath.re(x), mpmath.inf], maxdegree=10)
        return -x / 2 + val
