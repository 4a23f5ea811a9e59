"""Special functions at working precision: Airy, Hermite, GUE wave functions."""

from fractions import Fraction
from math import factorial

import mpmath

from ..errors import LaxCorrError


def airy_eval(x, prec=128, conventional=False, max_terms=4000):
    """(Ai, Ai', Bt, Bt') by Maclaurin series, Bt = pi * Bi so that Ai Bt' - Ai' Bt = 1."""
    with mpmath.workprec(prec + 32):
        x = mpmath.mpmathify(x)
        c1 = 1 / (mpmath.cbrt(9) * mpmath.gamma(mpmath.mpf(2) / 3))
        c2 = 1 / (mpmath.cbrt(3) * mpmath.gamma(mpmath.mpf(1) / 3))
        x3 = x ** 3
        eps = mpmath.mpf(2) ** (-prec - 16)
        # f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
        x2 = x * x
        f, fp, g, gp = mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)
        a = mpmath.mpf(1)  # current term of f
        b = x  # current term of g
        k = 0
        while True:
            f += a
            g += b
            # derivative terms of order k+1 come from the current terms
            fp += a * x2 / (3 * k + 2)
            gp += b * x2 / (3 * k + 3)
            a_next = a * x3 / ((3 * k + 2) * (3 * k + 3))
            b_next = b * x3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            scale = max(abs(f), abs(g), 1)
            if k > 2 and abs(a_next) < eps * scale and abs(b_next) < eps * scale:
                f += a_next
                g += b_next
                break
            if k > max_terms:
                raise LaxCorrError("precision budget exceeded in Airy series")
            a, b = a_next, b_next
        ai = c1 * f - c2 * g
        aip = c1 * fp - c2 * gp
        s3 = mpmath.sqrt(3)
        bi = s3 * (c1 * f + c2 * g)
        bip = s3 * (c1 * fp + c2 * gp)
        if not conventional:
            bi, bip = bi * mpmath.pi, bip * mpmath.pi
        return tuple(+v for v in (ai, aip, bi, bip))


def airy_psi(x, prec=128):
    """Flat section of D = [[0, 1], [x, 0]] with determinant 1."""
    ai, aip, bi, bip = airy_eval(x, prec)
    return mpmath.matrix([[ai, bi], [aip, bip]])


def hermite_poly(N):
    """Monic Hermite coefficients (constant term first): p_{N+1} = x p_N - N p_{N-1}."""
    prev, cur = [Fraction(0)], [Fraction(1)]
    if N == 0:
        return cur
    prev, cur = cur, [Fraction(0), Fraction(1)]
    for n in range(1, N):
        nxt = [Fraction(0)] + cur
        for i, c in enumerate(prev):
            nxt[i] -= n * c
        prev, cur = cur, nxt
    return cur


def hermite_eval(N, x):
    coeffs = hermite_poly(N)
    if isinstance(x, (int, Fraction)):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def h_norm(N):
    """Squared norm of p_N for e^{-x^2/2} on the real line."""
    return mpmath.sqrt(2 * mpmath.pi) * factorial(N)


def psi_eval(N, x):
    return mpmath.exp(-x * x / 4) * hermite_eval(N, x) / mpmath.sqrt(h_norm(N))


def phi_eval(N, x, prec=64, error=False):
    """Dual wave function e^{V/2}/sqrt(h) int e^{-V(y)} p_N(y)/(x - y) dy, x off the real line."""
    with mpmath.workprec(prec + 20):
        x = mpmath.mpmathify(x)
        if mpmath.im(x) == 0:
            raise ValueError("x lies on the integration contour")
        f = lambda y: mpmath.exp(-y * y / 2) * hermite_eval(N, y) / (x - y)
        xr = mpmath.re(x)
        nodes = sorted({-mpmath.inf, mpmath.mpf(0), xr, mpmath.inf})
        val, err = mpmath.quad(f, nodes, error=True, maxdegree=10)
        pref = mpmath.exp(x * x / 4) / mpmath.sqrt(h_norm(N))
        out = pref * val
        if error:
            return out, abs(pref) * err
        return out


def gue_psi(N, x, prec=64):
    """Psi^(N)(x) = [[psi_{N-1}, phi_{N-1}], [psi_N, phi_N]] in the normalized gauge."""
    with mpmath.workprec(prec + 20):
        x = mpmath.mpmathify(x)
        return mpmath.matrix([[psi_eval(N - 1, x), phi_eval(N - 1, x, prec)],
                              [psi_eval(N, x), phi_eval(N, x, prec)]])
