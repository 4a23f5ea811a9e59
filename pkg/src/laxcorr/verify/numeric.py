"""Numeric evaluation of correlators from flat sections, and residuals."""

from itertools import permutations

import mpmath

from ..exactalg import RatFunc


def adjoint_section(Psi, E):
    return Psi * mpmath.matrix(E) * mpmath.inverse(Psi)


def _trace(A):
    return sum(A[i, i] for i in range(A.rows))


def wn_numeric(mats, points):
    """Cyclic-sum correlator from numeric adjoint sections M_i at points x_i."""
    n = len(mats)
    if n == 1:
        raise ValueError("use w1_numeric for n = 1")
    sign = -1 if (n - 1) % 2 else 1
    total = 0
    for rest in permutations(range(1, n)):
        cyc = (0,) + rest
        sigma = {a: b for a, b in zip(cyc, cyc[1:] + cyc[:1])}
        prodM = mats[cyc[0]]
        for i in cyc[1:]:
            prodM = prodM * mats[i]
        den = 1
        for i in range(n):
            den *= points[i] - points[sigma[i]]
        total += sign * _trace(prodM) / den
    return total


def w1_numeric(D, M):
    return _trace(D * M)


def evaluate_matrix(A, values):
    """Numeric value of a MatR at a point (values: name -> number)."""
    r = A.size
    return mpmath.matrix([[A[i, j].evaluate(values, mpmath.mpf(0)) for j in range(r)] for i in range(r)])


def coefficient_values(relation, values):
    z = mpmath.mpf(0)
    return [RatFunc.coerce(c).evaluate(values, z) for c in relation.coefficients]


def ode_residual(relation, derivs, values):
    """sum alpha_k W^(k) with derivs[k] = W^(k); returns (|residual|, scale)."""
    cs = coefficient_values(relation, values)
    terms = [c * d for c, d in zip(cs, derivs)]
    return abs(sum(terms)), max(abs(t) for t in terms)


def rec_residual(relation, shifted, values):
    """Recursion residual with shifted[k] = W^(N+k)."""
    return ode_residual(relation, shifted, values)


def derivatives(f, x, kmax):
    """f, f', ..., f^(kmax) at x by high-order finite differences (f analytic)."""
    return [mpmath.diff(f, x, k) for k in range(kmax + 1)]
