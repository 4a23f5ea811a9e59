import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laxcorr.connection import ode_w1
from laxcorr.exactalg import parse
from laxcorr.models import airy
from laxcorr.relation import Relation
from laxcorr.verify import (
    adjoint_section,
    airy_eval,
    cumulants_to_moments,
    gaussian_moment,
    gue_moment_oracle,
    gue_psi,
    gue_z_factor,
    h_norm,
    hermite_eval,
    hermite_poly,
    joint_resolvent_oracle,
    moments_to_cumulants,
    ode_residual,
    phi_eval,
    psi_eval,
    set_partitions,
    wn_numeric,
)


@pytest.mark.parametrize("x", [0, 1, 2.5, -3, mpmath.mpc(1, 1)])
def test_airy_wronskian(x):
    ai, aip, bi, bip = airy_eval(x, 128)
    with mpmath.workprec(128):
        assert abs(ai * bip - aip * bi - 1) < mpmath.mpf(10) ** -30


def test_airy_values():
    with mpmath.workprec(128):
        ai0 = airy_eval(0, 128)[0]
        ref = mpmath.mpf(3) ** (-mpmath.mpf(2) / 3) / mpmath.gamma(mpmath.mpf(2) / 3)
        assert abs(ai0 - ref) < 1e-30
        for x in (0.5, 1.3, -2):
            ai, aip, bi, bip = airy_eval(x, 128)
            assert abs(ai - mpmath.airyai(x)) < 1e-30
            assert abs(bi - mpmath.pi * mpmath.airybi(x)) < 1e-28
        _, _, bi, _ = airy_eval(1, 128, conventional=True)
        assert abs(bi - mpmath.airybi(1)) < 1e-30


def test_airy_closed_form_w1():
    # W1(x.e12) = Tr D M with M = Psi e12 Psi^-1 equals x Ai^2 - Ai'^2, and W1' = Ai^2
    from laxcorr.verify import airy_psi

    with mpmath.workprec(128):
        x = mpmath.mpf("1.3")
        M = adjoint_section(airy_psi(x), [[0, 1], [0, 0]])
        D = mpmath.matrix([[0, 1], [x, 0]])
        w = (D * M)[0, 0] + (D * M)[1, 1]
        ai, aip, _, _ = airy_eval(x)
        assert abs(w - (x * ai ** 2 - aip ** 2)) < 1e-30
        dw = mpmath.diff(lambda z: _airy_w1(z, mpmath.mp.prec), x)
        assert abs(dw - ai ** 2) < 1e-25


def _airy_w1(z, prec):
    ai, aip, _, _ = airy_eval(z, prec)
    return z * ai ** 2 - aip ** 2


def test_airy_budget():
    from laxcorr.errors import LaxCorrError

    with pytest.raises(LaxCorrError):
        airy_eval(40, 64, max_terms=10)


def test_hermite():
    assert hermite_poly(2) == [Fraction(-1), Fraction(0), Fraction(1)]
    assert hermite_eval(3, Fraction(2)) == 2
    with mpmath.workprec(80):
        f = lambda y: hermite_eval(1, y) * hermite_eval(2, y) * mpmath.exp(-y * y / 2)
        assert abs(mpmath.quad(f, [-mpmath.inf, mpmath.inf])) < 1e-15
        for N in range(4):
            g = lambda y: hermite_eval(N, y) ** 2 * mpmath.exp(-y * y / 2)
            assert abs(mpmath.quad(g, [-mpmath.inf, mpmath.inf]) / h_norm(N) - 1) < 1e-15


def test_phi_three_term():
    with mpmath.workprec(80):
        x = mpmath.mpc(0, 2)
        N = 1
        lhs = x * phi_eval(N, x)
        rhs = mpmath.sqrt(N) * phi_eval(N - 1, x) + mpmath.sqrt(N + 1) * phi_eval(N + 1, x)
        assert abs(lhs - rhs) < 1e-12
        # psi obeys the same recurrence
        lhs = x * psi_eval(N, x)
        rhs = mpmath.sqrt(N) * psi_eval(N - 1, x) + mpmath.sqrt(N + 1) * psi_eval(N + 1, x)
        assert abs(lhs - rhs) < 1e-15


def test_phi_decay_and_symmetry():
    with mpmath.workprec(80):
        for N in (0, 1, 2):
            x = mpmath.mpc(0, 50)
            v = phi_eval(N, x) * mpmath.sqrt(h_norm(N)) * mpmath.exp(-x * x / 4)
            lead = h_norm(N) / x ** (N + 1)
            assert abs(v / lead - 1) < 0.01
        z = mpmath.mpc(0.5, 1.5)
        assert abs(phi_eval(1, mpmath.conj(z)) - mpmath.conj(phi_eval(1, z))) < 1e-15
        with pytest.raises(ValueError):
            phi_eval(1, 0.5)
        val, err = phi_eval(2, z, error=True)
        assert err < 1e-10


def test_gue_psi_flat():
    # Psi' = D Psi with D = [[x/2, -sqrt N], [sqrt N, -x/2]] and det Psi constant
    with mpmath.workprec(80):
        x = mpmath.mpc(0.3, 1.2)
        for N in (1, 2):
            P = gue_psi(N, x)
            D = mpmath.matrix([[x / 2, -mpmath.sqrt(N)], [mpmath.sqrt(N), -x / 2]])
            dP = mpmath.matrix(2, 2)
            for i in range(2):
                for j in range(2):
                    dP[i, j] = mpmath.diff(lambda z: gue_psi(N, z, mpmath.mp.prec)[i, j], x)
            assert mpmath.mnorm(dP - D * P, 1) < 1e-10


def test_moment_oracle():
    assert [gue_moment_oracle(N, 0) for N in (1, 2, 3)] == [1, 2, 3]
    assert gue_moment_oracle(2, 2) == 4
    assert gue_moment_oracle(1, 4) == 3
    assert gue_moment_oracle(2, 3) == 0
    assert [gue_z_factor(N) for N in (1, 2, 3)] == [1, 2, 12]
    assert gaussian_moment(6) == 15 and gaussian_moment(3) == 0


def test_wick_vs_quadrature():
    # one-point density sum_k psi_k^2 reproduces the exact moments
    with mpmath.workprec(80):
        for N in (1, 2):
            for k in range(0, 7, 2):
                f = lambda y: y ** k * sum(psi_eval(j, y) ** 2 for j in range(N))
                q = mpmath.quad(f, [-mpmath.inf, 0, mpmath.inf])
                exact = gue_moment_oracle(N, k)
                assert abs(q - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-12


def test_joint_resolvent_vs_determinantal():
    with mpmath.workprec(80):
        x1, x2 = mpmath.mpc(0, 2), mpmath.mpc(3, 1)
        E = [[1, 0], [0, 0]]
        M1, M2 = adjoint_section(gue_psi(1, x1), E), adjoint_section(gue_psi(1, x2), E)
        w2 = wn_numeric([M1, M2], [x1, x2])
        hat, cum, err = joint_resolvent_oracle(1, [x1, x2])
        assert abs(w2 - cum[frozenset([0, 1])]) / abs(w2) < 1e-8
        assert hat[frozenset([0])] == cum[frozenset([0])]


def test_w3_near_diagonal():
    with mpmath.workprec(80):
        E = [[1, 0], [0, 0]]
        pts = [mpmath.mpc(0, 2), mpmath.mpc(1, 1), None]
        vals = []
        for eps in (1e-3, 1e-4, 1e-5):
            pts[2] = pts[1] + eps
            mats = [adjoint_section(gue_psi(1, p), E) for p in pts]
            vals.append(wn_numeric(mats, pts))
        assert abs(vals[1] - vals[2]) < 10 * abs(vals[0] - vals[1]) + 1e-8
        assert abs(vals[2]) < 1e3


def test_w3_cumulant_formula():
    v = ["a", "b", "c"]
    mom = {S: random.Random(len(S)).random() + len(S) for S in _subsets(v)}
    cum = moments_to_cumulants(mom, v)
    a, b, c = (mom[frozenset([s])] for s in v)
    ab, ac, bc = (mom[frozenset(p)] for p in (("a", "b"), ("a", "c"), ("b", "c")))
    abc = mom[frozenset(v)]
    assert abs(cum[frozenset(v)] - (abc - ab * c - ac * b - bc * a + 2 * a * b * c)) < 1e-12


def _subsets(v):
    from itertools import combinations

    return [frozenset(c) for r in range(1, len(v) + 1) for c in combinations(v, r)]


def test_set_partition_counts():
    assert [sum(1 for _ in set_partitions(range(n))) for n in range(6)] == [1, 1, 2, 5, 15, 52]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.lists(st.fractions(-3, 3, max_denominator=5), min_size=15, max_size=15))
def test_partition_involution(n, values):
    v = list(range(n))
    subsets = _subsets(v)
    cum = dict(zip(subsets, values))
    mom = cumulants_to_moments(cum, v)
    assert moments_to_cumulants(mom, v) == cum


def test_residual_negative_control():
    rel = ode_w1(airy())
    bad = Relation("ode-x", "x", (parse("3").num,) + rel.coefficients[1:], True)
    with mpmath.workprec(128):
        for x in (0.5, 1, 2):
            x = mpmath.mpf(x)
            ai, aip, _, _ = airy_eval(x)
            w = [x * ai ** 2 - aip ** 2, ai ** 2, 2 * ai * aip, 2 * aip ** 2 + 2 * x * ai ** 2]
            res, scale = ode_residual(rel, w, {"x": x})
            assert res / scale < 1e-10
            res, scale = ode_residual(bad, w, {"x": x})
            assert res / scale > 1e-2
