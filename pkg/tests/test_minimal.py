from fractions import Fraction

import pytest

from laxcorr import minimal as mm
from laxcorr.connection import pairing_vector, time_sequence
from laxcorr.exactalg import MatR, parse
from laxcorr.exactalg.linalg import recombine_is_zero
from laxcorr.relation import proportional


def test_gelfand_dikii(golden):
    assert list(mm.gd_polynomials(3)) == [parse(s) for s in golden["gd"]]


@pytest.mark.parametrize("n", range(4))
def test_gd_compatibility(n):
    assert mm.gd_compatibility_check(n).is_zero()


def test_gd_compatibility_negative_control():
    wrong = mm.gd_polynomials(2)[2] + parse("U_0")
    assert not mm.gd_compatibility_check(1, R_override=wrong).is_zero()


def test_weight_homogeneity():
    for n, R in enumerate(mm.gd_polynomials(4)):
        for mon, _ in R.num.terms():
            w = sum(e * (2 + int(v.split("_")[1])) for v, e in zip(R.num.vars, mon))
            assert w == 2 * n


def test_string_equation():
    assert mm.string_equation([1]) == parse("t - 2*U_0")
    assert mm.string_equation([0, 1]) == parse("3*U_0^2 - 1/2*U_2 + t")
    sub, rules = mm.string_rules([1])
    assert sub == parse("t/2") and rules == {}


@pytest.mark.parametrize("key,tvec", [("airy_flow", [1]), ("p1", [0, 1])])
def test_minimal_time_odes(golden, key, tvec):
    rel = mm.time_ode_w1_q2(tvec, reduced=True)
    assert proportional(rel.coefficients, golden[key])
    gen = mm.time_ode_w1_generic(tvec, reduced=True)
    assert proportional(gen.coefficients, golden[key])


@pytest.mark.parametrize("tvec", [[1], [0, 1], [1, 0, 1], [0, 0, 1]])
@pytest.mark.parametrize("reduced", [True, False])
def test_closed_form_vs_engine(tvec, reduced):
    a = mm.time_ode_w1_q2(tvec, reduced)
    b = mm.time_ode_w1_generic(tvec, reduced)
    assert a.order == b.order == 3
    assert proportional(a.coefficients, b.coefficients)
    seq = time_sequence(mm.q2_time_system(tvec, reduced), 0, 3, lax_first=not reduced)
    assert recombine_is_zero(b.coefficients, [pairing_vector(M, "sl") for M in seq])


def test_painleve_invariant():
    assert mm.p1_invariant_check()
    assert not mm.p1_invariant_check(Fraction(1, 4))
    assert mm.p1_charpoly() == parse("y^2 - x^3 - x*t + U_0^3 + t*U_0 - 1/4*U_1^2")


def test_ising_lax_residual():
    res = mm.ising_lax_residual()
    h = parse("hbar")
    for i in range(3):
        for j in range(3):
            if (i, j) != (2, 0):
                assert res[i, j].is_zero()
    assert res[2, 0] == mm.dot(mm.ising_string_equation()) * h


def test_ising_table():
    rel = mm.ising_time_ode("lax")
    assert rel.order == 8 and rel.extra["form"] == "lax"
    assert proportional(rel.coefficients, mm.ising_reference_table())


def test_lax_R_shape():
    assert mm.lax_R() == MatR([["0", "1"], ["x + 2*U_0", "0"]])
    assert mm.lax_D(0) == MatR([["0", "1"], ["x + 2*U_0", "0"]])
