import pytest

from laxcorr import ensembles as E
from laxcorr.connection import check_discrete_lax, derived_sequence, discrete_sequence, pairing_vector
from laxcorr.errors import IncompatibleSystemError, ModelError
from laxcorr.exactalg import MatR, RatFunc, parse
from laxcorr.exactalg.linalg import recombine_is_zero
from laxcorr.relation import proportional
from laxcorr.verify import gue_moment_oracle


@pytest.fixture(scope="module")
def gue():
    return E.gue_system()


@pytest.fixture(scope="module")
def rels(gue):
    return E.derive_all_w1(gue)


def test_gue_matrices(gue):
    assert gue.D == MatR([["x/2", "-1"], ["N", "-x/2"]])
    assert gue.R == MatR([["0", "1"], ["-N", "x"]])
    assert check_discrete_lax(gue.discrete).is_zero()


def test_gue_relations(gue, rels, golden):
    assert proportional(rels["ode"].coefficients, golden["gue_ode"])
    assert proportional(rels["rec"].coefficients, golden["gue_rec"])
    seq = derived_sequence(gue.connection, rels["ode"].order)
    assert recombine_is_zero(rels["ode"].coefficients, [pairing_vector(M) for M in seq])
    seq = discrete_sequence(gue.discrete, rels["rec"].order)
    assert recombine_is_zero(rels["rec"].coefficients, [pairing_vector(M) for M in seq])


def test_normalized_gauge_agrees(rels):
    # gamma_N = g, so N = g^2 maps the normalized-gauge ODE onto the balanced one
    norm = E.normalized_gue_ode("g")
    mapped = [RatFunc.coerce(c).subs({"N": parse("g^2")}).num for c in rels["ode"].coefficients]
    assert proportional(norm.coefficients, mapped)


def test_moment_recursion(rels, golden):
    mrec = E.moment_recursion_from_ode(rels["ode"], E.gue_potential())
    want = {int(k): parse(v) for k, v in golden["gue_moment_recursion"].items()}
    assert {s: v for s, v in mrec.c.items()} == want
    t = mrec.moments(6)
    assert t[0] == parse("N") and t[2] == parse("N^2")
    assert t[1].is_zero() and t[3].is_zero()
    for N in (1, 2, 3):
        assert t[4].subs({"N": N}).constant_value() == gue_moment_oracle(N, 4)


def test_cross_N_identity(rels):
    ident = E.moment_recursion_in_N(rels["rec"])
    mrec = E.moment_recursion_from_ode(rels["ode"], E.gue_potential())
    table = {N: mrec.moments(12, {"N": N}) for N in range(1, 8)}
    for N in range(1, 4):
        for K in range(0, 9):
            assert ident.residual(lambda n, m: table[n][m].constant_value(), N, K) == 0


def test_potential_validation():
    with pytest.raises(ModelError):
        E.Potential(RatFunc.const(0))
    with pytest.raises(ModelError):
        E.JacobiData(RatFunc.const(0), RatFunc.const(0))
    with pytest.raises(ModelError):
        E.Potential(parse("1/x")).coefficients()


def test_incompatible_jacobi_data():
    # quartic potential with GUE recursion coefficients violates the discrete Lax equation
    with pytest.raises(IncompatibleSystemError):
        E.ensemble_system(E.Potential(parse("x^3")), E.jacobi_gue())


def test_w_window_gue():
    w = E.w_window(E.gue_potential(), E.jacobi_gue())
    assert w == MatR([["1", "0"], ["0", "1"]])


def test_two_matrix_wrapper():
    out = E.two_mm_derive(MatR([["x/2", "-1"], ["N", "-x/2"]]), MatR([["0", "1"], ["-N", "x"]]))
    assert out["ode"].order == 3 and out["rec"].order == 3
    with pytest.raises(IncompatibleSystemError):
        E.two_mm_derive(MatR([["x", "-1"], ["N", "-x"]]), MatR([["0", "1"], ["-N", "x"]]))


def test_w2_relations_fixed_N(gue):
    out = E.derive_w2_wn(gue, 2, path="formal", N_value=1)
    assert out["ode"].order <= 4
    assert out["rec"].extra["N"] == 1
