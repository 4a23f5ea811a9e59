import random
from fractions import Fraction

import pytest

from laxcorr import connection as C
from laxcorr.errors import AlgebraError, IncompatibleSystemError
from laxcorr.exactalg import MatR, parse
from laxcorr.exactalg.linalg import recombine_is_zero
from laxcorr.models import airy, hermite
from laxcorr.relation import proportional


def _certified(rel, seq, algebra):
    return recombine_is_zero(rel.coefficients, [C.pairing_vector(M, algebra) for M in seq])


def test_airy_sequence(golden):
    seq = C.derived_sequence(airy(), 3)
    assert seq == [MatR(m) for m in golden["airy_sequence"]]


def test_hermite_sequence(golden):
    seq = C.derived_sequence(hermite(), 4)
    assert seq == [MatR(m) for m in golden["hermite_sequence"]]


def test_airy_and_hermite_relations(golden):
    rel = C.ode_w1(airy())
    assert rel.order == 3 and rel.certificate
    assert rel.coefficient_strings() == golden["airy_w1"]
    assert _certified(rel, C.derived_sequence(airy(), 3), "sl")
    rel = C.ode_w1(hermite())
    assert rel.order == 4
    assert proportional(rel.coefficients, golden["hermite_w1"])
    assert _certified(rel, C.derived_sequence(hermite(), 4), "gl")


def test_sl_tag_requires_trace_zero():
    with pytest.raises(ValueError):
        C.Connection(MatR([["x", "1"], ["0", "0"]]), "sl")
    with pytest.raises(ValueError):
        C.Connection(MatR([["0"]]), "so")


def test_trace_telescoping_detects_violation():
    seq = C.derived_sequence(hermite(), 3)
    C.check_trace_telescoping(seq)
    with pytest.raises(AlgebraError):
        C.check_trace_telescoping([seq[0], seq[0]])


def _random_constant_matrix(rng, r):
    while True:
        G = MatR([[str(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(r)] for _ in range(r)])
        if not G.det().is_zero():
            return G


def test_gauge_invariance():
    rng = random.Random(7)
    base = {"airy": C.ode_w1(airy()), "hermite": C.ode_w1(hermite())}
    conns = {"airy": airy(), "hermite": hermite()}
    for k in range(20):
        name = "airy" if k % 2 else "hermite"
        conn = conns[name]
        G = _random_constant_matrix(rng, 2)
        D = G * conn.D * G.inverse()
        rel = C.ode_w1(C.Connection(D, conn.algebra, conn.x, conn.params))
        assert rel.coefficients == base[name].coefficients


def test_ode_interp_agrees():
    exact = C.ode_w1(hermite())
    rel = C.ode_w1(hermite(), interp=(["N"], 3))
    assert rel.coefficients == exact.coefficients


def test_rank_one():
    rel = C.ode_w1(C.Connection(MatR([["x^2"]]), "gl"))
    assert rel.order == 1
    assert rel.coefficient_strings() == ["-2", "x"]


def test_discrete_lax_and_recursion():
    D = MatR([["x", "-1"], ["N", "0"]])
    R = MatR([["0", "1"], ["-N", "x"]])
    ds = C.DiscreteSystem(D, R)
    assert C.check_discrete_lax(ds).is_zero()
    rel = C.rec_w1(ds)
    assert rel.kind == "rec-N" and rel.certificate
    assert _certified(rel, C.discrete_sequence(ds, rel.order), "gl")
    fixed = C.rec_w1(ds, N_value=2)
    assert proportional(fixed.coefficients, [c.subs({"N": 2}) for c in rel.coefficients])


def test_incompatible_discrete_system():
    ds = C.DiscreteSystem(MatR([["x", "-1"], ["N", "0"]]), MatR([["0", "1"], ["-N", "x + 1"]]))
    assert not C.check_discrete_lax(ds).is_zero()
    with pytest.raises(IncompatibleSystemError):
        C.rec_w1(ds)


def test_time_flow_sequence_telescopes():
    from laxcorr.minimal import q2_time_system

    ts = q2_time_system([0, 1], reduced=True)
    seq = C.time_sequence(ts, 0, 3)
    C.check_trace_telescoping(seq, derive=lambda a: ts.derive(a, "t"))
    rel = C.time_ode_w1(ts)
    assert rel.order == 3
    assert _certified(rel, seq, "sl")


def test_pairing_vector_sl():
    M = MatR([["a", "b"], ["c", "d"]])
    assert C.pairing_vector(M, "sl") == [parse("b"), parse("c"), parse("a - d")]
    assert len(C.pairing_vector(M, "gl")) == 4
