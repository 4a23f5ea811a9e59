from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laxcorr.errors import AlgebraError, ParseError, ResourceLimitError, UnderivableSymbolError
from laxcorr.exactalg import (
    DiffRing,
    Elimination,
    MatR,
    MPoly,
    RatFunc,
    clear_denominators,
    linear_dependence,
    linear_dependence_interp,
    normalize_vector,
    parse,
    sort_vars,
)
from laxcorr.exactalg.linalg import recombine_is_zero

NAMES = ["x", "y", "N"]


@st.composite
def polys(draw, max_terms=4):
    out = RatFunc.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
        term = RatFunc.const(c)
        for v in NAMES:
            term = term * RatFunc.var(v) ** draw(st.integers(0, 2))
        out = out + term
    return out


@st.composite
def ratfuncs(draw):
    den = draw(polys())
    if den.is_zero():
        den = RatFunc.const(1)
    return draw(polys()) / den


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RatFunc.const(0)
    if not a.is_zero():
        assert a * a.inverse() == RatFunc.const(1)


@settings(max_examples=40, deadline=None)
@given(ratfuncs())
def test_parse_roundtrip(a):
    assert parse(str(a)) == a


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(), min_size=1, max_size=4))
def test_normalize_idempotent(ps):
    vec = [p.num for p in ps]
    if all(p.is_zero() for p in vec):
        return
    once = normalize_vector(vec)
    assert normalize_vector(once) == once


@settings(max_examples=30, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_derivative_product_rule(a, b):
    lhs = (a * b).derivative("x")
    assert lhs == a.derivative("x") * b + a * b.derivative("x")


def test_canonical_form():
    assert parse("(x^2 - 1)/(x - 1)") == parse("x + 1")
    r = parse("2/(4*x)")
    assert r.den.leading_coefficient() == 1
    assert parse("-x/(-y)") == parse("x/y")


def test_clear_denominators_sign():
    out = clear_denominators([parse("1/2"), parse("-1/2")])
    assert [str(p) for p in out] == ["-1", "1"]
    out = clear_denominators([parse("x/2"), parse("1/(3*x)")])
    assert [str(p) for p in out] == ["3*x^2", "2"]


@pytest.mark.parametrize("text", ["x+", "(x", "x^y", "2**3", "x$", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_division_by_zero():
    with pytest.raises(AlgebraError):
        parse("1/0")
    with pytest.raises(AlgebraError):
        parse("x - x").inverse()


def test_variable_order():
    assert sort_vars(["b", "x2", "a", "x", "x10", "x1"]) == ("x", "x1", "x2", "x10", "a", "b")


def test_substitution_and_evaluate():
    p = parse("x^2*N + 1/N")
    assert p.subs({"N": 2}) == parse("2*x^2 + 1/2")
    assert p.evaluate({"x": Fraction(1, 2), "N": 2}, Fraction(0)) == Fraction(1)
    q = MPoly.var("x") * 3 + 1
    assert q.evaluate({"x": 2}) == 7


def test_matrix_algebra():
    A = MatR([["x", "1"], ["N", "0"]])
    assert (A * A.inverse()) == MatR.identity(2)
    assert A.det() == parse("-N")
    assert A.commutator(A).is_zero()
    assert A.charpoly("y") == parse("y^2 - x*y - N")
    assert A.trace() == parse("x")
    with pytest.raises(AlgebraError):
        MatR([["1", "1"], ["1", "1"]]).inverse()


def test_elimination_dependency():
    v = [[parse("1"), parse("x")], [parse("x"), parse("x^2")]]
    res = linear_dependence(v)
    assert res.order == 1
    assert [str(c) for c in res.coefficients] == ["-x", "1"]
    assert recombine_is_zero(res.coefficients, v)
    assert linear_dependence([[parse("1"), parse("0")], [parse("0"), parse("1")]]) is None


def test_elimination_rational_entries():
    items = [[parse("1/x"), parse("1")], [parse("1"), parse("x")], [parse("y"), parse("0")]]
    res = linear_dependence(items)
    assert res.certificate
    assert recombine_is_zero(res.coefficients, items)


def test_elimination_pivot_independent():
    items = [[parse("1"), parse("x"), parse("y")], [parse("x"), parse("1"), parse("0")],
             [parse("x + y"), parse("x*y + 1"), parse("y^2")]]
    a = linear_dependence(items)
    b = Elimination(forced_pivots=[2, 1, 0])
    for it in items:
        out = b.add(it)
    assert out is not None and out.coefficients == a.coefficients


def test_interp_matches_exact():
    items = [[parse("1"), parse("x*y")], [parse("x"), parse("y")], [parse("y^2"), parse("x + 1")]]
    exact = linear_dependence(items)
    interp = linear_dependence_interp(items, ["y"], 6)
    assert interp.coefficients == exact.coefficients


def test_memory_cap(monkeypatch):
    monkeypatch.setenv("LAXCORR_MAX_MB", "0.000001")
    items = [[parse(f"x^{k} + y^{k}"), parse(f"x^{k+1}"), parse("1")] for k in range(4)]
    with pytest.raises(ResourceLimitError):
        linear_dependence(items)


def test_diffring_jets_and_rules():
    r = DiffRing(base=("x",), jets={"U": "t"})
    assert r.derive(parse("U_0^2*x + t"), "t") == parse("2*x*U_0*U_1 + 1")
    r2 = r.with_rules("t", {"U_1": "U_0"})
    assert r2.derive(parse("U_1"), "t") == parse("U_0")
    with pytest.raises(UnderivableSymbolError):
        r.derive(parse("z"), "t")
    M = MatR([["U_0", "x"], ["t", "1"]])
    assert r.derive(M, "t") == MatR([["U_1", "0"], ["1", "0"]])
