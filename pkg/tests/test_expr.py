from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcartan.expr import (
    Atom,
    BinOp,
    ExprSyntaxError,
    Neg,
    Num,
    Power,
    evaluate,
    parse,
    parse_element,
    parse_scalar,
    render,
)
from qcartan.qcl import clifford
from qcartan.qext import exterior
from qcartan.scalar import SYMBOLIC, PointField

q, c = SYMBOLIC.q, SYMBOLIC.c
cl = clifford()
ext = exterior()


def trees():
    leaves = st.one_of(
        st.integers(0, 9).map(Num),
        st.sampled_from(["q", "c", "v2", "v0", "vm2", "gamma"]).map(Atom),
    )

    def extend(children):
        exps = st.one_of(
            st.integers(-3, 3).map(Fraction),
            st.tuples(st.integers(-3, 3), st.integers(1, 4)).map(lambda t: Fraction(*t)),
        )
        return st.one_of(
            children.map(Neg),
            st.tuples(st.sampled_from("+-*/"), children, children).map(lambda t: BinOp(*t)),
            st.tuples(children, exps).map(lambda t: Power(*t)),
        )

    return st.recursive(leaves, extend, max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(trees())
def test_parse_render_round_trip(tree):
    assert parse(render(tree)) == tree


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 7)), min_size=1, max_size=4))
def test_element_render_round_trip(terms):
    x = cl.zero()
    for k, j in terms:
        x = x + cl.basis_element(j) * (q**k * (1 + c))
    assert parse_element(str(x), cl) == x


def test_precedence():
    assert parse("1 + 2*q") == BinOp("+", Num(1), BinOp("*", Num(2), Atom("q")))
    assert parse("-q^2") == Neg(Power(Atom("q"), Fraction(2)))
    assert parse("q^(1/2)") == Power(Atom("q"), Fraction(1, 2))
    assert parse("q^-2") == Power(Atom("q"), Fraction(-2))
    assert parse("1-2-3") == BinOp("-", BinOp("-", Num(1), Num(2)), Num(3))
    assert render(parse("1-(2-3)")) == "1 - (2 - 3)"


def test_scalars():
    assert parse_scalar("(1+q^2)/(4*c*q)") == (1 + q**2) / (4 * c * q)
    assert parse_scalar("q^(1/2)") * parse_scalar("q^(1/2)") == q
    assert parse_scalar("7/5", PointField(2, 1)) == Fraction(7, 5)
    assert parse_scalar("q*c", PointField(2, 3)) == 6


def test_elements():
    v2, v0, vm2 = cl.gens()
    assert parse_element("v2*v0", cl) == v2 * v0
    assert parse_element("(1-q^4)/q^3 * v2*vm2", ext) == (1 - q**4) / q**3 * (ext.gen(0) * ext.gen(2))
    assert parse_element("vm2*v2", cl) == -(v2 * vm2) + cl.one() * ((q**2 + 1) / q**2 * c)
    assert parse_element("gamma^2", cl) == cl.one() * ((1 + q**2) / (4 * c * q))
    assert parse_element("1", cl) == cl.one()


@pytest.mark.parametrize(
    "text, position",
    [("v2**", 3), ("", 0), ("(q", 2), ("q + ", 4), ("v2 $ v0", 3), ("q^x", 2), ("q^(1/0)", 5), ("2 3", 2)],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ExprSyntaxError) as err:
        parse(text)
    assert err.value.position == position
    assert f"position {position}" in str(err.value)
    assert isinstance(err.value, SyntaxError)


@pytest.mark.parametrize(
    "text", ["q / v2", "v2^-1", "c^(1/2)", "v2^(1/2)"]
)
def test_semantic_errors(text):
    with pytest.raises(ValueError):
        parse_element(text, cl)


def test_gamma_needs_clifford():
    with pytest.raises(ValueError):
        parse_element("gamma", ext)
    with pytest.raises(ValueError):
        evaluate(parse("v2"))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/(q-q)")
