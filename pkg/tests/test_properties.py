from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import props
from dp6.expr import Group, Power, SumExpr, Sym, Term, expand, format_expr, parse_expr

NAMES = st.sampled_from(["H", "E", "xi", "L", "E1", "K"])
COEFS = st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(lambda c: c != 0)


def _factor(children):
    base = st.one_of(NAMES.map(Sym), children.map(Group))
    return st.one_of(base, st.builds(Power, base, st.integers(min_value=2, max_value=4)))


def _sums(depth):
    if depth == 0:
        factor = st.one_of(NAMES.map(Sym), st.builds(Power, NAMES.map(Sym), st.integers(2, 4)))
    else:
        factor = _factor(_sums(depth - 1))
    term = st.builds(Term, COEFS, st.lists(factor, min_size=0, max_size=3).map(tuple))
    return st.lists(term, min_size=1, max_size=3).map(lambda ts: SumExpr(tuple(ts)))


ASTS = _sums(2)


@settings(max_examples=300, derandomize=True, deadline=None)
@given(ASTS)
def test_parse_print_roundtrip(ast):
    assert parse_expr(format_expr(ast)) == ast


@settings(max_examples=200, derandomize=True, deadline=None)
@given(ASTS)
def test_printer_preserves_value(ast):
    text = format_expr(ast)
    assert expand(parse_expr(text)) == expand(ast)
    assert format_expr(parse_expr(text)) == text


@pytest.mark.parametrize("name", list(props.SUITES))
def test_property_suite(name):
    assert props.SUITES[name]() >= 200
