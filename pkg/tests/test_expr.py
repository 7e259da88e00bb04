from fractions import Fraction

import pytest

from dp6.expr import CycleExpr, ExprSyntaxError, Group, Power, SumExpr, Sym, Term, expand, format_expr, parse_expr


def test_power_of_group():
    ast = parse_expr("(3*H - E)^3")
    (term,) = ast.terms
    (f,) = term.factors
    assert isinstance(f, Power) and f.exp == 3 and isinstance(f.base, Group)


def test_sum():
    ast = parse_expr("2*xi + L")
    assert len(ast.terms) == 2
    assert ast.terms[0].coef == 2 and ast.terms[0].factors == (Sym("xi"),)


@pytest.mark.parametrize("src,pos", [("H^", 2), ("(H", 2), ("H +", 3), ("2*", 2), ("H^x", 2)])
def test_syntax_errors_report_position(src, pos):
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expr(src)
    assert ei.value.pos == pos
    assert f"position {pos}" in str(ei.value)


def test_leading_minus_and_rational_coefficients():
    assert parse_expr("-H").terms[0].coef == -1
    assert parse_expr("3/2*H^2").terms[0].coef == Fraction(3, 2)


def test_canonical_printer():
    assert format_expr(parse_expr("(3*H-E)^3")) == "(3*H - E)^3"
    assert format_expr(parse_expr("-2*a*b + 1")) == "-2*a*b + 1"


def test_expand():
    p = expand("(a + b)^2")
    assert p == CycleExpr.var("a") ** 2 + CycleExpr.var("a") * CycleExpr.var("b") * 2 + CycleExpr.var("b") ** 2
    assert p.degrees() == {2}
    q = expand("H - H")
    assert q.is_zero()


def test_expand_resolve():
    K = CycleExpr.var("H") * -4
    p = expand("-K", lambda n: K if n == "K" else CycleExpr.var(n))
    assert p == CycleExpr.var("H") * 4


def test_cycle_to_ast_roundtrip():
    p = expand("(2*x - 3/4*y)^3 + x*y")
    assert expand(p.to_ast()) == p
    assert expand(str(p)) == p
