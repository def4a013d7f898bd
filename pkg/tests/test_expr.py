import pytest

from delpezzo.expr import (EquationShapeError, ParseError, eval_form,
                           eval_local, eval_predicate, parse_expression,
                           parse_predicate, parse_weierstrass)
from delpezzo.gf import FieldTower
from delpezzo.poly import bipoly_from_int_coeffs


def test_parse_equation_table2_row():
    K = FieldTower.prime(5)
    eq = parse_weierstrass("y^2 = x^3 + t^5*s", K)
    assert eq.a6 == bipoly_from_int_coeffs(K, 6, [(1, 5, 1)])
    for name in ("a1", "a2", "a3", "a4"):
        assert getattr(eq, name).is_zero()


def test_parse_equation_char2_row():
    K = FieldTower.prime(2)
    eq = parse_weierstrass("y^2 + t*x*y = x^3 + t^5*s", K)
    assert eq.a1 == bipoly_from_int_coeffs(K, 1, [(1, 1, 0)])
    assert eq.a6 == bipoly_from_int_coeffs(K, 6, [(1, 5, 1)])


def test_parse_equation_implicit_multiplication():
    K = FieldTower.prime(2)
    assert parse_weierstrass("y^2 + txy = x^3 + t^5 s", K) == \
        parse_weierstrass("y^2 + t*x*y = x^3 + t^5*s", K)


def test_inhomogeneous_term_error_names_term():
    K = FieldTower.prime(5)
    with pytest.raises(EquationShapeError,
                       match=r"inhomogeneous term t\^3 \(weighted degree 3 != 6\)"):
        parse_weierstrass("y^2 = x^3 + t^3", K)


def test_shape_violation_error():
    K = FieldTower.prime(5)
    with pytest.raises(EquationShapeError, match="not a Weierstrass sextic"):
        parse_weierstrass("y^2 = x^4 + t^2*s^2", K)
    with pytest.raises(EquationShapeError):
        parse_weierstrass("2*y^2 = x^3 + t^6", K)


def test_unknown_symbol_error_with_position():
    K = FieldTower.prime(5)
    with pytest.raises((ParseError, EquationShapeError)):
        parse_weierstrass("y^2 = x^3 + q^6", K)


def test_integer_coefficients_reduced_mod_p():
    K = FieldTower.prime(5)
    eq = parse_weierstrass("y^2 = x^3 + 7*t^6", K)
    assert eq.a6 == bipoly_from_int_coeffs(K, 6, [(2, 6, 0)])


def test_round_trip_print_parse():
    K = FieldTower.prime(2)
    texts = ["y^2 + t*x*y = x^3 + t^5*s",
             "y^2 + t^2*s*y = x^3 + t*s*x^2 + t^5*s",
             "y^2 = x^3 + t^2*s^2*x + t^5*s"]
    for text in texts:
        eq = parse_weierstrass(text, K)
        again = parse_weierstrass(eq.format(), K)
        assert again == eq


def test_parameters_via_environment():
    K = FieldTower.prime(2)
    env = {"a65": K.one}
    eq = parse_weierstrass("y^2 + t*x*y = x^3 + a65*t^5*s + t^4*s^2", K, env)
    assert eq.a6 == bipoly_from_int_coeffs(K, 6, [(1, 5, 1), (1, 4, 2)])


def test_eval_form():
    K = FieldTower.prime(3)
    ast = parse_expression("-t^9*s*(a65*t^2 + a64*t*s + s^2)")
    form = eval_form(ast, K, {"a65": K.zero, "a64": K.one})
    assert form == bipoly_from_int_coeffs(K, 12, [(-1, 10, 2), (-1, 9, 3)])


def test_predicates():
    K = FieldTower.prime(2)
    L = K.extend_canonical(2)
    g = L.gen()
    pred = parse_predicate("(a65 = 0 and a64 != 0) or (a65 = a64 and not (a64 in {0, 1}))")
    assert eval_predicate(pred, L, {"a65": L.zero, "a64": L.one})
    assert eval_predicate(pred, L, {"a65": g, "a64": g})
    assert not eval_predicate(pred, L, {"a65": L.one, "a64": L.one})
    pred2 = parse_predicate("a63^2 = a64 and a63^3 = a65 and a65 != 0")
    assert eval_predicate(pred2, L, {"a63": L.one, "a64": L.one, "a65": L.one})
    assert not eval_predicate(pred2, L, {"a63": L.zero, "a64": L.zero,
                                         "a65": L.zero})


def test_eval_local_tjurina_poly():
    K = FieldTower.prime(2)
    ast = parse_expression("z^2 + x^2*y + x*y^4")
    f = eval_local(ast, K, {}, ("x", "y", "z"))
    assert f.terms == {(0, 0, 2): 1, (2, 1, 0): 1, (1, 4, 0): 1}
