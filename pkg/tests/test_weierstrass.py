import random

import pytest

from delpezzo.gf import FieldTower
from delpezzo.poly import BiPoly, bipoly_from_int_coeffs
from delpezzo.weierstrass import (FormMismatchError, Substitution,
                                  WeierstrassEq, apply_substitution,
                                  compute_invariants, fibration_kind)


def mk(p, coeffs):
    K = FieldTower.prime(p)
    deg = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}
    return WeierstrassEq.from_coeff_map(
        K, {n: bipoly_from_int_coeffs(K, deg[n], v) for n, v in coeffs.items()})


def B(K, deg, pairs):
    return bipoly_from_int_coeffs(K, deg, pairs)


def test_invariants_table2_x22():
    eq = mk(5, {"a6": [(1, 5, 1)]})
    inv = compute_invariants(eq)
    assert inv.delta == B(eq.K, 12, [(-2, 10, 2)])
    num, den = inv.j_reduced()
    assert num.is_zero()


def test_invariants_table3_6c():
    eq = mk(3, {"a4": [(1, 4, 0)], "a6": [(1, 4, 2)]})
    inv = compute_invariants(eq)
    assert inv.delta == B(eq.K, 12, [(-1, 12, 0)])
    assert inv.j_reduced()[0].is_zero()


def test_invariants_table6_e84():
    eq = mk(2, {"a1": [(1, 1, 0)], "a6": [(1, 5, 1)]})
    inv = compute_invariants(eq)
    assert inv.delta == B(eq.K, 12, [(1, 11, 1)])
    num, den = inv.j_reduced()
    assert num == B(eq.K, 1, [(1, 1, 0)]) and den == B(eq.K, 1, [(1, 0, 1)])


def test_degree_constraints_enforced():
    K = FieldTower.prime(5)
    with pytest.raises(ValueError):
        WeierstrassEq.from_coeff_map(K, {"a6": B(K, 5, [(1, 5, 0)])})


def test_fibration_kinds():
    assert fibration_kind(mk(2, {"a6": [(1, 5, 1)]})) == "quasi-elliptic"
    assert fibration_kind(mk(5, {"a6": [(1, 5, 1)]})) == "elliptic"
    assert fibration_kind(mk(7, {})) == "invalid"


def test_substitution_identity():
    eq = mk(2, {"a1": [(1, 1, 0)], "a6": [(1, 5, 1)]})
    sub = Substitution(eq.K, "W2", lam=eq.K.one)
    assert apply_substitution(eq, sub) == eq


def test_substitution_w2_example():
    # direct expansion of (y+g)^2 + tx(y+g): a4' = a4 + a1 g, a6' = a6 + g^2
    eq = mk(2, {"a1": [(1, 1, 0)], "a6": [(1, 5, 1)]})
    K = eq.K
    sub = Substitution(K, "W2", lam=K.one, g=B(K, 3, [(1, 3, 0)]))
    out = apply_substitution(eq, sub)
    assert out.a4 == B(K, 4, [(1, 4, 0)])
    assert out.a6 == B(K, 6, [(1, 5, 1), (1, 6, 0)])


def test_substitution_6c_normalization():
    # x -> x + l t^2 with l^3 + l + c = 0 turns the Type 6C shape into
    # the Table 3 normal form y^2 = x^3 + t^4 x + t^4 s^2
    K = FieldTower.prime(3)
    c = 1
    eq = WeierstrassEq.from_coeff_map(
        K, {"a4": B(K, 4, [(1, 4, 0)]),
            "a6": B(K, 6, [(1, 4, 2), (c, 6, 0)])})
    lam = K.one                       # l = 1 solves l^3 + l + 1 = 0 mod 3
    assert K.add(K.add(K.pow(lam, 3), lam), K.from_int(c)) == K.zero
    sub = Substitution(K, "W3", lam=K.one,
                       f=BiPoly.monomial(K, lam, 2, 0))
    out = apply_substitution(eq, sub)
    want = WeierstrassEq.from_coeff_map(
        K, {"a4": B(K, 4, [(1, 4, 0)]), "a6": B(K, 6, [(1, 4, 2)])})
    assert out == want


def test_substitution_form_mismatch():
    eq = mk(2, {"a3": [(1, 3, 0)]})      # W2' shape (a1 = 0, a3 != 0)
    with pytest.raises(FormMismatchError):
        apply_substitution(eq, Substitution(eq.K, "W2", lam=eq.K.one))
    eq5 = mk(5, {"a4": [(1, 4, 0)]})
    with pytest.raises(FormMismatchError):
        apply_substitution(eq5, Substitution(eq5.K, "W3", lam=eq5.K.one))


def _random_form(K, d, rng):
    return BiPoly(K, d, [K.random(rng) for _ in range(d + 1)])


def _random_eq(K, kinds, rng):
    deg = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}
    names = {"W0": ("a4", "a6"), "W3": ("a2", "a4", "a6"),
             "W2": ("a1", "a2", "a4", "a6"), "W2'": ("a2", "a3", "a4", "a6")}
    coeffs = {n: _random_form(K, deg[n], rng) for n in names[kinds]}
    return WeierstrassEq.from_coeff_map(K, coeffs)


def _random_sub(K, kind, rng):
    lam = K.zero
    while lam == K.zero:
        lam = K.random(rng)
    args = {}
    degs = {"W0": {}, "W3": {"f": 2}, "W2": {"f": 1, "g": 3},
            "W2'": {"f": 2, "g": 1, "h": 3}}[kind]
    for name, d in degs.items():
        args[name] = _random_form(K, d, rng)
    return Substitution(K, kind, lam=lam, **args)


def test_delta_scaling_and_j_invariance_sampled():
    rng = random.Random(515)
    cases = {2: ("W2", "W2'"), 3: ("W3",), 5: ("W0",), 7: ("W0",)}
    for p, kinds in cases.items():
        K = FieldTower.prime(p)
        for _ in range(30):
            kind = kinds[rng.randrange(len(kinds))]
            eq = _random_eq(K, kind, rng)
            sub = _random_sub(K, kind, rng)
            out = apply_substitution(eq, sub)
            i1, i2 = compute_invariants(eq), compute_invariants(out)
            scale = K.pow(K.inv(sub.lam), 12)
            assert i2.delta == i1.delta.scale(scale)
            if not i1.delta.is_zero():
                lhs = i1.j_num.mul(i2.j_den)
                rhs = i2.j_num.mul(i1.j_den)
                assert lhs == rhs


def test_moebius_substitution_swaps_places():
    K = FieldTower.prime(2)
    eq = mk(2, {"a1": [(1, 1, 0)], "a6": [(1, 5, 1)]})
    swap = Substitution(K, "moebius", matrix=(K.zero, K.one, K.one, K.zero))
    out = apply_substitution(eq, swap)
    assert out.a1 == B(K, 1, [(1, 0, 1)])
    assert out.a6 == B(K, 6, [(1, 1, 5)])
    inv, inv2 = compute_invariants(eq), compute_invariants(out)
    assert inv2.delta == inv.delta.subs_linear((K.zero, K.one, K.one, K.zero))
