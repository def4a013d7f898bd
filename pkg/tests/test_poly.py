import random

import pytest

from delpezzo.gf import FieldTower
from delpezzo.poly import (BiPoly, LocalPoly, PositiveDimensionalError,
                           bipoly_from_int_coeffs, eliminate, resultant,
                           _sylvester_resultant, _upoly_trim)


def V3(K, spec, vars=("u", "v", "w")):
    terms = {}
    for c, e in spec:
        terms[e] = K.from_int(c)
    return LocalPoly(K, vars, terms)


def test_factor_binary_form_char3():
    K = FieldTower.prime(3)
    F = bipoly_from_int_coeffs(K, 12, [(-1, 9, 3)])   # -t^9 s^3
    unit, facs = F.factor()
    assert unit == K.from_int(-1)
    assert [(f.format(), m) for f, m in facs] == [("t", 9), ("s", 3)]


def test_factor_binary_form_char5_with_splitting():
    K = FieldTower.prime(5)
    F = bipoly_from_int_coeffs(K, 12, [(1, 12, 0), (-2, 10, 2)])
    unit, facs = F.factor()
    assert [(f.format(), m) for f, m in facs] == [("t", 10), ("t^2 + 3*s^2", 1)]
    assert sum(f.degree * m for f, m in facs) == 12
    # the quadratic place splits into two conjugate linear places over GF(25)
    quad = facs[1][0]
    from delpezzo.gf import splitting_roots
    L, roots = splitting_roots(K, quad.dehomogenize_s())
    assert L.abs_degree == 2 and len(roots) == 2
    assert roots[0] != roots[1] and L.frobenius(roots[0]) == roots[1]


def test_factor_binary_reconstruction_random():
    rng = random.Random(99)
    for p in (2, 3, 5):
        K = FieldTower.prime(p)
        for _ in range(40):
            d = rng.randrange(1, 9)
            coeffs = [K.random(rng) for _ in range(d + 1)]
            F = BiPoly(K, d, coeffs)
            if F.is_zero():
                continue
            unit, facs = F.factor()
            prod = BiPoly.const(K, unit)
            for f, m in facs:
                prod = prod.mul(f.pow(m))
            assert prod == F
            assert sum(f.degree * m for f, m in facs) == F.degree


def test_factor_zero_form_errors():
    K = FieldTower.prime(2)
    with pytest.raises(ZeroDivisionError):
        BiPoly.zero(K).factor()


def test_eliminate_trivial_origin():
    K = FieldTower.prime(5)
    vs = ("u", "v", "w")
    sys_ = [LocalPoly.var(K, vs, n) for n in vs]
    L, pts = eliminate(sys_)
    assert L is K and pts == [(0, 0, 0)]


def test_eliminate_jacobian_system_char2():
    # Jacobian-plus-equation system of Table 6 row E8^4 in chart s = 1
    K = FieldTower.prime(2)
    vs = ("t", "x", "y")
    f1 = V3(K, [(1, (0, 1, 1)), (1, (4, 0, 0))], vs)          # xy + t^4
    f2 = V3(K, [(1, (1, 0, 1)), (1, (0, 2, 0))], vs)          # ty + x^2
    f3 = V3(K, [(1, (1, 1, 0))], vs)                          # tx
    f4 = V3(K, [(1, (0, 0, 2)), (1, (1, 1, 1)),
                (1, (0, 3, 0)), (1, (5, 0, 0))], vs)          # y^2+txy+x^3+t^5
    L, pts = eliminate([f1, f2, f3, f4])
    assert pts == [(0, 0, 0)]


def test_eliminate_positive_dimensional():
    K = FieldTower.prime(5)
    vs = ("u", "v")
    uv = LocalPoly.var(K, vs, "u").mul(LocalPoly.var(K, vs, "v"))
    with pytest.raises(PositiveDimensionalError):
        eliminate([uv])


def test_eliminate_matches_brute_force_over_gf4():
    K = FieldTower.prime(2)
    vs = ("u", "v", "w")
    systems = [
        # u^2+u+1 = 0 (conjugate pair), v = u, w = 0
        [V3(K, [(1, (2, 0, 0)), (1, (1, 0, 0)), (1, (0, 0, 0))], vs),
         V3(K, [(1, (0, 1, 0)), (1, (1, 0, 0))], vs),
         V3(K, [(1, (0, 0, 1))], vs)],
        # w^2 = w, v^2 = v, u + vw = 0  (solutions over GF(2))
        [V3(K, [(1, (0, 0, 2)), (1, (0, 0, 1))], vs),
         V3(K, [(1, (0, 2, 0)), (1, (0, 1, 0))], vs),
         V3(K, [(1, (1, 0, 0)), (1, (0, 1, 1))], vs)],
    ]
    L4 = K.extend_canonical(2)
    for sys_ in systems:
        L, pts = eliminate(sys_)
        brute = []
        for a in L4.elements():
            for b in L4.elements():
                for c in L4.elements():
                    if all(p.embed(L4).evaluate((a, b, c)) == L4.zero
                           for p in sys_):
                        brute.append((a, b, c))
        got = {tuple(L4.embed(x, L) for x in pt) for pt in pts}
        assert got == set(brute)


def test_eliminate_points_satisfy_system():
    K = FieldTower.prime(3)
    vs = ("u", "v", "w")
    f = V3(K, [(1, (2, 0, 0)), (-1, (0, 1, 0))], vs)    # u^2 - v
    g = V3(K, [(1, (0, 2, 0)), (-1, (0, 0, 1))], vs)    # v^2 - w
    h = V3(K, [(1, (0, 0, 2)), (-1, (1, 0, 0))], vs)    # w^2 - u  -> u^8 = u
    L, pts = eliminate([f, g, h])
    assert len(pts) >= 3
    for pt in pts:
        for p in (f, g, h):
            assert p.embed(L).evaluate(pt) == L.zero


def test_resultant_matches_sylvester():
    rng = random.Random(4242)
    K = FieldTower.prime(5)
    vs = ("u", "v")
    zero = LocalPoly.zero(K, vs)
    checked = 0
    while checked < 80:
        def rnd():
            t = {}
            for _ in range(rng.randrange(1, 5)):
                t[(rng.randrange(3), rng.randrange(3))] = K.random(rng)
            return LocalPoly(K, vs, t)
        f, g = rnd(), rnd()
        if f.is_zero() or g.is_zero():
            continue
        if f.degree_in("v") < 1 or g.degree_in("v") < 1:
            continue
        r1 = resultant(f, g, "v")
        r2 = _sylvester_resultant(_upoly_trim(f.as_univariate("v")),
                                  _upoly_trim(g.as_univariate("v")), zero)
        r2 = zero if r2 is None else r2
        assert r1 == r2
        checked += 1


def test_resultant_common_factor_is_zero():
    K = FieldTower.prime(3)
    vs = ("u", "v")
    u = LocalPoly.var(K, vs, "u")
    v = LocalPoly.var(K, vs, "v")
    f = u.mul(v)                       # common factor v
    g = v.mul(v.add(u))
    assert resultant(f, g, "v").is_zero()


def test_local_poly_translate_and_divide():
    K = FieldTower.prime(2)
    vs = ("u", "v", "w")
    f = V3(K, [(1, (2, 1, 0))], vs)    # u^2 v
    g = f.translate((K.one, K.zero, K.zero))   # (u+1)^2 v = (u^2+1) v
    assert g == V3(K, [(1, (2, 1, 0)), (1, (0, 1, 0))], vs)
    assert f.divide_by_var_power("u", 2) == V3(K, [(1, (0, 1, 0))], vs)
    with pytest.raises(ArithmeticError):
        f.divide_by_var_power("w", 1)


def test_eliminate_matches_brute_force_over_gf9():
    K = FieldTower.prime(3)
    vs = ("u", "v", "w")
    # u^2 = -1 (conjugate pair over GF(9)), v = u^3, w^2 = v^2
    f1 = V3(K, [(1, (2, 0, 0)), (1, (0, 0, 0))], vs)
    f2 = V3(K, [(1, (0, 1, 0)), (-1, (3, 0, 0))], vs)
    f3 = V3(K, [(1, (0, 0, 2)), (-1, (0, 2, 0))], vs)
    L, pts = eliminate([f1, f2, f3])
    L9 = K.extend_canonical(2)
    brute = []
    for a in L9.elements():
        for b in L9.elements():
            for c in L9.elements():
                if all(p.embed(L9).evaluate((a, b, c)) == L9.zero
                       for p in (f1, f2, f3)):
                    brute.append((a, b, c))
    got = {tuple(L9.embed(x, L) for x in pt) for pt in pts}
    assert got == set(brute) and len(brute) == 4
