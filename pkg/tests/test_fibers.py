import pytest

from delpezzo.fibers import (KodairaType, Place, fiber_configuration,
                             places_of_discriminant, tate_classify)
from delpezzo.gf import FieldTower
from delpezzo.poly import BiPoly, bipoly_from_int_coeffs
from delpezzo.rdp import parse_dynkin
from delpezzo.weierstrass import WeierstrassEq, compute_invariants


def mk(p, coeffs):
    K = FieldTower.prime(p)
    deg = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}
    return WeierstrassEq.from_coeff_map(
        K, {n: bipoly_from_int_coeffs(K, deg[n], v) for n, v in coeffs.items()})


def test_places_char3_t9s3():
    eq = mk(3, {"a4": [(1, 3, 1)], "a6": [(1, 5, 1), (1, 4, 2)]})
    inv = compute_invariants(eq)
    assert inv.delta == bipoly_from_int_coeffs(eq.K, 12, [(-1, 9, 3)])
    places = places_of_discriminant(inv)
    assert [(p.form.format(), p.multiplicity, p.chart) for p in places] == \
        [("t", 9, "s"), ("s", 3, "t")]


def test_places_char5_conjugate_splitting():
    eq = mk(5, {"a4": [(1, 4, 0)], "a6": [(1, 5, 1)]})
    inv = compute_invariants(eq)
    places = places_of_discriminant(inv)
    assert [(p.form.format(), p.multiplicity, p.degree) for p in places] == \
        [("t", 10, 1), ("t^2 + 3*s^2", 1, 2)]
    assert places[1].level.abs_degree == 2


def test_places_twelve_simple_zeros():
    # char 5: y^2 = x^3 + t^4 x + s^6 has squarefree discriminant
    eq = mk(5, {"a4": [(1, 4, 0)], "a6": [(1, 0, 6)]})
    inv = compute_invariants(eq)
    places = places_of_discriminant(inv)
    assert all(p.multiplicity == 1 for p in places)
    assert sum(p.degree for p in places) == 12


def test_places_of_zero_discriminant_error():
    eq = mk(2, {"a6": [(1, 5, 1)]})
    with pytest.raises(ValueError):
        places_of_discriminant(compute_invariants(eq))


def test_tate_x211_at_t():
    eq = mk(5, {"a4": [(1, 4, 0)], "a6": [(1, 5, 1)]})
    places = places_of_discriminant(compute_invariants(eq))
    kt, comps, vd = tate_classify(eq, places[0])
    assert (kt.render(), comps, vd) == ("II*", 9, 10)


def test_tate_i0_at_place_away_from_delta():
    eq = mk(5, {"a4": [(1, 4, 0)], "a6": [(1, 5, 1)]})
    K = eq.K
    form = BiPoly(K, 1, [K.one, K.from_int(-1)])     # t - s
    place = Place(form, 0, 1, "s", K, K.one)
    kt, comps, vd = tate_classify(eq, place)
    assert kt.render() == "I0" and comps == 1 and vd == 0


def test_tate_char3_two_component_fiber():
    # 6A shape with a65 = 0: fiber at [s] has two components (III -> A1)
    eq = mk(3, {"a4": [(1, 3, 1)], "a6": [(1, 4, 2)]})
    places = places_of_discriminant(compute_invariants(eq))
    at_s = next(p for p in places if p.chart == "t")
    kt, comps, vd = tate_classify(eq, at_s)
    assert kt.render() == "III" and comps == 2
    assert kt.rdp() == ("A", 1)


def test_fiber_configuration_e84():
    eq = mk(2, {"a1": [(1, 1, 0)], "a6": [(1, 5, 1)]})
    cfg = fiber_configuration(eq)
    kts = {pl.form.format(): kt.render() for pl, kt, _c, _v in cfg.places}
    assert kts == {"t": "II*", "s": "I1"}
    assert cfg.gamma_prime == parse_dynkin("E8")
    assert cfg.mw_rank == 0
    assert cfg.total_v_delta() == 12


def test_fiber_configuration_6c():
    eq = mk(3, {"a4": [(1, 4, 0)], "a6": [(1, 4, 2)]})
    cfg = fiber_configuration(eq)
    assert [(kt.render(), v) for _p, kt, _c, v in cfg.places] == [("IV*", 12)]
    assert cfg.gamma_prime == parse_dynkin("E6")
    assert cfg.mw_rank == 2


def test_fiber_configuration_twelve_i1():
    eq = mk(5, {"a4": [(1, 4, 0)], "a6": [(1, 0, 6)]})
    cfg = fiber_configuration(eq)
    assert all(kt.render() == "I1" for _p, kt, _c, _v in cfg.places)
    assert sum(pl.degree for pl, *_ in cfg.places) == 12
    assert cfg.gamma_prime == ()
    assert cfg.mw_rank == 8


def test_component_counts_consistent_with_rank():
    # RDP rank = components - 1 for In; standard values for additive types
    eq = mk(2, {"a1": [(1, 1, 0)], "a2": [(1, 1, 1)],
                "a6": [(1, 5, 1), (1, 4, 2), (1, 3, 3)]})
    cfg = fiber_configuration(eq)
    for _pl, kt, comps, _v in cfg.places:
        r = kt.rdp()
        if kt.symbol == "In":
            assert comps == kt.n
            if kt.n >= 2:
                assert r[1] == comps - 1
        elif r is not None:
            assert comps == kt.components()


def test_kodaira_type_validation():
    with pytest.raises(ValueError):
        KodairaType("In", n=0)
    assert KodairaType("In*", n=0).rdp() == ("D", 4)
    assert KodairaType("In*", n=3).components() == 8


def test_tate_non_minimal_restart():
    # char 5: y^2 = x^3 + t^4 x + t^6 is non-minimal at [t]: after dividing
    # (x, y) by (t^2, t^3) the fiber there is smooth, all 12 of v(Delta)
    # concentrating in the non-minimality
    eq = mk(5, {"a4": [(1, 4, 0)], "a6": [(1, 6, 0)]})
    places = places_of_discriminant(compute_invariants(eq))
    at_t = next(p for p in places if p.form.format() == "t")
    assert at_t.multiplicity == 12
    kt, comps, vd = tate_classify(eq, at_t)
    assert kt.render() == "I0" and vd == 12
