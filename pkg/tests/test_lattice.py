import random

import pytest

from delpezzo.lattice import (all_roots, check_conditions, classes_of_type,
                              decide_occurrence, enumerate_subsystems,
                              pairing, quotient_invariants)
from delpezzo.rdp import (InvalidConfigError, parse_configuration,
                          parse_dynkin, render_dynkin)


def test_root_system_basics():
    roots = all_roots()
    assert len(roots) == 240
    for v in list(roots)[:40]:
        assert pairing(v, v) == 2
        assert tuple(-x for x in v) in roots
    sample = sorted(roots)[:16]
    for u in sample:
        for v in sample:
            assert pairing(u, v) in (-2, -1, 0, 1, 2)


def _basis_of(name):
    cls = classes_of_type(parse_dynkin(name))
    assert cls, "no class of type %s" % name
    return [list(v) for v in cls[0].basis]


def test_quotient_invariants_known_groups():
    assert quotient_invariants(_basis_of("D4+4A1")) == (0, [2, 2, 2])
    assert quotient_invariants(_basis_of("8A1")) == (0, [2, 2, 2, 2])
    assert quotient_invariants(_basis_of("E8")) == (0, [])
    assert quotient_invariants(_basis_of("7A1")) == (1, [2, 2, 2])


def test_quotient_invariants_rejects_dependent():
    b = _basis_of("A1")
    with pytest.raises(ValueError, match="not a basis"):
        quotient_invariants(b + b)


def test_smith_invariance_under_unimodular_change():
    rng = random.Random(2024)
    for name in ("7A1", "D4+4A1", "A7", "2A3+2A1"):
        basis = [list(v) for v in _basis_of(name)]
        expect = quotient_invariants(basis)
        r = len(basis)
        for _ in range(25):
            m = [row[:] for row in basis]
            for _step in range(6):
                i, j = rng.randrange(r), rng.randrange(r)
                if i == j:
                    continue
                c = rng.randrange(-2, 3)
                m[i] = [a + c * b for a, b in zip(m[i], m[j])]
            assert quotient_invariants(m) == expect


def test_enumeration_has_unique_7a1_shape():
    cls = classes_of_type(parse_dynkin("7A1"))
    assert len(cls) == 1
    assert cls[0].free_rank == 1
    assert cls[0].invariants == (2, 2, 2)


def test_enumeration_contains_a1_free():
    cls = classes_of_type(parse_dynkin("A1"))
    assert len(cls) == 1 and cls[0].free_rank == 7 and cls[0].invariants == ()


def test_no_e6_plus_2a1():
    # rank-8 obstruction: index^2 would be det(E6+2A1)/det(E8) = 12
    assert classes_of_type(parse_dynkin("E6+2A1")) == []


def test_index_square_identity_rank8():
    det = {"A": lambda n: n + 1, "D": lambda n: 4,
           "E": lambda n: {6: 3, 7: 2, 8: 1}[n]}
    found = 0
    for cls in enumerate_subsystems():
        if sum(r for _l, r in cls.ade_type) == 8:
            assert cls.free_rank == 0
            d = 1
            for l, r in cls.ade_type:
                d *= det[l](r)
            idx2 = 1
            for q in cls.invariants:
                idx2 *= q * q
            assert d == idx2
            found += 1
    assert found > 10


def test_conditions_examples():
    f = check_conditions(parse_dynkin("8A1"), 3)
    assert f["E8"] and not f["T2"]
    f = check_conditions(parse_dynkin("D4+3A1"), 2)
    assert f["E8"] and not f["Tp"]
    f = check_conditions(parse_dynkin("E8"), 5)
    assert f["E8"] and f["T2"] and f["Tp"]


def test_condition_failure_sets_exact():
    types = {c.ade_type for c in enumerate_subsystems() if c.ade_type}
    fail_t2 = {render_dynkin(t) for t in types if not check_conditions(t, 3)["T2"]}
    assert fail_t2 == {"D4+4A1", "8A1", "7A1"}
    fail_tp2 = {render_dynkin(t) for t in types
                if not check_conditions(t, 2)["Tp"]}
    assert fail_tp2 == {"D4+3A1", "2A3+2A1", "A3+4A1", "7A1", "6A1"}


def test_decide_occurrence_examples():
    v = decide_occurrence(parse_configuration("8A1"), 7)
    assert not v.occurs
    v = decide_occurrence(parse_configuration("7A1"), 2)
    assert v.occurs and v.degree1_witness == "only-degree-2"
    v = decide_occurrence(parse_configuration("E8^1"), 2)
    assert not v.occurs
    v = decide_occurrence(parse_configuration("E8^1"), 5)
    assert v.occurs and v.degree1_witness == "yes"
    v = decide_occurrence(parse_configuration("D4^0+3A1"), 2)
    assert v.occurs and v.degree1_witness == "only-degree-2"
    v = decide_occurrence(parse_configuration("E8"), 0)
    assert v.occurs
    v = decide_occurrence(parse_configuration("D4+4A1"), 0)
    assert not v.occurs
    v = decide_occurrence((), 3)
    assert v.occurs


def test_decide_occurrence_invalid_coindex():
    with pytest.raises(InvalidConfigError, match="characteristic"):
        decide_occurrence(parse_configuration("E8^1"), 7)


def test_char2_quasi_elliptic_taut_cases_occur():
    # 8A1 and D4+4A1 fail only the l=2 condition, which is no obstruction
    # in characteristic 2 (quasi-elliptic realizations)
    assert decide_occurrence(parse_configuration("8A1"), 2).occurs
    assert decide_occurrence(parse_configuration("4A1"), 2).occurs
    assert not decide_occurrence(parse_configuration("6A1"), 2).occurs
    assert not decide_occurrence(parse_configuration("2A3+2A1"), 2).occurs
    assert not decide_occurrence(parse_configuration("A3+4A1"), 2).occurs
