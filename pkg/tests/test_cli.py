import io
import json
import os

import pytest

from delpezzo.cli import run

DATA = os.path.join(os.path.dirname(__file__), "data")


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_6c():
    code, out, err = invoke(["classify", "--char", "3",
                             "--eq", "y^2 = x^3 + t^4*x + t^4*s^2"])
    assert code == 0
    assert "configuration: E6^0" in out
    assert "delta = 2*t^12" in out        # -t^12 mod 3
    assert "j = 0" in out


def test_classify_invalid_surface():
    code, out, err = invoke(["classify", "--char", "7", "--eq", "y^2 = x^3"])
    assert code == 0
    assert "kind: invalid" in out


def test_classify_parse_error_exit_2():
    code, out, err = invoke(["classify", "--char", "5", "--eq", "y^2 = x^3 + t^3"])
    assert code == 2
    assert "inhomogeneous term t^3" in err


def test_classify_non_prime_char():
    code, out, err = invoke(["classify", "--char", "4", "--eq", "y^2 = x^3 + t^6"])
    assert code == 2


def test_check_config_7a1():
    code, out, err = invoke(["check-config", "--char", "2", "7A1"])
    assert code == 0
    assert "occurs: yes (degree 2 only)" in out


def test_check_config_invalid_coindex():
    code, out, err = invoke(["check-config", "--char", "7", "E8^1"])
    assert code == 2
    assert "characteristic" in err


def test_tjurina_d8():
    code, out, err = invoke(["tjurina", "--char", "2",
                             "--poly", "z^2 + x^2*y + x*y^4"])
    assert code == 0
    assert "dim T_f = 16" in out


def test_lattice_type():
    code, out, err = invoke(["lattice", "--type", "7A1"])
    assert code == 0
    assert "free rank 1" in out and "Z/2 x Z/2 x Z/2" in out


def test_verify_tables_char5_passes():
    code, out, err = invoke(["verify-tables", "--char", "5"])
    assert code == 0
    assert "T2-X22" in out and "PASS" in out


def test_round_trip_over_catalog_equations():
    from delpezzo import catalog
    from delpezzo.expr import parse_weierstrass
    for row in catalog.load_catalog():
        if row.degree2_only:
            continue
        inst = catalog.sample_row_instances(row)
        picked = [i for i in inst if i.level.abs_degree == 1][:2]
        for i in picked:
            from delpezzo.expr import equation_from_sides
            eq = equation_from_sides(row.equation[0], row.equation[1],
                                     i.level, i.env)
            assert parse_weierstrass(eq.format(), i.level) == eq


GOLDEN_CASES = [
    ("classify_6c.json",
     ["classify", "--char", "3", "--eq", "y^2 = x^3 + t^4*x + t^4*s^2",
      "--json"]),
    ("check_config_7a1.json",
     ["check-config", "--char", "2", "7A1", "--json"]),
    ("tjurina_d8.json",
     ["tjurina", "--char", "2", "--poly", "z^2 + x^2*y + x*y^4", "--json"]),
]


@pytest.mark.parametrize("fname,argv", GOLDEN_CASES)
def test_json_schema_stable(fname, argv):
    code, out, err = invoke(argv)
    assert code == 0
    with open(os.path.join(DATA, fname)) as fh:
        assert json.loads(out) == json.load(fh)
