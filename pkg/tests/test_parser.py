import pytest

from detachlab.parser import parse_source, parse_polynomial, ParseError
from detachlab.ring import RingError


BASIC = """
ring R vars x,y over QQ order grevlex;
ideal I = x^2, y^2;
"""


def test_basic_ring_and_ideal():
    doc = parse_source(BASIC)
    assert doc.rings["R"].variables == ("x", "y")
    assert len(doc.ideals["I"].gens) == 2


def test_twisted_cubic_generators():
    doc = parse_source(
        "ring P3 vars x,y,z,w over QQ order grevlex;"
        "ideal I = x*z - y^2, x*w - y*z, y*w - z^2;"
    )
    I = doc.ideals["I"]
    assert len(I.gens) == 3
    assert all(g.degree() == 2 for g in I.gens)


def test_codim3_input():
    doc = parse_source(
        "ring P4 vars x,y,z,u,w over QQ order grevlex;"
        "ideal I = x^2, y^2, z^2;"
    )
    assert len(doc.ideals["I"].gens) == 3


def test_roundtrip_print_parse():
    doc = parse_source(
        "ring R vars x,y,z over QQ order grevlex;"
        "ideal I = 2*x^2 - 3*y, y^2*z + 7, x*y*z - 1;"
    )
    I = doc.ideals["I"]
    text = "ring R vars x,y,z over QQ order grevlex; ideal I = " + \
        ", ".join(str(g) for g in I.gens) + ";"
    doc2 = parse_source(text)
    assert doc2.ideals["I"].gens == I.gens


def test_roundtrip_fractional_coefficients():
    # monic Groebner output must reparse identically
    doc = parse_source("ring R vars x,y over QQ order grevlex; ideal I = 2*x - y;")
    basis = doc.ideals["I"].groebner()
    text = "ring R vars x,y over QQ order grevlex; ideal I = " + str(basis[0]) + ";"
    doc2 = parse_source(text)
    assert doc2.ideals["I"].gens[0] == basis[0]


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_source("ring R vars x over QQ order grevlex;\nideal I = x +;")
    assert "line 2" in str(err.value)


def test_unknown_variable():
    with pytest.raises(ParseError) as err:
        parse_source("ring R vars x over QQ order grevlex; ideal I = q;")
    assert "q" in str(err.value)


def test_nonprime_modulus():
    with pytest.raises(RingError):
        parse_source("ring R vars x over FF 32001 order grevlex;")


def test_point_statement():
    doc = parse_source("ring R vars x,y,z over QQ order grevlex; point P = (1, -2, 0);")
    assert doc.points["P"] == (1, -2, 0)


def test_structure_and_family_statements():
    doc = parse_source(
        "ring Rt vars x,y,z param t over QQ order grevlex;"
        "ideal IX = x^2, y^2;"
        'structure Y on IX case 3e support (0,0,0) data f = x^2, g = y^2;'
        'family F = detach "case-e" f = x^2, g = y^2, path = (0, t, t, 0);'
    )
    assert doc.structures["Y"].case == "3e"
    assert doc.families["F"].kind == "case-e"
    assert len(doc.families["F"].clauses["path"]) == 4


def test_check_statement_with_tags():
    doc = parse_source(
        "ring R vars x over QQ order grevlex;"
        'check c1 calc(1 + 2) == 3 tag cited ref "somewhere";'
        "check c2 calc((6-2) + (4*6-16) + 9 + (8-5)) == 24;"
    )
    assert doc.checks[0].tag == "cited"
    assert doc.checks[0].ref == "somewhere"
    assert doc.checks[1].expected == 24


def test_parse_polynomial_helper():
    doc = parse_source("ring R vars x,y over QQ order grevlex;")
    p = parse_polynomial("x^2 - 2*x*y", doc.rings["R"])
    assert p.degree() == 2
    with pytest.raises(ParseError):
        parse_polynomial("x^2 +", doc.rings["R"])
