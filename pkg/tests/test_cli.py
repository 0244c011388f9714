import json

import pytest

from detachlab.cli import main


@pytest.fixture()
def tc_file(tmp_path):
    p = tmp_path / "tc.ideal"
    p.write_text(
        "ring P3 vars x,y,z,w over QQ order grevlex;"
        "ideal TC = x*z - y^2, x*w - y*z, y*w - z^2;"
    )
    return str(p)


@pytest.fixture()
def family_file(tmp_path):
    p = tmp_path / "fam.txt"
    p.write_text(
        "ring Rt vars x,y,z param t over QQ order grevlex;"
        "ideal IX = x^2, y^2;"
        "ideal IE = y^2, x^3, x^2*y, x^2*z;"
        "ideal WRONG = x, y;"
        'family C1 = detach "curvilinear" on IX, paths = ((t, 0, 0));'
    )
    return str(p)


def test_hilbert_label(tc_file, capsys):
    assert main(["hilbert", tc_file]) == 0
    assert capsys.readouterr().out.strip() == "3*z + 1"


def test_hilbert_json(tc_file, capsys):
    assert main(["hilbert", tc_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hilbert_polynomial"] == "3*z + 1"
    assert payload["degree"] == 3


def test_gb_and_nf(tc_file, capsys):
    assert main(["gb", tc_file]) == 0
    out = capsys.readouterr().out
    assert "y^2 - x*z" in out
    assert main(["nf", tc_file, "--poly", "x*z*w - y^2*w"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_tangent(tc_file, capsys):
    assert main(["tangent", tc_file]) == 0
    assert capsys.readouterr().out.strip() == "12"


def test_flat_limit_and_verify(family_file, capsys):
    assert main(["flat-limit", family_file, "--name", "C1"]) == 0
    out = capsys.readouterr().out
    assert "x^3" in out
    assert main(["verify", family_file, "--family", "C1", "--target", "IE",
                 "--points", "1"]) == 0
    assert capsys.readouterr().out.strip() == "PASS"
    # a failed verification exits 1
    assert main(["verify", family_file, "--family", "C1", "--target", "WRONG"]) == 1


def test_parse_error_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("ring R vars x over QQ order grevlex; ideal I = x +;")
    assert main(["gb", str(p)]) == 2


def test_example_run(capsys):
    assert main(["example", "run", "example-two"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_example_list(capsys):
    assert main(["example", "list"]) == 0
    assert "example-two" in capsys.readouterr().out


def test_local_and_blowup(tmp_path, capsys):
    p = tmp_path / "axes.txt"
    p.write_text(
        "ring A3 vars x,y,z over QQ order grevlex;"
        "ideal AXES = x*y, x*z, y*z;"
        "point O = (0, 0, 0);"
    )
    assert main(["local", str(p), "--point", "O"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["blowup", str(p), "--point", "O", "--ambient", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["fiber"] == "P^2"
    assert payload["detachable"] is True
