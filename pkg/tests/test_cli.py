import json

import pytest

from ftczin import cli
from ftczin.carriers import ParseError, PolynomialRing
from ftczin.rings import QQ


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize(
    "argv,output",
    [
        (["shuffle", "[0,1]", "[2]"], "[0,1,2] + [0,2,1] + [2,0,1]"),
        (["mixshuffle", "[1]", "[1,2]"], "[2,2]"),
        (["hurwitz-mul", "(1,2,3)", "(4,5,6)"], "(4, 13, 38, 81, 108)"),
        (["zinbiel", "x", "x", "--instance", "poly-zinbiel"], "1/2*x^3"),
        (["zinbiel", "x^2", "x^3", "--instance", "poly-ftc"], "1/4*x^6"),
        (["zinbiel", "[0]", "[1]", "--instance", "shuffle-zinbiel"], "[0,1]"),
    ],
)
def test_operation_verbs(capsys, argv, output):
    assert run(capsys, *argv) == (cli.EXIT_OK, output, "")


def test_shuffle_over_a_modular_ring(capsys):
    code, out, _ = run(capsys, "shuffle", "[0]", "[0]", "--ring", "mod 2")
    assert code == 0 and out == "0"


def test_json_output(capsys):
    code, out, _ = run(capsys, "shuffle", "[0]", "[1]", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["result"] == "[0,1] + [1,0]" and data["schemaVersion"] == 1


def test_check_laws_reports_witness(capsys):
    code, out, _ = run(capsys, "check-laws", "--instance", "zero-integration", "--samples", "30")
    assert code == cli.EXIT_VIOLATION
    assert "m = 1" in out
    code, out, _ = run(capsys, "check-laws", "--instance", "zero-integration", "--samples", "30", "--format", "json")
    data = json.loads(out)
    assert data["ok"] is False
    assert [r["law"] for r in data["reports"] if r["status"] == "violated"] == ["ftc1"]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FTC_SEED", "7")
    code, out, _ = run(capsys, "check-laws", "--instance", "poly-ftc", "--samples", "5", "--format", "json")
    assert code == 0 and {r["seed"] for r in json.loads(out)["reports"]} == {7}
    monkeypatch.setenv("FTC_SEED", "seven")
    assert run(capsys, "check-laws", "--instance", "poly-ftc")[0] == cli.EXIT_USAGE


def test_convert_both_directions(capsys):
    code, out, _ = run(capsys, "convert", "ftc-to-zin", "--instance", "poly-ftc", "--samples", "10")
    assert code == 0 and "kernelBasis:" in out and "x◁y" in out
    code, out, _ = run(capsys, "convert", "zin-to-ftc", "--instance", "shuffle-zinbiel", "--samples", "10", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["image"] == "G(shuffle-zinbiel)"
    assert data["derivation"][0] == {"a": "(1 | 0)", "D(a)": "0"}
    assert run(capsys, "convert", "zin-to-ftc", "--instance", "poly-ftc")[0] == cli.EXIT_USAGE


def test_roundtrip_verb(capsys):
    assert run(capsys, "roundtrip", "--instance", "poly-ftc", "--samples", "10")[0] == cli.EXIT_OK
    assert run(capsys, "roundtrip", "--instance", "poly-zinbiel", "--samples", "10")[0] == cli.EXIT_OK


def test_inline_and_file_specs(capsys, tmp_path):
    spec = '{"construction": "pair", "carrier": "polynomial"}'
    assert run(capsys, "check-laws", "--instance", spec, "--samples", "10")[0] == cli.EXIT_OK
    path = tmp_path / "inst.json"
    path.write_text('{"construction": "from-derivation", "ring": "mod 3"}')
    code, _, err = run(capsys, "check-laws", "--instance", str(path))
    assert code == cli.EXIT_CONSTRUCTION and "degree 3" in err
    assert run(capsys, "check-laws", "--instance", '{"construction": "mystery"}')[0] == cli.EXIT_USAGE
    assert run(capsys, "check-laws", "--instance", "{not json")[0] == cli.EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ["check-laws"],
        ["shuffle", "[0]"],
        ["shuffle", "[0]", "[5]"],
        ["shuffle", "[0]", "[1]", "--ring", "octonions"],
        ["check-laws", "--instance", "poly-ftc", "--samples", "-1"],
        ["hurwitz-mul", "(1,2)", "(3", "--ring", "integers"],
        ["zinbiel", "x^-1", "x", "--instance", "poly-zinbiel"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == cli.EXIT_USAGE


def test_letter_outside_truncation(capsys):
    code, _, err = run(capsys, "mixshuffle", "[5]", "[1]", "--truncation", "2")
    assert code == cli.EXIT_USAGE and "outside basis of size 2" in err


def test_parse_element():
    A = PolynomialRing(QQ)
    assert cli.parse_element("2*x^2 - 1/3", A) == A.parse("-1/3 + 2*x^2")
    with pytest.raises(ParseError) as info:
        cli.parse_element("2*x^2 x", A)
    assert info.value.position == 6
