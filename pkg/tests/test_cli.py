import io
import json

import pytest

from singclass.cli import (
    EXIT_INVALID,
    EXIT_NO_MATCH,
    EXIT_NOT_ISOLATED,
    EXIT_OK,
    EXIT_TABLE_MISMATCH,
    TSV_COLUMNS,
    main,
)
from singclass.fixtures import fixture_dir, TABLE_FILE


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_invariants_rational_boundary():
    code, text = run("invariants", "I", "2,3,7,41")
    assert code == EXIT_OK
    record = json.loads(text)
    assert record["mu"] == 480
    assert record["alpha_at_ones"] == "1723/1722"
    assert record["p_g"] == 0
    assert record["rational"] is True
    assert record["polynomial"] == "x^2 + y^3 + z^7 + w^41"


def test_invariants_tsv_columns():
    code, text = run("invariants", "I", "2,3,7,42", "--format", "tsv")
    assert code == EXIT_OK
    cols = dict(zip(TSV_COLUMNS, text.rstrip("\n").split("\t")))
    assert cols["p_g"] == "1"
    assert cols["rational"] == "false"
    assert cols["alpha_at_ones"] == "1"


def test_invariants_type_two_weights():
    _, text = run("invariants", "II", "2,2,2,2")
    record = json.loads(text)
    assert record["weights"] == ["2", "2", "2", "4"]
    assert record["mu"] == 3


def test_decimal_column_is_extra():
    _, text = run("invariants", "I", "2,3,7,41", "--decimal")
    record = json.loads(text)
    assert record["alpha_at_ones"] == "1723/1722"
    assert record["alpha_decimal"] == pytest.approx(1723 / 1722)


def test_invariants_with_links():
    _, text = run("invariants", "XII", "3,3,4,3", "--links", "0,6")
    assert json.loads(text)["links"] == [[0, 6]]
    code, _ = run("invariants", "XII", "3,3,4,3", "--links", "1,1")
    assert code == EXIT_INVALID


def test_invalid_parameters_exit_two(capsys):
    code, text = run("invariants", "I", "2,3,1,4")
    assert code == EXIT_INVALID
    assert text == ""
    assert capsys.readouterr().err.startswith("NonpositiveWeight:")


def test_malformed_numbers_exit_two(capsys):
    code, _ = run("invariants", "I", "2,3,x,4")
    assert code == EXIT_INVALID
    assert capsys.readouterr().err.startswith("UsageError:")


def test_enumerate_item_six():
    code, text = run("enumerate", "I", "--bounds", "41", "--fix", "a=2,b=3,c=7")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert len(lines) == 35
    assert json.loads(lines[-1])["params"] == [2, 3, 7, 41]


def test_classify_support():
    code, text = run("classify", "--support", "2,0,0,0;0,3,0,0;0,0,7,0;0,0,0,41")
    assert code == EXIT_OK
    ident = json.loads(text)
    assert ident["type"] == "Threefold-I"
    assert ident["permutation"] == [0, 1, 2, 3]


def test_classify_file(tmp_path):
    path = tmp_path / "support.txt"
    path.write_text("# x^3 + x*y^3 + x*z^4 + y*w^3\n3,0,0,0\n1,3,0,0\n1,0,4,0\n0,1,0,3\n")
    code, text = run("classify", "--file", str(path))
    assert code == EXIT_OK
    assert json.loads(text)["type"] == "Threefold-XII"


def test_classify_exit_codes():
    assert run("classify", "--support", "2,0,0,0;0,3,0,0;0,0,4,0;1,1,1,1")[0] == EXIT_NOT_ISOLATED
    assert run("classify", "--support", "1,1,0,0;0,0,2,0;0,0,0,2")[0] == EXIT_NO_MATCH
    assert run("classify", "--support", "2,0,0;0,3,0,0")[0] == EXIT_INVALID


def test_classify_skeletons():
    code, text = run("classify", "--skeletons", "5,6,7,8")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert len(lines) == 256
    assert len({line.split("\t")[1] for line in lines}) == 19


def test_table_type_one_matches():
    code, text = run("table", "--types", "I", "--fixture", TABLE_FILE)
    assert code == EXIT_OK
    assert text == ""


def test_table_mismatch_exit_five(tmp_path):
    broken = (fixture_dir() / TABLE_FILE).read_text().replace(
        "a=2 b=3 c=7\td:set{7..41}", "a=2 b=3 c=7\td:set{7..40}")
    path = tmp_path / "broken.tsv"
    path.write_text(broken)
    code, text = run("table", "--types", "I", "--fixture", str(path), "--format", "json")
    assert code == EXIT_TABLE_MISMATCH
    report = json.loads(text)
    assert [e["item"] for e in report["entries"]] == ["I.6"]


def test_table_rows():
    code, text = run("table", "--types", "I", "--rows", "--bounds", "10")
    assert code == EXIT_OK
    assert "a=2 b=3 c=7" in text


def test_surface_ade_listing():
    code, text = run("surface", "--ade")
    assert code == EXIT_OK
    rows = [line.split("\t") for line in text.splitlines() if not line.startswith("#")]
    assert ["E_8", "Surface-I", "2,3,5", "8", "x^2 + y^3 + z^5"] in rows


def test_surface_subcommands():
    code, text = run("surface", "invariants", "I", "2,3,5")
    assert code == EXIT_OK
    assert json.loads(text)["mu"] == 8
    code, text = run("surface", "enumerate", "I", "--bounds", "5", "--fix", "a=2,b=3")
    assert [json.loads(x)["params"] for x in text.splitlines()] == [[2, 3, 3], [2, 3, 4], [2, 3, 5]]


def test_output_is_deterministic():
    argv = ("enumerate", "V", "--bounds", "12")
    assert run(*argv) == run(*argv)
