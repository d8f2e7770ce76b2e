import json

import jsonschema

from coxbrauer import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_info_schema_and_values(capsys):
    code, obj = run_json(capsys, "info", "--type", "2G2")
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["info"])
    assert obj["h"] == 12 and obj["h0"] == 6 and obj["delta"] == 2
    assert obj["torus_order"]["pretty"] == "1 - q*sqrt(3) + q^2"


def test_info_requires_rank(capsys):
    code, _, err = run(capsys, "info", "--type", "A")
    assert code == 1 and "rank" in err


def test_validate_valid(capsys):
    code, obj = run_json(capsys, "validate", "--type", "A", "--rank", "2",
                         "--qsq", "2", "--ell", "7")
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["validate"])
    assert obj["valid"] and obj["eigenvalue_table"] == [1, 2, 4]


def test_validate_invalid(capsys):
    code, obj = run_json(capsys, "validate", "--type", "A", "--rank", "2",
                         "--qsq", "2", "--ell", "3")
    assert code == 2
    jsonschema.validate(obj, cli.SCHEMAS["validate"])
    assert not obj["valid"] and "W^F" in obj["reason"]


def test_tree_fixture_json(capsys):
    code, obj = run_json(capsys, "tree", "--fixture", "2g2",
                         "--qsq", "27", "--ell", "19")
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["tree"])
    assert obj["multiplicity"] == 3 and obj["cyclic_order"] == [0, 2, 3, 4, 5]


def test_tree_dot_output(capsys):
    code, out, _ = run(capsys, "tree", "--fixture", "2g2", "--format", "dot")
    assert code == 0
    from coxbrauer.selftest import REE_DOT
    assert out == REE_DOT


def test_tree_deterministic(capsys):
    _, first, _ = run(capsys, "tree", "--fixture", "line3", "--mu", "2")
    _, second, _ = run(capsys, "tree", "--fixture", "line3", "--mu", "2")
    assert first == second


def test_tree_roundtrip_via_file(tmp_path, capsys):
    code, out, _ = run(capsys, "tree", "--fixture", "line3", "--mu", "2")
    path = tmp_path / "tree.json"
    path.write_text(out)
    code, obj = run_json(capsys, "decmatrix", "--tree", str(path))
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["decmatrix"])
    assert obj["rows"] == ["chi0", "chi1", "chi2", "exc0", "exc1"]
    assert obj["matrix"] == [[1, 1, 0], [0, 1, 1], [0, 0, 1],
                             [1, 0, 0], [1, 0, 0]]
    assert obj["unitriangular"] is True


def test_decmatrix_star(capsys):
    code, obj = run_json(capsys, "star", "--d", "7", "--e", "3", "--n", "2",
                         "--verify")
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["star"])
    assert obj["match"] is True
    assert obj["decomposition"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1],
                                    [1, 1, 1], [1, 1, 1]]
    assert obj["oracle"] == obj["decomposition"]


def test_star_without_verify(capsys):
    code, obj = run_json(capsys, "star", "--d", "5", "--e", "1", "--n", "1")
    assert code == 0
    assert obj["match"] is None and obj["oracle"] is None


def test_algebra_report(capsys):
    code, obj = run_json(capsys, "algebra", "--fixture", "line2", "--mu", "1")
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["algebra"])
    assert obj["dimension"] == 6
    assert obj["cartan"] == [[2, 1], [1, 2]]
    assert obj["ext1"] == [[0, 1], [1, 0]]


def test_rickard_report(capsys):
    code, obj = run_json(capsys, "rickard", "--fixture", "line3", "--mu", "2",
                         "--vertex", "2", "--check-tilting")
    assert code == 0
    jsonschema.validate(obj, cli.SCHEMAS["rickard"])
    assert obj["degrees"] == [1, 2, 3]
    assert obj["euler"] == {"chi": [0, 0, 1], "exc": 1}
    assert obj["tilting"]["ok"] is True
    assert obj["tilting"]["end_dimension"] == 21


def test_rickard_vertex_out_of_range(capsys):
    code, _, err = run(capsys, "rickard", "--fixture", "line3", "--vertex", "5")
    assert code == 1 and "out of range" in err


def test_tree_requires_source(capsys):
    code, _, err = run(capsys, "tree")
    assert code == 1


def test_unknown_fixture(capsys):
    code, _, err = run(capsys, "tree", "--fixture", "nosuch")
    assert code == 1


def test_missing_file(capsys):
    code, _, err = run(capsys, "decmatrix", "--tree", "/nonexistent/x.json")
    assert code == 1


def test_selftest_filter(capsys):
    code, out, err = run(capsys, "selftest", "--filter", "torus")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, cli.SCHEMAS["selftest"])
    assert [r["name"] for r in obj["results"]] == ["2-torus-orders"]
    assert "PASS" in err


def test_byte_identical_reports(capsys):
    args = ("star", "--d", "7", "--e", "3", "--n", "2", "--verify")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "info", "--type", "G2", "--out", str(path))
    assert code == 0 and out == ""
    obj = json.loads(path.read_text())
    assert obj["h"] == 6


def test_selftest_failure_exit_code(capsys, monkeypatch):
    from coxbrauer import selftest as st

    def broken():
        return False, "deliberately failing"

    monkeypatch.setattr(st, "CRITERIA", [("0-forced-failure", broken, None)])
    code, out, err = run(capsys, "selftest")
    assert code == 2
    assert "FAIL" in err
    assert json.loads(out)["ok"] is False


def test_precision_env_override(capsys, monkeypatch):
    monkeypatch.setenv("COXBRAUER_PRECISION", "5")
    from coxbrauer.ell_arith import validate_regime
    from coxbrauer.root_data import coxeter_datum, parse_type
    import coxbrauer.cli as cli_mod
    datum = coxeter_datum(parse_type("A2"))
    assert validate_regime(datum, 2, 7,
                           precision=cli_mod._default_precision(None)).precision == 5


def test_console_script_entry():
    import subprocess
    import sys
    proc = subprocess.run(
        [sys.executable, "-m", "coxbrauer.cli", "info", "--type", "2B2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["h"] == 8
