import json

from hyperconv.cli import build_parser, dispatch_command, main
from hyperconv.errors import InconsistencyError
from hyperconv.workbench import Workbench


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_check_fixture(capsys):
    assert main(["check", "P3"]) == 0
    out = capsys.readouterr().out
    assert "conv válido" in out
    assert "{{}, {c}, {b,c}, {a,b,c}}" in out


def test_check_missing_file_is_input_error(capsys, tmp_path):
    assert main(["check", str(tmp_path / "nope.json")]) == 2
    assert "Erro:" in capsys.readouterr().err


def test_axiom_violation_exit_code(capsys, tmp_path):
    doc = tmp_path / "bad.json"
    doc.write_text(json.dumps({
        "kind": "conv",
        "carrier": ["a", "b"],
        "lim": [
            {"kernel": ["a"], "limit": ["a"]},
            {"kernel": ["b"], "limit": ["b"]},
            {"kernel": ["a", "b"], "limit": ["a", "b"]},
        ],
    }), encoding="utf-8")
    assert main(["check", str(doc)]) == 2
    assert "monotone" in capsys.readouterr().err


def test_classify_q2(capsys):
    assert main(["classify", "Q2.json", "--json"]) == 0
    data = _json_out(capsys)
    assert data["command"] == "classify"
    assert data["classes"]["approach"] is True
    assert data["classes"]["prap"] is True


def test_classify_p3_reports_conv_flags(capsys):
    assert main(["classify", "P3", "--json"]) == 0
    data = _json_out(capsys)
    assert data["conv"]["pretopological"] is True
    assert data["conv"]["topological"] is False


def test_hyper_upper_kuratowski_on_q2(capsys):
    argv = ["hyper", "Q2.json", "--structure", "uK", "--filter", '{"kernel":[["0"]]}', "--json"]
    assert main(argv) == 0
    rows = _json_out(capsys)["rows"]
    at_zero = [r for r in rows if r["point"] == ["0"]]
    assert at_zero == [{"filter": [["0"]], "point": ["0"], "value": "1"}]


def test_hyper_table_at_one_point(capsys):
    assert main(["hyper", "Q2", "--structure", "lK", "--at", "{1}"]) == 0
    lines = capsys.readouterr().out.splitlines()
    # cabeçalho, separador e um filtro principal por ponto do hiperespaço
    assert len(lines) == 2 + 4


def test_hyper_rejects_point_outside_carrier(capsys):
    assert main(["hyper", "P3", "--structure", "uK", "--at", "{a}"]) == 2
    assert "Erro:" in capsys.readouterr().err


def test_missing_required_flag():
    assert main(["hyper", "Q2"]) == 2


def test_tower_single_layer(capsys):
    assert main(["tower", "Q2", "--eps", "1/2", "--json"]) == 0
    levels = _json_out(capsys)["levels"]
    assert len(levels) == 1
    assert levels[0]["eps"] == "1/2"


def test_tower_of_hyper_structure(capsys):
    assert main(["tower", "Q2", "--structure", "lK", "--eps", "1"]) == 0
    assert "ε = 1" in capsys.readouterr().out


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == 0
    out = capsys.readouterr().out
    assert "values.trunc-sub-laws" in out
    assert "hyper.uK-ge-uF" in out


def test_verify_writes_report(capsys, tmp_path):
    out = tmp_path / "report.json"
    argv = ["verify", "--suite", "fixtures", "--checks", "fixtures.*", "--seed", "3", "--output", str(out)]
    assert main(argv) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["status"] == "PASS"
    assert data["seed"] == 3
    assert "PASS" in capsys.readouterr().out


def test_verify_unknown_check(capsys):
    assert main(["verify", "--suite", "fixtures", "--checks", "bogus"]) == 2


def test_search_report(capsys):
    assert main(["search", "--target", "grill-literal", "--max-n", "2", "--count", "0", "--json"]) == 0
    data = _json_out(capsys)
    assert data["command"] == "search"
    assert data["summary"]["target"] == "grill-literal"


def test_session_commands(capsys):
    bench = Workbench()
    parser = build_parser()
    assert dispatch_command(bench, parser, ["load", "p", "P3"]) == 0
    assert dispatch_command(bench, parser, ["ls"]) == 0
    assert dispatch_command(bench, parser, ["classify", "@p"]) == 0
    assert dispatch_command(bench, parser, ["load", "p", "Q2"]) == 2
    assert dispatch_command(bench, parser, ["show", "p"]) == 0
    assert dispatch_command(bench, parser, ["drop", "p"]) == 0
    assert dispatch_command(bench, parser, ["show", "p"]) == 2
    assert dispatch_command(bench, parser, []) == 0


def test_help(capsys):
    assert main(["help"]) == 0
    assert "@NAME" in capsys.readouterr().out


def test_directory_is_input_error(capsys, tmp_path):
    assert main(["classify", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "Erro:" in err
    assert str(tmp_path) in err


def test_inconsistency_is_not_a_check_failure(capsys, monkeypatch):
    def disagree(*args, **kwargs):
        raise InconsistencyError("psap e prap deveriam coincidir em carriers finitos")

    monkeypatch.setattr("hyperconv.cli.classify", disagree)
    assert main(["classify", "Q2"]) == 3
    assert "inconsistência" in capsys.readouterr().err
