import json

import pytest

from globrep.cli import main
from globrep.family import cyclic_p
from globrep.io import dumps, rep_to_json
from globrep.rep import e_rep


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_reports(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "cyclic_p:2:2")
    assert code == 0 and "3 points, discrete" in out
    code, out, _ = run(capsys, "spectrum", "--family", "elementary_abelian:2", "--format", "json")
    assert code == 0 and json.loads(out)["summary"] == "N* (one-point compactification)"


def test_json_output_is_deterministic(capsys):
    outs = {run(capsys, "member", "--family", "cyclic_p:2:2", "--object", "chi:C2", "--ideal", "e:C2",
                "--format", "json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_member_with_certificate(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "member", "--family", "cyclic_p:2:2", "--object", "chi:C2", "--ideal", "e:C2",
                       "--oracle", "--format", "json", "--out", str(cert))
    rep = json.loads(out)["objects"]["chi:C2"]
    assert code == 0 and rep["member"] and rep["certificate_verified"] and rep["oracle_reached"]
    assert json.loads(cert.read_text())["chi:C2"]["verified"]


def test_symbolic_member(capsys):
    code, out, _ = run(capsys, "member", "--family", "cyclic_p:2", "--truncation", "4", "--object", "chi_1",
                       "--ideal", "gamma_2", "--format", "json")
    rep = json.loads(out)["objects"]["chi_1"]
    assert rep["member"] and rep["symbolic_member"]


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", "--family", "cyclic_p:2:2", "--object", "unit")[0] == 0
    assert run(capsys, "validate", "--family", "cyclic_p:2:2", "--object", "nosuch")[0] == 2
    table = {
        "objects": [{"label": "1", "order": 1}, {"label": "A", "order": 2}],
        "homs": [{"label": "i1", "source": "1", "target": "1"}, {"label": "iA", "source": "A", "target": "A"},
                 {"label": "p", "source": "A", "target": "1"}],
        "compose": [["i1", "i1", "i1"], ["iA", "iA", "iA"], ["i1", "p", "p"]],
        "identity": {"1": "i1", "A": "iA"},
    }
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(table))
    code, out, _ = run(capsys, "validate", "--family", str(path))
    assert code == 1 and "(p, iA)" in out
    path.write_text("{")
    code, _, err = run(capsys, "validate", "--family", str(path))
    assert code == 2 and "line 1" in err


def test_rep_files_and_workspace(capsys, tmp_path):
    fam = cyclic_p(2, 2)
    f = tmp_path / "e.json"
    f.write_text(dumps(rep_to_json(e_rep(fam, "C2"))))
    cfg = tmp_path / "ws.json"
    cfg.write_text(json.dumps({"family": "cyclic_p:2:2", "objects": {"E": str(f)}, "format": "json"}))
    code, out, _ = run(capsys, "support", "--config", str(cfg), "--object", "E")
    assert code == 0 and json.loads(out)["objects"]["E"]["support"] == ["C2", "C4"]
    code, out, _ = run(capsys, "decompose", "--config", str(cfg), "--object", "E")
    assert code == 0 and json.loads(out)["certificates"]["E"]["pieces"] == [["C4", 1], ["C2", 1]]
    cfg.write_text(json.dumps({"family": "cyclic_p:2:2", "objects": {"E": "missing.json"}}))
    assert run(capsys, "support", "--config", str(cfg), "--object", "E")[0] == 2


def test_kan_command(capsys, tmp_path):
    out_path = tmp_path / "kan.json"
    code, out, _ = run(capsys, "kan", "--family", "cyclic_p:2:2", "--along", "le:2", "--object", "unit",
                       "--format", "json", "--out", str(out_path))
    rep = json.loads(out)["objects"]["unit"]
    assert code == 0 and rep["left_kan_dims"] == {"1": 1, "C2": 1, "C4": 1}
    assert rep["right_kan_dims"] == {"1": 1, "C2": 1, "C4": 0}
    assert "left_kan" in json.loads(out_path.read_text())["unit"]
    assert run(capsys, "kan", "--family", "cyclic_p:2:2", "--object", "unit")[0] == 2


def test_budget_exhaustion(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "cyclic_p:2:3", "--budget", "2", "--format", "json")
    assert code == 3 and json.loads(out)["partial"]
    code, out, _ = run(capsys, "member", "--family", "cyclic_p:2:2", "--object", "chi:1", "--ideal", "unit",
                       "--oracle", "--budget", "1", "--format", "json")
    assert code == 3 and json.loads(out)["partial"]


def test_report_and_decompose_gamma(capsys):
    code, out, _ = run(capsys, "report", "--family", "cyclic_p:2", "--truncation", "8", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "report", "--family", "cyclic_p:3:2", "--format", "json")
    assert code == 0 and json.loads(out)["homeomorphism_checks"]["lattice_round_trip"]
    code, out, _ = run(capsys, "decompose", "--family", "cyclic_p:2:3", "--object", "e:C2", "--method", "gamma",
                       "--format", "json")
    assert code == 0 and json.loads(out)["certificates"]["e:C2"]["verified"]


def test_check_selected_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "discrete_spectrum", "--suite", "round_trip")
    assert code == 0 and "2 passed, 0 failed" in out
    assert run(capsys, "check", "--suite", "nope")[0] == 2


def test_bad_family_input(capsys):
    assert run(capsys, "spectrum", "--family", "cyclic_p:x")[0] == 2
    assert run(capsys, "spectrum", "--family", "abelian_p:2")[0] == 2
    assert run(capsys, "spectrum", "--family", '{"kind": "cyclic_p", "p": 4, "max_exponent": 1}')[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])
