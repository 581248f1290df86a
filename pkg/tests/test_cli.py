import json

import pytest

from hyperwitt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_qh_and_axioms(capsys):
    code, d = run_json(capsys, "qh", "Qp:3")
    assert code == 0 and d["order"] == 5 and d["level"] == 2
    code, d = run_json(capsys, "axioms", "Q2")
    assert code == 0


def test_axioms_from_file(capsys, tmp_path):
    code, d = run_json(capsys, "qh", "F3")
    path = tmp_path / "h.json"
    path.write_text(json.dumps(d["hyperfield"]))
    code, out, _ = run(capsys, "axioms", "--file", str(path))
    assert code == 0


def test_witteq(capsys):
    code, d = run_json(capsys, "witteq", "Qp:3", "F3((t))")
    assert code == 0 and d["verdict"] == "equivalent"
    code, d = run_json(capsys, "witteq", "Qp:3", "Qp:5")
    assert code == 0 and d["verdict"] != "equivalent"


def test_classify_and_mu(capsys):
    code, d = run_json(capsys, "classify", "--gamma", "ZxZ", "--residue", "F3",
                       "--restriction", "v0", "--constants", "Qp:3")
    assert code == 0
    assert "3b" in json.dumps(d)
    code, d = run_json(capsys, "mu", "Q2")
    assert code == 0 and "μ0" in json.dumps(d, ensure_ascii=False)


def test_transport(capsys):
    code, d = run_json(capsys, "transport", "Qp:5", "Qp:13")
    assert code == 0


def test_ff_operations(capsys):
    code, d = run_json(capsys, "ff", "represents", "--field", "F3", "--z", "t", "--x", "-1")
    assert code == 0 and "true" in json.dumps(d).lower()
    code, d = run_json(capsys, "ff", "represents", "--field", "F2", "--z", "1+t", "--x", "t")
    assert code == 0
    code, d = run_json(capsys, "ff", "square-class", "--field", "F5", "--f", "(t+1)^3/t")
    assert d["odd_part"] == ["t", "t + 1"]
    code, _ = run_json(capsys, "ff", "local-class", "--field", "F3", "--f", "t", "--place", "t")
    assert code == 0
    code, _ = run_json(capsys, "ff", "witness", "--field", "F3", "--x", "t")
    assert code == 0
    code, _ = run_json(capsys, "ff", "composed", "--p", "3", "--num", "1: 2@0, 1@1")
    assert code == 0
    code, d = run_json(capsys, "ff", "char2-dimension", "--field", "F4(t)")
    assert code == 0 and d["dimension"] == 2


def test_enumerate(capsys):
    code, d = run_json(capsys, "enumerate", "--max-nonzero", "2")
    assert code == 0
    assert [r["count"] for r in d["rows"]] == [1, 3]


def test_errors_exit_nonzero(capsys):
    code, d = run_json(capsys, "qh", "Qp:4")
    assert code == 1 and "error" in json.dumps(d)
    code, out, err = run(capsys, "ff", "local-class", "--field", "F3", "--f", "t",
                         "--place", "t^2-1")
    assert code == 1 and err
    code, out, err = run(capsys, "qh", "F6")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_out_file_and_determinism(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "ff", "witness", "--field", "F5", "--x", "t", "--out", str(path))
    assert code == 0 and json.loads(path.read_text())
    code2, out2, _ = run(capsys, "ff", "witness", "--field", "F5", "--x", "t")
    assert out == out2


def test_text_output(capsys):
    code, out, _ = run(capsys, "witteq", "Qp:3", "Qp:7")
    assert code == 0 and "equivalent" in out
