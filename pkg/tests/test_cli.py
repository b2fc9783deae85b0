import json

import pytest

from qvar.cli import main
from qvar.generate import generate_random_instance, twin_instance
from qvar.instance import save


@pytest.fixture
def inst_file(tmp_path):
    path = tmp_path / "inst.json"
    save(generate_random_instance(3, 5, 2, "takahashi-valid"), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_validate(capsys, inst_file):
    code, out = run(capsys, "validate", "--instance", inst_file)
    assert code == 0 and json.loads(out)["separation"] == "T1"


@pytest.mark.parametrize("principle", ["ekeland", "ekeland-scaled", "caristi", "takahashi", "arutyunov", "oettli-thera"])
def test_solve_then_verify(capsys, tmp_path, inst_file, principle):
    cert = tmp_path / f"{principle}.json"
    code, _ = run(capsys, "solve", principle, "--instance", inst_file, "--output", cert)
    assert code == 0
    code, out = run(capsys, "verify", "--certificate", cert)
    assert code == 0 and json.loads(out)["verdict"] == "PASS"


def test_tampered_certificate_fails(capsys, tmp_path, inst_file):
    cert = tmp_path / "c.json"
    run(capsys, "solve", "ekeland", "--instance", inst_file, "--output", cert)
    data = json.loads(cert.read_text())
    q = data["inequalities"][0]
    q["lhs"], q["rhs"] = q["rhs"], q["lhs"]
    cert.write_text(json.dumps(data))
    code, out = run(capsys, "verify", "--certificate", cert)
    assert code == 1 and json.loads(out)["verdict"] == "FAIL"


def test_refusal_exit_code(capsys, tmp_path):
    path = tmp_path / "twin.json"
    save(twin_instance(1, 4), path)
    code, out = run(capsys, "solve", "ekeland", "--instance", path)
    assert code == 2 and "refused" in json.loads(out)


def test_enumerate(capsys, inst_file):
    code, out = run(capsys, "enumerate", "takahashi", "--instance", inst_file)
    assert code == 0 and json.loads(out)["points"]


def test_topo_catalog(capsys):
    code, out = run(capsys, "topo", "--catalog", "q4-grid", "--op", "limits")
    assert code == 0 and json.loads(out)["limits"] == [0, 1]
    code, out = run(capsys, "topo", "--catalog", "q4-grid", "--op", "cauchy")
    assert json.loads(out)["right"]["value"] is True


def test_iterate_catalog(capsys):
    code, out = run(capsys, "iterate", "--catalog", "gelman-halving", "--lambda", "1", "--mu", "1/2", "--cap", "21")
    data = json.loads(out)
    assert code == 0 and data["steps"] == 21 and data["limit_check"]["ok"]


def test_generate_and_seed_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("QVAR_SEED", "9")
    run(capsys, "generate", "--n", "4", "--output", tmp_path / "a.json")
    run(capsys, "generate", "--n", "4", "--seed", "9", "--output", tmp_path / "b.json")
    assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()


def test_suite_cli(capsys, tmp_path):
    code, out = run(capsys, "suite", "--count", "5", "--principles", "ekeland,takahashi", "--output", tmp_path / "r.json")
    assert code == 0 and "total" in out
    assert json.loads((tmp_path / "r.json").read_text())["count"] == 5


def test_catalog_show(capsys):
    code, out = run(capsys, "catalog", "gelman-halving")
    assert code == 0 and json.loads(out)["params"]["mu"] == "1/2"


def test_missing_file(capsys):
    assert main(["verify", "--certificate", "/nonexistent.json"]) == 1
