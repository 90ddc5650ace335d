import io
import json
import os

import pytest

from hallshuffle.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_zeta_json_schema():
    code, out, _ = run("zeta", "--genus", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "hallshuffle.zeta/1"
    assert doc["config"]["genus"] == 1
    assert doc["verified"] is True


def test_output_is_deterministic():
    a = run("psi", "--genus", "1", "--exponents", "1,0,-1")[1]
    b = run("psi", "--genus", "1", "--exponents", "1,0,-1")[1]
    assert a == b


def test_psi_routes_agree():
    a = json.loads(run("psi", "--genus", "2", "--exponents", "2,-1")[1])
    b = json.loads(run("psi", "--genus", "2", "--exponents", "2,-1", "--route", "direct")[1])
    assert a["payload"] == b["payload"]


def test_bdet_text():
    _, out, _ = run("bdet", "--rank", "3", "--format", "text")
    assert "Δ^{-3}" in out
    doc = json.loads(run("bdet", "--rank", "2")[1])
    assert "Δ^{-1}" in json.dumps(doc, ensure_ascii=False)


def test_oracle_compare_empty():
    code, out, _ = run("oracle", "compare", "--q", "2", "--d1", "1", "--d2", "-1")
    assert code == 0
    assert json.loads(out)["differences"] == []


def test_wheel_verification_failure_exit_code():
    assert run("wheel", "--genus", "1")[0] == 0
    assert run("wheel", "--genus", "1", "--constant")[0] == 0
    code, _, _ = run("selftest", "--criteria", "14")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("nosuch",),
    ("psi",),
    ("zeta", "--genus", "-1"),
    ("gk", "--type", "E8", "--weight", "1"),
    ("bdet", "--rank", "5"),
    ("selftest", "--criteria", "99"),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert json.loads(err)["schema"] == "hallshuffle.error/1"


def test_no_partial_artifact_on_error(tmp_path):
    target = tmp_path / "out.json"
    code, _, _ = run("bdet", "--rank", "9", "--output", str(target))
    assert code == 1
    assert not target.exists()
    assert os.listdir(tmp_path) == []


def test_output_file(tmp_path):
    target = tmp_path / "z.json"
    assert run("zeta", "--genus", "0", "--output", str(target))[0] == 0
    assert json.loads(target.read_text())["schema"] == "hallshuffle.zeta/1"


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "session.cfg"
    cfg.write_text("# session\ngenus = 2\nwindow = 3\n")
    doc = json.loads(run("zeta", "--config", str(cfg))[1])
    assert doc["config"]["genus"] == 2 and doc["config"]["window"] == 3
    doc = json.loads(run("zeta", "--config", str(cfg), "--genus", "1")[1])
    assert doc["config"]["genus"] == 1


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run("zeta", "--config", str(cfg))[0] == 1


def test_csv_and_text_formats():
    code, out, _ = run("hn", "--rank", "2", "--degree", "0", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].count(",") >= 1
    code, out, _ = run("zeta", "--genus", "1", "--format", "text")
    assert code == 0 and out.strip()


def test_numeric_mode():
    code, out, _ = run("zeta", "--genus", "1", "--v", "1/2", "--alphas", "3")
    assert code == 0
    assert json.loads(out)["config"]["mode"] == "numeric"
    assert run("zeta", "--genus", "2", "--v", "1/2", "--alphas", "3")[0] == 1


@pytest.mark.parametrize("argv", [
    ("mul", "--genus", "1", "--degrees", "1,0,-1"),
    ("tmul", "--genus", "1", "--degrees", "1,-1"),
    ("onevec", "--genus", "0"),
    ("semistable", "--genus", "0", "--verify"),
    ("convergence", "--genus", "1"),
    ("theta-skyscraper", "--genus", "1"),
    ("oracle", "hecke", "--q", "3", "--l", "1"),
    ("principal", "--genus", "1", "--group", "3", "--characters", "0;1", "--degrees", "1,0"),
    ("gk", "--type", "A2", "--weight", "1,0,-1", "--genus", "1"),
])
def test_subcommands_succeed(argv):
    code, out, err = run(*argv)
    assert code == 0, err
    assert json.loads(out)["schema"] == f"hallshuffle.{argv[0]}/1"
