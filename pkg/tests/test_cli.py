import io
import json

import pytest

from hopfcat.cli import run
from hopfcat.fusion_ring import builtin_ring


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def invoke_json(*argv):
    code, text = invoke(*argv, "--json")
    return code, json.loads(text)


@pytest.fixture
def bad_ring(tmp_path):
    js = builtin_ring("RepS3").to_json()
    js["N"][1][1] = [1, 0, 1]  # B⊗B = A+C breaks associativity
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(js))
    return str(path)


def test_envelope_keys():
    code, env = invoke_json("check-ring", "--catalog", "Fib")
    assert code == 0
    assert set(env) == {"schema_version", "command", "config", "status", "error", "result"}
    assert env["command"] == "check-ring" and env["status"] == "pass" and env["error"] is None


def test_exit_code_fail(bad_ring):
    code, env = invoke_json("check-ring", "--file", bad_ring)
    assert code == 1 and env["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ("check-ring", "--catalog", "Nope"),
    ("check-ring",),
    ("verify-hopf", "--builtin", "3+e"),
])
def test_exit_code_input_error(argv):
    code, env = invoke_json(*argv)
    assert code == 2 and env["status"] == "error" and env["result"] is None
    assert env["error"]["code"]


def test_tolerance_env(monkeypatch):
    monkeypatch.setenv("HOPFCAT_TOLERANCE", "1e-6")
    _, env = invoke_json("check-ring", "--catalog", "Fib")
    assert env["config"]["tolerance"] == 1e-6
    monkeypatch.setenv("HOPFCAT_TOLERANCE", "abc")
    assert invoke("check-ring", "--catalog", "Fib")[0] == 2


def test_condense_rep_s3():
    code, env = invoke_json("condense", "--catalog", "RepS3", "--algebra", "A+C")
    assert code == 0
    assert env["result"]["E"]["1"] == {"A": 1, "C": 1}


def test_verify_hopf_order():
    code, env = invoke_json("verify-hopf", "--builtin", "2+tau")
    assert code == 0 and env["result"]["antipode_order"] == 10


def test_su2k():
    code, env = invoke_json("su2k", "--k", "4", "6", "10")
    rows = {r["k"]: r for r in env["result"]["reports"]}
    assert code == 0
    assert rows[4]["condensable_0k"] and rows[6]["simple"] and rows[10]["extra_bosons"] == [6]


def test_bimodule_product_text():
    code, text = invoke("bimodule-product")
    assert code == 0 and "M2,1" in text


def test_simple_check_f2():
    code, env = invoke_json("simple-check", "--class", "F_k", "--params", "2")
    assert code in (0, 1)
    assert env["result"]["condensable"]


def test_catalog_lists_keys():
    _, env = invoke_json("catalog")
    assert "RepS3" in " ".join(env["result"]["rings"])
    assert "2+tau" in env["result"]["hopf"]


@pytest.mark.parametrize("argv", [
    ("solve-hopf", "--algebra", "2+e", "--restarts", "5", "--seed", "3"),
    ("condense", "--catalog", "DFib", "--algebra", "11+ttb"),
])
def test_json_is_deterministic(argv):
    a, b = invoke(*argv, "--json"), invoke(*argv, "--json")
    assert a == b
