import json
import subprocess
import sys

import pytest

from reference_ops import b10_8i, curve_8i, l4_8i
from weylcomm.cli import main, run_command
from weylcomm.parse import parse_operator, parse_polynomial

L4 = "(D^2+x^4+1)^2+8*i*D+16*x^2"


@pytest.fixture
def b10_file(tmp_path):
    path = tmp_path / "B10.op"
    path.write_text("# order-10 partner\n" + str(b10_8i()) + "\n", encoding="utf-8")
    return f"@{path}"


def _json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_commutator_text(capsys):
    assert main(["commutator", "--L", "D", "--M", "x"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "commutator: 1"


def test_document_shape(capsys):
    code, doc = _json(capsys, ["mul", "--L", "D", "--M", "x"])
    assert code == 0
    assert set(doc) == {"command", "inputs", "outputs", "provenance"}
    assert doc["command"] == "mul"
    assert parse_operator(doc["outputs"]["product"]) == parse_operator("x*D + 1")
    prov = doc["provenance"]
    assert prov["tool"] == "weylcomm" and prov["exact"] is False
    assert {"version", "seconds"} <= set(prov)


def test_text_and_json_agree(capsys):
    argv = ["resultant", "--L", "D^2 - lam", "--M", "D^3 - mu"]
    assert main(argv) == 0
    text = capsys.readouterr().out
    _, doc = _json(capsys, argv)
    assert f"resultant: {doc['outputs']['resultant']}" in text


def test_deterministic_output():
    argv = ["newton", "--L", L4]
    a, _, _ = run_command(argv)
    b, _, _ = run_command(argv)
    a["provenance"].pop("seconds")
    b["provenance"].pop("seconds")
    assert a == b


def test_spectral_curve_from_file(capsys, b10_file):
    code, doc = _json(capsys, ["spectral-curve", "--L", L4, "--M", b10_file])
    assert code == 0
    assert doc["outputs"]["r"] == 2
    assert parse_polynomial(doc["outputs"]["h"]) == curve_8i().h
    assert doc["provenance"]["determinant_path"] == "interpolated"


def test_gcd_at_point(capsys, b10_file):
    code, doc = _json(capsys, ["gcd-at-point", "--L", L4, "--M", b10_file, "--lambda", "0", "--mu", "0"])
    assert code == 0
    g = parse_operator(doc["outputs"]["gcd"])
    assert g.order == 2


def test_domain_error_exit_code(capsys):
    code = main(["gcd-at-point", "--L", "D^2", "--M", "D^3", "--lambda", "0", "--mu", "0"])
    assert code == 1
    assert "SingularPoint" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["mul", "--L", "D^q", "--M", "x"],
        ["no-such-command"],
        ["mul", "--L", "D"],
        ["mul", "--L", "@/nonexistent/file.op", "--M", "x"],
        ["dixmier-test", "--L", L4, "--M", "D", "--filtration", "1"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.strip()


def test_json_error_document(capsys):
    code = main(["mul", "--L", "D^q", "--M", "x", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2 and out["exit_code"] == 2 and "line 1, column 3" in out["error"]


def test_curve_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WEYLCOMM_CACHE", str(tmp_path / "cache"))
    argv = ["spectral-curve", "--L", "D^2", "--M", "D^3"]
    _, first = _json(capsys, argv)
    files = list((tmp_path / "cache").iterdir())
    assert len(files) == 1
    _, second = _json(capsys, argv)
    assert first["outputs"] == second["outputs"]
    # a stale entry would be returned verbatim, proving the cache is read
    entry = json.loads(files[0].read_text())
    entry["r"] = 7
    files[0].write_text(json.dumps(entry))
    _, third = _json(capsys, argv)
    assert third["outputs"]["r"] == 7


def test_order_constraints_and_dixmier(capsys):
    code, doc = _json(capsys, ["order-constraints", "--L", "(D^3 + x^2 + 3)^2 + 2*D"])
    assert code == 0 and doc["outputs"]["residues"] == [0, 3] and doc["outputs"]["modulus"] == 6
    code, doc = _json(capsys, ["dixmier-test", "--L", "D^2 + x^3", "--M", "D^2 + x^3"])
    assert code == 0 and doc["outputs"]["verdict"] == "Pass"


def test_centralizer_and_triviality(capsys):
    code, doc = _json(capsys, ["centralizer-search", "--L", "D^2", "--order", "3", "--degbound", "0"])
    assert code == 0
    code, doc = _json(capsys, ["triviality-test", "--L", L4, "--M", f"({L4})^2"])
    assert code == 0 and doc["outputs"]["verdict"] == "Trivial"


def test_verify_relation(capsys, b10_file):
    h = str(curve_8i().h)
    code, doc = _json(capsys, ["verify-relation", "--L", L4, "--M", b10_file, "--relation", h])
    assert code == 0 and doc["outputs"]["holds"] is True


def test_bc_pair(capsys, b10_file):
    code, doc = _json(capsys, ["bc-pair", "--L", L4, "--M", b10_file])
    assert code == 0
    assert doc["outputs"]["verdict"] == "AlreadyBCPair"
    assert parse_operator(doc["outputs"]["B"]) == b10_8i()


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "weylcomm", "commutator", "--L", "D", "--M", "x^2"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip().endswith("2*x")


def test_l4_argument_matches_reference():
    assert parse_operator(L4) == l4_8i()
