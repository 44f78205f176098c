import json
import subprocess
import sys

import pytest

from hopfexp import io
from hopfexp.cli import main


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def doc_at(path):
    return json.loads(open(path, encoding="utf-8").read())


def test_build_documents(run):
    code, _, _ = run("build", "taft", "--n", "3", "--field", "cyclotomic:3", "--out", "t3.json")
    assert code == 0 and doc_at("t3.json")["dim"] == 9
    code, out, _ = run("build", "group", "--table", "z6", "--field", "rational")
    assert code == 0 and json.loads(out)["dim"] == 6
    code, _, err = run("build", "taft", "--n", "3", "--field", "rational")
    assert code == 2 and "NoPrimitiveRoot" in err


def test_build_rejects_bad_tables(run, tmp_path):
    (tmp_path / "bad.json").write_text(json.dumps({"table": [[0, 1], [1, 1]]}))
    code, _, err = run("build", "group", "--table", "bad.json")
    assert code == 2 and "InvalidGroupTable" in err
    (tmp_path / "z2.json").write_text(json.dumps({"table": [[0, 1], [1, 0]], "names": ["e", "s"]}))
    assert run("build", "group", "--table", "z2.json", "--out", "g.json")[0] == 0
    assert doc_at("g.json")["basis"] == ["e", "s"]
    assert run("build", "taft")[0] == 2
    assert run("build", "nonsense")[0] == 2


def test_build_outputs_are_canonical(run):
    run("build", "h4", "--out", "a.json")
    run("build", "taft", "--n", "2", "--out", "b.json")
    a, b = doc_at("a.json"), doc_at("b.json")
    a["metadata"].pop("construction"), b["metadata"].pop("construction")
    assert io.canonical_json(a) == io.canonical_json(b)


def test_exp_command(run):
    run("build", "group", "--table", "z6", "--out", "z6.json")
    code, out, _ = run("exp", "z6.json", "--i", "0")
    assert code == 0 and "= 6" in out
    run("build", "h4", "--out", "h4.json")
    code, out, _ = run("exp", "h4.json", "--i", "-1", "--format", "json")
    res = json.loads(out)["exponent"]
    assert code == 0 and res["value"] == "infinite"
    assert res["period"]["evidence"]["type"] in ("NonSquarefree", "NonCyclotomicFactor")
    run("build", "h4", "--field", "prime:3", "--out", "h4f3.json")
    _, out, _ = run("exp", "h4f3.json", "--i", "0", "--format", "json")
    decided = json.loads(out)["exponent"]["value"]
    code, out, _ = run("exp", "h4f3.json", "--i", "0", "--method", "iterate", "--bound", "50", "--format", "json")
    assert code == 0 and json.loads(out)["exponent"]["value"] == decided == 6


def test_exp_rejects_broken_documents(run, tmp_path):
    run("build", "h4", "--out", "h4.json")
    doc = doc_at("h4.json")
    doc["comult"] = doc["comult"][1:]
    (tmp_path / "broken.json").write_text(json.dumps(doc))
    code, _, err = run("exp", "broken.json")
    assert code == 2 and "AxiomViolation" in err
    (tmp_path / "junk.json").write_text("{not json")
    assert run("exp", "junk.json")[0] == 2
    assert run("exp", "missing.json")[0] == 2


def test_transforms(run):
    run("build", "h4", "--field", "prime:3", "--out", "h4.json")
    assert run("transform", "h4.json", "double", "--out", "d.json")[0] == 0
    d = doc_at("d.json")
    assert d["dim"] == 16 and d["metadata"]["provenance"]["op"] == "double"
    run("build", "taft", "--n", "3", "--field", "prime:7", "--out", "t3.json")
    assert run("transform", "t3.json", "smash-s2", "--out", "s.json")[0] == 0
    s = doc_at("s.json")
    assert s["dim"] == 27 and s["metadata"]["pivot"]["name"] == "1#S^2"
    for op in ("dual", "op", "cop"):
        assert run("transform", "h4.json", op, "--out", f"{op}.json")[0] == 0
    assert run("transform", "h4.json", "tensor", "--with", "dual.json", "--out", "t.json")[0] == 0
    assert doc_at("t.json")["dim"] == 16
    assert run("transform", "h4.json", "tensor")[0] == 2


def test_twist_transform(run, tmp_path):
    run("build", "dual-group", "--table", "k4", "--out", "k4.json")
    run("build", "beta-twist", "--out", "beta.json")
    code, _, _ = run("transform", "k4.json", "twist", "--twist", "beta.json", "--out", "tw.json")
    assert code == 0
    assert run("check", "tw.json")[0] == 0
    run("build", "h4", "--out", "h4.json")
    assert run("transform", "h4.json", "twist", "--twist", "beta.json")[0] == 2
    # a cocycle that is not counital
    beta = doc_at("beta.json")
    beta["J"] = [[i, j, "2" if v == "1" else "-2"] for i, j, v in beta["J"]]
    beta.pop("J_inverse", None)
    (tmp_path / "bad.json").write_text(json.dumps(beta))
    code, _, err = run("transform", "k4.json", "twist", "--twist", "bad.json", "--format", "json")
    assert code == 2 and "InvalidTwist" in err and '"report"' in err


def test_check_reports_failures(run, tmp_path):
    run("build", "h4", "--out", "h4.json")
    assert run("check", "h4.json")[0] == 0
    doc = doc_at("h4.json")
    doc["comult"] = doc["comult"][1:]
    (tmp_path / "broken.json").write_text(json.dumps(doc))
    code, out, _ = run("check", "broken.json", "--format", "json")
    assert code == 1 and not json.loads(out)["axioms"]["ok"]


def test_coradical_grouplikes_primitive(run, tmp_path):
    run("build", "taft", "--n", "3", "--field", "cyclotomic:3", "--out", "t3.json")
    code, out, _ = run("coradical", "t3.json", "--format", "json")
    res = json.loads(out)
    assert code == 0 and res["h0_dim"] == 3 and res["loewy_length"] == 3 and res["dual_chevalley"]
    code, out, _ = run("grouplikes", "t3.json", "--format", "json")
    gl = json.loads(out)["grouplikes"]
    assert [g["order"] for g in gl] == [1, 3, 3] and any(g["pivotal"] for g in gl)
    code, out, _ = run("primitive", "t3.json", "--simple", "1", "--format", "json")
    block = json.loads(out)["blocks"][0]
    assert code == 0 and block["nontrivial_dim"] == 1 and len(block["s2_eigenvalues"]) == 1
    assert run("primitive", "t3.json", "--simple", "7")[0] == 2
    # declared coradical in the metadata is verified
    doc = doc_at("t3.json")
    doc["metadata"]["coradical_basis"] = [[("1" if k == j else "0") for k in range(9)] for j in (0, 3, 6)]
    (tmp_path / "decl.json").write_text(json.dumps(doc))
    code, out, _ = run("coradical", "decl.json", "--format", "json")
    assert code == 0 and json.loads(out)["declared_coradical"]["ok"]
    doc["metadata"]["coradical_basis"] = doc["metadata"]["coradical_basis"][:2]
    (tmp_path / "decl2.json").write_text(json.dumps(doc))
    assert run("coradical", "decl2.json")[0] == 1


def test_verify_theorems(run):
    run("build", "group", "--table", "s3", "--out", "s3.json")
    code, _, _ = run("verify-theorems", "s3.json", "--suite", "all", "--out", "rep.json")
    rep = doc_at("rep.json")
    assert code == 0 and rep["kind"] == "verification_report"
    names = {c["name"]: c["status"] for c in rep["checks"]}
    assert names["involutory_equality"] == "pass" and names["exp_divides_dim_cubed"] == "pass"
    assert rep["subject"].startswith("sha256:")
    run("build", "h4", "--field", "prime:3", "--out", "h4.json")
    code, out, _ = run("verify-theorems", "h4.json", "--suite", "finiteness")
    assert code == 0 and "exp0_divides_Np^M" in out
    run("build", "taft", "--n", "3", "--field", "prime:7", "--out", "t3.json")
    code, out, _ = run("verify-theorems", "t3.json", "--suite", "smash", "--format", "json")
    checks = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
    assert code == 0 and checks["smash_lcm_twisted"] == "pass" and checks["smash_lcm_exp"] == "pass"


def test_reports_are_deterministic(run):
    run("build", "h4", "--field", "prime:5", "--out", "h4.json")
    run("verify-theorems", "h4.json", "--suite", "finiteness", "--out", "a.json")
    run("verify-theorems", "h4.json", "--suite", "finiteness", "--out", "b.json")
    assert open("a.json").read() == open("b.json").read()


def test_usage_errors(run):
    assert run()[0] == 2
    assert run("exp")[0] == 2
    assert run("--help")[0] == 0


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "hopfexp", "build", "h4", "--format", "json"],
                         capture_output=True, text=True, cwd=tmp_path)
    assert out.returncode == 0 and json.loads(out.stdout)["dim"] == 4
