import io
import json
import subprocess
import sys

import pytest

from biprod.cli import run


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def tsv_to_records(text):
    lines = text.splitlines()
    cols = lines[0].split("\t")
    return [dict(zip(cols, l.split("\t"))) for l in lines[1:]]


@pytest.mark.parametrize("argv", [
    ["classify", "abelian", "--group", "abelian:2,2", "--datum", "c=1,0;c12=1"],
    ["classify", "cyclic", "--m", "6", "--c", "2"],
    ["classify", "ddn", "--n", "3", "--p", "1"],
    ["conic", "--m1", "2", "--m2", "4", "--datum", "c=1,2"],
])
def test_json_matches_tsv_and_is_deterministic(argv):
    c1, tsv, _ = call(argv)
    c2, tsv2, _ = call(argv)
    c3, js, _ = call(argv + ["--format", "json"])
    assert c1 == c2 == c3 == 0 and tsv == tsv2
    as_str = [{k: str(v) for k, v in r.items()} for r in json.loads(js)]
    assert as_str == tsv_to_records(tsv)


def test_classify_all_data_default():
    code, out, _ = call(["classify", "abelian", "--group", "abelian:2,2"])
    assert code == 0 and len(out.splitlines()) == 25


def test_snf_method_flag_agrees():
    base = ["classify", "abelian", "--group", "abelian:2,2,2", "--datum", "c123=1"]
    assert call(base)[1] == call(base + ["--method", "snf"])[1]


def test_orbits_json():
    code, out, _ = call(["orbits", "--dim4", "--format", "json"])
    assert code == 0 and json.loads(out) == {"orbits": 12}


def test_snf_file(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("2 4\n6 8\n")
    code, out, _ = call(["snf", str(p)])
    assert code == 0
    lines = out.splitlines()
    assert lines[lines.index("diag") + 1] == "2 4"
    code, js, _ = call(["snf", str(p), "--format", "json"])
    assert json.loads(js)["diag"] == [2, 4]


@pytest.mark.parametrize("content", ["1 x\n", "1 2\n3\n", ""])
def test_snf_bad_file(tmp_path, content):
    p = tmp_path / "m.txt"
    p.write_text(content)
    assert call(["snf", str(p)])[0] == 1
    assert call(["snf", str(tmp_path / "missing.txt")])[0] == 1


def test_verify_pass_and_pq():
    code, out, _ = call(["verify", "--preset", "h4", "--pq"])
    assert code == 0
    names = [l.split("\t")[0] for l in out.splitlines()]
    assert "pentagon" in names and "pqr" in names
    assert all(l.endswith("PASS") for l in out.splitlines())


def test_biproduct_from_group_and_preset():
    code, out, _ = call(["biproduct", "--group", "abelian:2,2", "--datum", "c=0,0;c12=0",
                         "--pair", "f=0,1;lambda=0,1", "--check"])
    assert code == 0 and out.startswith("dim\t8")
    code, out, _ = call(["biproduct", "--preset", "kC2", "--sigma", "g=-1", "--v", "g"])
    assert code == 0 and out.splitlines()[0] == "dim\t4"


def test_biproduct_failing_pair_exits_1():
    code, out, _ = call(["biproduct", "--preset", "h2", "--sigma", "g=-1", "--v", "g"])
    assert code == 1 and "FAIL coproduct" in out


@pytest.mark.parametrize("argv", [
    ["classify", "abelian", "--group", "ddn:2"],
    ["classify", "abelian", "--group", "abelian:2,2", "--datum", "c=5,0"],
    ["classify", "cyclic", "--m", "4"],
    ["biproduct", "--group", "abelian:2,2", "--datum", "c=0,0", "--pair", "f=0,0;lambda=0,0"],
    ["biproduct", "--preset", "kC2", "--sigma", "q=-1", "--v", "g"],
    ["verify", "--preset", "nope"],
    ["classify", "abelian", "--group", "abelian:30,30,30", "--datum", "c=0,0,0", "--cap", "100"],
])
def test_domain_errors_exit_1(argv):
    code, _, err = call(argv)
    assert code == 1 and err.startswith("error:")


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["orbits"], ["classify", "abelian", "--format", "xml"]])
def test_usage_errors_exit_2(argv, capsys):
    assert call(argv)[0] == 2


def test_out_file(tmp_path):
    p = tmp_path / "o.tsv"
    code, out, _ = call(["orbits", "--cyclic", "8", "--out", str(p)])
    assert code == 0 and out == "" and p.read_text() == "8\n"
    assert call(["orbits", "--cyclic", "8", "--out", str(tmp_path / "no" / "o.tsv")])[0] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "biprod", "orbits", "--cyclic", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "4\n"


def test_trivial_datum_on_c2_c3_matches_direct_search():
    """An untwisted group algebra of even order always has pairs; the rows match the oracle."""
    from biprod import cocycles as cc
    from biprod.groups import AbelianGroup
    from oracles import rho_search

    code, out, _ = call(["classify", "abelian", "--group", "abelian:2,3", "--datum", "c=0,0;c12=0"])
    rows = tsv_to_records(out)
    G = AbelianGroup((2, 3))
    om = cc.omega_abelian_cochain(G, cc.CocycleDatum((0, 0)))
    found = rho_search(G, om.table, om.modulus)
    assert code == 0 and len(rows) == len(found) == 5
    assert {r["f"] for r in rows} == {",".join(map(str, f)) for f, _, _ in found}
