"""Command-line interface: output schemas, exit codes, byte determinism."""

import json

import pytest

from ffspectra.cli import main
from ffspectra.closed_forms import THEOREMS
from ffspectra.field import make_field


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fbct_histogram_example(capsys):
    code, out, _ = run(capsys, "fbct", "--p", "2", "--n", "4",
                       "--fn", "monomial:d=14", "--workers", "1")
    assert code == 0
    obj = json.loads(out)
    assert {tuple(pair) for pair in obj["histogram"]} == \
        {(0, 180), (4, 30)} or \
        {(p["value"], p["count"]) for p in obj["histogram"]} == \
        {(0, 180), (4, 30)}
    assert obj["uniformity"] == 4 and obj["beta"] == 4
    assert obj["nontrivial_cells"] == 210 and obj["trivial_cells"] == 46
    assert out.endswith("\n") and not out.endswith("\n\n")


def test_verify_pass_example(capsys):
    code, out, err = run(capsys, "verify", "--theorem", "L2", "--p", "2",
                         "--n", "5", "--workers", "1")
    assert code == 0 and err == ""
    obj = json.loads(out)
    assert obj["passed"] is True and obj["status"] == "passed"
    assert obj["elapsed_ms"] == 0.0


def test_kloosterman_both_example(capsys):
    code, out, _ = run(capsys, "kloosterman", "--n", "10", "--method", "both")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"n": 10, "direct": -56, "carlitz": -56}


def test_verify_failure_exit_code(capsys):
    code, out, err = run(capsys, "verify", "--theorem", "T2", "--p", "11",
                         "--n", "1", "--workers", "1")
    assert code == 1
    obj = json.loads(out)
    assert obj["status"] == "failed" and obj["passed"] is False
    assert obj["first_mismatch"]["observed"] == 2


def test_verify_hypothesis_error_exit_code(capsys):
    code, out, err = run(capsys, "verify", "--theorem", "T1", "--p", "7",
                         "--n", "1", "--workers", "1")
    assert code == 2
    assert "hypothesis not satisfied" in err
    assert json.loads(out)["status"] == "hypothesis_error"


def test_usage_errors_exit_2(capsys):
    cases = [
        ("verify", "--theorem", "NOPE", "--n", "4"),
        ("fbct", "--fn", "monomial:d=3"),                   # --n missing
        ("sumfree", "--p", "2", "--n", "4", "--fn", "monomial:d=3"),
        ("eval", "--p", "2", "--n", "4"),                   # --fn missing
        ("fbct", "--p", "2", "--n", "4", "--fn", "monomial:q/2"),
        ("verify", "--theorem", "L1", "--p", "2", "--n", "4", "--t", "3"),
    ]
    for argv in cases:
        code, out, err = run(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("error:"), argv
        assert out == ""


def test_identical_configs_are_byte_identical(tmp_path, capsys):
    argv = ["spectrum", "--p", "2", "--n", "5", "--fn", "monomial:d=30"]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--workers", "1", "--out", str(out1)]) == 0
    assert main(argv + ["--workers", "2", "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()

    v1, v2 = tmp_path / "v1.json", tmp_path / "v2.json"
    vargv = ["verify", "--theorem", "T3", "--p", "5", "--n", "2",
             "--workers", "1"]
    assert main(vargv + ["--out", str(v1)]) == 0
    assert main(vargv + ["--out", str(v2)]) == 0
    capsys.readouterr()
    assert v1.read_bytes() == v2.read_bytes()


def test_out_file_leaves_stdout_empty(tmp_path, capsys):
    path = tmp_path / "k.json"
    code, out, err = run(capsys, "kloosterman", "--n", "4",
                         "--out", str(path))
    assert code == 0 and out == "" and err == ""
    assert path.read_text().endswith("\n")
    assert json.loads(path.read_text())["direct"] == 0


def test_csv_formats(capsys):
    code, out, _ = run(capsys, "ddt", "--p", "2", "--n", "4",
                       "--fn", "monomial:d=14", "--format", "csv",
                       "--workers", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "value,count"
    assert all(len(line.split(",")) == 2 for line in lines)

    code, out, _ = run(capsys, "fbct", "--p", "2", "--n", "4",
                       "--fn", "monomial:d=14", "--format", "csv",
                       "--keep-table", "--workers", "1")
    lines = out.strip().splitlines()
    assert lines[0] == "a,b,value" and len(lines) == 1 + 16 * 16
    assert lines[1] == "0,0,16"

    code, out, _ = run(capsys, "verify", "--theorem", "L1", "--p", "2",
                       "--n", "4", "--format", "csv", "--workers", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "key,value"
    assert "passed,true" in lines and "first_mismatch,null" in lines

    code, out, _ = run(capsys, "kloosterman", "--n", "7", "--format", "csv")
    assert out.strip().splitlines() == ["n,7", "direct,-12", "carlitz,-12"]


def test_field_summaries(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--n", "4")
    f = make_field(2, 4)
    obj = json.loads(out)
    assert code == 0
    assert obj["p"] == 2 and obj["n"] == 4 and obj["q"] == 16
    assert obj["char2"] is True and obj["modulus"] == f.modulus_text()
    assert obj["omega"] is not None and \
        f.mul_code(obj["omega"], f.mul_code(obj["omega"], obj["omega"])) == 1

    code, out, _ = run(capsys, "field", "--p", "2", "--n", "5")
    assert json.loads(out)["omega"] is None

    code, out, _ = run(capsys, "field", "--p", "7", "--n", "1",
                       "--format", "csv")
    assert "char2,False" in out.splitlines()


def test_eval_with_table_file(tmp_path, capsys):
    path = tmp_path / "tbl.txt"
    path.write_text("7, 6, 5, 4,\n3, 2, 1, 0\n")
    code, out, _ = run(capsys, "eval", "--p", "2", "--n", "3",
                       "--fn", f"table:@{path}")
    assert code == 0
    obj = json.loads(out)
    assert obj["values"] == [7, 6, 5, 4, 3, 2, 1, 0]

    code, out, _ = run(capsys, "eval", "--p", "2", "--n", "3",
                       "--fn", "table:7,6,5,4,3,2,1,0", "--format", "csv")
    assert out.splitlines()[:3] == ["x,F(x)", "0,7", "1,6"]


def test_flats_and_sumfree_commands(capsys):
    code, out, _ = run(capsys, "flats", "--p", "2", "--n", "4",
                       "--fn", "monomial:d=14", "--list")
    assert code == 0
    obj = json.loads(out)
    assert obj["total_two_flats"] == 140 and obj["vanishing_count"] == 5
    assert len(obj["blocks"]) == 5

    code, out, _ = run(capsys, "sumfree", "--p", "2", "--n", "4",
                       "--fn", "monomial:d=3", "--k", "2")
    obj = json.loads(out)
    assert code == 0 and obj["is_sum_free"] is True

    code, out, _ = run(capsys, "sumfree", "--p", "2", "--n", "4",
                       "--fn", "monomial:d=14", "--k", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert "is_sum_free,false" in lines
    assert any(line.startswith("violating_flat,") and "|" in line
               for line in lines)


def test_verify_with_gamma(capsys):
    f = make_field(2, 4)
    g = next(g for g in range(1, 16)
             if f.trace_code(f.pow_code(g, 3)) == 0)
    code, out, _ = run(capsys, "verify", "--theorem", "T7", "--p", "2",
                       "--n", "4", "--t", "1", "--gamma",
                       f.from_code(g).text, "--workers", "1")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["params"]["gamma"] == f.from_code(g).text


def test_list_theorems(capsys):
    code, out, _ = run(capsys, "list-theorems")
    assert code == 0
    obj = json.loads(out)
    assert [row["id"] for row in obj["theorems"]] == list(THEOREMS)
    assert all(row["summary"] for row in obj["theorems"])

    code, out, _ = run(capsys, "list-theorems", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "id,summary" and len(lines) == 1 + len(THEOREMS)
