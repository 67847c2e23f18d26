from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ldkep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exchange_laver(capsys):
    code, out, _ = run(capsys, "exchange", "--platform", "laver", "--n", "4", "--seed-a", "1", "--seed-b", "2")
    assert code == 0
    assert "keys agree: True" in out


def test_exchange_braid_structured(capsys):
    code, out, _ = run(capsys, "exchange", "--platform", "braid-shifted", "--word-len", "6", "--format", "structured")
    assert code == 0
    recs = [json.loads(l) for l in out.splitlines()]
    assert recs[-1] == {"record": "verdict", "keys_equal": True, "encodings_equal": True}


def test_exchange_invalid_pools(capsys):
    code, _, err = run(capsys, "exchange", "--platform", "conjugacy", "--ops-a", "conj,symmetric", "--ops-b", "conj")
    assert code == 2
    assert "supported:" in err and "A={conj} B={conj}" in err


def test_exchange_corrupted_exit_code(capsys):
    code, out, _ = run(capsys, "exchange", "--platform", "conjugacy", "--degree", "16", "--corrupt", "3")
    assert code == 1
    assert "keys agree: False" in out


def test_exchange_output_file_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.jsonl", tmp_path / "b.jsonl"]
    for p in paths:
        assert run(capsys, "exchange", "--platform", "symmetric-conjugacy", "--group", "gl2", "--format", "structured",
                   "--include-private", "--output", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert capsys.readouterr().out == ""


def test_laver(capsys):
    code, out, _ = run(capsys, "laver", "--n", "1")
    assert code == 0 and out == "2 2\n1 2\n"
    assert [row.split()[0] for row in out.splitlines()] == ["2", "1"]
    assert run(capsys, "laver", "--n", "0")[1] == "1\n"
    code, _, err = run(capsys, "laver", "--n", "11")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "laver", "--n", "2", "--format", "structured")
    assert json.loads(out)["rows"][2] == [4, 4, 4, 4]


def test_trees(capsys):
    assert run(capsys, "trees", "--n", "3")[1] == "count 5\n"
    code, out, _ = run(capsys, "trees", "--validate", "1,1,2,2,3,6,6")
    assert code == 0 and "valid" in out and "invalid" not in out
    code, out, _ = run(capsys, "trees", "--validate", "1 3")
    assert code == 1 and "invalid" in out
    code, out, _ = run(capsys, "trees", "--n", "2", "--list")
    assert out == "[1, 1]\n[1, 2]\ncount 2\n"
    code, out, _ = run(capsys, "trees", "--n", "5", "--random", "4", "--seed", "1", "--format", "structured", "--list")
    recs = [json.loads(l) for l in out.splitlines()]
    assert len(recs) == 5 and recs[-1]["catalan"] == 42
    assert run(capsys, "trees", "--n", "13")[0] == 2
    assert run(capsys, "trees")[0] == 2


def test_verify_laws(capsys):
    code, out, _ = run(capsys, "verify-laws", "--platform", "laver", "--n", "3")
    assert code == 0 and "violations=0" in out and "FAIL" not in out
    code, out, _ = run(capsys, "verify-laws", "--platform", "conjugacy", "--degree", "8")
    assert code == 0 and "LD(conj)" in out
    code, out, _ = run(capsys, "verify-laws", "--platform", "braid-gen-shifted", "--a1p", "1", "--a2p", "2",
                       "--samples", "500", "--format", "structured")
    recs = [json.loads(l) for l in out.splitlines()]
    assert code == 1
    assert recs[0]["violations"] > 0 and recs[-1] == {"record": "summary", "platform": "braid-gen-shifted", "ok": False}


def test_argument_errors_exit_2(capsys):
    for argv in (["exchange", "--platform", "nope"], ["laver", "--n", "x"], [], ["trees", "--validate", "1,a"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ldkep", "laver", "--n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "2 2\n1 2\n"
