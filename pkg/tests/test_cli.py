from __future__ import annotations

import json
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from flatcover.cli import run

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"



def test_encode_decode_byte_round_trip(tmp_path, capsys):
    enc, out = tmp_path / "m.enc", tmp_path / "m.matroid"
    src = DATA / "sole_nonbasis_4_2.matroid"
    for method in ("kw", "dominating"):
        assert run(["encode", "--in", str(src), "--method", method, "--out", str(enc)]) == 0
        assert run(["decode", "--in", str(enc), "--out", str(out)]) == 0
        assert out.read_bytes() == src.read_bytes()
    capsys.readouterr()


def test_census_total(capsys):
    assert run(["census", "--n", "6"]) == 0
    total = capsys.readouterr().out.splitlines()[-1].split()
    assert total[0] == "total" and total[-1] == "98"


def test_census_single_rank_and_emit(tmp_path, capsys):
    assert run(["census", "--n", "3", "--rank", "1", "--emit-matroids", str(tmp_path)]) == 0
    assert len(list(tmp_path.glob("*.matroid"))) == 7
    assert "total" not in capsys.readouterr().out


def test_johnson_info(capsys):
    assert run(["johnson", "--n", "4", "--r", "2", "info"]) == 0
    assert "N=6 d=4 lambda=2 alpha=1/3" in capsys.readouterr().out.splitlines()


def test_bounds_json(capsys):
    assert run(["bounds", "--n-max", "6", "--json", "--census-max", "4"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["n"] for r in rows] == [2, 3, 4, 5, 6]


def test_exit_codes(tmp_path, capsys):
    assert run(["census"]) == 1
    assert run(["frobnicate"]) == 1
    assert run(["johnson", "--n", "4", "--r", "5", "info"]) == 1
    assert run(["decode", "--in", str(tmp_path / "missing.enc"), "--out", str(tmp_path / "x")]) == 2
    bad = tmp_path / "bad.enc"
    bad.write_text("encmatroid 1 4 2 kw 0\nN 0 1\nN 0 2\nN 0 3\nN 1 2\nN 1 3\nN 2 3\n")
    assert run(["decode", "--in", str(bad), "--out", str(tmp_path / "x")]) == 3
    broken = tmp_path / "broken.matroid"
    broken.write_text("matroid 1 4 2\n0 1\n2 3\n")
    assert run(["encode", "--in", str(broken), "--out", str(tmp_path / "y")]) == 3
    assert run(["census", "--n", "9"]) == 4
    capsys.readouterr()


def test_kw_rejects_wrong_size_vertex(tmp_path, capsys):
    k = tmp_path / "k.txt"
    k.write_text("0 1\n")
    assert run(["kw", "--n", "6", "--r", "3", "--k", str(k)]) == 3
    capsys.readouterr()


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "flatcover", "johnson", "--n", "4", "--r", "2", "max-stable"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout == "2\n"


def test_readme_examples_match_manifest():
    manifest = json.loads((ROOT / "golden" / "manifest.json").read_text())
    documented = [
        shlex.split(line[len("$ flatcover "):])
        for line in (ROOT / "README.md").read_text().splitlines()
        if line.startswith("$ flatcover ")
    ]
    assert documented == [entry["argv"] for entry in manifest]


@pytest.mark.parametrize("seed", [1, 2])
def test_verify_quick_single_check_deterministic(seed):
    from flatcover.verify import run_check

    a, b = run_check(4, "quick", seed), run_check(4, "quick", seed)
    assert a.passed and a.detail == b.detail
