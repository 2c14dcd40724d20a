import json

import pytest

from permword.cli import main


@pytest.fixture()
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PERMWORD_CACHE", str(tmp_path / "cache"))
    return tmp_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_synth_text(capsys, cache):
    code, out, _ = run_cli(capsys, "synth", "1 3 5 2 4")
    assert code == 0
    assert "word: tststsTsTTTTstt" in out
    assert "length: 15" in out
    assert "budget: 48" in out
    assert "verified: true" in out


def test_synth_json(capsys, cache):
    code, out, _ = run_cli(capsys, "synth", "--hard", "6", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 6
    assert doc["verified"] is True
    assert doc["length"] <= doc["budget"] == 75


def test_synth_identity(capsys, cache):
    code, out, _ = run_cli(capsys, "synth", "1 2 3")
    assert code == 0
    assert "word: (empty)" in out and "length: 0" in out


def test_bound_json(capsys, cache):
    code, out, _ = run_cli(capsys, "bound", "--hard", "11", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {
        "n",
        "displacement_lb",
        "word_lb",
        "upper_len",
        "upper_formula",
        "exact",
        "permutation",
    }
    assert doc["word_lb"] >= 23
    assert doc["exact"] is None


def test_bound_exact(capsys, cache):
    code, out, _ = run_cli(
        capsys, "bound", "2 1 3 4", "--exact", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["exact"] == 1
    assert doc["word_lb"] <= 1 <= doc["upper_len"]


def test_bound_exact_too_large(capsys, cache):
    code, _, err = run_cli(capsys, "bound", "--hard", "64", "--exact")
    assert code == 4
    assert "error" in err


def test_oracle_spheres_bare_csv(capsys, cache):
    code, out, _ = run_cli(capsys, "oracle", "--n", "3", "spheres")
    assert code == 0
    assert out == "0,1\n1,3\n2,2\n"


def test_oracle_spheres_json(capsys, cache):
    code, out, _ = run_cli(
        capsys, "oracle", "--n", "4", "spheres", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 4
    assert doc["spheres"][:2] == [1, 3]
    assert sum(doc["spheres"]) == 24


def test_oracle_query(capsys, cache):
    code, out, _ = run_cli(capsys, "oracle", "--n", "4", "query", "2 3 4 1")
    assert code == 0
    assert "complexity: 1" in out
    assert "word: t" in out


def test_oracle_query_uses_cache(capsys, cache):
    run_cli(capsys, "oracle", "--n", "4", "build")
    code, out, err = run_cli(capsys, "oracle", "--n", "4", "query", "1 3 2 4")
    assert code == 0
    assert "BFS" not in err  # second run loads the cached table
    assert "complexity: 3" in out


def test_oracle_build_json(capsys, cache):
    code, out, _ = run_cli(capsys, "oracle", "--n", "5", "build", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["states"] == 120
    assert doc["diameter"] == 10


def test_oracle_export(capsys, cache, tmp_path):
    dest = tmp_path / "table.pwc"
    code, _, _ = run_cli(capsys, "oracle", "--n", "4", "export", str(dest))
    assert code == 0
    assert dest.read_bytes()[:4] == b"PWC1"


def test_oracle_too_large(capsys, cache):
    code, _, err = run_cli(capsys, "oracle", "--n", "11", "build")
    assert code == 4


def test_oracle_query_missing_arg(capsys, cache):
    code, _, _ = run_cli(capsys, "oracle", "--n", "4", "query")
    assert code == 2


def test_bumpy_json(capsys, cache):
    code, out, _ = run_cli(capsys, "bumpy", "--hard", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"n", "b", "c", "counts", "is_bumpy", "worst_shift"}
    assert doc["is_bumpy"] is True


def test_bumpy_custom_params(capsys, cache):
    code, out, _ = run_cli(
        capsys, "bumpy", "--hard", "12", "--b", "1/6", "--c", "1/3",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["b"] == "1/6" and doc["c"] == "1/3"


def test_bumpy_rejects_bad_params(capsys, cache):
    code, _, _ = run_cli(capsys, "bumpy", "1 2 3", "--b", "3/4", "--c", "1/4")
    assert code == 2
    code, _, _ = run_cli(capsys, "bumpy", "1 2 3", "--b", "1/8")
    assert code == 2


def test_fraction_json_contract(capsys, cache):
    code, out, _ = run_cli(
        capsys, "fraction", "--n", "8", "--samples", "500", "--seed", "7",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {
        "n",
        "samples",
        "seed",
        "b",
        "c",
        "bumpy_count",
        "fraction",
        "ci_low",
        "ci_high",
    }
    assert doc["seed"] == 7 and doc["samples"] == 500


def test_parse_error_exit_code(capsys, cache):
    assert run_cli(capsys, "synth", "1 5 2")[0] == 2
    assert run_cli(capsys, "synth", "one two")[0] == 2
    assert run_cli(capsys, "synth")[0] == 2  # no permutation at all


def test_hard_and_perm_conflict(capsys, cache):
    assert run_cli(capsys, "synth", "1 2 3", "--hard", "5")[0] == 2


def test_verify_counting(capsys, cache):
    code, out, _ = run_cli(capsys, "verify", "--suite", "counting")
    assert code == 0
    assert "PASS suite=counting" in out


def test_verify_profile_json(capsys, cache):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "profile", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc == {"suite": "profile", "passed": True, "failures": []}
