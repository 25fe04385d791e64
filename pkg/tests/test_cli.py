import json

import pytest

from kshift import cache
from kshift.cli import main


@pytest.fixture(autouse=True)
def isolated_cache():
    """CLI runs mutate the process-global cache; restore it per test."""
    saved_dir, saved_enabled = cache.CACHE.directory, cache.CACHE.enabled
    yield
    cache.CACHE.configure(directory=saved_dir or "", enabled=saved_enabled)
    cache.CACHE.directory = saved_dir


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_compute_examples(capsys):
    code, out = run_cli(capsys, "compute", "--func", "GQ", "--outer", "1", "--vars", "1", "--max-deg", "2")
    assert code == 0 and out.strip() == "2*x1 + b*x1^2"
    code, out = run_cli(capsys, "compute", "--func", "GP", "--outer", "")
    assert code == 0 and out.strip() == "1"
    code, out = run_cli(capsys, "compute", "--func", "gp", "--outer", "2,1", "--vars", "2")
    assert code == 0 and "x1^2*x2" in out


def test_compute_json_and_text_agree(capsys):
    code, text_out = run_cli(capsys, "compute", "--func", "GQ", "--outer", "2", "--vars", "2", "--max-deg", "4")
    code2, json_out = run_cli(
        capsys, "compute", "--func", "GQ", "--outer", "2", "--vars", "2", "--max-deg", "4", "--format", "json"
    )
    assert code == code2 == 0
    obj = json.loads(json_out)
    assert obj["vars"] == 2
    assert any(t["coeff"] == "2" and t["exps"] == [2, 0] for t in obj["terms"])
    assert "2*x1^2" in text_out


def test_compute_beta_specialization(capsys):
    code, out = run_cli(
        capsys, "compute", "--func", "GQ", "--outer", "1", "--vars", "1", "--max-deg", "3", "--beta", "1"
    )
    assert code == 0 and out.strip() == "2*x1 + 1*x1^2"


def test_expand_examples(capsys):
    code, out = run_cli(
        capsys, "expand", "--target", "GQ", "--basis", "GP", "--outer", "3,2",
        "--vars", "3", "--max-deg", "8", "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["residual_zero"] is True
    table = {c["index"]: c["beta"] for c in obj["coeffs"]}
    assert table == {"3,2": [4], "4,2": [0, 2], "4,3": [0, 0, -1]}
    code, out = run_cli(
        capsys, "expand", "--target", "GP", "--basis", "GP", "--outer", "2,1", "--vars", "2", "--max-deg", "6",
        "--format", "json",
    )
    obj = json.loads(out)
    assert code == 0 and {c["index"]: c["beta"] for c in obj["coeffs"]} == {"2,1": [1]}
    code, out = run_cli(
        capsys, "expand", "--target", "gq", "--basis", "gp", "--outer", "3", "--vars", "2", "--max-deg", "6",
        "--format", "json",
    )
    obj = json.loads(out)
    assert code == 0 and {c["index"]: c["beta"] for c in obj["coeffs"]} == {"3": [2], "2": [0, 1]}


def test_verify_exit_codes(capsys):
    code, out = run_cli(capsys, "verify", "--id", "overlap-matrix", "--max-part", "4", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "PASS" and report["witness"] is None


def test_verify_manifest(tmp_path, capsys):
    manifest = tmp_path / "manifest.json"
    manifest.write_text(
        json.dumps(
            [
                {"id": "overlap-matrix", "params": {"max_part": 3}},
                {"id": "onerow-series", "params": {"max_power": 1, "nvars": 1, "max_deg": 3}},
            ]
        )
    )
    code, out = run_cli(capsys, "verify", "--manifest", str(manifest), "--format", "json")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert [r["status"] for r in lines] == ["PASS", "PASS"]


def test_enumerate_examples(capsys):
    code, out = run_cli(
        capsys, "enumerate", "--family", "setshyt-q", "--outer", "1", "--max-value", "1", "--count-only"
    )
    assert code == 0 and out.strip() == "3"
    code, out = run_cli(
        capsys, "enumerate", "--family", "shrpp-p", "--outer", "2,1", "--max-value", "2", "--count-only"
    )
    assert code == 0 and out.strip() == "5"
    code, out = run_cli(
        capsys, "enumerate", "--family", "shyt-p", "--outer", "2,1", "--inner", "2,1", "--max-value", "2"
    )
    assert code == 0 and out.strip() == ""


def test_usage_errors_exit_2(capsys):
    assert main(["compute", "--func", "GP", "--outer", "2,3"]) == 2  # not strict
    assert main(["enumerate", "--family", "nope", "--outer", "1", "--max-value", "1"]) == 2
    assert main(["verify"]) == 2  # neither --id nor --manifest


def test_cache_transparency(tmp_path, capsys):
    cache.CACHE.clear_memory()
    args = ["compute", "--func", "GQ", "--outer", "2,1", "--vars", "2", "--max-deg", "5", "--format", "json"]
    code1, out1 = run_cli(capsys, "--cache-dir", str(tmp_path), *args)
    code2, out2 = run_cli(capsys, "--cache-dir", str(tmp_path), *args)  # warm cache
    code3, out3 = run_cli(capsys, "--no-cache", *args)
    assert code1 == code2 == code3 == 0
    assert out1 == out2 == out3
    assert list(tmp_path.glob("*.json"))


def test_config_file_and_env(tmp_path, capsys, monkeypatch):
    config = tmp_path / "kshift.conf"
    config.write_text("format=json\n")
    code, out = run_cli(
        capsys, "--config", str(config), "compute", "--func", "GP", "--outer", "1", "--vars", "1", "--max-deg", "2"
    )
    assert code == 0
    assert json.loads(out)["vars"] == 1
    monkeypatch.setenv("KSHIFT_JOBS", "2")
    code, out = run_cli(capsys, "verify", "--id", "flip", "--max-size", "3", "--nvars", "2", "--max-deg", "5")
    assert code == 0 and "PASS" in out
