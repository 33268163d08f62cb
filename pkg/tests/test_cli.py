"""Command-line behavior: formats, determinism, exit codes, caching."""

import json
import subprocess
import sys

import pytest

from partwaves.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_runconfig_validation():
    with pytest.raises(ValueError):
        RunConfig(command="coeff", format="xml")
    with pytest.raises(ValueError):
        RunConfig(command="coeff", digits=0)
    with pytest.raises(ValueError):
        RunConfig(command="coeff", andrews_budget=0)


def test_coeff_all_routes_n2(capsys):
    code, out, _ = run(capsys, "coeff", "0", "1", "1", "2", "--algo", "all")
    assert code == 0
    assert out.count("-1/4") == 4
    assert "routes agree" in out


def test_coeff_half_integer_root(capsys):
    code, out, _ = run(capsys, "coeff", "1", "2", "1", "2")
    assert code == 0
    assert "1/4" in out


def test_coeff_out_of_range_l_is_zero(capsys):
    code, out, _ = run(capsys, "coeff", "0", "1", "4", "3", "--algo", "all")
    assert code == 0
    assert "routes agree" in out
    payload_code, payload, _ = run(capsys, "--format", "json",
                                   "coeff", "0", "1", "4", "3", "--algo", "all")
    data = json.loads(payload)
    assert data["agree"] is True
    assert all(v["coeffs"] == ["0"] for v in data["values"].values())


def test_coeff_usage_error(capsys):
    code, _, err = run(capsys, "coeff", "2", "4", "1", "8")
    assert code == 2
    assert "coprime" in err


def test_coeff_budget_refusal(capsys):
    code, _, err = run(capsys, "--andrews-budget", "10",
                       "coeff", "0", "1", "1", "9", "--algo", "andrews")
    assert code == 1
    assert "refused" in err and "budget" in err


def test_json_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "--format", "json", "decompose", "4")
    _, second, _ = run(capsys, "--format", "json", "decompose", "4")
    assert first == second
    data = json.loads(first)
    assert data["N"] == 4
    # exact values ride as strings, never floats
    entry = data["entries"][0]
    assert all(isinstance(c, str) for c in entry["value"]["coeffs"])


def test_csv_has_header_and_quoting(capsys):
    code, out, _ = run(capsys, "--format", "csv", "decompose", "3")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "h,k,l,re,im"
    assert len(lines) == 1 + 3 + 1 + 2  # header + k=1 towers + k=2 + k=3


def test_verify_phrase_and_exit(capsys):
    code, out, _ = run(capsys, "verify", "6", "30")
    assert code == 0
    assert out.strip() == "p_N reconstruction OK, Sylvester OK"


def test_wave_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "wave", "2", "5", "7")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == "-29/128"
    assert data["approx"] == pytest.approx(-29 / 128)


def test_poly_printed_example(capsys):
    code, out, _ = run(capsys, "poly", "2")
    assert code == 0
    assert "x^4 - 22/9*x^3 + 13/3*x^2 - 26/9*x" in out
    assert "negative" in out and "positive" in out
    assert "M_{012}" in out


def test_asym_constants_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "asym")
    assert code == 0
    data = json.loads(out)
    for name in ("w0", "z0", "U", "V", "alpha", "beta",
                 "alpha1", "beta1", "alpha2", "beta2", "period"):
        assert name in data
    assert data["period"] == pytest.approx(31.9631, abs=1e-3)


def test_asym_main_terms(capsys):
    code, out, _ = run(capsys, "--format", "csv", "asym", "--N", "200")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,A011,A121"
    _, a011, a121 = lines[1].split(",")
    assert float(a011) == pytest.approx(33.8689, rel=2e-3)
    assert float(a121) == pytest.approx(-0.0680541, rel=2e-3)


def test_decompose_cache_roundtrip(tmp_path, capsys):
    code, first, _ = run(capsys, "--cache-dir", str(tmp_path),
                         "--format", "json", "decompose", "5")
    assert code == 0
    assert (tmp_path / "decompose_5.json").exists()
    code, second, err = run(capsys, "--cache-dir", str(tmp_path),
                            "--format", "json", "decompose", "5")
    assert code == 0
    assert "cached" in err
    assert first == second


def test_console_script_entry():
    out = subprocess.run(
        [sys.executable, "-m", "partwaves.cli", "--format", "json",
         "coeff", "1", "3", "1", "4", "--algo", "all"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0, out.stderr
    data = json.loads(out.stdout)
    assert data["agree"] is True
