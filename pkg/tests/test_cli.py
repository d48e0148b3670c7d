import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from deltaops import cli
from deltaops import transforms as tr
from deltaops.deblur import SampledSignal, read_signal, write_signal
from deltaops.parser import parse_expression

MANIFEST = json.loads((Path(__file__).parent / "cli_manifest.json").read_text())


def run_json(argv, capsys):
    status = cli.main([*argv, "--format", "json"])
    out, err = capsys.readouterr()
    return status, out, err


def _complex(v):
    return complex(v["re"], v["im"]) if isinstance(v, dict) else complex(v)


@pytest.mark.parametrize("case", MANIFEST, ids=[c["name"] for c in MANIFEST])
def test_manifest(case, capsys):
    status, out, err = run_json(case["argv"], capsys)
    assert status == case["exit"], out + err
    if "error" in case:
        assert case["error"] in out + err
        return
    doc = json.loads(out)
    if "result" in case:
        want = case["result"]
        want = complex(*want) if isinstance(want, list) else want
        got = _complex(doc["result"])
        assert abs(got - want) <= case["rtol"] * abs(want) + case["atol"], (got, want)
    if "deltas" in case:
        got = doc["result"]["deltas"]
        assert len(got) == len(case["deltas"])
        for d, (loc, order, (re, im)) in zip(got, case["deltas"]):
            assert _complex(d["location"]) == pytest.approx(loc, abs=1e-15)
            assert d["order"] == order
            assert _complex(d["coeff"]) == pytest.approx(complex(re, im), rel=1e-14)
    if "report" in case:
        want = case["report"]
        if "partial_sum" in want:
            assert doc["partial_sums"][-1] == pytest.approx(want["partial_sum"], rel=want["rtol"])
        if "terms" in want:
            assert len(doc["terms"]) == want["terms"]


def test_fourier2_probe_invariance(capsys):
    by_source = {}
    for case in MANIFEST:
        if case["argv"][0] == "fourier2":
            _, out, _ = run_json(case["argv"], capsys)
            by_source.setdefault(case["argv"][1], set()).add(out)
    assert by_source and all(len(docs) == 1 for docs in by_source.values())


def test_text_output(capsys):
    assert cli.main(["integrate", "sin(x)/x"]) == 0
    assert capsys.readouterr().out.strip() == "3.14159265358979"
    assert cli.main(["laplace", "x^3", "--a", "2"]) == 0
    assert capsys.readouterr().out.strip() == "0.375"


def test_json_scalar_shape(capsys):
    status, out, _ = run_json(["integrate", "sin(x)/x"], capsys)
    doc = json.loads(out)
    assert status == 0 and doc["method"] == "int1"
    assert doc["result"] == pytest.approx(math.pi, rel=1e-15)


def test_domain_error_document(capsys):
    status, out, _ = run_json(["halfline", "exp(x)", "--a", "0"], capsys)
    assert status == 2
    assert json.loads(out)["error"] == "UndefinedDistribution"


@pytest.mark.parametrize(
    "argv",
    [
        ["integrate", "sin(x)^5/x"],
        ["laplace", "sin(2*x)/x", "--a", "3"],
        ["fourier", "cos(x)*gauss(0.5)", "--probe", "0.3"],
        ["integrate", "exp(i*x)*gauss(1)"],
        ["qft-oracle", "--lambda", "5"],
    ],
)
def test_json_roundtrip_is_bit_exact(argv, capsys):
    q = cli.parse_args(argv)
    direct = cli.execute(q).value
    _, out, _ = run_json(argv, capsys)
    assert _complex(json.loads(out)["result"]) == complex(direct)


def test_report_json_roundtrip(capsys):
    q = cli.parse_args(["qft-strong", "--lambda", "5", "--order", "6"])
    rep = cli.execute(q).value
    _, out, _ = run_json(["qft-strong", "--lambda", "5", "--order", "6"], capsys)
    doc = json.loads(out)
    assert doc["partial_sums"] == rep.partial_sums and doc["oracle"] == rep.oracle


def test_csv_scalar(capsys):
    assert cli.main(["laplace", "x", "--a", "2", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["result,method", "0.25,laplace"]


def test_complex_text_format():
    assert cli.fmt_scalar(1 - 2j) == "1-2i"
    assert cli.fmt_scalar(0.5) == "0.5"


@pytest.mark.parametrize(
    "argv",
    [["interval", "x", "--a", "0"], ["fourier"], ["delta-approx", "gaussian", "--sigma", "-1"], ["blur", "--a", "4"]],
)
def test_validation_errors(argv, capsys):
    status, out, err = run_json(argv, capsys)
    assert status == 1
    assert "UsageError" in out + err


def test_blur_and_deblur_files(tmp_path, capsys):
    src = tmp_path / "f.csv"
    blurred = tmp_path / "b.csv"
    restored = tmp_path / "d.csv"
    f = SampledSignal.from_function(lambda x: np.sin(x) + 0.5 * np.sin(3 * x), 0.0, 2 * math.pi, 512)
    write_signal(f, src)
    assert cli.main(["blur", "--a", "4", "--in", str(src), "--out", str(blurred)]) == 0
    assert cli.main(["deblur", "--a", "4", "--order", "10", "--in", str(blurred), "--out", str(restored)]) == 0
    capsys.readouterr()
    back = read_signal(restored).values
    assert np.linalg.norm(back - f.values) / np.linalg.norm(f.values) < 1e-3


def test_missing_input_file(tmp_path, capsys):
    status, out, _ = run_json(["blur", "--a", "4", "--in", str(tmp_path / "none.csv")], capsys)
    assert status == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "deltaops.cli", "halfline", "exp(x)", "--a", "0"], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "UndefinedDistribution" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "deltaops.cli", "integrate", "sin(x"], capture_output=True, text=True)
    assert proc.returncode == 1


def test_library_and_cli_agree():
    q = cli.parse_args(["laplace", "x^4*cos(x)", "--a", "1.5"])
    assert cli.execute(q).value == tr.laplace(parse_expression("x^4*cos(x)"), 1.5).value
