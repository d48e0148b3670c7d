"""Regenerate tests/cli_manifest.json: one CLI invocation per golden example.

Expected values are closed forms evaluated here, never program output.
"""
import json
import math
from pathlib import Path

SQ2PI = math.sqrt(2 * math.pi)
P0 = math.gamma(0.25) / 2


def case(name, argv, result=None, exit=0, rtol=1e-12, error=None, atol=0.0):
    doc = {"name": name, "argv": argv, "exit": exit}
    if result is not None:
        doc["result"] = [result.real, result.imag] if isinstance(result, complex) else result
        doc["rtol"] = rtol
        doc["atol"] = atol
    if error:
        doc["error"] = error
    return doc


def fourier_golden(x):
    return math.exp(-x * x / 4) * math.cosh(x / 2) / (math.sqrt(2) * math.exp(0.25))


cases = [
    case("integrate sinc", ["integrate", "sin(x)/x"], math.pi),
    case("integrate sin^5/x", ["integrate", "sin(x)^5/x"], 3 * math.pi / 8),
    case("integrate sin^2/x^2", ["integrate", "sin(x)^2/x^2"], math.pi),
    case("integrate (1-cos 2x)/x^2", ["integrate", "(1-cos(2*x))/x^2"], 2 * math.pi),
    case("integrate (1-cos 3x)/x^2", ["integrate", "(1-cos(3*x))/x^2"], 3 * math.pi),
    case("integrate x^2 cos e^-x^2", ["integrate", "x^2*cos(x)*gauss(0.5)"], math.sqrt(math.pi) * math.exp(-0.25) / 4),
    case("integrate gaussian int2", ["integrate", "gauss(2)", "--strategy", "int2"], math.sqrt(4 * math.pi)),
    case("integrate x^2 diverges", ["integrate", "x^2"], exit=2, error="DivergentIntegral"),
    case("halfline exp(-x)", ["halfline", "exp(-x)", "--a", "0"], 1.0),
    case("halfline exp(-2x)", ["halfline", "exp(-2*x)", "--a", "0"], 0.5),
    case("halfline x^2 exp(-2x)", ["halfline", "x^2*exp(-2*x)", "--a", "0"], 2 / 8),
    case("halfline exp(x)", ["halfline", "exp(x)", "--a", "0"], exit=2, error="UndefinedDistribution"),
    case("laplace x^3", ["laplace", "x^3", "--a", "2"], 0.375),
    case("laplace 1", ["laplace", "1", "--a", "2"], 0.5),
    case("laplace sin(x)/x", ["laplace", "sin(x)/x", "--a", "1"], math.atan(1.0), rtol=1e-10),
    case("laplace sin(2x)/x", ["laplace", "sin(2*x)/x", "--a", "3"], math.atan(2 / 3), rtol=1e-10),
    case("laplace needs a", ["laplace", "x"], exit=1, error="UsageError"),
    case("interval x^8", ["interval", "x^8", "--a", "-2", "--b", "3"], (3**9 + 2**9) / 9),
    case("interval empty", ["interval", "exp(x)*sin(x)", "--a", "1.5", "--b", "1.5"], 0.0, atol=1e-15),
    case("interval sin", ["interval", "sin(x)", "--a", "0", "--b", repr(math.pi)], 2.0),
    case("antideriv x^3", ["antideriv", "x^3", "--probe", "2"], 4.0),
    case("antideriv x^2 e^x", ["antideriv", "x^2*exp(x)", "--probe", "1"], math.e - 2),
    case("antideriv zero", ["antideriv", "0", "--probe", "1.3"], 0.0),
]
for x in (-5.0, -1.0, 0.0, 2.5):
    cases.append(case(f"fourier golden at {x}", ["fourier", "cos(x)*gauss(0.5)", "--probe", repr(x)], fourier_golden(x), rtol=1e-10, atol=1e-12))
cases += [
    case("fourier sinc inside", ["fourier", "sin(x)/x", "--probe", "0.5"], math.sqrt(math.pi / 2)),
    case("fourier sinc outside", ["fourier", "sin(x)/x", "--probe", "1.5"], 0.0, atol=1e-15),
    case("delta-approx gaussian N=0", ["delta-approx", "gaussian", "--order", "0", "--sigma", "1"], 1 / SQ2PI),
    case("delta-approx gaussian N=1", ["delta-approx", "gaussian", "--order", "1", "--sigma", "1"], 1.5 / SQ2PI),
    case("delta-approx gaussian N=0 sigma 2", ["delta-approx", "gaussian", "--order", "0", "--sigma", "2", "--probe", "1"], math.exp(-0.25) / math.sqrt(4 * math.pi)),
    case("qft P(0)", ["qft-strong", "--lambda", "1", "--order", "0"], None),
    case("qft oracle gaussian limit", ["qft-oracle", "--lambda", "1e-8"], math.sqrt(math.pi), rtol=1e-6),
    case("qft weak", ["qft-weak", "--lambda", "0.1", "--order", "20"], None),
    case("qft needs lambda", ["qft-oracle"], exit=1, error="UsageError"),
    case("parse error", ["integrate", "sin(x^2"], exit=1, error="ParseError"),
    case("unknown option", ["integrate", "x", "--bogus", "1"], exit=1, error="UsageError"),
]
reports = {"qft P(0)": {"partial_sum": P0, "rtol": 1e-14}, "qft weak": {"terms": 21}}
for c in cases:
    if c["name"] in reports:
        c["report"] = reports[c["name"]]
fourier2 = {
    "exp(i*x)": [[-1.0, 0, [SQ2PI, 0.0]]],
    "sin(x)": [[-1.0, 0, [0.0, -SQ2PI / 2]], [1.0, 0, [0.0, SQ2PI / 2]]],
    "1": [[0.0, 0, [SQ2PI, 0.0]]],
}
for src, deltas in fourier2.items():
    for probe in ("0", "1", "-2.5"):
        cases.append({"name": f"fourier2 {src} probe {probe}", "argv": ["fourier2", src, "--probe", probe], "exit": 0, "deltas": deltas})

out = Path(__file__).resolve().parents[1] / "tests" / "cli_manifest.json"
out.write_text(json.dumps(cases, indent=1) + "\n")
print(f"wrote {len(cases)} cases to {out}")
