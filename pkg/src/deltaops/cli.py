"""Command-line front end.

Exit status: 0 on success, 2 when the mathematics has no value to give
(undefined distribution, divergent integral, pole), 1 on parse or usage
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import delta as dl
from . import expr as ex
from . import qft
from . import transforms as tr
from .deblur import SampledSignal, blur, build_deblur_operator, deblur, read_signal, write_signal
from .errors import DeltaOpsError, DomainError
from .parser import parse_expression

SUBCOMMANDS = (
    "fourier",
    "fourier2",
    "integrate",
    "halfline",
    "laplace",
    "interval",
    "antideriv",
    "delta-approx",
    "blur",
    "deblur",
    "qft-weak",
    "qft-strong",
    "qft-oracle",
)
_EXPR_COMMANDS = {"fourier", "fourier2", "integrate", "halfline", "laplace", "interval", "antideriv", "delta-approx"}
_REQUIRED = {
    "laplace": ("a",),
    "interval": ("a", "b"),
    "blur": ("a", "infile"),
    "deblur": ("a", "infile"),
    "qft-weak": ("lam",),
    "qft-strong": ("lam",),
    "qft-oracle": ("lam",),
}


class UsageError(Exception):
    pass


@dataclass
class Query:
    command: str
    source: str | None = None
    a: float | None = None
    b: float | None = None
    sigma: float | None = None
    order: int | None = None
    pterms: int = qft.DEFAULT_PTERMS
    stencil: int = 8
    lam: float | None = None
    j: float = 0.0
    probe: float | None = None
    strategy: str = "int1"
    fmt: str = "text"
    infile: str | None = None
    outfile: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.command not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.command!r}")
        if self.command in _EXPR_COMMANDS and not self.source:
            raise UsageError(f"{self.command} needs an expression argument")
        for name in _REQUIRED.get(self.command, ()):
            if getattr(self, name) is None:
                flag = {"lam": "--lambda", "infile": "--in"}.get(name, f"--{name}")
                raise UsageError(f"{self.command} requires {flag}")
        if self.fmt not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.order is not None and self.order < 0:
            raise UsageError("--order must be non-negative")
        if self.sigma is not None and self.sigma <= 0:
            raise UsageError("--sigma must be positive")


# ---------------------------------------------------------------------------
# formatting


def fmt_scalar(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return "%.15g" % z.real
    sign = "+" if z.imag >= 0 else "-"
    return "%.15g%s%.15gi" % (z.real, sign, abs(z.imag))


def json_scalar(z):
    z = complex(z)
    return z.real if z.imag == 0 else {"re": z.real, "im": z.imag}


def _deltas_doc(dv: ex.DistributionalValue) -> list[dict]:
    return [
        {"location": json_scalar(d.location), "order": d.order, "coeff": json_scalar(d.coeff)} for d in dv.deltas
    ]


def _deltas_text(dv: ex.DistributionalValue, var: str = "y") -> str:
    if not dv.deltas:
        return "0"
    parts = []
    for d in dv.deltas:
        name = "delta" if d.order == 0 else f"delta^({d.order})"
        parts.append(f"({fmt_scalar(d.coeff)})*{name}({var} - ({fmt_scalar(d.location)}))")
    return " + ".join(parts)


@dataclass
class Outcome:
    kind: str  # scalar, expr, deltas, report, signal
    value: object
    method: str
    extra: dict = field(default_factory=dict)


def render(out: Outcome, fmt: str) -> str:
    if out.kind == "report":
        rep: qft.SeriesReport = out.value
        if fmt == "json":
            return rep.to_json()
        if fmt == "csv":
            return rep.to_csv().rstrip("\n")
        lines = [f"# {rep.method} series, oracle {fmt_scalar(rep.oracle)}"]
        lines += [
            f"{k} {fmt_scalar(t)} {fmt_scalar(s)} {fmt_scalar(e)}"
            for k, (t, s, e) in enumerate(zip(rep.terms, rep.partial_sums, rep.errors))
        ]
        return "\n".join(lines)
    if out.kind == "signal":
        s: SampledSignal = out.value
        if fmt == "json":
            return json.dumps({"method": out.method, "x0": s.x0, "dx": s.dx, "values": list(map(float, s.values))})
        rows = ["x,value"] + [f"{float(x)!r},{float(v)!r}" for x, v in zip(s.x, s.values)]
        return "\n".join(rows)
    if out.kind == "scalar":
        if fmt == "json":
            return json.dumps({"result": json_scalar(out.value), "method": out.method, **out.extra})
        if fmt == "csv":
            return "result,method\n" + f"{fmt_scalar(out.value)},{out.method}"
        return fmt_scalar(out.value)
    if out.kind == "deltas":
        if fmt == "json":
            return json.dumps({"result": {"deltas": _deltas_doc(out.value)}, "method": out.method, **out.extra})
        return _deltas_text(out.value)
    if fmt == "json":
        return json.dumps({"result": str(out.value), "method": out.method, **out.extra})
    return str(out.value)


# ---------------------------------------------------------------------------
# dispatch


def _transform(q: Query) -> Outcome:
    f = parse_expression(q.source)
    c = q.command
    if c == "fourier":
        r = tr.fourier_via_delta(f, q.sigma, q.order or 0)
        if q.probe is not None:
            return Outcome("scalar", r.value(q.probe), r.method, {"probe": q.probe})
        return Outcome("expr", r.value, r.method)
    if c == "fourier2":
        r = tr.fourier_via_shifted_delta(f, None, q.probe or 0.0)
        return Outcome("deltas", r.value, r.method)
    if c == "integrate":
        r = tr.integrate_line(f, q.strategy, q.sigma or 0.1)
    elif c == "halfline":
        r = tr.integrate_halfline(f, q.a or 0.0)
    elif c == "laplace":
        r = tr.laplace(f, q.a)
    elif c == "interval":
        r = tr.integrate_interval(f, q.a, q.b)
    elif c == "antideriv":
        if q.probe is None:
            return Outcome("expr", ex.antiderivative(f), "antiderivative")
        r = tr.antiderivative_formula(f, q.probe)
    else:
        raise UsageError(c)
    return Outcome("scalar", r.value, r.method)


def _delta_approx(q: Query) -> Outcome:
    n = 4 if q.order is None else q.order
    depth = 2 * n + 2
    if q.source in dl.PRESETS:
        param = q.sigma if q.sigma is not None else q.a
        rep = dl.PRESETS[q.source](depth) if param is None else dl.PRESETS[q.source](depth, param)
    else:
        rep = dl.build_representation(parse_expression(q.source), depth)
    x = q.probe or 0.0
    return Outcome("scalar", dl.truncated_delta(rep, x, n), "delta-approx", {"representation": rep.name, "N": n, "x": x})


def _signal(q: Query) -> Outcome:
    s = read_signal(q.infile)
    if q.command == "blur":
        out = blur(s, q.a)
    else:
        op = build_deblur_operator(q.a, 10 if q.order is None else q.order, q.stencil)
        out = deblur(s, op)
    if q.outfile:
        write_signal(out, q.outfile)
    return Outcome("signal", out, q.command)


def _qft(q: Query) -> Outcome:
    m = qft.QuarticModel(1.0 if q.a is None else q.a, q.lam, q.j)
    if q.command == "qft-oracle":
        return Outcome("scalar", qft.z_quadrature(m), "quadrature")
    if q.command == "qft-weak":
        return Outcome("report", qft.weak_series(m, 20 if q.order is None else q.order), "weak")
    return Outcome("report", qft.strong_series(m, 8 if q.order is None else q.order, q.pterms), "strong")


def execute(q: Query) -> Outcome:
    q.validate()
    if q.command in ("blur", "deblur"):
        return _signal(q)
    if q.command.startswith("qft"):
        return _qft(q)
    if q.command == "delta-approx":
        return _delta_approx(q)
    return _transform(q)


def run(q: Query) -> tuple[int, str]:
    """Execute a query; returns ``(exit_status, document)``."""
    try:
        out = execute(q)
    except DomainError as err:
        return 2, _error_doc(err, q.fmt)
    except (DeltaOpsError, UsageError, ValueError, OSError) as err:
        return 1, _error_doc(err, q.fmt)
    return 0, render(out, q.fmt)


def _error_doc(err: Exception, fmt: str) -> str:
    name = type(err).__name__
    if fmt == "json":
        return json.dumps({"error": name, "message": str(err)})
    return f"error: {name}: {err}"


# ---------------------------------------------------------------------------
# argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_arg_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deltaops", description="Operator calculus with Dirac delta representations.")
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("source", nargs="?", help="expression in x, or a preset name for delta-approx")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--order", type=int)
    p.add_argument("--pterms", type=int, default=qft.DEFAULT_PTERMS)
    p.add_argument("--stencil", type=int, default=8)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--j", type=float, default=0.0)
    p.add_argument("--probe", type=float)
    p.add_argument("--strategy", choices=("int1", "int2"), default="int1")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out", dest="outfile")
    return p


def parse_args(argv) -> Query:
    ns = build_arg_parser().parse_args(argv)
    return Query(**vars(ns))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        q = parse_args(argv)
    except UsageError as err:
        print(f"error: UsageError: {err}", file=sys.stderr)
        return 1
    status, doc = run(q)
    print(doc)
    return status


if __name__ == "__main__":
    sys.exit(main())
