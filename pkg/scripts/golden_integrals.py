"""Exact-strategy integrals next to their closed forms, with the int2 Richardson diagnostic."""
import math
import time

from deltaops.errors import DeltaOpsError
from deltaops.parser import parse_expression
from deltaops.transforms import integrate_line

GOLDEN = [
    ("sin(x)/x", math.pi),
    ("sin(x)^5/x", 3 * math.pi / 8),
    ("sin(x)^2/x^2", math.pi),
    ("(1-cos(2*x))/x^2", 2 * math.pi),
    ("x^2*cos(x)*gauss(0.5)", math.sqrt(math.pi) * math.exp(-0.25) / 4),
    ("gauss(3)", math.sqrt(6 * math.pi)),
]


def main():
    for src, closed in GOLDEN:
        f = parse_expression(src)
        t0 = time.perf_counter()
        r = integrate_line(f, "int1")
        dt = time.perf_counter() - t0
        line = f"{src:24s} int1 {r.scalar:.15g}  rel err {abs(r.scalar - closed) / closed:.1e}  ({dt * 1e3:.1f} ms)"
        try:
            r2 = integrate_line(f, "int2")
            line += f"  int2 {complex(r2.value).real:.15g}"
        except DeltaOpsError as err:
            line += f"  int2 n/a ({type(err).__name__})"
        print(line)


if __name__ == "__main__":
    main()
