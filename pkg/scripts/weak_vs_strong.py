"""Weak- and strong-coupling partial sums of the quartic model against quadrature.

Writes one CSV row per (lambda, method, order) with the relative error.
"""
import argparse
import csv
import sys
from dataclasses import dataclass, field

from deltaops.qft import QuarticModel, strong_series, weak_series


@dataclass
class Config:
    a: float = 1.0
    j: float = 0.0
    lambdas: list[float] = field(default_factory=lambda: [0.01, 0.1, 1.0, 5.0, 100.0])
    weak_order: int = 20
    strong_order: int = 12
    pterms: int = 64


def sweep(cfg: Config, out):
    w = csv.writer(out)
    w.writerow(["lambda", "method", "order", "partial_sum", "rel_error"])
    for lam in cfg.lambdas:
        m = QuarticModel(cfg.a, lam, cfg.j)
        for rep in (weak_series(m, cfg.weak_order), strong_series(m, cfg.strong_order, cfg.pterms)):
            for k, (s, e) in enumerate(zip(rep.partial_sums, rep.relative_errors)):
                w.writerow([lam, rep.method, k, repr(s), f"{e:.3e}"])
            print(f"lambda={lam:g} {rep.method}: best order {rep.best_index}, rel err {rep.relative_errors[rep.best_index]:.2e}", file=sys.stderr)


def main():
    cfg = Config()
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", type=float, default=cfg.a)
    p.add_argument("--j", type=float, default=cfg.j)
    p.add_argument("--lambdas", type=float, nargs="+", default=cfg.lambdas)
    p.add_argument("--weak-order", type=int, default=cfg.weak_order)
    p.add_argument("--strong-order", type=int, default=cfg.strong_order)
    p.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    ns = p.parse_args()
    cfg = Config(ns.a, ns.j, ns.lambdas, ns.weak_order, ns.strong_order)
    sweep(cfg, ns.out)


if __name__ == "__main__":
    main()
