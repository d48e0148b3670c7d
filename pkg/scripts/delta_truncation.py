"""Truncated delta representations: pointwise profile and polynomial moments by order N."""
import argparse
from dataclasses import dataclass

import numpy as np

from deltaops.delta import PRESETS, moment, truncated_delta


@dataclass
class Config:
    preset: str = "gaussian"
    max_order: int = 4
    degree: int = 6
    seed: int = 1


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    poly = list(rng.normal(size=cfg.degree + 1))
    rep = PRESETS[cfg.preset](2 * cfg.max_order + 2)
    print(f"{rep.name}: moments of a degree-{cfg.degree} polynomial, p(0) = {poly[0]:.6f}")
    for N in range(cfg.max_order + 1):
        m = moment(rep, poly, N)
        profile = [truncated_delta(rep, x, N) for x in (0.0, 0.5, 1.0, 2.0)]
        print(f"N={N}  moment error {abs(m - poly[0]):.2e}  profile " + " ".join(f"{v:+.4f}" for v in profile))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--preset", choices=sorted(PRESETS), default=Config.preset)
    p.add_argument("--max-order", type=int, default=Config.max_order)
    p.add_argument("--degree", type=int, default=Config.degree)
    p.add_argument("--seed", type=int, default=Config.seed)
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
