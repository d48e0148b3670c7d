"""Roundtrip error of blur followed by deblur as the operator order K grows."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from deltaops.deblur import SampledSignal, blur, build_deblur_operator, choose_stride, deblur, noise_bound, relative_l2


@dataclass
class Config:
    a: float = 4.0
    samples: int = 512
    stencil: int = 8
    max_order: int = 14
    noise: float = 0.0
    seed: int = 0


def run(cfg: Config):
    f = SampledSignal.from_function(lambda x: np.sin(x) + 0.5 * np.sin(3 * x), 0.0, 2 * math.pi, cfg.samples)
    b = blur(f, cfg.a)
    if cfg.noise:
        rng = np.random.default_rng(cfg.seed)
        b = b.with_values(b.values + cfg.noise * rng.standard_normal(len(b)))
    print("K  stride  noise_bound  rel_L2")
    for K in range(cfg.max_order + 1):
        op = build_deblur_operator(cfg.a, K, cfg.stencil)
        stride = choose_stride(op, b)
        err = relative_l2(deblur(b, op).values, f.values)
        print(f"{K:2d}  {stride:6d}  {noise_bound(op, b.dx, stride):11.3e}  {err:.3e}")


def main():
    cfg = Config()
    p = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(cfg).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(val), default=val)
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
