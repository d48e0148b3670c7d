"""Gaussian blurring of sampled signals and its inversion by a truncated
derivative series ``sum_n d_2n D^2n`` evaluated with central stencils."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .errors import GridTooCoarse, KernelWiderThanDomain, ZeroConstantTerm
from .series import PowerSeries

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SampledSignal:
    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if v.ndim != 1 or len(v) < 8:
            raise ValueError("a signal needs at least 8 samples in one dimension")
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        if not np.all(np.isfinite(v)):
            raise ValueError("signal values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, f, start: float, stop: float, n: int) -> "SampledSignal":
        """``n`` samples on ``[start, stop]`` including both ends."""
        x = np.linspace(start, stop, n)
        return cls(start, x[1] - x[0], f(x))

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(len(self.values))

    def __len__(self):
        return len(self.values)

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.x0, self.dx, values)


def read_signal(path) -> SampledSignal:
    """Load ``x,value`` CSV; spacing must be uniform to 1e-9 relative."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        if header != ["x", "value"]:
            raise ValueError(f"expected header 'x,value', got {','.join(header)!r}")
        rows = [(float(a), float(b)) for a, b in reader if a.strip()]
    x = np.array([r[0] for r in rows])
    v = np.array([r[1] for r in rows])
    if len(x) < 2:
        raise ValueError("signal file has fewer than two samples")
    steps = np.diff(x)
    dx = (x[-1] - x[0]) / (len(x) - 1)
    if dx <= 0 or np.any(np.abs(steps - dx) > 1e-9 * abs(dx)):
        raise ValueError("x must be strictly increasing with uniform spacing")
    return SampledSignal(x[0], dx, v)


def write_signal(s: SampledSignal, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "value"])
        for xi, vi in zip(s.x, s.values):
            w.writerow([repr(float(xi)), repr(float(vi))])


# ---------------------------------------------------------------------------
# blurring


def gaussian_kernel(a: float, dx: float, rel_cut: float = 1e-16) -> np.ndarray:
    """Samples of ``sqrt(a/2pi) exp(-a x^2/2)`` times ``dx``, cut below ``rel_cut``."""
    half = int(math.ceil(math.sqrt(2 * math.log(1 / rel_cut) / a) / dx))
    k = np.arange(-half, half + 1) * dx
    w = math.sqrt(a / (2 * math.pi)) * np.exp(-0.5 * a * k * k) * dx
    return w / w.sum()


def _pad(v: np.ndarray, width: int) -> np.ndarray:
    return np.pad(v, width, mode="reflect", reflect_type="odd")


def blur(s: SampledSignal, a: float) -> SampledSignal:
    """Discrete convolution with the normalised Gaussian of precision ``a``."""
    if a <= 0:
        raise ValueError("blur precision a must be positive")
    w = gaussian_kernel(a, s.dx)
    half = len(w) // 2
    if half >= len(s) - 1:
        raise KernelWiderThanDomain(f"kernel half-width {half} samples exceeds signal length {len(s)}")
    return s.with_values(np.convolve(_pad(s.values, half), w, mode="valid"))


# ---------------------------------------------------------------------------
# stencils


@lru_cache(maxsize=None)
def stencil_weights(m: int, r: int) -> tuple[float, ...]:
    """Central weights for ``f^(m)`` on offsets ``-r..r`` (unit spacing), exact rationals."""
    offs = list(range(-r, r + 1))
    n = len(offs)
    if m >= n:
        raise ValueError(f"need more than {m} points for derivative order {m}")
    rows = [[Fraction(o) ** q for o in offs] + [Fraction(factorial(m) if q == m else 0)] for q in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c] / rows[c][c]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[c])]
    return tuple(float(rows[i][n] / rows[i][i]) for i in range(n))


def stencil_half_width(m: int, p: int) -> int:
    """Half-width of the order-``p`` accurate central stencil for ``D^m``."""
    return (m - 1) // 2 + p // 2 if m % 2 else m // 2 - 1 + p // 2


# ---------------------------------------------------------------------------
# deblurring operator


@dataclass(frozen=True)
class DeblurOperator:
    """``sum_n coeffs[n] D^n`` with stencils of accuracy ``p``.

    ``stride`` spaces the stencil taps ``stride`` samples apart; ``None``
    picks the smallest stride whose roundoff bound is below ``noise_tol``.
    """

    coeffs: tuple[float, ...]
    kernel: str = "generic"
    p: int = 8
    stride: int | None = None
    noise_tol: float = 1e-6
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.p < 2 or self.p % 2:
            raise ValueError("stencil order p must be even and at least 2")

    @property
    def K(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def flipped(self) -> "DeblurOperator":
        """``D^2n`` coefficients multiplied by ``(-1)^n``: the blurring direction."""
        c = tuple(c * (-1) ** (n // 2) if n % 2 == 0 else c for n, c in enumerate(self.coeffs))
        return replace(self, coeffs=c, kernel=f"flipped-{self.kernel}")


def build_deblur_operator(source, K: int, p: int = 8, **kw) -> DeblurOperator:
    """From a Gaussian precision ``a`` or a power series of the kernel transform.

    For a series ``g~`` the coefficients are those of ``1 / (sqrt(2pi) g~(i D))``
    up to ``D^(2K)``.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    if isinstance(source, PowerSeries):
        n = 2 * K
        g = source.truncate(n)
        if g.coeffs[0] == 0:
            raise ZeroConstantTerm("kernel transform vanishes at 0")
        sym = PowerSeries(g.coeffs * math.sqrt(2 * math.pi) * (1j) ** np.arange(n + 1))
        c = sym.reciprocal().coeffs
        return DeblurOperator(tuple(float(v.real) for v in c), "generic", p, **kw)
    a = float(source)
    if a <= 0:
        raise ValueError("Gaussian precision a must be positive")
    coeffs = [0.0] * (2 * K + 1)
    for n in range(K + 1):
        coeffs[2 * n] = (-1 / (2 * a)) ** n / factorial(n)
    return DeblurOperator(tuple(coeffs), f"gaussian(a={a:g})", p, **kw)


def noise_bound(op: DeblurOperator, dx: float, stride: int) -> float:
    """Roundoff amplification ``eps * sum |d_n| ||w_n||_1 / h^n`` for unit-size data."""
    h = stride * dx
    total = 0.0
    for m, c in enumerate(op.coeffs):
        if m == 0 or c == 0:
            continue
        w = stencil_weights(m, stencil_half_width(m, op.p))
        total += abs(c) * float(np.sum(np.abs(w))) / h**m
    return EPS * total


def choose_stride(op: DeblurOperator, s: SampledSignal) -> int:
    active = [m for m, c in enumerate(op.coeffs) if m and c != 0]
    if not active:
        return 1
    r_max = max(stencil_half_width(m, op.p) for m in active)
    if r_max > len(s) // 2:
        raise GridTooCoarse(f"stencil half-width {r_max} exceeds half the signal ({len(s)} samples)")
    if op.stride is not None:
        if op.stride * r_max > len(s) // 2:
            raise GridTooCoarse(f"stride {op.stride} stencils exceed half the signal")
        return op.stride
    best, best_b = 1, math.inf
    stride = 1
    while stride * r_max <= len(s) // 2:
        b = noise_bound(op, s.dx, stride)
        if b <= op.noise_tol:
            return stride
        if b < best_b:
            best, best_b = stride, b
        stride += 1
    return best


def apply_derivative(values: np.ndarray, m: int, p: int, h_samples: int, dx: float) -> np.ndarray:
    """``D^m`` by a central stencil with taps ``h_samples`` apart, odd-reflection padding."""
    r = stencil_half_width(m, p)
    w = stencil_weights(m, r)
    pad = r * h_samples
    # stencils annihilate constants; removing the mean keeps roundoff from the offset out
    v = _pad(values - values.mean(), pad)
    n = len(values)
    out = np.zeros(n)
    for j, wj in enumerate(w):
        if wj:
            out += wj * v[j * h_samples : j * h_samples + n]
    return out / (h_samples * dx) ** m


def deblur(s: SampledSignal, op: DeblurOperator) -> SampledSignal:
    stride = choose_stride(op, s)
    out = op.coeffs[0] * s.values
    for m, c in enumerate(op.coeffs):
        if m and c != 0:
            out = out + c * apply_derivative(s.values, m, op.p, stride, s.dx)
    return s.with_values(out)


def relative_l2(u, v) -> float:
    u, v = np.asarray(u), np.asarray(v)
    return float(np.linalg.norm(u - v) / np.linalg.norm(v))
