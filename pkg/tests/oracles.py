"""Independent reference values: arbitrary-precision quadrature and an FFT
deconvolution, sharing no code with the package."""
import mpmath
import numpy as np

mpmath.mp.dps = 30


def line_integral(f, oscillatory=False, period=None):
    """int_{-inf}^{inf} f with mpmath; ``f`` takes an mpf."""
    if oscillatory:
        right = mpmath.quadosc(f, [0, mpmath.inf], period=period)
        left = mpmath.quadosc(lambda t: f(-t), [0, mpmath.inf], period=period)
        return float(left + right)
    return float(mpmath.quad(f, [-mpmath.inf, 0, mpmath.inf]))


def split_line_integral(f, tail_smooth, tail_osc, period):
    """Core ``|x| < 1`` by quad; tails split into a monotone part and an oscillatory part."""
    core = mpmath.quad(f, [-1, 0, 1])
    tails = 0
    for sgn in (1, -1):
        tails += mpmath.quad(lambda t: tail_smooth(sgn * t), [1, mpmath.inf])
        tails += mpmath.quadosc(lambda t: tail_osc(sgn * t), [1, mpmath.inf], period=period)
    return float(core + tails)


def halfline_integral(f):
    return float(mpmath.quad(f, [0, mpmath.inf]))


def interval_integral(f, a, b):
    return float(mpmath.quad(f, [a, b]))


def quartic_oracle(a, lam, j=0.0):
    return float(mpmath.quad(lambda x: mpmath.exp(-a * x**2 - lam * x**4 + j * x), [-mpmath.inf, 0, mpmath.inf]))


def fft_deconvolve(values, dx, a, kmax=5.0):
    """Divide by the Gaussian transfer function exp(-k^2/2a) on a periodic grid; modes above kmax dropped."""
    n = len(values)
    k = 2 * np.pi * np.fft.fftfreq(n, dx)
    keep = np.abs(k) <= kmax
    gain = np.where(keep, np.exp(np.minimum(k * k, kmax * kmax) / (2 * a)), 0.0)
    return np.real(np.fft.ifft(np.fft.fft(values) * gain))


def fft_blur(values, dx, a):
    n = len(values)
    k = 2 * np.pi * np.fft.fftfreq(n, dx)
    return np.real(np.fft.ifft(np.fft.fft(values) * np.exp(-k * k / (2 * a))))
