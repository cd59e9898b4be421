"""Spectral toolkit on the unit circle.

Real periodic data sampled at ``theta_j = 2*pi*j/N`` (``N`` a power of two) is
represented by the half spectrum ``c_k = (1/N) * sum_j v_j exp(-i k theta_j)``,
``k = 0..N/2``, so that

    v(theta) = c_0 + 2 Re sum_{0<k<N/2} c_k e^{ik theta} + c_{N/2} cos(N theta / 2).

The Nyquist mode is treated as a pure cosine throughout: its conjugate and its
derivative vanish on the grid.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh, solve_toeplitz, toeplitz

from .errors import EvaluationTooCloseToBoundary, GridTooCoarse

SCHWARZ_RADIUS_CAP = 1.0 - 1e-9
FIT_MAX_CONDITION = 100.0


def is_power_of_two(n):
    n = int(n)
    return n > 0 and n & (n - 1) == 0


def check_grid_size(n, minimum=8):
    if not is_power_of_two(n) or n < minimum:
        raise GridTooCoarse(n, minimum)
    return int(n)


def theta_grid(n):
    """Uniform angles ``2*pi*j/n`` for ``j = 0..n-1``."""
    return 2.0 * np.pi * np.arange(n) / n


@dataclass(frozen=True)
class FourierCoefficients:
    """Half spectrum of a real trigonometric interpolant on ``n`` nodes."""

    coeffs: np.ndarray
    n: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).copy()
        if c.shape != (self.n // 2 + 1,):
            raise ValueError(f"expected {self.n // 2 + 1} coefficients for n={self.n}, got {c.shape}")
        c[0] = c[0].real
        c[-1] = c[-1].real
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def nyquist(self):
        return self.n // 2

    @property
    def mean(self):
        return float(self.coeffs[0].real)


def analyze(samples):
    """Fourier coefficients of the real trigonometric interpolant of ``samples``."""
    v = np.asarray(samples, dtype=float)
    if v.ndim != 1:
        raise ValueError("periodic samples must be one-dimensional")
    n = check_grid_size(v.size)
    return FourierCoefficients(np.fft.rfft(v) / n, n)


def synthesize(coeffs, n=None):
    """Grid values of the interpolant, optionally on a finer (zero-padded) grid."""
    n = coeffs.n if n is None else check_grid_size(n)
    c = np.asarray(coeffs.coeffs)
    if n == coeffs.n:
        return np.fft.irfft(c, n) * n
    if n < coeffs.n:
        raise ValueError("cannot synthesize on a coarser grid")
    padded = np.zeros(n // 2 + 1, dtype=complex)
    padded[: c.size] = c
    # the source Nyquist cosine is split evenly over +/- M on the finer grid
    padded[c.size - 1] *= 0.5
    return np.fft.irfft(padded, n) * n


def _weights(coeffs):
    """Multipliers turning ``c_k`` into coefficients of ``e^{ik theta}`` in ``Re``-form."""
    w = np.full(coeffs.coeffs.size, 2.0)
    w[0] = 1.0
    w[-1] = 1.0
    return w


def power_series(coeffs):
    """Taylor coefficients of the analytic completion ``c_0 + 2 sum c_k z^k``."""
    return np.asarray(coeffs.coeffs) * _weights(coeffs)


def evaluate(coeffs, theta):
    """Trigonometric interpolant at arbitrary angles."""
    theta = np.asarray(theta, dtype=float)
    k = np.arange(coeffs.coeffs.size)
    phase = np.exp(1j * np.multiply.outer(theta, k))
    c = power_series(coeffs)
    return (phase @ c).real


def conjugate(coeffs, theta):
    """Conjugate (Hilbert-transformed) interpolant at arbitrary angles."""
    theta = np.asarray(theta, dtype=float)
    c = power_series(coeffs).copy()
    c[0] = 0.0
    c[-1] = 0.0
    k = np.arange(c.size)
    phase = np.exp(1j * np.multiply.outer(theta, k))
    return (phase @ c).imag


def integrate(coeffs, theta):
    """``int_0^theta g(t) dt`` of the interpolant, at arbitrary ``theta``."""
    theta = np.asarray(theta, dtype=float)
    M = coeffs.nyquist
    k = np.arange(1, M)
    c = np.asarray(coeffs.coeffs)
    phase = np.exp(1j * np.multiply.outer(theta, k)) - 1.0
    periodic = (phase @ (2.0 * c[1:M] / (1j * k))).real
    return coeffs.mean * theta + periodic + c[M].real * np.sin(M * theta) / M


def cumulative(coeffs):
    """``int_0^{theta_j} g`` on the grid (spectral antiderivative, mean handled linearly)."""
    n, M = coeffs.n, coeffs.nyquist
    c = np.asarray(coeffs.coeffs)
    anti = np.zeros_like(c)
    k = np.arange(1, M)
    anti[1:M] = c[1:M] / (1j * k)
    periodic = np.fft.irfft(anti, n) * n
    return coeffs.mean * theta_grid(n) + periodic - periodic[0]


def shift(coeffs, delta):
    """Coefficients of ``theta -> g(theta + delta)`` on the same grid."""
    M = coeffs.nyquist
    k = np.arange(M + 1)
    c = np.asarray(coeffs.coeffs) * np.exp(1j * k * delta)
    c[M] = coeffs.coeffs[M].real * np.cos(M * delta)
    return FourierCoefficients(c, coeffs.n)


def schwarz_extend(coeffs, z):
    """Analytic completion ``G(z) = c_0 + 2 sum_k c_k z^k`` inside the disk.

    ``Re G`` is the harmonic extension of the boundary data and ``Im G(0) = 0``.
    Points with ``|z| > 1 - 1e-9`` are rejected; boundary values go through
    :func:`evaluate` and :func:`conjugate`.
    """
    z = np.asarray(z, dtype=complex)
    r = np.max(np.abs(z), initial=0.0)
    if r > SCHWARZ_RADIUS_CAP:
        raise EvaluationTooCloseToBoundary(r, SCHWARZ_RADIUS_CAP)
    a = power_series(coeffs)
    return np.polynomial.polynomial.polyval(z, a)


def hilbert(coeffs):
    """Circle Hilbert transform on the grid: ``e^{ik theta} -> -i sign(k) e^{ik theta}``."""
    c = np.asarray(coeffs.coeffs) * -1j
    c[0] = 0.0
    c[-1] = 0.0
    return np.fft.irfft(c, coeffs.n) * coeffs.n


def differentiate(coeffs):
    """``dg/dtheta`` on the grid via multiplication by ``ik``."""
    k = np.arange(coeffs.coeffs.size)
    c = np.asarray(coeffs.coeffs) * 1j * k
    c[-1] = 0.0
    return np.fft.irfft(c, coeffs.n) * coeffs.n


def spectral_tail(coeffs, band=None):
    """Largest ``|c_k|`` over the top quarter of ``k <= band``, relative to the largest ``|c_k|, k >= 1``.

    A resolution indicator: near rounding level when the data is well resolved
    by ``band`` modes. ``band`` defaults to ``N/2 - 1`` (the Nyquist cosine is excluded).
    """
    c = np.abs(np.asarray(coeffs.coeffs))
    band = coeffs.nyquist - 1 if band is None else band
    top = c[1 : band + 1].max(initial=0.0)
    if top == 0.0:
        return 0.0
    return float(c[(3 * band) // 4 : band + 1].max() / top)


def _toeplitz_system(theta, weights, values, degree):
    # normal equations of the weighted fit in the basis e^{im theta}, |m| <= degree;
    # entry (p, m) is sum_j w_j e^{i(m - p) theta_j}, a Hermitian Toeplitz matrix
    j = np.arange(2 * degree + 1)
    phase = np.exp(1j * np.multiply.outer(j, theta))
    moments = phase @ weights
    rhs = None
    if values is not None:
        rhs = np.exp(-1j * np.multiply.outer(j - degree, theta)) @ (weights * values)
    return moments.conj(), moments, rhs


def _condition(theta, weights, degree):
    col, row, _ = _toeplitz_system(theta, weights, None, degree)
    ev = eigvalsh(toeplitz(col, row))
    return np.inf if ev[0] <= 0 else ev[-1] / ev[0]


def fit_degree(theta, max_condition=FIT_MAX_CONDITION, cap=None):
    """Largest fit degree whose weighted normal matrix has condition <= ``max_condition``.

    Starts from ``pi / max_gap`` (where the sampling is dense enough for a
    well-posed fit) and grows in 5% steps while the condition stays bounded.
    """
    theta = np.asarray(theta, dtype=float)
    gaps = np.diff(np.append(theta, theta[0] + 2.0 * np.pi))
    cap = theta.size // 2 - 1 if cap is None else cap
    weights = 0.5 * (gaps + np.roll(gaps, 1))
    degree = max(1, min(cap, int(np.pi / gaps.max())))
    while degree > 1 and _condition(theta, weights, degree) > max_condition:
        degree -= 1
    step = max(1, degree // 20)
    while degree + step <= cap and _condition(theta, weights, degree + step) <= max_condition:
        degree += step
    return degree


def fit_nonuniform(theta, values, n, degree):
    """Trigonometric polynomial of ``degree`` fitted to samples at increasing angles.

    Least squares with Voronoi-type weights (half the two neighbouring gaps);
    the normal equations are Toeplitz and are solved by Levinson recursion.
    Returned as coefficients on an ``n``-point grid, ``n > 2 * degree``.
    """
    theta = np.asarray(theta, dtype=float)
    values = np.asarray(values, dtype=float)
    n = check_grid_size(n)
    if 2 * degree >= n:
        raise ValueError(f"degree {degree} does not fit on an {n}-point grid")
    gaps = np.diff(np.append(theta, theta[0] + 2.0 * np.pi))
    weights = 0.5 * (gaps + np.roll(gaps, 1))
    col, row, rhs = _toeplitz_system(theta, weights, values, degree)
    x = solve_toeplitz((col, row), rhs)  # coefficient of e^{im theta} at index m + degree
    c = np.zeros(n // 2 + 1, dtype=complex)
    pos, neg = x[degree:], x[degree::-1]
    c[: degree + 1] = 0.5 * (pos + neg.conj())
    return FourierCoefficients(c, n)
