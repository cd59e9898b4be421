"""Spectral representation of the normalized conformal map ``f: D -> Omega``.

The map is stored through the boundary data ``log|f'(e^{it})|``. Its analytic
completion ``G`` gives ``f' = e^{i gamma} exp(G)``; the Taylor coefficients of
``exp(G)`` come from the usual exponentiation recurrence
``n b_n = sum_{k=1}^n k a_k b_{n-k}``, and ``f`` is obtained by integrating
term by term.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import harmonic
from .errors import NonPositiveModulus, SeriesNotConverged, UnwrapAmbiguity, ValidationError

BOUNDARY_RADIUS = harmonic.SCHWARZ_RADIUS_CAP
SERIES_RTOL = 1e-8
_DISK_SLACK = 1e-12
_ROUNDING_FLOOR = 1e-10


@dataclass(frozen=True)
class Anchors:
    """Pole ``zeta_c = f(0)`` and boundary reference ``zeta_b = f(1)``."""

    zeta_c: complex
    zeta_b: complex

    def __post_init__(self):
        object.__setattr__(self, "zeta_c", complex(self.zeta_c))
        object.__setattr__(self, "zeta_b", complex(self.zeta_b))
        if self.zeta_c == self.zeta_b:
            raise ValidationError("anchors zeta_c and zeta_b must be distinct")

    @property
    def chord(self):
        return self.zeta_b - self.zeta_c


def _geometric_tail(terms, base):
    """Bound the sum of the omitted terms from the decay of the last decade.

    ``base`` holds the unweighted coefficients; once their last decade sits at
    the rounding floor the series has converged and the last term is returned.
    """
    t = np.abs(terms[-10:])
    amp = t.max(initial=0.0)
    if amp == 0.0:
        return 0.0
    b = np.abs(base)
    if b[-10:].max() <= _ROUNDING_FLOOR * b.max():
        return float(amp)
    head, rear = t[:5].max(), t[5:].max()
    if head > 0 and rear < head:
        q = (rear / head) ** (1.0 / 5.0)
        return float(rear * q / (1.0 - q))
    return float(amp * len(terms))


@dataclass(frozen=True)
class ConformalMap:
    """Normalized conformal map ``f`` with ``f(0) = zeta_c``.

    Attributes
    ----------
    zeta_c : complex
        Image of the origin.
    gamma : float
        Rotation constant, ``arg f'(0)``, kept in ``(-pi, pi]``.
    log_modulus : FourierCoefficients
        Half spectrum of ``t -> log|f'(e^{it})|``.
    series_order : int
        Truncation order ``M`` of the Taylor series of ``f'``.
    zeta_b : complex or None
        Boundary reference ``f(1)`` once known.
    """

    zeta_c: complex
    gamma: float
    log_modulus: harmonic.FourierCoefficients
    series_order: int
    zeta_b: complex = None

    def __post_init__(self):
        object.__setattr__(self, "zeta_c", complex(self.zeta_c))
        object.__setattr__(self, "gamma", wrap_angle(self.gamma))
        if self.zeta_b is not None:
            object.__setattr__(self, "zeta_b", complex(self.zeta_b))

    @property
    def anchors(self):
        return Anchors(self.zeta_c, self.zeta_b)

    @property
    def rotation(self):
        return np.exp(1j * self.gamma)

    @cached_property
    def analytic_coeffs(self):
        """Taylor coefficients ``a_k`` of ``G = log f' - i gamma``."""
        a = np.zeros(self.series_order + 1, dtype=complex)
        c = harmonic.power_series(self.log_modulus)
        m = min(c.size, a.size)
        a[:m] = c[:m]
        return a

    @cached_property
    def derivative_coeffs(self):
        """Taylor coefficients ``b_k`` of ``exp(G) = e^{-i gamma} f'``."""
        a = self.analytic_coeffs
        M = self.series_order
        ka = np.arange(M + 1) * a
        b = np.zeros(M + 1, dtype=complex)
        b[0] = np.exp(a[0])
        for n in range(1, M + 1):
            b[n] = np.dot(ka[1 : n + 1], b[n - 1 :: -1]) / n
        return b

    @cached_property
    def map_coeffs(self):
        """Taylor coefficients of ``(f - zeta_c) e^{-i gamma}``, starting at ``z^0``."""
        b = self.derivative_coeffs
        F = np.zeros(b.size + 1, dtype=complex)
        F[1:] = b / np.arange(1, b.size + 1)
        return F

    @cached_property
    def tail_bound(self):
        """Estimated truncation error of the series of ``f`` on ``|z| = 1``."""
        return _geometric_tail(self.map_coeffs[1:], self.derivative_coeffs)

    @cached_property
    def second_tail_bound(self):
        b = self.derivative_coeffs
        return _geometric_tail(np.arange(b.size) * b, b)

    @property
    def series_threshold(self):
        if self.zeta_b is not None:
            scale = abs(self.zeta_b - self.zeta_c)
        else:
            scale = abs(np.sum(self.map_coeffs))
        return SERIES_RTOL * scale

    def _check_tail(self, radius, bound, threshold=None):
        threshold = self.series_threshold if threshold is None else threshold
        if radius > BOUNDARY_RADIUS and bound > threshold:
            raise SeriesNotConverged(bound, threshold)


def wrap_angle(angle):
    """Map an angle into ``(-pi, pi]``."""
    a = float(np.angle(np.exp(1j * float(angle))))
    return np.pi if a == -np.pi else a


def _as_disk_points(z):
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    if np.any(r > 1.0 + _DISK_SLACK):
        raise ValueError("evaluation points must lie in the closed unit disk")
    return z, r


def from_boundary_modulus(mod_samples, anchors=None, series_order=None, zeta_c=None):
    """Build a map (``gamma = 0``) from samples of ``|f'|`` on the uniform circle grid.

    ``anchors`` supplies ``zeta_c`` and ``zeta_b``; alternatively pass
    ``zeta_c`` alone when the boundary reference is not yet known.
    """
    m = np.asarray(mod_samples, dtype=float)
    bad = np.flatnonzero(~(m > 0))
    if bad.size:
        raise NonPositiveModulus(bad[0], m[bad[0]])
    coeffs = harmonic.analyze(np.log(m))
    order = coeffs.n // 2 if series_order is None else int(series_order)
    if anchors is not None:
        return ConformalMap(anchors.zeta_c, 0.0, coeffs, order, anchors.zeta_b)
    return ConformalMap(0j if zeta_c is None else zeta_c, 0.0, coeffs, order)


def eval_fprime(cmap, z):
    """``f'(z)`` for ``|z| <= 1``.

    Interior points use the Schwarz extension of ``log|f'|``; points on the
    circle take the modulus from the data and the argument from its conjugate
    function plus ``gamma``.
    """
    z, r = _as_disk_points(z)
    out = np.empty(z.shape, dtype=complex)
    inner = r <= BOUNDARY_RADIUS
    if np.any(inner):
        out[inner] = np.exp(harmonic.schwarz_extend(cmap.log_modulus, z[inner]))
    if np.any(~inner):
        theta = np.angle(z[~inner])
        c = cmap.log_modulus
        out[~inner] = np.exp(harmonic.evaluate(c, theta) + 1j * harmonic.conjugate(c, theta))
    out *= cmap.rotation
    return out if out.ndim else complex(out)


def eval_f(cmap, z):
    """``f(z) = zeta_c + int_0^1 f'(tz) z dt`` summed as a power series.

    Raises
    ------
    SeriesNotConverged
        If a point lies on the circle and the tail estimate of the series
        exceeds ``1e-8 |zeta_b - zeta_c|``.
    """
    z, r = _as_disk_points(z)
    cmap._check_tail(r.max(initial=0.0), cmap.tail_bound)
    w = cmap.zeta_c + cmap.rotation * np.polynomial.polynomial.polyval(z, cmap.map_coeffs)
    return w if w.ndim else complex(w)


def eval_fsecond(cmap, z):
    """``f''(z)`` from the differentiated Taylor series of ``f'``."""
    z, r = _as_disk_points(z)
    b = cmap.derivative_coeffs
    d = np.arange(1, b.size) * b[1:]
    scale = np.abs(d).sum() + abs(b[0])
    cmap._check_tail(r.max(initial=0.0), cmap.second_tail_bound, SERIES_RTOL * scale)
    w = cmap.rotation * np.polynomial.polynomial.polyval(z, d) if d.size else np.zeros(z.shape, complex)
    return w if np.ndim(w) else complex(w)


def boundary_curvature(cmap, theta):
    """Signed curvature ``Re{1 + z f''/f'} / |f'|`` of the image of ``e^{i theta}``."""
    z = np.exp(1j * np.asarray(theta, dtype=float))
    fp = eval_fprime(cmap, z)
    fs = eval_fsecond(cmap, z)
    kappa = np.real(1.0 + z * fs / fp) / np.abs(fp)
    return kappa if np.ndim(kappa) else float(kappa)


@dataclass(frozen=True)
class BoundaryTrace:
    """Discretized boundary ``f(e^{i theta_j})`` with arclength, tangent angle and curvature."""

    theta: np.ndarray
    points: np.ndarray
    arclength: np.ndarray
    tangent_angle: np.ndarray
    curvature: np.ndarray
    perimeter: float

    @property
    def n(self):
        return self.theta.size

    @property
    def polygon_length(self):
        return float(np.sum(np.abs(np.diff(np.append(self.points, self.points[0])))))

    @property
    def winding(self):
        """Total tangent turning; ``2*pi`` for a positively oriented Jordan curve."""
        d = np.diff(np.append(self.tangent_angle, self.tangent_angle[0] + 2 * np.pi))
        return float(np.sum(d))


def tangent_angle(cmap, theta):
    """Unwrapped ``psi(theta) = arg f'(e^{i theta}) + pi/2 + theta``.

    ``arg f'`` on the circle is ``gamma`` plus the conjugate of ``log|f'|``, a
    continuous function, so no branch cuts are crossed.
    """
    theta = np.asarray(theta, dtype=float)
    return cmap.gamma + harmonic.conjugate(cmap.log_modulus, theta) + 0.5 * np.pi + theta


def trace_boundary(cmap, n):
    """Sample the boundary curve at ``n`` uniform angles.

    Raises
    ------
    UnwrapAmbiguity
        If adjacent tangent angles differ by ``pi`` or more.
    """
    n = harmonic.check_grid_size(n)
    theta = harmonic.theta_grid(n)
    z = np.exp(1j * theta)
    points = eval_f(cmap, z)
    modulus = np.exp(harmonic.evaluate(cmap.log_modulus, theta))
    mod_coeffs = harmonic.analyze(modulus)
    arclength = harmonic.cumulative(mod_coeffs)
    perimeter = 2.0 * np.pi * mod_coeffs.mean
    psi = tangent_angle(cmap, theta)
    jumps = np.abs(np.diff(np.append(psi, psi[0] + 2 * np.pi)))
    if np.any(jumps >= np.pi):
        i = int(np.argmax(jumps))
        raise UnwrapAmbiguity(i, jumps[i])
    kappa = boundary_curvature(cmap, theta)
    return BoundaryTrace(theta, points, arclength, psi, kappa, perimeter)


def green_level_curve(cmap, r, n):
    """Points of the level set ``U = -log(r) / (2*pi)``, i.e. ``f(r e^{i theta_j})``."""
    if not 0.0 < r < 1.0:
        raise ValueError("level radius must lie in (0, 1)")
    theta = harmonic.theta_grid(harmonic.check_grid_size(n))
    return eval_f(cmap, r * np.exp(1j * theta))
