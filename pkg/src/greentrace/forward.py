"""Forward operator: conformal map -> boundary flux as a function of arclength.

On the circle ``s(theta) = int_0^theta |f'(e^{it})| dt`` and the flux is
``1 / (2*pi*|f'(e^{i theta})|)``. The parametric pairs are resampled onto a
uniform arclength grid by inverting ``s(theta)`` with Newton's method.
"""

from dataclasses import dataclass

import numpy as np
import shapely

from . import harmonic
from .errors import DegenerateDerivative, SelfIntersectingBoundary, ValidationError
from .mapping import Anchors, ConformalMap, eval_f, from_boundary_modulus, wrap_angle
from .profile import NEWTON_RTOL, solve_increasing, validate_flux

DEGENERACY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class PolynomialMap:
    """``f(z) = zeta_c + sum_{k=1}^m a_k z^k``."""

    zeta_c: complex
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "zeta_c", complex(self.zeta_c))
        object.__setattr__(self, "coeffs", tuple(complex(a) for a in self.coeffs))
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValidationError("polynomial map needs a nonzero linear coefficient a_1")

    @property
    def anchors(self):
        return Anchors(self.zeta_c, self.zeta_c + sum(self.coeffs))

    def boundary_points(self, n):
        z = np.exp(1j * harmonic.theta_grid(n))
        return self.zeta_c + z * np.polynomial.polynomial.polyval(z, self.coeffs)

    def modulus(self, theta):
        """``|f'(e^{i theta})|`` in closed form."""
        k = np.arange(1, len(self.coeffs) + 1)
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return np.abs(np.polynomial.polynomial.polyval(z, k * np.asarray(self.coeffs)))


@dataclass(frozen=True)
class SampledBoundaryMap:
    """Boundary correspondence ``points[j] = f(exp(2*pi*i*j/N))``."""

    points: np.ndarray

    def __post_init__(self):
        p = np.array(self.points, dtype=complex)
        if p.ndim != 1:
            raise ValidationError("boundary samples must be a one-dimensional sequence")
        harmonic.check_grid_size(p.size)
        if np.any(np.roll(p, -1) == p):
            raise ValidationError("consecutive boundary samples must be distinct")
        p.flags.writeable = False
        object.__setattr__(self, "points", p)

    @property
    def anchors(self):
        # mean value property: f(0) is the average of the boundary values
        return Anchors(np.mean(self.points), self.points[0])

    def _spectrum(self):
        n = self.points.size
        F = np.fft.fft(self.points) / n
        k = np.fft.fftfreq(n, 1.0 / n)
        F[n // 2] = 0.0
        return F, k

    def boundary_points(self, n):
        if n == self.points.size:
            return np.asarray(self.points)
        F, k = self._spectrum()
        theta = harmonic.theta_grid(n)
        return np.exp(1j * np.multiply.outer(theta, k)) @ F

    def modulus(self, theta):
        """``|d/dtheta f(e^{i theta})|`` from the trigonometric interpolant of the samples."""
        F, k = self._spectrum()
        theta = np.asarray(theta, dtype=float)
        return np.abs(np.exp(1j * np.multiply.outer(theta, k)) @ (1j * k * F))


def parse_map_spec(obj):
    """Build a map spec from its JSON form."""
    kind = obj.get("type")
    if kind == "polynomial":
        zc = complex(*obj.get("zeta_c", [0.0, 0.0]))
        return PolynomialMap(zc, [complex(*c) for c in obj["coeffs"]])
    if kind == "boundary_samples":
        return SampledBoundaryMap([complex(*p) for p in obj["points"]])
    raise ValidationError(f"unknown map spec type {kind!r}")


def check_simple_boundary(points):
    """Sampled Jordan-curve diagnostic: simple, positively oriented polygon.

    This is a necessary condition checked at the sampled resolution only.
    """
    xy = np.column_stack([points.real, points.imag])
    ring = shapely.LinearRing(xy)
    if not ring.is_simple:
        raise SelfIntersectingBoundary()
    if not ring.is_ccw:
        raise SelfIntersectingBoundary("sampled boundary is not positively oriented")


def boundary_modulus_of(spec, n):
    """``|f'(e^{i theta_j})|`` on the uniform ``n``-point circle grid."""
    n = harmonic.check_grid_size(n)
    theta = harmonic.theta_grid(n)
    m = spec.modulus(theta)
    i = int(np.argmin(m))
    if m[i] < DEGENERACY_THRESHOLD:
        raise DegenerateDerivative(theta[i], m[i], DEGENERACY_THRESHOLD)
    return m


def arclength_angles(spec, n):
    """Angles ``theta(s_k)`` at uniform arclengths ``s_k = k L / n`` and the perimeter ``L``."""
    theta = harmonic.theta_grid(n)
    coeffs = harmonic.analyze(boundary_modulus_of(spec, n))
    L = 2.0 * np.pi * coeffs.mean
    s_nodes = harmonic.cumulative(coeffs)
    targets = L * np.arange(n) / n
    t = solve_increasing(
        lambda x: harmonic.integrate(coeffs, x),
        lambda x: harmonic.evaluate(coeffs, x),
        targets,
        np.append(theta, 2.0 * np.pi),
        np.append(s_nodes, L),
        NEWTON_RTOL * L,
    )
    t[0] = 0.0
    return t, L


def forward_operator(spec, n, check_boundary=True):
    """Flux profile of the domain ``f(D)`` on ``n`` uniform arclength nodes, plus anchors.

    Raises
    ------
    DegenerateDerivative
        If ``|f'|`` drops below ``1e-12`` on the circle grid.
    SelfIntersectingBoundary
        If the sampled boundary polygon is not a positively oriented simple curve.
    """
    n = harmonic.check_grid_size(n)
    boundary_modulus_of(spec, n)
    if check_boundary:
        check_simple_boundary(spec.boundary_points(n))
    t, L = arclength_angles(spec, n)
    phi = 1.0 / (2.0 * np.pi * spec.modulus(t))
    return validate_flux(phi, L), spec.anchors


def conformal_map_of(spec, n):
    """Spectral :class:`ConformalMap` of ``spec`` from ``n`` samples of ``|f'|`` on the circle.

    The rotation constant is fixed by the direction of ``zeta_b - zeta_c``.
    """
    anchors = spec.anchors
    bare = from_boundary_modulus(boundary_modulus_of(spec, n), zeta_c=0j)
    gamma = wrap_angle(np.angle(anchors.chord) - np.angle(eval_f(bare, 1.0 + 0j)))
    return ConformalMap(anchors.zeta_c, gamma, bare.log_modulus, bare.series_order, anchors.zeta_b)
