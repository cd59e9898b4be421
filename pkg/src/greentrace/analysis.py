"""Diagnostics on flux profiles: univalence bound, symmetries, curvature."""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import harmonic
from .inverse import default_grid
from .mapping import boundary_curvature
from .errors import ConvergenceFailure
from .profile import NEWTON_RTOL, TWO_PI, build_phase, invert_phase, solve_increasing

SYMMETRY_TOL = 1e-6
N_MAX_DEFAULT = 12
ANGLE_TOL = 1e-13
ANGLE_MAXITER = 50
RESOLVED_TAIL = 1e-13


@dataclass(frozen=True)
class UnivalenceReport:
    max_ratio: float
    paatero_bound: float
    passes: bool

    def to_dict(self):
        return {"max_ratio": self.max_ratio, "paatero_bound": self.paatero_bound, "passes": self.passes}


@dataclass(frozen=True)
class SymmetryReport:
    rotational: list = field(default_factory=list)
    reflection_offset: float = 0.0
    reflection_residual: float = 0.0
    tol: float = SYMMETRY_TOL

    @property
    def detected_orders(self):
        return [n for n, r in self.rotational if r < self.tol]

    @property
    def reflection_detected(self):
        return self.reflection_residual < self.tol

    def to_dict(self):
        return {
            "rotational": [{"n": n, "residual": r} for n, r in self.rotational],
            "detected_orders": self.detected_orders,
            "reflection": {"offset": self.reflection_offset, "residual": self.reflection_residual},
            "tol": self.tol,
        }


def _ratio_function(profile):
    """``s -> |phi'(s)| / phi(s)^2`` on the trigonometric interpolant."""
    c = profile.coefficients()
    dc = harmonic.analyze(harmonic.differentiate(c))
    to_u = TWO_PI / profile.perimeter

    def ratio(s):
        u = to_u * np.asarray(s, dtype=float)
        return np.abs(to_u * harmonic.evaluate(dc, u)) / harmonic.evaluate(c, u) ** 2

    return ratio


def paatero_check(profile, refine=4):
    """Bound the boundary rotation of the reconstructed map by ``2*pi + max|phi'/phi^2|``.

    The maximum is located on the grid and then polished by a bounded scalar
    search on the interpolant around the ``refine`` largest grid values.
    ``passes`` means the bound is at most ``4*pi``, i.e. Paatero's univalence
    criterion applies.
    """
    ratio = _ratio_function(profile)
    s = profile.grid
    h = profile.spacing
    r = ratio(s)
    best = float(r.max())
    for j in np.argsort(r)[::-1][:refine]:
        res = minimize_scalar(
            lambda x: -ratio(x),
            bounds=(s[j] - h, s[j] + h),
            method="bounded",
            options={"xatol": 1e-13 * profile.perimeter},
        )
        best = max(best, float(-res.fun))
    return UnivalenceReport(best, TWO_PI + best, bool(best <= TWO_PI))


def rotational_residuals(profile, n_max=N_MAX_DEFAULT):
    """``[(n, ||phi(. + L/n) - phi|| / ||phi||), ...]`` for ``n = 2..n_max`` (sup norms on the grid)."""
    if not 2 <= n_max <= profile.n_samples // 4:
        raise ValueError(f"n_max must lie in [2, {profile.n_samples // 4}]")
    c = profile.coefficients()
    phi = profile.samples
    norm = np.abs(phi).max()
    out = []
    for n in range(2, n_max + 1):
        shifted = harmonic.synthesize(harmonic.shift(c, TWO_PI / n))
        out.append((n, float(np.abs(shifted - phi).max() / norm)))
    return out


def rotational_symmetry(profile, n_max=N_MAX_DEFAULT, tol=SYMMETRY_TOL):
    return SymmetryReport(rotational_residuals(profile, n_max), tol=tol)


def reflection_residual(profile, offset):
    """``||phi(s0 + s) - phi(s0 - s)|| / ||phi||`` on the grid."""
    c = harmonic.shift(profile.coefficients(), TWO_PI * offset / profile.perimeter)
    g = harmonic.synthesize(c)
    mirrored = np.roll(g[::-1], 1)
    return float(np.abs(g - mirrored).max() / np.abs(profile.samples).max())


def reflection_symmetry(profile, tol=SYMMETRY_TOL):
    """Scan axis offsets on the half grid over ``[0, L/2)`` for the best mirror symmetry."""
    n = profile.n_samples
    offsets = 0.5 * profile.spacing * np.arange(n)
    residuals = np.array([reflection_residual(profile, s0) for s0 in offsets])
    k = int(np.argmin(residuals))
    return SymmetryReport(reflection_offset=float(offsets[k]), reflection_residual=float(residuals[k]), tol=tol)


def symmetry_report(profile, n_max=N_MAX_DEFAULT, tol=SYMMETRY_TOL):
    refl = reflection_symmetry(profile, tol)
    return SymmetryReport(
        rotational_residuals(profile, n_max),
        refl.reflection_offset,
        refl.reflection_residual,
        tol,
    )


def node_angles(profile, n=None, tol=ANGLE_TOL, maxiter=ANGLE_MAXITER):
    """Disk angles ``theta_j`` of the arclength nodes and the fitted log-speed.

    ``g = log s'(theta) = -log(2*pi*phi)`` is known exactly at the (unknown,
    non-uniform) angles ``theta_j = Phi(s_j)``. Starting from ``Phi`` of the
    interpolated flux, alternate: fit ``g`` by a trigonometric polynomial in
    ``theta`` at the current angles, rebuild ``s(theta) = int exp(g)``
    (rescaled to the perimeter), and solve ``s(theta_j) = s_j`` afresh. The
    fixed point is consistent with a log-speed that is smooth in ``theta``,
    which is where the data is band-limited; the flux itself generally is
    not band-limited in ``s``.

    Returns ``(theta, g_coeffs)`` with ``g_coeffs`` on an ``n``-point grid.
    """
    n = default_grid(profile) if n is None else harmonic.check_grid_size(n)
    phase = build_phase(profile)
    L = profile.perimeter
    g = -np.log(TWO_PI * phase.normalized_flux(profile.grid))
    theta = phase.values.copy()
    degree = harmonic.fit_degree(theta, cap=min(profile.n_samples, n) // 2 - 1)
    grid = harmonic.theta_grid(n)
    for it in range(maxiter):
        g_coeffs = harmonic.fit_nonuniform(theta, g, n, degree)
        speed = harmonic.analyze(np.exp(harmonic.synthesize(g_coeffs)))
        scale = L / (TWO_PI * speed.mean)
        updated = solve_increasing(
            lambda x: scale * harmonic.integrate(speed, x),
            lambda x: scale * harmonic.evaluate(speed, x),
            profile.grid,
            np.append(grid, TWO_PI),
            np.append(scale * harmonic.cumulative(speed), L),
            NEWTON_RTOL * L,
        )
        updated[0] = 0.0
        change = np.abs(updated - theta).max()
        theta = updated
        if change <= tol:
            break
    else:
        raise ConvergenceFailure(maxiter, change)
    return theta, harmonic.fit_nonuniform(theta, g, n, degree)


def _curvature_interpolated(profile, n):
    # log-speed sampled on the uniform theta grid through the s-interpolant of phi
    phase = build_phase(profile)
    s_of_theta = invert_phase(phase, harmonic.theta_grid(n))
    phi = phase.normalized_flux(s_of_theta)
    log_speed = harmonic.analyze(-np.log(TWO_PI * phi))
    d_log_speed = harmonic.analyze(harmonic.differentiate(log_speed))
    kappa_theta = TWO_PI * phi * (1.0 + harmonic.hilbert(d_log_speed))
    return harmonic.evaluate(harmonic.analyze(kappa_theta), phase.values)


def _curvature_fitted(profile, theta, g):
    k = np.arange(g.coeffs.size)
    dg = harmonic.FourierCoefficients(np.asarray(g.coeffs) * 1j * k, g.n)
    phi = profile.samples / profile.integral
    return TWO_PI * phi * (1.0 + harmonic.conjugate(dg, theta))


def curvature_from_flux(profile, n=None):
    """Boundary curvature at the profile nodes, computed from the flux alone.

    Works in the disk angle: with ``s'(theta) = 1 / (2*pi*phi(s(theta)))``,

        kappa(s(theta)) = 2*pi*phi(s(theta)) * (1 + H(s''/s')(theta)),

    where ``H`` is the circle Hilbert transform, applied spectrally. This
    equals ``2*pi*phi*(1 + D2N(log phi))`` with the Dirichlet-to-Neumann map
    of the domain.

    The log-speed ``-log(2*pi*phi)`` in ``theta`` comes from one of two
    representations, whichever is better resolved by the samples:

    * the trigonometric interpolant of the flux in ``s``, resampled at
      ``s(theta)`` on a uniform angle grid (default ``max(512, 2N)`` nodes)
      and brought back to the arclength nodes at ``theta = Phi(s_j)``;
    * a direct fit in ``theta`` at the node angles (:func:`node_angles`),
      used when the ``s``-spectrum of the log-flux is not resolved to rounding
      level and the fitted ``theta``-spectrum has a smaller tail.
    """
    n = default_grid(profile) if n is None else harmonic.check_grid_size(n)
    log_flux = harmonic.analyze(np.log(profile.samples))
    s_tail = harmonic.spectral_tail(log_flux)
    if s_tail > RESOLVED_TAIL:
        try:
            theta, g = node_angles(profile, n)
        except ConvergenceFailure:
            pass
        else:
            degree = int(np.flatnonzero(g.coeffs).max(initial=1))
            if harmonic.spectral_tail(g, degree) < s_tail:
                return _curvature_fitted(profile, theta, g)
    return _curvature_interpolated(profile, n)


def d2n_curvature_form(profile, n=None):
    """``kappa = 2*pi*phi*(1 + D2N(log phi))``; same computation as :func:`curvature_from_flux`."""
    return curvature_from_flux(profile, n)


def curvature_geometric(cmap, theta):
    """Signed curvature of the boundary of ``f(D)`` at ``f(e^{i theta})``."""
    return boundary_curvature(cmap, theta)


def total_turning(profile, kappa):
    """Periodic trapezoid estimate of ``int_0^L kappa ds``."""
    return float(profile.spacing * np.sum(kappa))
