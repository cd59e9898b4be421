"""Boundary flux profiles and the cumulative phase ``Phi(s) = 2*pi*int_0^s phi``."""

from dataclasses import dataclass

import numpy as np

from . import harmonic
from .errors import ConvergenceFailure, NonPositiveSample, NormalizationViolation

NORMALIZATION_TOL = 1e-6
NEWTON_RTOL = 1e-12
NEWTON_MAXITER = 100

TWO_PI = 2.0 * np.pi


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class FluxProfile:
    """Samples of the flux at ``s_j = j*L/N``, arclength counterclockwise from ``zeta_b``.

    Construct through :func:`validate_flux`, which checks positivity and the
    unit-integral condition.
    """

    samples: np.ndarray
    perimeter: float

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen(self.samples))
        object.__setattr__(self, "perimeter", float(self.perimeter))

    @property
    def n_samples(self):
        return self.samples.size

    @property
    def grid(self):
        return self.perimeter * np.arange(self.n_samples) / self.n_samples

    @property
    def spacing(self):
        return self.perimeter / self.n_samples

    @property
    def integral(self):
        """Periodic trapezoid estimate of ``int_0^L phi ds``."""
        return float(self.spacing * np.sum(self.samples))

    def coefficients(self):
        """Fourier coefficients of ``phi`` in the scaled variable ``u = 2*pi*s/L``."""
        return harmonic.analyze(self.samples)

    def __call__(self, s):
        """Trigonometric interpolant of the flux at arbitrary arclengths."""
        u = TWO_PI * np.asarray(s, dtype=float) / self.perimeter
        return harmonic.evaluate(self.coefficients(), u)


def validate_flux(raw_samples, L, tol=NORMALIZATION_TOL, renormalize=False):
    """Check raw flux samples and wrap them in a :class:`FluxProfile`.

    Parameters
    ----------
    raw_samples : array_like
        Flux values on a uniform arclength grid of ``N`` points, ``N >= 8`` a
        power of two.
    L : float
        Perimeter of the domain.
    tol : float
        Allowed deviation of the trapezoid integral from 1.
    renormalize : bool
        Divide by the measured integral instead of rejecting the profile.

    Raises
    ------
    GridTooCoarse, NonPositiveSample, NormalizationViolation
    """
    phi = np.asarray(raw_samples, dtype=float)
    if phi.ndim != 1:
        raise ValueError("flux samples must be one-dimensional")
    harmonic.check_grid_size(phi.size)
    L = float(L)
    if not np.isfinite(L) or L <= 0:
        raise ValueError(f"perimeter must be positive, got {L!r}")
    if not np.all(np.isfinite(phi)):
        bad = int(np.flatnonzero(~np.isfinite(phi))[0])
        raise NonPositiveSample(bad, phi[bad])
    bad = np.flatnonzero(phi <= 0)
    if bad.size:
        raise NonPositiveSample(bad[0], phi[bad[0]])
    integral = L / phi.size * np.sum(phi)
    if renormalize:
        phi = phi / integral
    elif abs(integral - 1.0) > tol:
        raise NormalizationViolation(integral, tol)
    return FluxProfile(phi, L)


@dataclass(frozen=True)
class CumulativePhase:
    """``Phi`` on the profile grid together with its spectral interpolant.

    ``flux_coeffs`` holds the flux divided by its measured integral, so that
    ``Phi(L) = 2*pi`` holds exactly.
    """

    grid: np.ndarray
    values: np.ndarray
    perimeter: float
    flux_coeffs: harmonic.FourierCoefficients
    interpolation: str = "fourier"

    def __post_init__(self):
        object.__setattr__(self, "grid", _frozen(self.grid))
        object.__setattr__(self, "values", _frozen(self.values))

    def __call__(self, s):
        """``Phi(s)`` for arbitrary ``s`` in ``[0, L]``."""
        u = TWO_PI * np.asarray(s, dtype=float) / self.perimeter
        return self.perimeter * harmonic.integrate(self.flux_coeffs, u)

    def derivative(self, s):
        """``Phi'(s) = 2*pi*phi(s)`` with the normalized flux."""
        u = TWO_PI * np.asarray(s, dtype=float) / self.perimeter
        return TWO_PI * harmonic.evaluate(self.flux_coeffs, u)

    def normalized_flux(self, s):
        return self.derivative(s) / TWO_PI


def build_phase(profile):
    """Cumulative phase of a validated profile via the Fourier antiderivative."""
    c = profile.coefficients()
    # spectral antiderivative in u = 2*pi*s/L; the mean mode integrates to mean*L
    scale = profile.perimeter / TWO_PI
    total = c.mean * profile.perimeter
    normalized = harmonic.FourierCoefficients(np.asarray(c.coeffs) / total, c.n)
    values = TWO_PI * scale * harmonic.cumulative(normalized)
    values[0] = 0.0
    return CumulativePhase(profile.grid, values, profile.perimeter, normalized)


def solve_increasing(func, dfunc, targets, nodes_x, nodes_y, atol, maxiter=NEWTON_MAXITER):
    """Solve ``func(x) = y`` for an increasing ``func`` by safeguarded Newton.

    ``nodes_x``/``nodes_y`` tabulate ``func`` at increasing abscissae spanning
    every target; they seed Newton by linear interpolation and give the initial
    bisection brackets.
    """
    y = np.atleast_1d(np.asarray(targets, dtype=float))
    idx = np.clip(np.searchsorted(nodes_y, y, side="right") - 1, 0, nodes_x.size - 2)
    lo = nodes_x[idx].copy()
    hi = nodes_x[idx + 1].copy()
    x = np.interp(y, nodes_y, nodes_x)
    active = np.ones(y.size, dtype=bool)
    for _ in range(maxiter):
        fx = func(x[active]) - y[active]
        done = np.abs(fx) <= atol
        ids = np.flatnonzero(active)
        below = fx < 0
        lo[ids[below]] = x[ids[below]]
        hi[ids[~below]] = x[ids[~below]]
        active[ids[done]] = False
        if not active.any():
            break
        ids = np.flatnonzero(active)
        fx = fx[~done]
        step = fx / dfunc(x[ids])
        trial = x[ids] - step
        outside = ~((trial > lo[ids]) & (trial < hi[ids])) | ~np.isfinite(trial)
        trial[outside] = 0.5 * (lo[ids][outside] + hi[ids][outside])
        # bracket collapsed to rounding level: accept the midpoint
        tiny = (hi[ids] - lo[ids]) <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(hi[ids]))
        x[ids] = trial
        active[ids[tiny]] = False
        if not active.any():
            break
    else:
        worst = np.max(np.abs(func(x[active]) - y[active]))
        raise ConvergenceFailure(maxiter, worst)
    # one more Newton step takes every root from the tolerance to rounding level,
    # so the result is a smooth function of the target
    polished = x - (func(x) - y) / dfunc(x)
    keep = (polished >= lo) & (polished <= hi)
    x[keep] = polished[keep]
    return x


def invert_phase(phase, theta):
    """Arclength ``s`` with ``Phi(s) = theta`` for ``theta`` in ``[0, 2*pi]``.

    Accepts a scalar or an array; endpoints map exactly to ``0`` and ``L``.
    """
    theta_arr = np.asarray(theta, dtype=float)
    flat = np.atleast_1d(theta_arr).ravel()
    if np.any(flat < -1e-12) or np.any(flat > TWO_PI + 1e-12):
        raise ValueError("theta must lie in [0, 2*pi]")
    flat = np.clip(flat, 0.0, TWO_PI)
    nodes_x = np.append(phase.grid, phase.perimeter)
    nodes_y = np.append(phase.values, TWO_PI)
    s = solve_increasing(phase, phase.derivative, flat, nodes_x, nodes_y, NEWTON_RTOL * TWO_PI)
    s = np.clip(s, 0.0, phase.perimeter)
    s[flat == 0.0] = 0.0
    s[flat == TWO_PI] = phase.perimeter
    if theta_arr.ndim == 0:
        return float(s[0])
    return s.reshape(theta_arr.shape)
