"""Reconstruction of the conformal map (and the domain) from a flux profile."""

from typing import NamedTuple

import numpy as np

from . import harmonic
from .errors import InconsistentAnchors
from .mapping import ConformalMap, eval_f, from_boundary_modulus, trace_boundary, wrap_angle
from .profile import build_phase, invert_phase

RESIDUAL_TOL = 1e-6


class Reconstruction(NamedTuple):
    conformal_map: ConformalMap
    trace: object
    consistency_residual: float


def default_grid(profile):
    return max(512, 2 * profile.n_samples)


def boundary_modulus_from_flux(profile, n):
    """``|f'(e^{i theta_j})| = 1 / (2*pi*phi(Phi^{-1}(theta_j)))`` on the ``n``-point grid."""
    n = harmonic.check_grid_size(n)
    phase = build_phase(profile)
    s = invert_phase(phase, harmonic.theta_grid(n))
    return 1.0 / (2.0 * np.pi * phase.normalized_flux(s))


def reconstruct(profile, anchors, n=None, tol=RESIDUAL_TOL):
    """Recover the unique normalized map whose flux is ``profile``.

    ``gamma`` is fixed by the argument of ``zeta_b - zeta_c = int_0^1 f'(t) dt``;
    the mismatch of the moduli, relative to ``|int_0^1 f'(t) dt|``, is
    returned as the consistency residual.

    Raises
    ------
    InconsistentAnchors
        If the residual exceeds ``tol``: the flux is not attainable with these anchors.
    """
    n = default_grid(profile) if n is None else harmonic.check_grid_size(n)
    modulus = boundary_modulus_from_flux(profile, n)
    bare = from_boundary_modulus(modulus, zeta_c=0j)
    integral = eval_f(bare, 1.0 + 0j)
    chord = anchors.zeta_b - anchors.zeta_c
    gamma = wrap_angle(np.angle(chord) - np.angle(integral))
    # relative to the length implied by the flux: a chord twice too long gives 1
    residual = abs(abs(integral) - abs(chord)) / abs(integral)
    if residual > tol:
        raise InconsistentAnchors(residual, tol)
    cmap = ConformalMap(anchors.zeta_c, gamma, bare.log_modulus, bare.series_order, anchors.zeta_b)
    return Reconstruction(cmap, trace_boundary(cmap, n), float(residual))


def reconstruct_free(profile, zeta_c, gamma, n=None):
    """Reconstruct with a prescribed rotation ``gamma``; ``zeta_b`` is reported as ``f(1)``."""
    n = default_grid(profile) if n is None else harmonic.check_grid_size(n)
    modulus = boundary_modulus_from_flux(profile, n)
    bare = from_boundary_modulus(modulus, zeta_c=zeta_c)
    rotated = ConformalMap(zeta_c, gamma, bare.log_modulus, bare.series_order)
    zeta_b = eval_f(rotated, 1.0 + 0j)
    cmap = ConformalMap(zeta_c, gamma, bare.log_modulus, bare.series_order, zeta_b)
    return cmap, trace_boundary(cmap, n)
