"""scikit-learn style wrapper around the reconstruction pipeline."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from . import analysis
from .inverse import RESIDUAL_TOL, reconstruct, reconstruct_free
from .io import check_uniform_grid, infer_perimeter
from .mapping import Anchors, eval_f, eval_fprime, green_level_curve
from .profile import NORMALIZATION_TOL, validate_flux


def check_flux_input(X, perimeter=None):
    """Accept ``phi`` samples (1-D, or one column) or an ``(N, 2)`` array of ``s, phi``.

    Returns ``(phi, L)``.
    """
    X = check_array(X, ensure_2d=False, dtype=float)
    if X.ndim == 2 and X.shape[1] == 2:
        L = infer_perimeter(X[:, 0]) if perimeter is None else float(perimeter)
        check_uniform_grid(X[:, 0], L)
        return X[:, 1], L
    phi = X.ravel() if X.ndim == 2 and X.shape[1] == 1 else X
    if phi.ndim != 1:
        raise ValueError("expected flux samples or an (N, 2) array of (s, phi)")
    if perimeter is None:
        raise ValueError("perimeter is required when only flux samples are given")
    return phi, float(perimeter)


class GreenFluxReconstructor(BaseEstimator):
    """Fit a domain to boundary flux data; predict maps disk points into the domain.

    Parameters
    ----------
    perimeter : float, optional
        Boundary length; inferred when ``X`` carries an arclength column.
    zeta_c, zeta_b : complex
        Pole and boundary reference. With ``zeta_b=None`` the rotation
        ``gamma`` is used instead and no consistency check is made.
    gamma : float
        Rotation used when ``zeta_b`` is None.
    n_grid : int, optional
        Size of the angle grid, default ``max(512, 2N)``.
    tol_norm, tol_residual : float
    renormalize : bool
    """

    def __init__(self, perimeter=None, zeta_c=0j, zeta_b=None, gamma=0.0, n_grid=None,
                 tol_norm=NORMALIZATION_TOL, tol_residual=RESIDUAL_TOL, renormalize=False):
        self.perimeter = perimeter
        self.zeta_c = zeta_c
        self.zeta_b = zeta_b
        self.gamma = gamma
        self.n_grid = n_grid
        self.tol_norm = tol_norm
        self.tol_residual = tol_residual
        self.renormalize = renormalize

    def fit(self, X, y=None):
        phi, L = check_flux_input(X, self.perimeter)
        self.profile_ = validate_flux(phi, L, tol=self.tol_norm, renormalize=self.renormalize)
        if self.zeta_b is None:
            self.conformal_map_, self.trace_ = reconstruct_free(
                self.profile_, self.zeta_c, self.gamma, self.n_grid
            )
            self.consistency_residual_ = None
        else:
            anchors = Anchors(self.zeta_c, self.zeta_b)
            self.conformal_map_, self.trace_, self.consistency_residual_ = reconstruct(
                self.profile_, anchors, self.n_grid, self.tol_residual
            )
        self.univalence_ = analysis.paatero_check(self.profile_)
        return self

    def _check_fitted(self):
        if not hasattr(self, "conformal_map_"):
            raise NotFittedError("call fit before using this estimator")

    def predict(self, Z):
        """``f(Z)`` for complex points in the closed unit disk."""
        self._check_fitted()
        return eval_f(self.conformal_map_, np.asarray(Z, dtype=complex))

    def transform(self, Z):
        """``f'(Z)`` for complex points in the closed unit disk."""
        self._check_fitted()
        return eval_fprime(self.conformal_map_, np.asarray(Z, dtype=complex))

    def boundary(self):
        self._check_fitted()
        return self.trace_.points

    def level_curve(self, r, n=None):
        self._check_fitted()
        return green_level_curve(self.conformal_map_, r, n or self.trace_.n)
