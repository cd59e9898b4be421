import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import poly_f, poly_fprime
from greentrace import GreenFluxReconstructor, InconsistentAnchors
from greentrace.estimator import check_flux_input

TWO_PI = 2 * np.pi


def test_params_roundtrip():
    est = GreenFluxReconstructor(perimeter=2.0, zeta_b=1 + 0j, tol_residual=1e-3)
    params = est.get_params()
    assert params["perimeter"] == 2.0 and params["tol_residual"] == 1e-3
    other = clone(est)
    assert other.get_params() == params
    other.set_params(gamma=0.5)
    assert other.gamma == 0.5 and est.gamma == 0.0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        GreenFluxReconstructor(perimeter=1.0).predict([0j])


def test_disk():
    phi = np.full(128, 1 / TWO_PI)
    est = GreenFluxReconstructor(perimeter=TWO_PI, zeta_b=1 + 0j).fit(phi)
    assert est.consistency_residual_ < 1e-12
    assert est.univalence_.passes
    z = np.array([0, 0.5j, -0.3 + 0.1j])
    np.testing.assert_allclose(est.predict(z), z, atol=1e-13)
    np.testing.assert_allclose(est.transform(z), 1.0, atol=1e-13)
    np.testing.assert_allclose(np.abs(est.boundary()), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.abs(est.level_curve(0.5, 64)), 0.5, atol=1e-13)


def test_fit_two_column_input(forward_cache, rng):
    coeffs = [1, 0.15, 0.05]
    profile, anchors = forward_cache(coeffs)
    X = np.column_stack([profile.grid, profile.samples])
    est = GreenFluxReconstructor(zeta_c=anchors.zeta_c, zeta_b=anchors.zeta_b).fit(X)
    assert est.profile_.perimeter == pytest.approx(profile.perimeter, rel=1e-14)
    z = 0.8 * np.exp(1j * rng.uniform(0, TWO_PI, 20))
    np.testing.assert_allclose(est.predict(z), poly_f(coeffs, z), atol=1e-10)
    np.testing.assert_allclose(est.transform(z), poly_fprime(coeffs, z), atol=1e-9)


def test_inconsistent():
    est = GreenFluxReconstructor(perimeter=TWO_PI, zeta_b=2 + 0j)
    with pytest.raises(InconsistentAnchors):
        est.fit(np.full(64, 1 / TWO_PI))


def test_free_rotation():
    est = GreenFluxReconstructor(perimeter=TWO_PI, gamma=np.pi / 2).fit(np.full(64, 1 / TWO_PI))
    assert est.consistency_residual_ is None
    assert est.predict([1 + 0j])[0] == pytest.approx(1j, abs=1e-12)


class TestCheckInput:
    def test_needs_perimeter(self):
        with pytest.raises(ValueError):
            check_flux_input(np.ones(8))

    def test_column_vector(self):
        phi, L = check_flux_input(np.ones((8, 1)), 8.0)
        assert phi.shape == (8,) and L == 8.0

    def test_nonuniform_grid(self):
        X = np.column_stack([np.array([0, 1, 2, 4, 5, 6, 7, 8.0]), np.ones(8)])
        with pytest.raises(ValueError):
            check_flux_input(X)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            check_flux_input(np.array([1.0, np.nan, 1.0, 1.0]), 4.0)

    def test_rejects_wide(self):
        with pytest.raises(ValueError):
            check_flux_input(np.ones((8, 3)), 1.0)
