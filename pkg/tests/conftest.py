import numpy as np
import pytest

from greentrace.forward import PolynomialMap, forward_operator

# polynomial coefficients a_1, a_2, ... of f(z) = sum a_k z^k
TEST_MAPS = {
    "z+0.2z^2": [1, 0.2],
    "z+0.1z^3": [1, 0, 0.1],
    "z(1+0.1z^4)": [1, 0, 0, 0, 0.1],
    "z+0.15z^2+0.05z^3": [1, 0.15, 0.05],
}


def poly_f(coeffs, z):
    z = np.asarray(z, dtype=complex)
    return z * np.polynomial.polynomial.polyval(z, coeffs)


def poly_fprime(coeffs, z):
    k = np.arange(1, len(coeffs) + 1)
    return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), k * np.asarray(coeffs, dtype=complex))


def poly_fsecond(coeffs, z):
    k = np.arange(1, len(coeffs) + 1)
    d = (k * np.asarray(coeffs, dtype=complex))[1:] * np.arange(1, len(coeffs))
    if d.size == 0:
        return np.zeros(np.shape(z), dtype=complex)
    return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), d)


def eps_profile_samples(n, L, eps=0.3):
    s = L * np.arange(n) / n
    return (1 + eps * np.cos(2 * np.pi * s / L)) / L


@pytest.fixture(params=list(TEST_MAPS), ids=list(TEST_MAPS))
def test_map(request):
    return request.param, TEST_MAPS[request.param]


@pytest.fixture(scope="session")
def forward_cache():
    cache = {}

    def get(coeffs, n=512, zeta_c=0j):
        key = (tuple(coeffs), n, zeta_c)
        if key not in cache:
            cache[key] = forward_operator(PolynomialMap(zeta_c, coeffs), n)
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
