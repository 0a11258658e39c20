import numpy as np
import pytest

from _oracles import separated_disk_points
from k3mono import kernels

py = kernels.load_backend("python")
try:
    compiled = kernels.load_backend("compiled")
except ImportError:  # extension not built
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.load_backend("fortran")


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_horner_matches_polyval(backend, rng):
    if backend == "compiled" and compiled is None:
        pytest.skip("compiled kernels not built")
    mod = kernels.load_backend(backend)
    c = rng.normal(size=13) + 1j * rng.normal(size=13)
    z = rng.normal(size=7) + 1j * rng.normal(size=7)
    p, dp, scale = mod.horner(c, z)
    np.testing.assert_allclose(p, np.polyval(c[::-1], z), rtol=1e-12)
    np.testing.assert_allclose(dp, np.polyval(np.polyder(c[::-1]), z), rtol=1e-12)
    np.testing.assert_allclose(scale, np.polyval(np.abs(c[::-1]), np.abs(z)), rtol=1e-12)


@needs_compiled
def test_backends_agree_on_roots(rng):
    for _ in range(10):
        roots = separated_disk_points(rng, 24)
        c = py.poly_from_roots(roots)
        np.testing.assert_allclose(compiled.poly_from_roots(roots), c, rtol=1e-13, atol=1e-15)
        z0 = 1.5 * np.exp(2j * np.pi * (np.arange(24) + 0.3) / 24)
        za, sa = py.aberth(c, z0, 1000, 1e-14)
        zb, sb = compiled.aberth(c, z0, 1000, 1e-14)
        assert sa > 0 and sb > 0
        # Jacobi vs Gauss-Seidel sweeps: same roots, not necessarily the same bits
        np.testing.assert_allclose(np.sort_complex(za), np.sort_complex(zb), atol=1e-10)


@needs_compiled
def test_backends_agree_on_newton(rng):
    roots = separated_disk_points(rng, 12, min_sep=0.3, radius=2.0)
    c = py.poly_from_roots(roots)
    z0 = roots + 0.02 * np.exp(2j * np.pi * rng.uniform(size=12))
    trust = np.full(12, 0.1)
    za, sa = py.newton_batch(c, z0, trust, 20, 1e-14)
    zb, sb = compiled.newton_batch(c, z0, trust, 20, 1e-14)
    np.testing.assert_array_equal(sa, sb)
    assert np.all(sa == kernels.STATUS_OK)
    np.testing.assert_allclose(za, zb, atol=1e-13)
    np.testing.assert_allclose(za, roots, atol=1e-12)


@needs_compiled
def test_backends_agree_on_status_codes():
    c = np.array([-1, 0, 1], dtype=complex)
    for mod in (py, compiled):
        _, st = mod.newton_batch(c, np.array([0.0, 0.6, 1.1], dtype=complex), np.array([1.0, 0.05, 0.5]), 30, 1e-15)
        assert list(st) == [kernels.STATUS_DERIVATIVE_VANISHES, kernels.STATUS_LEFT_TRUST, kernels.STATUS_OK]


@needs_compiled
def test_distance_helpers_agree(rng):
    z = rng.normal(size=20) + 1j * rng.normal(size=20)
    assert compiled.min_pairwise_distance(z) == pytest.approx(py.min_pairwise_distance(z), rel=1e-15)
    np.testing.assert_allclose(compiled.nearest_distances(z), py.nearest_distances(z), rtol=1e-15)
