import numpy as np
import pytest

from k3mono import cpoly
from k3mono.cpoly import BinaryForm, CPoly, dehomogenize
from k3mono.errors import ZeroForm

t = CPoly([0, 1])


def test_difference_of_squares():
    assert cpoly.mul(CPoly([1, 1]), CPoly([-1, 1])).allclose(CPoly([-1, 0, 1]))


def test_pow_and_additive_inverse():
    assert cpoly.pow(t, 3).allclose(CPoly([0, 0, 0, 1]))
    p = CPoly([1 + 2j, -3, 0.5j])
    z = cpoly.add(p, cpoly.scale(p, -1))
    assert z.is_zero() and z.degree() == -1


def test_pow_matches_repeated_multiplication(rng):
    p = CPoly(rng.normal(size=4) + 1j * rng.normal(size=4))
    q = CPoly([1])
    for _ in range(5):
        q = q * p
    assert cpoly.pow(p, 5).allclose(q)


def test_from_roots_small_cases():
    assert cpoly.from_roots([]).allclose(CPoly([1]))
    assert cpoly.from_roots([1, -1]).allclose(CPoly([-1, 0, 1]))


def test_from_roots_residual(rng):
    a = rng.normal(size=12) + 1j * rng.normal(size=12)
    beta = cpoly.from_roots(a)
    cmax = np.abs(beta.coeffs).max()
    assert beta.degree() == 12
    for ai in a:
        assert abs(cpoly.eval(beta, ai)) < 1e-10 * cmax


def test_from_roots_matches_numpy(rng):
    a = rng.normal(size=9) + 1j * rng.normal(size=9)
    np.testing.assert_allclose(cpoly.from_roots(a).coeffs, np.poly(a)[::-1], rtol=1e-12, atol=1e-12)


def test_eval_and_derivative():
    assert cpoly.eval(CPoly([-1, 0, 1]), 2) == 3
    assert cpoly.derivative(CPoly([0, 0, 0, 1])).allclose(CPoly([0, 0, 3]))
    assert cpoly.eval(cpoly.derivative(cpoly.from_roots([0, 0])), 0) == 0


def test_canonical_trailing_zeros():
    assert CPoly([1, 2, 0, 0]).degree() == 1
    assert len(CPoly([0, 0]).coeffs) == 0


def test_tiny_leading_coefficient_is_kept():
    # monic with roots of size ~40: leading coefficient far below the constant term
    p = cpoly.from_roots(40.0 * np.exp(2j * np.pi * np.arange(10) / 10))
    assert p.degree() == 10


def test_dehomogenize_full_degree():
    f = BinaryForm.monomial(24, 24, 2.0) + BinaryForm.monomial(24, 0, 1.0)
    aff, mult = dehomogenize(f)
    assert mult == 0 and aff.degree() == 24


def test_dehomogenize_root_at_infinity():
    n = 7
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n - 1] = 1.0  # x0^(n-1) x1
    aff, mult = dehomogenize(BinaryForm(n, coeffs))
    assert aff.degree() == n - 1 and mult == 1


def test_dehomogenize_zero_form():
    with pytest.raises(ZeroForm):
        dehomogenize(BinaryForm.zero(5))


def test_binary_form_product_and_evaluation(rng):
    pts = rng.normal(size=3) + 1j * rng.normal(size=3)
    f = BinaryForm.from_linear_factors(pts)
    assert f.degree == 3
    for p in pts:
        assert abs(f(p, 1.0)) < 1e-12
    x0, x1 = 0.3 - 0.2j, 1.7 + 0.4j
    expected = np.prod([x0 - p * x1 for p in pts])
    assert abs(f(x0, x1) - expected) < 1e-12


def test_substitute_is_consistent_with_evaluation(rng):
    f = BinaryForm(4, rng.normal(size=5) + 1j * rng.normal(size=5))
    a, b, c, d = 1.0, 0.5j, -0.3, 2.0
    g = f.substitute(a, b, c, d)
    x0, x1 = 0.7 + 0.1j, -0.4 + 1.1j
    assert abs(g(x0, x1) - f(a * x0 + b * x1, c * x0 + d * x1)) < 1e-12
