"""Dense complex polynomials in one variable and binary forms on P^1.

A :class:`CPoly` stores ascending coefficients (``coeffs[k]`` multiplies t**k)
and is always canonical: the leading coefficient is nonzero, or the coefficient
list is empty (the zero polynomial).

A :class:`BinaryForm` of degree n stores n+1 coefficients where ``coeffs[k]``
multiplies ``x0**k * x1**(n-k)``. With this indexing the affine chart x1 = 1
reads the coefficient vector unchanged, and the point [1:0] is a root of
multiplicity ``n - deg f(t, 1)``.
"""

import numpy as np

from . import kernels
from .errors import ZeroForm

def _canonical(c):
    """Drop exactly-zero leading coefficients.

    No relative threshold: a monic polynomial with large roots has a leading
    coefficient tiny compared with the others and must keep it. Callers that
    expect cancellation (the discriminant) flush it themselves.
    """
    c = np.asarray(c, dtype=np.complex128)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else c[:0]


class CPoly:
    """Immutable univariate complex polynomial."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = _canonical(np.array(coeffs, dtype=np.complex128).ravel())
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self):
        return self._c

    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self):
        return len(self._c) == 0

    def __len__(self):
        return len(self._c)

    def __repr__(self):
        return f"CPoly({self._c.tolist()!r})"

    def __add__(self, other):
        return add(self, _as_poly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(_as_poly(other), -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, CPoly):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        return pow(self, k)

    def __call__(self, t):
        return eval(self, t)

    def allclose(self, other, rtol=1e-12):
        a, b = self._c, _as_poly(other)._c
        n = max(len(a), len(b))
        a = np.pad(a, (0, n - len(a)))
        b = np.pad(b, (0, n - len(b)))
        ref = max(np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0), 1e-300)
        return bool(np.all(np.abs(a - b) <= rtol * ref))


def _as_poly(p):
    if isinstance(p, CPoly):
        return p
    return CPoly([p])


def add(p, q):
    a, b = p.coeffs, q.coeffs
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.complex128)
    out[: len(a)] += a
    out[: len(b)] += b
    return CPoly(out)


def mul(p, q):
    if p.is_zero() or q.is_zero():
        return CPoly()
    return CPoly(np.convolve(p.coeffs, q.coeffs))


def pow(p, k):
    if k < 0:
        raise ValueError("negative power")
    result = CPoly([1.0])
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def scale(p, c):
    return CPoly(p.coeffs * complex(c))


def from_roots(roots):
    """Monic polynomial whose roots are exactly ``roots`` (with multiplicity)."""
    return CPoly(kernels.poly_from_roots(np.asarray(list(roots), dtype=np.complex128)))


def eval(p, t):
    """Horner evaluation at a scalar ``t``."""
    acc = 0j
    for c in p.coeffs[::-1]:
        acc = acc * t + c
    return acc


def derivative(p):
    c = p.coeffs
    if len(c) <= 1:
        return CPoly()
    return CPoly(c[1:] * np.arange(1, len(c)))


class BinaryForm:
    """Immutable binary form of fixed degree; zeros in the coefficient list are kept."""

    __slots__ = ("degree", "_c")

    def __init__(self, degree, coeffs):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        if degree < 0 or c.shape[0] != degree + 1:
            raise ValueError(f"a form of degree {degree} needs {degree + 1} coefficients, got {c.shape[0]}")
        c.setflags(write=False)
        self.degree = degree
        self._c = c

    @property
    def coeffs(self):
        return self._c

    @classmethod
    def zero(cls, degree):
        return cls(degree, np.zeros(degree + 1))

    @classmethod
    def monomial(cls, degree, x0_power, coefficient=1.0):
        """``coefficient * x0**x0_power * x1**(degree - x0_power)``."""
        c = np.zeros(degree + 1, dtype=np.complex128)
        c[x0_power] = coefficient
        return cls(degree, c)

    @classmethod
    def from_linear_factors(cls, points):
        """``prod (x0 - a x1)`` over ``points``."""
        pts = np.asarray(list(points), dtype=np.complex128)
        return cls(len(pts), kernels.poly_from_roots(pts))

    def is_zero(self):
        return not np.any(self._c)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("forms of different degree")
        return BinaryForm(self.degree, self._c + other._c)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(self.degree + other.degree, np.convolve(self._c, other._c))
        return self.scaled(other)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = BinaryForm(0, [1.0])
        for _ in range(k):
            out = out * self
        return out

    def scaled(self, c):
        return BinaryForm(self.degree, self._c * complex(c))

    def __call__(self, x0, x1=1.0):
        """Evaluate at the point (x0, x1)."""
        k = np.arange(self.degree + 1)
        return complex(np.sum(self._c * np.power(complex(x0), k) * np.power(complex(x1), self.degree - k)))

    def __repr__(self):
        return f"BinaryForm({self.degree}, {self._c.tolist()!r})"

    def allclose(self, other, rtol=1e-12):
        if self.degree != other.degree:
            return False
        ref = max(np.abs(self._c).max(), np.abs(other._c).max(), 1e-300)
        return bool(np.all(np.abs(self._c - other._c) <= rtol * ref))

    def vanishing_order_at_infinity(self):
        """Order of vanishing at [1:0], i.e. the multiplicity of the root x1 = 0."""
        nz = np.nonzero(self._c)[0]
        if nz.size == 0:
            raise ZeroForm("zero form vanishes everywhere")
        return self.degree - int(nz[-1])

    def substitute(self, a, b, c, d):
        """Pull back along (x0, x1) -> (a x0 + b x1, c x0 + d x1); the degree is preserved."""
        n = self.degree
        lin0 = np.array([b, a], dtype=np.complex128)  # a t + b
        lin1 = np.array([d, c], dtype=np.complex128)  # c t + d
        out = np.zeros(n + 1, dtype=np.complex128)
        p0 = [np.array([1.0 + 0j])]
        p1 = [np.array([1.0 + 0j])]
        for _ in range(n):
            p0.append(np.convolve(p0[-1], lin0))
            p1.append(np.convolve(p1[-1], lin1))
        for k, ck in enumerate(self._c):
            if ck == 0:
                continue
            term = np.convolve(p0[k], p1[n - k])
            out[: len(term)] += ck * term
        return BinaryForm(n, out)


def dehomogenize(f):
    """Return ``(f(t, 1), multiplicity of [1:0])``."""
    if f.is_zero():
        raise ZeroForm("cannot dehomogenize the zero form")
    p = CPoly(f.coeffs)
    return p, f.degree - p.degree()
