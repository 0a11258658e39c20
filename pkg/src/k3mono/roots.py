"""Simultaneous root finding (Aberth-Ehrlich) with Newton polishing.

:func:`solve_all` produces a :class:`Fiber`: all roots of a polynomial with a
deterministic labeling, certified pairwise distinct.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cpoly import CPoly
from .errors import DerivativeVanishes, LeftTrustRegion, MultipleRoot, NoConvergence

DISTINCT_RTOL = 1e-8
POLISH_RTOL = 1e-12
FIBER_RESIDUAL_MAX = 1e-10
# irrational angular offset of the initial circle, breaks symmetric configurations
_UNIT_ROUNDOFF = float(np.finfo(np.float64).eps) / 2
_ANGLE_OFFSET = math.pi * (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Fiber:
    roots: np.ndarray
    separation: float
    residual: float

    def __len__(self):
        return len(self.roots)


def label_order(z):
    """Indices sorting ``z`` lexicographically by (-Re, Im)."""
    z = np.asarray(z)
    return np.lexsort((z.imag, -z.real))


def backward_residual(coeffs, z):
    """Per-root |p(z)| / sum |c_k| |z|^k."""
    p, _, scale = kernels.horner(coeffs, z)
    return np.abs(p) / np.where(scale > 0, scale, 1.0)


def root_scale(z):
    m = float(np.max(np.abs(z))) if len(z) else 0.0
    return m if m > 0 else 1.0


def initial_circle(coeffs):
    """Starting points on a circle of radius given by the Fujiwara root bound.

    Fujiwara's bound 2 max(|c_{n-k}/c_n|^(1/k), |c_0/(2 c_n)|^(1/n)) stays of
    the order of the largest root; the cruder Cauchy bound 1 + max|c_k/c_n| can
    be so large that z^n overflows.
    """
    c = np.asarray(coeffs)
    n = len(c) - 1
    ratios = np.abs(c[:-1] / c[-1])
    ratios[0] /= 2.0
    k = n - np.arange(n)  # c[j] pairs with exponent 1/(n - j)
    radius = 2.0 * float(np.max(ratios ** (1.0 / k)))
    if radius == 0.0:
        radius = 1.0
    angles = 2.0 * np.pi * np.arange(n) / n + _ANGLE_OFFSET
    return radius * np.exp(1j * angles)


def pseudozero(coeffs, w):
    """True where |p(w)| is within the Horner rounding bound gamma_2n * sum |c_k||w|^k."""
    c = np.asarray(coeffs, dtype=np.complex128)
    n = len(c) - 1
    gamma = 2 * n * _UNIT_ROUNDOFF / (1 - 2 * n * _UNIT_ROUNDOFF)
    p, _, scale = kernels.horner(c, np.asarray(w, dtype=np.complex128))
    return np.abs(p) <= gamma * scale


def _certify_distinct(c, z, sep):
    """Two nearest neighbours joined by a segment of pseudozeros are numerically one root."""
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    nearest = np.argmin(d, axis=1)
    ts = np.array([0.25, 0.5, 0.75])
    for i, j in enumerate(nearest):
        w = z[i] + ts * (z[j] - z[i])
        if np.all(pseudozero(c, w)):
            raise MultipleRoot(f"roots {i} and {j} cannot be certified distinct (distance {d[i, j]:.3e})")


def solve_all(p, max_sweeps=1000):
    """All roots of ``p`` as a labeled, distinctness-certified :class:`Fiber`.

    Raises MultipleRoot when two polished roots are closer than
    ``1e-8 * root_scale`` and NoConvergence when Aberth exceeds ``max_sweeps``.
    """
    if not isinstance(p, CPoly):
        p = CPoly(p)
    n = p.degree()
    if n < 1:
        raise ValueError("solve_all needs a polynomial of degree >= 1")
    c = np.ascontiguousarray(p.coeffs)
    if n == 1:
        z = np.array([-c[0] / c[1]])
    else:
        z, sweeps = kernels.aberth(c, initial_circle(c), max_sweeps, 1e-14)
        if sweeps < 0 or not np.all(np.isfinite(z)):
            raise NoConvergence(f"Aberth iteration did not converge in {max_sweeps} sweeps")
        # polishing is a short Newton run kept inside each root's own basin
        trust = 0.5 * kernels.nearest_distances(z)
        trust = np.where(np.isfinite(trust), trust, root_scale(z))
        polished, status = kernels.newton_batch(c, z, trust, 50, 1e-15)
        ok = status == kernels.STATUS_OK
        z = np.where(ok, polished, z)
    sep = kernels.min_pairwise_distance(z)
    if sep < DISTINCT_RTOL * root_scale(z):
        raise MultipleRoot(f"roots are not separated: min distance {sep:.3e}")
    if n > 1:
        _certify_distinct(c, z, sep)
    res = backward_residual(c, z)
    if not float(res.max()) < POLISH_RTOL:  # also catches NaN
        raise NoConvergence(f"polished residual {float(res.max()):.3e} above tolerance")
    z = z[label_order(z)]
    z.setflags(write=False)
    return Fiber(roots=z, separation=float(sep), residual=float(res.max()))


def newton_polish(p, z0, trust_radius=math.inf, max_steps=50):
    """Newton iteration from ``z0``, confined to the disk ``|z - z0| <= trust_radius``."""
    if not isinstance(p, CPoly):
        p = CPoly(p)
    z, status = kernels.newton_batch(p.coeffs, np.array([z0], dtype=np.complex128), trust_radius, max_steps, 1e-15)
    st = int(status[0])
    if st == kernels.STATUS_OK:
        return complex(z[0])
    if st == kernels.STATUS_LEFT_TRUST:
        raise LeftTrustRegion(f"Newton left the trust radius {trust_radius} around {z0}")
    if st == kernels.STATUS_DERIVATIVE_VANISHES:
        raise DerivativeVanishes(f"derivative vanishes near {complex(z[0])}")
    raise NoConvergence(f"Newton did not converge in {max_steps} steps from {z0}")
