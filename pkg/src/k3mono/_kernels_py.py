"""Pure numpy implementations of the numerical kernels.

These mirror ``_ckernels.pyx`` exactly (same signatures, same status codes) and
are used when the compiled extension is unavailable or disabled.

All coefficient arrays are complex128, ascending: ``coeffs[k]`` multiplies t**k.
"""

import numpy as np

STATUS_OK = 0
STATUS_LEFT_TRUST = 1
STATUS_DERIVATIVE_VANISHES = 2
STATUS_NO_CONVERGENCE = 3


def horner(coeffs, zs):
    """Evaluate p, p' and the absolute scale sum |c_k||z|^k at every point of ``zs``."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    zs = np.asarray(zs, dtype=np.complex128)
    az = np.abs(zs)
    p = np.zeros_like(zs)
    dp = np.zeros_like(zs)
    scale = np.zeros(zs.shape, dtype=np.float64)
    for c in coeffs[::-1]:
        dp = dp * zs + p
        p = p * zs + c
        scale = scale * az + abs(c)
    return p, dp, scale


def aberth(coeffs, z, max_sweeps, tol):
    """Aberth-Ehrlich simultaneous iteration in place on a copy of ``z``.

    Returns ``(roots, sweeps)``; ``sweeps`` is -1 when the budget ran out.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.array(z, dtype=np.complex128)
    n = z.shape[0]
    if n == 0:
        return z, 0
    eye = np.eye(n, dtype=bool)
    for sweep in range(1, max_sweeps + 1):
        p, dp, scale = horner(coeffs, z)
        done = np.abs(p) <= 4e-16 * scale
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        inv = 1.0 / diff
        inv[eye] = 0.0
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            w = ratio / (1.0 - ratio * s)
        w = np.where(done | ~np.isfinite(w), 0.0, w)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            return z, sweep
    return z, -1


def newton_batch(coeffs, z0, trust, max_steps, tol):
    """Newton-polish every entry of ``z0`` independently.

    ``trust`` is a per-root radius (array or scalar); a root whose iterate
    leaves the disk of that radius around its start gets STATUS_LEFT_TRUST.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z0 = np.asarray(z0, dtype=np.complex128)
    n = z0.shape[0]
    trust = np.broadcast_to(np.asarray(trust, dtype=np.float64), (n,))
    z = z0.copy()
    status = np.full(n, STATUS_NO_CONVERGENCE, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    dscale = np.abs(coeffs[1:]) * np.arange(1, coeffs.shape[0])
    for _ in range(max_steps):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        za = z[idx]
        p, dp, scale = horner(coeffs, za)
        _, _, dsc = horner(dscale.astype(np.complex128), np.abs(za).astype(np.complex128))
        floor = np.abs(p) <= 4e-16 * scale
        vanish = (np.abs(dp) <= 1e-14 * dsc.real) & ~floor
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(vanish | floor, 0.0, p / dp)
        za = za - step
        z[idx] = za
        left = np.abs(za - z0[idx]) > trust[idx]
        # converged: tiny step, or residual already at the rounding floor of the evaluation
        conv = floor | (np.abs(step) <= tol * np.maximum(1.0, np.abs(za)))
        status[idx[vanish]] = STATUS_DERIVATIVE_VANISHES
        status[idx[left & ~vanish]] = STATUS_LEFT_TRUST
        ok = conv & ~left & ~vanish
        status[idx[ok]] = STATUS_OK
        active[idx[vanish | left | ok]] = False
    return z, status


def min_pairwise_distance(z):
    z = np.asarray(z, dtype=np.complex128)
    n = z.shape[0]
    if n < 2:
        return np.inf
    d = np.abs(z[:, None] - z[None, :])
    d[np.diag_indices(n)] = np.inf
    return float(d.min())


def nearest_distances(z):
    """Per-root distance to the nearest other root."""
    z = np.asarray(z, dtype=np.complex128)
    n = z.shape[0]
    if n < 2:
        return np.full(n, np.inf)
    d = np.abs(z[:, None] - z[None, :])
    d[np.diag_indices(n)] = np.inf
    return d.min(axis=1)


def poly_from_roots(roots):
    """Monic coefficients (ascending) of prod (t - r)."""
    roots = np.asarray(roots, dtype=np.complex128)
    c = np.zeros(roots.shape[0] + 1, dtype=np.complex128)
    c[0] = 1.0
    m = 0
    for r in roots:
        # multiply the current polynomial (degree m) by (t - r)
        c[1:m + 2] = c[0:m + 1] - r * c[1:m + 2]
        c[0] = -r * c[0]
        m += 1
    return c
