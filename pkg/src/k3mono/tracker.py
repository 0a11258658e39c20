"""Continuation of the 24 discriminant roots along a loop in V.

Each step moves the loop parameter forward by ``h`` and Newton-corrects every
root of Δ(t, 1) from its previous position. A step is accepted only when every
corrected root stays within ``trust_factor`` times the current minimum root
separation of where it started. Because that radius is below half the
separation, the trust disks are disjoint and the continuation is a bijection.
A rejected step halves ``h``; an accepted one grows it.

The permutation of a loop maps base label ``i`` to the base label at which the
root that started at ``i`` arrives. Loops compose left to right:
``track(L1 + L2) == track(L1) * track(L2)``.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .cpoly import dehomogenize
from .errors import BaseInvalid, BaseMismatch, K3MonoError, MultipleRoot, NoConvergence, PathTooClose, ZeroDiscriminant
from .permgroup import Permutation
from .roots import backward_residual, root_scale, solve_all
from .weierstrass import discriminant

COLLISION_RTOL = 1e-6
MATCH_MARGIN = 2.0


@dataclass(frozen=True)
class TrackerConfig:
    initial_step: float = 1e-2
    min_step: float = 1e-9
    max_step: float = 0.05
    trust_factor: float = 0.4
    step_growth: float = 1.5
    step_shrink: float = 0.5
    newton_steps: int = 12
    tangent_predictor: bool = False

    def __post_init__(self):
        if not 0 < self.min_step < self.initial_step <= 1:
            raise ValueError("need 0 < min_step < initial_step <= 1")
        if not 0 < self.trust_factor < 0.5:
            raise ValueError("need 0 < trust_factor < 0.5")
        if not self.min_step < self.max_step <= 1:
            raise ValueError("need min_step < max_step <= 1")
        if self.step_growth < 1 or not 0 < self.step_shrink < 1:
            raise ValueError("need step_growth >= 1 and 0 < step_shrink < 1")

    def finer(self, factor=10.0):
        """Same tracker with every step bound divided by ``factor``."""
        return replace(
            self,
            initial_step=self.initial_step / factor,
            max_step=self.max_step / factor,
            min_step=min(self.min_step, self.initial_step / factor / 10),
        )

    def to_json(self):
        return {
            "initial_step": self.initial_step,
            "min_step": self.min_step,
            "max_step": self.max_step,
            "trust_factor": self.trust_factor,
            "step_growth": self.step_growth,
            "step_shrink": self.step_shrink,
            "newton_steps": self.newton_steps,
            "tangent_predictor": self.tangent_predictor,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(**obj)


@dataclass(frozen=True)
class TrackedPermutation:
    perm: Permutation
    min_separation_seen: float
    steps_taken: int
    max_residual: float
    rejected_steps: int = 0

    def to_json(self):
        return {
            "perm": self.perm.to_json(),
            "cycle_type": list(self.perm.cycle_type()),
            "min_separation_seen": self.min_separation_seen,
            "steps_taken": self.steps_taken,
            "rejected_steps": self.rejected_steps,
            "max_residual": self.max_residual,
        }


@dataclass
class _Stats:
    steps: int = 0
    rejected: int = 0
    min_sep: float = math.inf
    max_res: float = 0.0


def base_fiber(pair):
    """Labeled 24-root fiber of Δ(t, 1) at ``pair``; BaseInvalid on failure."""
    try:
        affine, mult = dehomogenize(discriminant(pair))
    except ZeroDiscriminant as exc:
        raise BaseInvalid(str(exc)) from exc
    if mult:
        raise BaseInvalid(f"discriminant has a root at infinity (multiplicity {mult})")
    try:
        return solve_all(affine)
    except (MultipleRoot, NoConvergence) as exc:
        raise BaseInvalid(str(exc)) from exc


def _velocity(seg, s, z, coeffs, eps=1e-7):
    """dz/ds from implicit differentiation, with dΔ/ds by central differences."""
    lo, hi = max(0.0, s - eps), min(1.0, s + eps)
    dc = (seg.delta_at(hi) - seg.delta_at(lo)) / (hi - lo)
    ps, _, _ = kernels.horner(dc, z)
    _, dt, _ = kernels.horner(coeffs, z)
    return -ps / dt


def track_segment(seg, z, cfg, stats=None, label=0):
    """Continue the roots ``z`` (at s = 0) to s = 1 along one segment."""
    if stats is None:
        stats = _Stats()
    z = np.array(z, dtype=np.complex128)
    s = 0.0
    h = cfg.initial_step
    coeffs = seg.delta_at(0.0)
    while s < 1.0:
        h = min(h, cfg.max_step)
        s_new = 1.0 if s + h >= 1.0 - 1e-15 else s + h
        c_new = seg.delta_at(s_new)
        sep = kernels.min_pairwise_distance(z)
        trust = cfg.trust_factor * sep
        if cfg.tangent_predictor:
            pred = z + (s_new - s) * _velocity(seg, s, z, coeffs)
            if not np.all(np.abs(pred - z) < trust):
                pred = z
        else:
            pred = z
        z_new, status = kernels.newton_batch(c_new, pred, trust, cfg.newton_steps, 1e-13)
        ok = bool(np.all(status == kernels.STATUS_OK)) and bool(np.all(np.abs(z_new - z) <= trust))
        if ok:
            new_sep = kernels.min_pairwise_distance(z_new)
            ok = new_sep > COLLISION_RTOL * root_scale(z_new) and np.all(np.abs(z_new - z) <= cfg.trust_factor * new_sep)
        if ok:
            s, z, coeffs = s_new, z_new, c_new
            stats.steps += 1
            stats.min_sep = min(stats.min_sep, new_sep)
            stats.max_res = max(stats.max_res, float(backward_residual(c_new, z).max()))
            h *= cfg.step_growth
        else:
            stats.rejected += 1
            h *= cfg.step_shrink
            if h < cfg.min_step:
                raise PathTooClose(f"step underflow at s={s:.6g} (min separation {sep:.3e})", s=s, segment=label)
    return z


def track_path(path, cfg, start=None):
    """Continue the base fiber (or ``start``) along every segment of ``path``.

    Returns ``(start_roots, end_roots, stats)`` with ``end_roots[k]`` the
    continuation of ``start_roots[k]``.
    """
    if start is None:
        try:
            start = base_fiber(path.base).roots
        except BaseInvalid:
            raise
    stats = _Stats(min_sep=kernels.min_pairwise_distance(start))
    z = np.array(start, dtype=np.complex128)
    for k, seg in enumerate(path.segments):
        z = track_segment(seg, z, cfg, stats, label=k)
    return np.asarray(start), z, stats


def match_fibers(src, dst, trust):
    """Label map sending each root of ``src`` to the unique nearby root of ``dst``.

    Requires the best match to be closer than ``trust`` and at least
    ``MATCH_MARGIN`` times closer than the second best, and the map to be
    injective; returns None otherwise.
    """
    d = np.abs(np.asarray(src)[:, None] - np.asarray(dst)[None, :])
    order = np.argsort(d, axis=1)
    rows = np.arange(len(src))
    best = d[rows, order[:, 0]]
    second = d[rows, order[:, 1]] if d.shape[1] > 1 else np.full(len(src), np.inf)
    if np.any(best >= trust) or np.any(MATCH_MARGIN * best >= second):
        return None
    images = order[:, 0].tolist()
    if len(set(images)) != len(images):
        return None
    return images


def _track_loop_once(loop, cfg, start):
    z0, z1, stats = track_path(loop, cfg, start)
    trust = cfg.trust_factor * kernels.min_pairwise_distance(z0)
    images = match_fibers(z1, z0, trust)
    return images, stats


def track_loop(loop, cfg=None, start=None):
    """Monodromy permutation of ``loop`` on the labeled base fiber."""
    cfg = cfg or TrackerConfig()
    if start is None:
        start = base_fiber(loop.base).roots
    images, stats = _track_loop_once(loop, cfg, start)
    if images is None:
        # ambiguous final assignment: one retry with finer steps
        images, stats = _track_loop_once(loop, cfg.finer(), start)
        if images is None:
            raise PathTooClose("final fiber does not match the base fiber unambiguously")
    return TrackedPermutation(
        perm=Permutation(images),
        min_separation_seen=float(stats.min_sep),
        steps_taken=stats.steps,
        max_residual=float(stats.max_res),
        rejected_steps=stats.rejected,
    )


def transport(path, cfg=None):
    """Bijection from the start fiber labels to the end fiber labels of an open path."""
    cfg = cfg or TrackerConfig()
    z0, z1, _ = track_path(path, cfg)
    end = base_fiber(path.end).roots
    images = match_fibers(z1, end, cfg.trust_factor * kernels.min_pairwise_distance(end))
    if images is None:
        raise PathTooClose("end of path does not match the end fiber unambiguously")
    return Permutation(images)


def _track_or_error(args):
    loop, cfg, start = args
    try:
        return track_loop(loop, cfg, start)
    except K3MonoError as exc:
        return exc


def default_threads():
    return os.cpu_count() or 1


def track_many(loops, cfg=None, threads=1):
    """Track loops sharing one base; returns results or exception objects, in input order."""
    cfg = cfg or TrackerConfig()
    loops = list(loops)
    if not loops:
        return []
    base = loops[0].base
    for lp in loops[1:]:
        if not lp.base.allclose(base, 1e-12):
            raise BaseMismatch("loops do not share a base point")
    start = base_fiber(base).roots
    jobs = [(lp, cfg, start) for lp in loops]
    if threads <= 1 or len(loops) == 1:
        return [_track_or_error(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_track_or_error, jobs))


def track_composite(loops, cfg=None, threads=1):
    """All permutations on the single base labeling; raises the first tracking error."""
    results = track_many(loops, cfg, threads)
    for r in results:
        if isinstance(r, Exception):
            raise r
    return results
