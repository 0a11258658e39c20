"""Weierstrass data (A, B) of degrees (8, 12), the discriminant, and loops in V.

The parameter space V is the vector space of pairs of binary forms of degree 8
and 12. A point is *valid* when its discriminant 4A^3 + 27B^2 has 24 distinct
roots on P^1, none of them at [1:0].

Loops are concatenations of analytic segments (see :class:`Linear`,
:class:`SwapArc`, :class:`ScalarCircle`, :class:`Constant`); each segment maps
[0, 1] into V and can be evaluated at any parameter, so the tracker samples
them adaptively.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cpoly import BinaryForm, CPoly, dehomogenize
from .errors import ArcCollision, DegenerateParameters, MultipleRoot, NoConvergence, ZeroDiscriminant, ZeroForm
from .roots import Fiber, solve_all

L_I = -((27.0 / 4.0) ** (1.0 / 3.0))
L_II = complex(np.sqrt(complex(-4.0 / 27.0)))
# roots of x^2 - 3x + 3; they split the cubic factor of the Construction II discriminant
OMEGA_PLUS = (3.0 + np.sqrt(complex(-3.0))) / 2.0
OMEGA_MINUS = (3.0 - np.sqrt(complex(-3.0))) / 2.0

FAR_ROOT = 1e6
ZERO_RTOL = 1e-14


def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


def _z(pair):
    return complex(pair[0], pair[1])


@dataclass(frozen=True, eq=False)
class WeierstrassPair:
    A: BinaryForm
    B: BinaryForm

    def __post_init__(self):
        if self.A.degree != 8 or self.B.degree != 12:
            raise ValueError(f"need degrees (8, 12), got ({self.A.degree}, {self.B.degree})")

    @classmethod
    def from_coeffs(cls, a, b):
        return cls(BinaryForm(8, a), BinaryForm(12, b))

    def vector(self):
        return np.concatenate([self.A.coeffs, self.B.coeffs])

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=np.complex128)
        return cls.from_coeffs(v[:9], v[9:])

    def allclose(self, other, rtol=1e-14):
        a, b = self.vector(), other.vector()
        ref = max(np.abs(a).max(), np.abs(b).max(), 1e-300)
        return bool(np.all(np.abs(a - b) <= rtol * ref))

    def to_json(self):
        return {"A": [_c(z) for z in self.A.coeffs], "B": [_c(z) for z in self.B.coeffs]}

    @classmethod
    def from_json(cls, obj):
        a = [_z(p) for p in obj["A"]]
        b = [_z(p) for p in obj["B"]]
        if len(a) != 9 or len(b) != 13:
            raise ValueError("a pair needs 9 coefficients for A and 13 for B")
        return cls.from_coeffs(a, b)


def delta_coeffs(a, b):
    """Affine discriminant coefficients (length 25) from raw A, B coefficient arrays."""
    a2 = np.convolve(a, a)
    d = 4.0 * np.convolve(a2, a) + 27.0 * np.convolve(b, b)
    # coefficients that cancel down to rounding level are set to exactly zero, judged
    # against the magnitude of the terms that produced them (not the largest coefficient)
    aa, ab = np.abs(a), np.abs(b)
    bound = 4.0 * np.convolve(np.convolve(aa, aa), aa) + 27.0 * np.convolve(ab, ab)
    d[np.abs(d) <= ZERO_RTOL * bound] = 0.0
    return d


def discriminant(pair):
    """The degree-24 binary form 4A^3 + 27B^2."""
    a, b = pair.A.coeffs, pair.B.coeffs
    d = delta_coeffs(a, b)
    ref = max(4.0 * np.abs(a).max() ** 3, 27.0 * np.abs(b).max() ** 2)
    if ref == 0.0 or np.abs(d).max() < ZERO_RTOL * ref:
        raise ZeroDiscriminant("4A^3 + 27B^2 vanishes identically")
    return BinaryForm(24, d)


@dataclass
class ValidationReport:
    valid: bool
    nonzero: bool
    affine_degree: int = -1
    multiplicity_at_infinity: int = -1
    distinct: bool = False
    separation: float = 0.0
    max_abs_root: float = math.nan
    far_root: bool = False
    fiber: Fiber | None = None
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "valid": self.valid,
            "nonzero": self.nonzero,
            "affine_degree": self.affine_degree,
            "multiplicity_at_infinity": self.multiplicity_at_infinity,
            "distinct": self.distinct,
            "separation": self.separation,
            "far_root": self.far_root,
            "failures": list(self.failures),
        }


def validate(pair):
    """Check Δ ≠ 0, no root at [1:0], and 24 distinct roots. Never raises."""
    try:
        delta = discriminant(pair)
    except ZeroDiscriminant:
        return ValidationReport(valid=False, nonzero=False, failures=["discriminant is identically zero"])
    report = ValidationReport(valid=False, nonzero=True)
    affine, mult = dehomogenize(delta)
    report.affine_degree = affine.degree()
    report.multiplicity_at_infinity = mult
    if mult > 0:
        report.failures.append(f"root at infinity of multiplicity {mult}")
        return report
    try:
        fiber = solve_all(affine)
    except MultipleRoot as exc:
        report.failures.append(f"multiple root: {exc}")
        return report
    except NoConvergence as exc:
        report.failures.append(f"root finding failed: {exc}")
        return report
    report.distinct = True
    report.fiber = fiber
    report.separation = fiber.separation
    report.max_abs_root = float(np.abs(fiber.roots).max())
    report.far_root = report.max_abs_root > FAR_ROOT
    report.valid = True
    return report


def change_chart(pair, rng):
    """Apply a random Möbius substitution on P^1 to both forms (degree preserving)."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if abs(np.linalg.det(m)) > 0.1:
            break
    (a, b), (c, d) = m
    return WeierstrassPair(pair.A.substitute(a, b, c, d), pair.B.substitute(a, b, c, d))


# ---------------------------------------------------------------------------
# the two explicit constructions


@dataclass(frozen=True, eq=False)
class ConstructionI:
    """12 marked points and K: A = K^2 l x1^8, B = prod(x0 - a_i x1) + K^3 x1^12."""

    a: tuple
    K: complex

    kind = "I"
    size = 12

    @property
    def points(self):
        return self.a


@dataclass(frozen=True, eq=False)
class ConstructionII:
    """8 marked points and K: A = prod(x0 - b_i x1) + K^2 x1^8, B = K^3 l x1^12."""

    b: tuple
    K: complex

    kind = "II"
    size = 8

    @property
    def points(self):
        return self.b


def _construction_ab(kind, points, K):
    beta = kernels.poly_from_roots(np.asarray(points, dtype=np.complex128))
    K = complex(K)
    if kind == "I":
        a = np.zeros(9, dtype=np.complex128)
        a[0] = K * K * L_I
        b = beta.copy()
        b[0] += K ** 3
    else:
        a = beta.copy()
        a[0] += K * K
        b = np.zeros(13, dtype=np.complex128)
        b[0] = K ** 3 * L_II
    return a, b


def _check_construction(c):
    pts = np.asarray(c.points, dtype=np.complex128)
    if len(pts) != c.size:
        raise DegenerateParameters(f"Construction {c.kind} needs {c.size} points, got {len(pts)}")
    if c.K == 0:
        raise DegenerateParameters("K must be nonzero")
    if kernels.min_pairwise_distance(pts) == 0.0:
        raise DegenerateParameters("marked points must be pairwise distinct")


def build_construction(c, validate_pair=True):
    _check_construction(c)
    pair = WeierstrassPair.from_coeffs(*_construction_ab(c.kind, c.points, c.K))
    if validate_pair:
        rep = validate(pair)
        if not rep.valid:
            raise DegenerateParameters("; ".join(rep.failures))
    return pair


def build_construction_i(c, validate_pair=True):
    return build_construction(c, validate_pair)


def build_construction_ii(c, validate_pair=True):
    return build_construction(c, validate_pair)


def perturbed_factors(c):
    """Affine polynomials whose roots pair up with the marked points.

    Construction I: beta + 2K^3. Construction II: beta + omega_± K^2.
    """
    beta = kernels.poly_from_roots(np.asarray(c.points, dtype=np.complex128))
    K = complex(c.K)
    out = []
    if c.kind == "I":
        f = beta.copy()
        f[0] += 2.0 * K ** 3
        out.append(f)
    else:
        for w in (OMEGA_PLUS, OMEGA_MINUS):
            f = beta.copy()
            f[0] += w * K * K
            out.append(f)
    return out


def nearest_assignment_is_bijection(c):
    """Each perturbed-factor root is nearest to a distinct marked point (per factor)."""
    pts = np.asarray(c.points, dtype=np.complex128)
    for f in perturbed_factors(c):
        try:
            roots = solve_all(CPoly(f)).roots
        except (MultipleRoot, NoConvergence):
            return False
        nearest = np.argmin(np.abs(roots[:, None] - pts[None, :]), axis=1)
        if len(set(nearest.tolist())) != len(pts):
            return False
    return True


def choose_K(points, kind, ratio=0.05, max_halvings=30):
    """Pick |K| so perturbed roots sit about ``ratio`` x separation from the marked points.

    The perturbed factor moves a root near a_i by roughly eps / |beta'(a_i)|
    with eps = 2K^3 (I) or sqrt(3) K^2 (II). K is halved until the
    nearest-assignment check passes.
    """
    pts = np.asarray(points, dtype=np.complex128)
    beta = kernels.poly_from_roots(pts)
    _, dbeta, _ = kernels.horner(beta, pts)
    dmin = float(np.abs(dbeta).min())
    sep = kernels.min_pairwise_distance(pts)
    target = ratio * sep * dmin
    K = (target / 2.0) ** (1.0 / 3.0) if kind == "I" else (target / math.sqrt(3.0)) ** 0.5
    cls = ConstructionI if kind == "I" else ConstructionII
    for _ in range(max_halvings):
        c = cls(tuple(pts.tolist()), complex(K))
        if nearest_assignment_is_bijection(c):
            return complex(K)
        K /= 2.0
    raise DegenerateParameters("no K found with a bijective nearest assignment")


def jittered_circle(n, rng=None, phase=0.3):
    """n points near the unit circle in angular order; deterministic when rng is None."""
    k = np.arange(n)
    if rng is None:
        u = 0.5 * np.sin(1.7 * k + 0.4)
        v = 0.5 * np.cos(2.3 * k + 1.1)
    else:
        u = rng.uniform(-1.0, 1.0, n)
        v = rng.uniform(-1.0, 1.0, n)
    radius = 1.0 + 0.08 * u
    angle = 2.0 * np.pi * k / n + phase + (0.6 / n) * v
    return radius * np.exp(1j * angle)


def default_construction_i(rng=None, ratio=0.05):
    pts = jittered_circle(12, rng)
    return ConstructionI(tuple(pts.tolist()), choose_K(pts, "I", ratio))


def default_construction_ii(rng=None, ratio=0.05):
    pts = jittered_circle(8, rng, phase=0.1)
    return ConstructionII(tuple(pts.tolist()), choose_K(pts, "II", ratio))


def construction_from_json(obj):
    kind = obj["kind"]
    pts = tuple(_z(p) for p in obj["points"])
    K = _z(obj["K"]) if obj.get("K") is not None else choose_K(pts, kind, obj.get("ratio", 0.05))
    if kind == "I":
        return ConstructionI(pts, K)
    if kind == "II":
        return ConstructionII(pts, K)
    raise ValueError(f"unknown construction kind {kind!r}")


def construction_to_json(c):
    return {"kind": c.kind, "points": [_c(z) for z in c.points], "K": _c(c.K)}


# ---------------------------------------------------------------------------
# loop primitives


@dataclass(frozen=True, eq=False)
class Segment:
    reverse: bool = False

    def _s(self, s):
        return 1.0 - s if self.reverse else s

    def ab_at(self, s):
        raise NotImplementedError

    def delta_at(self, s):
        return delta_coeffs(*self.ab_at(s))

    def pair_at(self, s):
        return WeierstrassPair.from_coeffs(*self.ab_at(s))

    def reversed(self):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Constant(Segment):
    pair: WeierstrassPair = None

    def ab_at(self, s):
        return self.pair.A.coeffs, self.pair.B.coeffs

    def reversed(self):
        return self

    def to_json(self):
        return {"type": "constant", "pair": self.pair.to_json()}


@dataclass(frozen=True, eq=False)
class Linear(Segment):
    start: WeierstrassPair = None
    end: WeierstrassPair = None

    def ab_at(self, s):
        s = self._s(s)
        v = (1.0 - s) * self.start.vector() + s * self.end.vector()
        return v[:9], v[9:]

    def reversed(self):
        return Linear(reverse=not self.reverse, start=self.start, end=self.end)

    def to_json(self):
        return {"type": "linear", "start": self.start.to_json(), "end": self.end.to_json(), "reverse": self.reverse}


@dataclass(frozen=True, eq=False)
class SwapArc(Segment):
    """Marked points i and j trade places along opposite half-ellipses.

    With ``flatten = 1`` the two points travel antipodally on the circle whose
    diameter joins them; orientation +1 is a counterclockwise half-twist.
    """

    construction: object = None
    i: int = 0
    j: int = 1
    orientation: int = 1
    flatten: float = 1.0

    def moving_points(self, s):
        s = self._s(s)
        pts = np.asarray(self.construction.points, dtype=np.complex128)
        m = 0.5 * (pts[self.i] + pts[self.j])
        h = 0.5 * (pts[self.i] - pts[self.j])
        u = h * (math.cos(math.pi * s) + 1j * self.orientation * self.flatten * math.sin(math.pi * s))
        return m + u, m - u

    def ab_at(self, s):
        pts = np.array(self.construction.points, dtype=np.complex128)
        # at both ends the marked set equals the original one; skip the rounding of the arc
        if 0.0 < s < 1.0:
            pts[self.i], pts[self.j] = self.moving_points(s)
        return _construction_ab(self.construction.kind, pts, self.construction.K)

    def reversed(self):
        return SwapArc(
            reverse=not self.reverse,
            construction=self.construction,
            i=self.i,
            j=self.j,
            orientation=self.orientation,
            flatten=self.flatten,
        )

    def to_json(self):
        return {
            "type": "swap_arc",
            "construction": construction_to_json(self.construction),
            "i": self.i,
            "j": self.j,
            "orientation": self.orientation,
            "flatten": self.flatten,
            "reverse": self.reverse,
        }


@dataclass(frozen=True, eq=False)
class ScalarCircle(Segment):
    """s -> base + (center + radius e^{2 pi i s}) * direction."""

    base: WeierstrassPair = None
    direction: WeierstrassPair = None
    center: complex = 0j
    radius: float = 0.0

    def ab_at(self, s):
        s = self._s(s)
        z = self.center + self.radius * complex(math.cos(2 * math.pi * s), math.sin(2 * math.pi * s))
        v = self.base.vector() + z * self.direction.vector()
        return v[:9], v[9:]

    def reversed(self):
        return ScalarCircle(
            reverse=not self.reverse,
            base=self.base,
            direction=self.direction,
            center=self.center,
            radius=self.radius,
        )

    def to_json(self):
        return {
            "type": "scalar_circle",
            "base": self.base.to_json(),
            "direction": self.direction.to_json(),
            "center": _c(self.center),
            "radius": self.radius,
            "reverse": self.reverse,
        }


def segment_from_json(obj):
    kind = obj["type"]
    rev = bool(obj.get("reverse", False))
    if kind == "constant":
        return Constant(pair=WeierstrassPair.from_json(obj["pair"]))
    if kind == "linear":
        return Linear(reverse=rev, start=WeierstrassPair.from_json(obj["start"]), end=WeierstrassPair.from_json(obj["end"]))
    if kind == "swap_arc":
        return SwapArc(
            reverse=rev,
            construction=construction_from_json(obj["construction"]),
            i=int(obj["i"]),
            j=int(obj["j"]),
            orientation=int(obj["orientation"]),
            flatten=float(obj.get("flatten", 1.0)),
        )
    if kind == "scalar_circle":
        return ScalarCircle(
            reverse=rev,
            base=WeierstrassPair.from_json(obj["base"]),
            direction=WeierstrassPair.from_json(obj["direction"]),
            center=_z(obj["center"]),
            radius=float(obj["radius"]),
        )
    raise ValueError(f"unknown segment type {kind!r}")


class ParameterLoop:
    """A closed path in V made of segments, each reparameterized on [0, 1].

    The global parameter s in [0, 1] is split uniformly among segments.
    Composition ``L1 + L2`` runs L1 first.
    """

    def __init__(self, segments, check_closed=True):
        self.segments = tuple(segments)
        if not self.segments:
            raise ValueError("a loop needs at least one segment")
        for s0, s1 in zip(self.segments, self.segments[1:]):
            if not s0.pair_at(1.0).allclose(s1.pair_at(0.0), 1e-12):
                raise ValueError("segments do not join")
        if check_closed and not self.is_closed():
            raise ValueError("path is not closed")

    @property
    def base(self):
        return self.segments[0].pair_at(0.0)

    @property
    def end(self):
        return self.segments[-1].pair_at(1.0)

    def is_closed(self, rtol=1e-14):
        return self.base.allclose(self.end, rtol)

    def evaluate(self, s):
        n = len(self.segments)
        k = min(int(s * n), n - 1)
        return self.segments[k].pair_at(s * n - k)

    def __add__(self, other):
        return ParameterLoop(self.segments + other.segments)

    def inverse(self):
        return ParameterLoop([seg.reversed() for seg in reversed(self.segments)])

    def to_json(self):
        return {"schema_version": 1, "segments": [seg.to_json() for seg in self.segments]}

    @classmethod
    def from_json(cls, obj):
        return cls([segment_from_json(rec) for rec in obj["segments"]])


class OpenPath(ParameterLoop):
    """Same container without the closure requirement (connecting segments)."""

    def __init__(self, segments):
        super().__init__(segments, check_closed=False)

    def inverse(self):
        return OpenPath([seg.reversed() for seg in reversed(self.segments)])


def constant_loop(pair):
    return ParameterLoop([Constant(pair=pair)])


# ---------------------------------------------------------------------------
# loop generators


def _arc_clearance(seg, samples=257):
    pts = np.asarray(seg.construction.points, dtype=np.complex128)
    others = np.delete(pts, [seg.i, seg.j])
    ss = np.linspace(0.0, 1.0, samples)
    path = np.array([seg.moving_points(s) for s in ss]).ravel()
    if others.size == 0:
        return math.inf
    return float(np.abs(path[:, None] - others[None, :]).min())


def swap_loop(c, i, j, orientation=1, max_shrinks=8):
    """Loop at the construction's base point trading marked points i and j."""
    if i == j:
        raise ValueError("swap needs two different points")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    pts = np.asarray(c.points, dtype=np.complex128)
    threshold = 1e-3 * kernels.min_pairwise_distance(pts)
    flatten = 1.0
    for _ in range(max_shrinks + 1):
        seg = SwapArc(construction=c, i=i, j=j, orientation=orientation, flatten=flatten)
        if _arc_clearance(seg) > threshold:
            return ParameterLoop([seg])
        flatten *= 0.9
    raise ArcCollision(f"swap arc ({i}, {j}) passes within {threshold:.2e} of another marked point")


def random_direction(rng, fix_leading=True):
    """Random unit-norm pair (D_A, D_B); leading x0 coefficients zero when ``fix_leading``."""
    v = rng.normal(size=22) + 1j * rng.normal(size=22)
    if fix_leading:
        v[8] = 0.0
        v[21] = 0.0
    v /= np.linalg.norm(v)
    return WeierstrassPair.from_vector(v)


def scalar_loop(base, direction, center, radius):
    """Out along the ray to center + radius, around the circle, and back."""
    center = complex(center)
    tip = WeierstrassPair.from_vector(base.vector() + (center + radius) * direction.vector())
    out = Linear(start=base, end=tip)
    circle = ScalarCircle(base=base, direction=direction, center=center, radius=float(radius))
    return ParameterLoop([out, circle, out.reversed()])


def random_scalar_loop(base, rng, magnitude=None):
    """Random one-parameter circle loop at ``base`` (see :func:`scalar_loop`).

    |center| is log-uniform in [0.05, 2] x ``magnitude`` (default: coefficient
    norm of the base) and radius is uniform in [0.2, 0.9] x |center|.
    """
    if magnitude is None:
        magnitude = float(np.linalg.norm(base.vector()))
    direction = random_direction(rng)
    modulus = magnitude * math.exp(rng.uniform(math.log(0.05), math.log(2.0)))
    angle = rng.uniform(0.0, 2.0 * math.pi)
    center = modulus * complex(math.cos(angle), math.sin(angle))
    radius = rng.uniform(0.2, 0.9) * modulus
    return scalar_loop(base, direction, center, radius)


def connecting_path(start, end, via=None):
    """Piecewise-linear open path start -> (via) -> end."""
    if via is None:
        return OpenPath([Linear(start=start, end=end)])
    return OpenPath([Linear(start=start, end=via), Linear(start=via, end=end)])


def connect(base0, loop, via=None):
    """Conjugate ``loop`` to a loop at ``base0``: path, loop, path reversed."""
    if loop.base.allclose(base0):
        return ParameterLoop([Constant(pair=base0)] + list(loop.segments) + [Constant(pair=base0)])
    path = connecting_path(base0, loop.base, via)
    return ParameterLoop(list(path.segments) + list(loop.segments) + list(path.inverse().segments))
