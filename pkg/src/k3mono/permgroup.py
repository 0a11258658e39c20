"""Permutation groups: Schreier-Sims, orbits, block systems, parity.

Conventions
-----------
Points are 0-based. A permutation is stored as its image list,
``p.images[i] = p(i)``. Products compose left to right, the order in which
loops are traversed: ``(p * q)(i) == q(p(i))``.

Group orders are Python ints, so 24! is exact.
"""

import math
from dataclasses import dataclass
from itertools import product as _iproduct

from .errors import DegreeMismatch, NotInClassification, NotPrimitive

FACT_12 = math.factorial(12)
FACT_24 = math.factorial(24)

PRIMITIVE_DEG24 = {
    6072: "PSL2(23)",
    12144: "PGL2(23)",
    244823040: "M24",
    FACT_24 // 2: "A24",
    FACT_24: "S24",
}


def _mul(p, q):
    return tuple([q[i] for i in p])


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _is_id(p):
    return all(i == x for i, x in enumerate(p))


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        if self.degree != other.degree:
            raise DegreeMismatch("cannot multiply permutations of different degree")
        return Permutation(_mul(self.images, other.images))

    def __pow__(self, k):
        out = Permutation.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self):
        return Permutation(_inv(self.images))

    def conjugate(self, c):
        """``c^-1 * self * c``: relabel the points of ``self`` through ``c``."""
        return c.inverse() * self * c

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def is_identity(self):
        return _is_id(self.images)

    def cycles(self, include_fixed=False):
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def cycle_type(self):
        """Sorted (descending) lengths of the nontrivial cycles, e.g. (2, 2)."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def to_json(self):
        return list(self.images)


def parity(p):
    """+1 for even permutations, -1 for odd ones."""
    return -1 if sum(len(c) - 1 for c in p.cycles()) % 2 else 1


def adjacent_transpositions(n):
    return [Permutation.from_cycles(n, [[i, i + 1]]) for i in range(n - 1)]


def embed_f(sigma):
    """S12 -> S24 acting identically on {0..11} and {12..23}."""
    img = list(sigma.images) + [x + 12 for x in sigma.images]
    return Permutation(img)


def embed_g(sigma):
    """S8 -> S24 acting identically on {0..7}, {8..15}, {16..23}."""
    img = list(sigma.images) + [x + 8 for x in sigma.images] + [x + 16 for x in sigma.images]
    return Permutation(img)


def projective_line_maps(p, maps):
    """Permutations of P^1(F_p) (points 0..p-1, infinity = p) from 2x2 matrices."""
    inf = p
    out = []
    for (a, b), (c, d) in maps:
        img = []
        for x in range(p + 1):
            if x == inf:
                num, den = a % p, c % p
            else:
                num, den = (a * x + b) % p, (c * x + d) % p
            img.append(inf if den == 0 else num * pow(den, -1, p) % p)
        out.append(Permutation(img))
    return out


class PermGroup:
    """Permutation group with a base and strong generating set.

    Built with the deterministic Schreier-Sims algorithm. Transversals store
    explicit coset representatives: ``trans[i][x]`` maps ``base[i]`` to ``x``.
    """

    def __init__(self, degree, generators=()):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.base = []
        self.strong_generators = []
        self.transversals = []
        self._trans_inv = []
        self._schreier_sims()

    # -- construction -----------------------------------------------------

    def _extend_orbit(self, level, new_gens):
        trans, tinv = self.transversals[level], self._trans_inv[level]
        gens = self.strong_generators[level]
        queue = list(trans)
        # new generators act on every known point; all generators act on new points
        frontier = []
        for x in queue:
            u = trans[x]
            for g in new_gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _mul(u, g)
                    tinv[y] = _inv(trans[y])
                    frontier.append(y)
        while frontier:
            x = frontier.pop(0)
            u = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _mul(u, g)
                    tinv[y] = _inv(trans[y])
                    frontier.append(y)

    def _add_level(self, point):
        ident = tuple(range(self.degree))
        self.base.append(point)
        self.strong_generators.append([])
        self.transversals.append({point: ident})
        self._trans_inv.append({point: ident})

    def _sift_from(self, h, start):
        for i in range(start, len(self.base)):
            x = h[self.base[i]]
            tinv = self._trans_inv[i]
            if x not in tinv:
                return h, i
            h = _mul(h, tinv[x])
        return h, len(self.base)

    def _schreier_sims(self):
        gens = [g.images for g in self.generators if not g.is_identity()]
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._add_level(next(i for i, x in enumerate(g) if x != i))
        for level, b in enumerate(self.base):
            level_gens = [g for g in gens if all(g[p] == p for p in self.base[:level])]
            self.strong_generators[level].extend(level_gens)
            self._extend_orbit(level, level_gens)
        checked = [set() for _ in self.base]
        i = len(self.base) - 1
        while i >= 0:
            restart = None
            trans, tinv = self.transversals[i], self._trans_inv[i]
            for x in list(trans):
                u = trans[x]
                for gi, s in enumerate(self.strong_generators[i]):
                    if (x, gi) in checked[i]:
                        continue
                    h = _mul(_mul(u, s), tinv[s[x]])
                    residue, j = self._sift_from(h, i + 1)
                    if j == len(self.base) and _is_id(residue):
                        checked[i].add((x, gi))
                        continue
                    if j == len(self.base):
                        self._add_level(next(k for k, y in enumerate(residue) if y != k))
                        checked.append(set())
                    for lvl in range(i + 1, j + 1):
                        self.strong_generators[lvl].append(residue)
                        self._extend_orbit(lvl, [residue])
                    restart = j
                    break
                if restart is not None:
                    break
            i = restart if restart is not None else i - 1

    # -- queries ------------------------------------------------------------

    def order(self):
        return math.prod(len(t) for t in self.transversals)

    def contains(self, p):
        images = p.images if isinstance(p, Permutation) else tuple(p)
        if len(images) != self.degree:
            return False
        residue, j = self._sift_from(images, 0)
        return j == len(self.base) and _is_id(residue)

    __contains__ = contains

    def orbit(self, point):
        seen = {point}
        stack = [point]
        while stack:
            x = stack.pop()
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def orbits(self):
        out, seen = [], set()
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit(p)
                seen.update(orb)
                out.append(orb)
        return out

    def has_odd(self):
        return any(parity(g) == -1 for g in self.generators)

    def elements(self):
        """Enumerate all elements via the transversals (small groups only)."""
        ident = tuple(range(self.degree))
        levels = [list(t.values()) for t in self.transversals]
        for combo in _iproduct(*reversed(levels)):
            g = ident
            for u in combo:
                g = _mul(g, u)
            yield Permutation(g)


def generate(gens, degree=None):
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generator list")
        degree = gens[0].degree
    return PermGroup(degree, gens)


def brute_force_order(gens, degree):
    """Closure by breadth-first multiplication; an oracle independent of Schreier-Sims."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    raw = [g.images for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in raw:
                q = _mul(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def is_transitive(G):
    return G.degree == 0 or len(G.orbit(0)) == G.degree


def is_k_transitive(G, k):
    """Transitivity on ordered k-tuples of distinct points."""
    n = G.degree
    if k < 1 or k > 3:
        raise ValueError("k must be 1, 2 or 3")
    if k > n:
        return False
    start = tuple(range(k))
    seen = {start}
    stack = [start]
    while stack:
        t = stack.pop()
        for g in G.generators:
            u = tuple(g.images[x] for x in t)
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == math.perm(n, k)


@dataclass(frozen=True)
class BlockSystem:
    block_of: tuple
    num_blocks: int

    @classmethod
    def from_labels(cls, labels):
        relabel = {}
        out = []
        for x in labels:
            relabel.setdefault(x, len(relabel))
            out.append(relabel[x])
        return cls(tuple(out), len(relabel))

    @classmethod
    def from_blocks(cls, n, blocks):
        labels = [None] * n
        for k, blk in enumerate(blocks):
            for p in blk:
                labels[p] = k
        if any(lab is None for lab in labels):
            raise ValueError("blocks do not cover all points")
        return cls.from_labels(labels)

    def blocks(self):
        out = [[] for _ in range(self.num_blocks)]
        for p, b in enumerate(self.block_of):
            out[b].append(p)
        return out

    @property
    def block_size(self):
        return len(self.block_of) // self.num_blocks

    def is_trivial(self):
        return self.num_blocks in (1, len(self.block_of))

    def canonical(self):
        return frozenset(frozenset(b) for b in self.blocks())


def minimal_block_system(G, seed_pair):
    """Finest G-invariant partition putting the two seed points in one block."""
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    a, b = seed_pair
    queue = []
    ra, rb = find(a), find(b)
    if ra != rb:
        parent[rb] = ra
        queue.append((a, b))
    gens = [g.images for g in G.generators]
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((u, v))
    return BlockSystem.from_labels([find(p) for p in range(G.degree)])


def is_block_system(G, system):
    """True when every generator maps blocks onto blocks."""
    lab = system.block_of
    for g in G.generators:
        image_block = {}
        for p in range(G.degree):
            b, gb = lab[p], lab[g.images[p]]
            if image_block.setdefault(b, gb) != gb:
                return False
    return True


def block_systems(G):
    """Distinct nontrivial minimal block systems seeded at (0, b); empty for primitive groups.

    Partitions with unequal block sizes (possible for intransitive groups) are skipped.
    """
    out = {}
    for b in range(1, G.degree):
        bs = minimal_block_system(G, (0, b))
        sizes = {len(blk) for blk in bs.blocks()}
        if not bs.is_trivial() and len(sizes) == 1:
            out.setdefault(bs.canonical(), bs)
    return list(out.values())


def imprimitivity_witness(G):
    """A partition showing G is not primitive (orbits, or a block system), else None."""
    if not is_transitive(G):
        return BlockSystem.from_blocks(G.degree, G.orbits())
    for b in range(1, G.degree):
        bs = minimal_block_system(G, (0, b))
        if bs.num_blocks > 1:
            return bs
    return None


def is_primitive(G):
    if G.degree <= 1:
        return True
    return imprimitivity_witness(G) is None


def identify_primitive_deg24(G):
    if G.degree != 24:
        raise NotPrimitive(f"degree {G.degree} is not 24")
    if not is_primitive(G):
        raise NotPrimitive("group is not primitive")
    order = G.order()
    try:
        return PRIMITIVE_DEG24[order]
    except KeyError:
        raise NotInClassification(order) from None


@dataclass(frozen=True)
class CertificateReport:
    order: int
    transitive: bool
    primitive: bool
    order_exceeds_12_factorial: bool
    has_odd: bool
    identification: str | None
    conclusion: str

    def to_json(self):
        return {
            "order": str(self.order),
            "transitive": self.transitive,
            "primitive": self.primitive,
            "order_exceeds_12_factorial": self.order_exceeds_12_factorial,
            "has_odd": self.has_odd,
            "identification": self.identification,
            "conclusion": self.conclusion,
        }


def certify_s24(G):
    """Replay the S24 argument: transitive, primitive, |G| > 12!, contains an odd element."""
    order = G.order()
    transitive = is_transitive(G)
    primitive = transitive and is_primitive(G)
    big = order > FACT_12
    odd = G.has_odd()
    ident = None
    if primitive and G.degree == 24:
        try:
            ident = identify_primitive_deg24(G)
        except NotInClassification:
            ident = None
    ok = transitive and primitive and big and odd and ident == "S24"
    return CertificateReport(
        order=order,
        transitive=transitive,
        primitive=primitive,
        order_exceeds_12_factorial=big,
        has_odd=odd,
        identification=ident,
        conclusion="S24" if ok else "not S24",
    )
