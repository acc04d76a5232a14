"""Dirichlet domains for finitely generated isometry groups acting on the positive cone,
and the rank-2 picture of boundary rays and hyperbolic isometries."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .exactlat import Lattice, LatticeError, is_isometry, pair, signature
from .linalg import Matrix, Vector


class DomainError(LatticeError):
    pass


class SearchExhausted(DomainError):
    def __init__(self, bound: int):
        super().__init__(f"no infinite-order isometry with entries bounded by {bound}")
        self.bound = bound


# -- group balls -------------------------------------------------------------------


def _key(m: Matrix) -> tuple:
    return tuple(x for row in m for x in row)


@dataclass(frozen=True)
class GroupBall:
    generators: tuple
    radius: int
    elements: tuple  # identity excluded, BFS order

    def __len__(self) -> int:
        return len(self.elements)


def ball(L: Lattice, generators: Sequence[Matrix], radius: int) -> GroupBall:
    """All distinct products of at most ``radius`` generators and inverses."""
    gens = [la.mat(g) for g in generators]
    for g in gens:
        if not is_isometry(L, g):
            raise DomainError("ball generator is not a lattice isometry")
    steps = []
    for g in gens:
        for m in (g, la.inverse(g)):
            if m not in steps:
                steps.append(m)
    ident = la.identity(L.rank)
    seen = {ident}
    level = [ident]
    elements = []
    for _ in range(radius):
        nxt = set()
        for x in level:
            for s in steps:
                y = la.matmul(s, x)
                if y not in seen:
                    nxt.add(y)
        level = sorted(nxt, key=_key)
        seen.update(level)
        elements.extend(level)
    return GroupBall(tuple(gens), radius, tuple(elements))


# -- Dirichlet domains -------------------------------------------------------------


@dataclass(frozen=True)
class DirichletDomain:
    """``{x in Pos : pair(x0, x) <= pair(x0, g x) for g in the ball}``.

    ``halfspaces`` holds ``(g, n_g)`` for every ball element, where
    ``pair(n_g, x) >= 0`` is the inequality for ``g``; ``active`` indexes
    the irredundant ones (all of them when ``reduced`` is false).
    """

    lattice: Lattice
    x0: Vector
    halfspaces: tuple
    active: tuple
    witnesses: tuple
    stabilized: bool
    reduced: bool

    @property
    def normals(self) -> list[Vector]:
        return [self.halfspaces[i][1] for i in self.active]

    def status(self, x: Sequence) -> str:
        L = self.lattice
        x = la.vec(x)
        if pair(L, x, x) < 0 or pair(L, x, self.x0) <= 0:
            return "outside"
        vals = [pair(L, n, x) for n in self.normals]
        if any(v < 0 for v in vals):
            return "outside"
        if pair(L, x, x) == 0 or any(v == 0 for v in vals):
            return "boundary"
        return "interior"

    def to_json(self) -> dict:
        return {
            "x0": [la.fmt(v) for v in self.x0],
            "active": [
                {
                    "element": [[la.fmt(v) for v in row] for row in self.halfspaces[i][0]],
                    "normal": [la.fmt(v) for v in self.halfspaces[i][1]],
                    "witness": [la.fmt(v) for v in w] if w is not None else None,
                }
                for i, w in zip(self.active, self.witnesses)
            ],
            "candidates": len(self.halfspaces),
            "stabilized": self.stabilized,
            "reduced": self.reduced,
        }


def _direction(v: Sequence) -> tuple[int, ...]:
    return la.primitive(v)


def _sqrt_below(x: Fraction, bits: int) -> Fraction:
    """Rational lower bound for ``sqrt(x)`` with ``bits`` fractional bits."""
    den = 1 << bits
    n = x * den * den
    return Fraction(math.isqrt(n.numerator // n.denominator), den)


def _facet_witness(L: Lattice, x0: Vector, n: Vector, others: Sequence[Vector]):
    """A point of ``n^perp`` inside Pos strictly satisfying ``others``, or None."""
    nn = pair(L, n, n)
    if nn >= 0:
        return None
    p = la.sub(x0, la.scale(pair(L, x0, n) / nn, n))
    if L.rank == 2:
        return p if all(pair(L, m, p) > 0 for m in others) else None
    # rank 3: the chord p + t q, |t| < T, of the hyperbolic line n^perp
    plane = la.nullspace((la.matvec(L.gram, n),), L.rank)
    u = next(b for b in plane if la.rank((p, b)) == 2)
    q = la.sub(u, la.scale(pair(L, u, p) / pair(L, p, p), p))
    T2 = pair(L, p, p) / -pair(L, q, q)
    lo = hi = None
    for m in others:
        a, b = pair(L, m, p), pair(L, m, q)
        if b == 0:
            if a <= 0:
                return None
        elif b > 0:
            lo = -a / b if lo is None else max(lo, -a / b)
        else:
            hi = -a / b if hi is None else min(hi, -a / b)
    if lo is not None and hi is not None and lo >= hi:
        return None
    if lo is not None and lo >= 0 and lo * lo >= T2:
        return None
    if hi is not None and hi <= 0 and hi * hi >= T2:
        return None
    bits = 4
    while True:
        t_low = _sqrt_below(T2, bits)
        a = -t_low if lo is None else max(lo, -t_low)
        b = t_low if hi is None else min(hi, t_low)
        if a < b:
            t = (a + b) / 2
            return la.add(p, la.scale(t, q))
        bits += 4


def _active_set(L: Lattice, x0: Vector, normals: Sequence[Vector]):
    """Indices of irredundant halfspaces (and their witnesses) among ``normals``."""
    first: dict = {}
    for i, n in enumerate(normals):
        first.setdefault(_direction(n), i)
    cand = sorted(first.values())
    if L.rank > 3:
        return tuple(cand), (None,) * len(cand), False
    active, wits = [], []
    for i in cand:
        others = [normals[j] for j in cand if j != i]
        w = _facet_witness(L, x0, normals[i], others)
        if w is not None:
            active.append(i)
            wits.append(w)
    return tuple(active), tuple(wits), True


def _halfspaces(L: Lattice, x0: Vector, gb: GroupBall):
    out = []
    for g in gb.elements:
        gx = la.matvec(g, x0)
        if gx == x0:
            raise DomainError("x0 is fixed by a nontrivial element of the ball")
        if pair(L, gx, x0) <= 0:
            raise DomainError("a ball element exchanges the components of the positive cone")
        n = la.sub(la.matvec(la.inverse(g), x0), x0)
        out.append((g, la.vec(_direction(n))))
    return out


def dirichlet_domain(L: Lattice, x0: Sequence, gb: GroupBall, check_stable: bool = True) -> DirichletDomain:
    """Dirichlet domain of ``x0`` for the elements of ``gb``.

    For ``g`` the inequality ``pair(x0, x) <= pair(x0, g x)`` reads
    ``pair(g^-1 x0 - x0, x) >= 0``.  Redundant inequalities are removed
    exactly up to rank 3: an inequality is kept iff a point of its
    hyperplane inside Pos satisfies all others strictly.  ``stabilized``
    reports whether one more layer of the ball leaves the active set alone.
    """
    x0 = la.vec(x0)
    if pair(L, x0, x0) <= 0:
        raise DomainError("x0 must have positive square")
    hs = _halfspaces(L, x0, gb)
    active, wits, reduced = _active_set(L, x0, [n for _, n in hs])
    stabilized = False
    if check_stable:
        bigger = ball(L, gb.generators, gb.radius + 1)
        hs2 = _halfspaces(L, x0, bigger)
        active2, _, _ = _active_set(L, x0, [n for _, n in hs2])
        stabilized = {hs[i][1] for i in active} == {hs2[i][1] for i in active2}
    return DirichletDomain(L, x0, tuple(hs), active, wits, stabilized, reduced)


@dataclass(frozen=True)
class TilingReport:
    total: int
    covered: int
    on_wall: int
    double_interior: tuple  # indices of samples interior to two translates
    uncovered: tuple

    @property
    def coverage(self) -> Fraction:
        return Fraction(self.covered, self.total) if self.total else Fraction(1)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "covered": self.covered,
            "coverage": la.fmt(self.coverage),
            "on_wall": self.on_wall,
            "double_interior": list(self.double_interior),
            "uncovered": list(self.uncovered),
        }


def tiles(domain: DirichletDomain, gb: GroupBall, samples: Sequence[Sequence]) -> TilingReport:
    """Look for translates of the domain containing each sample."""
    L = domain.lattice
    elems = [la.identity(L.rank)] + list(gb.elements)
    covered = on_wall = 0
    doubles, missing = [], []
    for k, s in enumerate(samples):
        s = la.vec(s)
        interior = boundary = 0
        for g in elems:
            st = domain.status(la.matvec(g, s))
            if st == "interior":
                interior += 1
            elif st == "boundary":
                boundary += 1
        if interior or boundary:
            covered += 1
            if not interior:
                on_wall += 1
        else:
            missing.append(k)
        if interior > 1:
            doubles.append(k)
    return TilingReport(len(samples), covered, on_wall, tuple(doubles), tuple(missing))


def choose_x0(L: Lattice, gb: GroupBall, h: Sequence, seed: int = 0, tries: int = 200, box: int = 6) -> Vector:
    """A small integral positive point with trivial stabilizer in the ball."""
    rng = random.Random(seed)
    h = la.vec(h)
    for _ in range(tries):
        x = la.vec(rng.randint(-box, box) for _ in range(L.rank))
        if pair(L, x, x) <= 0 or pair(L, x, h) <= 0:
            continue
        if all(la.matvec(g, x) != x for g in gb.elements):
            return x
    raise DomainError(f"no base point with trivial stabilizer found in {tries} draws")


def random_positive_samples(L: Lattice, h: Sequence, count: int, seed: int = 0, box: int = 20) -> list[Vector]:
    rng = random.Random(seed)
    h = la.vec(h)
    out = []
    while len(out) < count:
        x = tuple(Fraction(rng.randint(-box, box), rng.randint(1, 5)) for _ in range(L.rank))
        if pair(L, x, x) > 0 and pair(L, x, h) > 0:
            out.append(x)
    return out


# -- rank 2 -------------------------------------------------------------------------


def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = s^2 * d`` with ``d`` squarefree; returns ``(s, d)``."""
    s, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1
    return s, d


@dataclass(frozen=True)
class Surd:
    """``a + b sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d > 1``."""

    a: Fraction
    b: Fraction
    d: int

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        return sa if a * a > b * b * self.d else sb

    def __add__(self, o: "Surd") -> "Surd":
        return Surd(self.a + o.a, self.b + o.b, self.d)

    def __mul__(self, o) -> "Surd":
        if isinstance(o, Surd):
            return Surd(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)
        return Surd(self.a * o, self.b * o, self.d)

    __rmul__ = __mul__

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.d)

    def to_json(self) -> dict:
        return {"a": la.fmt(self.a), "b": la.fmt(self.b), "d": self.d}

    def __str__(self) -> str:
        return f"{la.fmt(self.a)} + {la.fmt(self.b)}*sqrt({self.d})"


def default_reference(L: Lattice, box: int = 5) -> Vector:
    """First small integral vector of positive square, in a fixed scan order."""
    from itertools import product

    for r in range(1, box + 1):
        for v in product(range(r, -r - 1, -1), repeat=L.rank):
            if max(map(abs, v)) == r and pair(L, v, v) > 0:
                return la.vec(v)
    raise DomainError("no positive vector in the search box")


@dataclass(frozen=True)
class BoundaryRays:
    rays: tuple  # two rays, rational vectors or pairs of Surds
    rational: bool
    discriminant: Fraction

    def to_json(self) -> dict:
        if self.rational:
            rays = [[la.fmt(x) for x in r] for r in self.rays]
        else:
            rays = [[s.to_json() for s in r] for r in self.rays]
        return {"rays": rays, "rational": self.rational, "discriminant": la.fmt(self.discriminant)}


def _check_rank2(L: Lattice) -> None:
    if L.rank != 2 or signature(L) != (1, 1):
        raise DomainError("expected a rank-2 lattice of signature (1, 1)")


def rank2_boundary_rays(L: Lattice, h: Sequence | None = None) -> BoundaryRays:
    """The two isotropic rays bounding the positive cone of a hyperbolic plane."""
    _check_rank2(L)
    h = la.vec(h) if h is not None else default_reference(L)
    (A, B), (_, C) = L.gram
    delta = B * B - A * C  # quarter of the discriminant of A x^2 + 2 B x y + C y^2
    num = delta.numerator * delta.denominator
    s = math.isqrt(num)
    if s * s == num:
        root = Fraction(s, delta.denominator)
        if A != 0:
            rays = [(-B + root, A), (-B - root, A)]
        else:
            rays = [(Fraction(1), Fraction(0)), (C, -2 * B)]
        out = []
        for r in rays:
            r = la.vec(la.primitive(r))
            if pair(L, r, h) < 0:
                r = la.neg(r)
            out.append(r)
        return BoundaryRays(tuple(sorted(out)), True, 4 * delta)
    # sqrt(delta) = sqrt(num) / den = k sqrt(d) / den
    k, d = _squarefree_split(num)
    c = Fraction(k, delta.denominator)
    out = []
    for sgn in (1, -1):
        r = (Surd(-B, sgn * c, d), Surd(A, Fraction(0), d))
        gh = la.matvec(L.gram, h)
        val = r[0] * gh[0] + r[1] * gh[1]
        if val.sign() < 0:
            r = (-r[0], -r[1])
        out.append(r)
    return BoundaryRays(tuple(out), False, 4 * delta)


def rank2_isometry_generator(L: Lattice, bound: int = 50, h: Sequence | None = None) -> Matrix:
    """Infinite-order isometry fixing both boundary rays, smallest trace first.

    The first column ranges over vectors of the right square within the
    bound; the second column is then forced by the pairing with the first
    and ``det = 1``.
    """
    rays = rank2_boundary_rays(L, h)
    if rays.rational:
        raise DomainError("boundary rays are rational; no hyperbolic rotation is expected")
    h = la.vec(h) if h is not None else default_reference(L)
    (A, B), (_, C) = L.gram
    best = None
    for p in range(-bound, bound + 1):
        for r in range(-bound, bound + 1):
            if A * p * p + 2 * B * p * r + C * r * r != A:
                continue
            g1 = (A * p + B * r, B * p + C * r)  # G col1
            m = ((g1[0], g1[1]), (Fraction(-r), Fraction(p)))
            dt = la.det(m)
            if dt == 0:
                continue
            q, s = la.solve(m, (B, Fraction(1)))
            if q.denominator != 1 or s.denominator != 1:
                continue
            if abs(q) > bound or abs(s) > bound:
                continue
            if A * q * q + 2 * B * q * s + C * s * s != C:
                continue
            tr = p + s
            if tr <= 2:
                continue
            g = ((Fraction(p), q), (Fraction(r), s))
            if pair(L, la.matvec(g, h), h) <= 0:
                continue
            key = (tr, _key(g))
            if best is None or key < best[0]:
                best = (key, g)
    if best is None:
        raise SearchExhausted(bound)
    return best[1]
