"""Rational polyhedral cones inside the positive cone.

Halfspaces are stored as vectors ``n`` meaning ``pair(n, x) >= 0``; this
keeps every constraint a lattice class.  Conversions between generators and
halfspaces are brute force over subsets and are only offered up to rank 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg as la
from .exactlat import Lattice, LatticeError, pair
from .linalg import Vector
from .roots import normalize_roots

MAX_RANK = 4

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class ConeError(LatticeError):
    pass


# -- coordinate-space helpers (covectors act by the plain dot product) --------


def _dedupe_rays(vs) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for v in vs:
        p = la.primitive(v)
        if any(p) and p not in out:
            out.append(p)
    return out


def facets_of(rays: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Facet covectors of the cone spanned by ``rays`` (full-dimensional, pointed)."""
    rays = [la.vec(r) for r in rays]
    if la.rank(tuple(rays)) != dim:
        raise ConeError("generators do not span the ambient space")
    out = []
    for sub in combinations(rays, dim - 1):
        ker = la.nullspace(tuple(sub), dim)
        if len(ker) != 1:
            continue
        phi = ker[0]
        vals = [la.dot(phi, r) for r in rays]
        if all(v >= 0 for v in vals):
            out.append(phi)
        elif all(v <= 0 for v in vals):
            out.append(la.neg(phi))
    return sorted(_dedupe_rays(out))


def rays_of(covectors: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x : phi(x) >= 0}``; the cone must be pointed."""
    cov = [la.vec(c) for c in covectors]
    if dim == 0:
        return []
    if la.rank(tuple(cov)) != dim:
        raise ConeError("halfspaces do not define a pointed cone")
    out = []
    for sub in combinations(cov, dim - 1):
        ker = la.nullspace(tuple(sub), dim)
        if len(ker) != 1:
            continue
        r = ker[0]
        vals = [la.dot(c, r) for c in cov]
        if all(v >= 0 for v in vals):
            out.append(r)
        elif all(v <= 0 for v in vals):
            out.append(la.neg(r))
    return sorted(_dedupe_rays(out))


@dataclass(frozen=True)
class _Chart:
    """Rational coordinates on the linear span of a set of vectors."""

    basis: tuple  # span basis, ambient vectors
    full: tuple  # basis completed to the ambient space (columns)
    inv: tuple  # inverse of ``full``

    @classmethod
    def of(cls, vectors: Sequence[Sequence], n: int) -> "_Chart":
        vs = [la.vec(v) for v in vectors]
        basis: list = []
        for v in vs:
            if la.rank(tuple(basis + [v])) > len(basis):
                basis.append(v)
        full = list(basis)
        for i in range(n):
            e = tuple(Fraction(int(i == j)) for j in range(n))
            if la.rank(tuple(full + [e])) > len(full):
                full.append(e)
        m = la.from_columns(full)
        return cls(tuple(basis), tuple(full), la.inverse(m))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: Sequence) -> Vector:
        return la.matvec(self.inv, la.vec(x))[: self.dim]

    def lift(self, c: Sequence) -> Vector:
        x = la.zeros(len(self.full))
        for ci, b in zip(c, self.basis):
            x = la.add(x, la.scale(ci, b))
        return x

    def lift_covector(self, phi: Sequence) -> Vector:
        # ambient covector agreeing with phi on the span, zero on the completion
        return la.vecmat(tuple(phi), self.inv[: self.dim])

    def restrict_covector(self, psi: Sequence) -> Vector:
        return tuple(la.dot(psi, b) for b in self.basis)

    def annihilator(self) -> list[Vector]:
        return [tuple(r) for r in self.inv[self.dim:]]


# -- cones ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone in a lattice, optionally intersected with Pos.

    ``positive_cone`` marks that membership also requires lying in the
    component of the positive cone containing ``reference``; with no
    generators and no halfspaces this is the positive cone itself.
    """

    lattice: Lattice
    reference: Vector
    generators: tuple = ()
    halfspaces: tuple = ()
    equations: tuple = ()
    strict: tuple = ()
    positive_cone: bool = False
    authoritative: str = "generators"
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        L = self.lattice
        h = la.vec(self.reference)
        if pair(L, h, h) <= 0:
            raise ConeError("reference vector must have positive square")
        object.__setattr__(self, "reference", h)
        object.__setattr__(self, "generators", tuple(la.vec(g) for g in self.generators))
        object.__setattr__(self, "halfspaces", tuple(la.vec(n) for n in self.halfspaces))
        object.__setattr__(self, "equations", tuple(la.vec(n) for n in self.equations))
        if not self.strict:
            object.__setattr__(self, "strict", (False,) * len(self.halfspaces))
        if len(self.strict) != len(self.halfspaces):
            raise ConeError("one strictness flag per halfspace is required")
        if self.generators and self.halfspaces:
            for g in self.generators:
                if any(pair(L, n, g) < 0 for n in self.halfspaces) or any(
                    pair(L, n, g) != 0 for n in self.equations
                ):
                    raise ConeError("a generator violates a halfspace")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @classmethod
    def from_generators(cls, L: Lattice, generators, reference=None) -> "Cone":
        gens = [la.vec(g) for g in generators]
        if not gens:
            raise ConeError("a cone needs at least one generator")
        if reference is None:
            reference = gens[0]
            for g in gens[1:]:
                reference = la.add(reference, g)
        cone = cls(L, reference, generators=tuple(gens))
        return cone

    @classmethod
    def positive(cls, L: Lattice, reference) -> "Cone":
        return cls(L, reference, positive_cone=True, authoritative="halfspaces")

    def with_halfspaces(self) -> "Cone":
        """Same cone with its halfspace description filled in."""
        if self.halfspaces or self.equations or not self.generators:
            return self
        halfs, eqs = generator_halfspaces(self.lattice, self.generators)
        return Cone(
            self.lattice,
            self.reference,
            generators=self.generators,
            halfspaces=tuple(halfs),
            equations=tuple(eqs),
            positive_cone=self.positive_cone,
            authoritative=self.authoritative,
        )

    def to_json(self) -> dict:
        return {
            "generators": [[la.fmt(x) for x in g] for g in self.generators],
            "halfspaces": [[la.fmt(x) for x in n] for n in self.halfspaces],
            "equations": [[la.fmt(x) for x in n] for n in self.equations],
            "strict": list(self.strict),
            "reference": [la.fmt(x) for x in self.reference],
            "positive_cone": self.positive_cone,
        }

    @classmethod
    def from_json(cls, L: Lattice, data: dict) -> "Cone":
        return cls(
            L,
            la.vec(data["reference"]),
            generators=tuple(la.vec(g) for g in data.get("generators", [])),
            halfspaces=tuple(la.vec(n) for n in data.get("halfspaces", [])),
            equations=tuple(la.vec(n) for n in data.get("equations", [])),
            strict=tuple(data.get("strict", [])),
            positive_cone=bool(data.get("positive_cone", False)),
            authoritative="halfspaces" if data.get("halfspaces") else "generators",
        )


def generator_halfspaces(L: Lattice, generators) -> tuple[list[Vector], list[Vector]]:
    """Halfspace normals and equation normals of a generated cone."""
    if L.rank > MAX_RANK:
        raise ConeError(f"halfspace conversion is limited to rank {MAX_RANK}")
    chart = _Chart.of(generators, L.rank)
    coords = [chart.coords(g) for g in generators]
    if chart.dim == 0:
        raise ConeError("cone generated by zero vectors")
    if chart.dim == 1:
        cov = [la.vec(la.primitive(coords[0]))]
        if any(la.dot(cov[0], c) < 0 for c in coords):
            raise ConeError("generators are not salient (contain a line)")
    else:
        cov = [la.vec(f) for f in facets_of(coords, chart.dim)]
        if la.rank(tuple(cov)) < chart.dim:
            raise ConeError("generators are not salient (contain a line)")
    gi = la.inverse(L.gram)
    halfs = [la.vec(la.primitive(la.matvec(gi, chart.lift_covector(c)))) for c in cov]
    eqs = [la.vec(la.primitive(la.matvec(gi, a))) for a in chart.annihilator()]
    return halfs, eqs


def _pos_status(L: Lattice, h: Vector, x: Vector) -> str:
    q = pair(L, x, x)
    s = pair(L, x, h)
    if q > 0 and s > 0:
        return INTERIOR
    if q == 0 and s >= 0 and not la.is_zero(x):
        return BOUNDARY
    if la.is_zero(x):
        return BOUNDARY
    return OUTSIDE


def contains(C: Cone, x: Sequence) -> str:
    """Classify ``x`` as interior, boundary or outside (relative interior for flat cones)."""
    L = C.lattice
    x = la.vec(x)
    if len(x) != L.rank:
        raise ConeError("dimension mismatch")
    if C.generators and not (C.halfspaces or C.equations):
        C = C.with_halfspaces()
    status = INTERIOR
    if any(pair(L, n, x) != 0 for n in C.equations):
        return OUTSIDE
    for n in C.halfspaces:
        v = pair(L, n, x)
        if v < 0:
            return OUTSIDE
        if v == 0:
            status = BOUNDARY
    if C.positive_cone:
        p = _pos_status(L, C.reference, x)
        if p == OUTSIDE:
            return OUTSIDE
        if p == BOUNDARY:
            status = BOUNDARY
    if la.is_zero(x):
        return BOUNDARY
    return status


def member(C: Cone, x: Sequence) -> bool:
    """Membership honouring per-halfspace strictness flags."""
    L = C.lattice
    x = la.vec(x)
    if contains(C, x) == OUTSIDE:
        return False
    for n, s in zip(C.halfspaces, C.strict):
        if s and pair(L, n, x) <= 0:
            return False
    if C.positive_cone and _pos_status(L, C.reference, x) != INTERIOR:
        return False
    return True


def fundamental_exceptional_chamber(L: Lattice, roots, h) -> Cone:
    """``{x in Pos : pair(e, x) > 0 for every root}`` with sign-normalized roots.

    Stored with strict flags; the closure is the same data read non-strictly.
    """
    h = la.vec(h)
    if not roots:
        return Cone.positive(L, h)
    rs = normalize_roots(L, roots, h)
    return Cone(
        L,
        h,
        halfspaces=tuple(rs),
        strict=(True,) * len(rs),
        positive_cone=True,
        authoritative="halfspaces",
    )


def wall_meets_cone(L: Lattice, v: Sequence, C: Cone) -> bool:
    """Whether ``v^perp`` meets ``C`` away from the apex."""
    if not C.generators:
        raise ConeError("wall test needs a generated cone")
    vals = [pair(L, v, g) for g in C.generators]
    return not (all(x > 0 for x in vals) or all(x < 0 for x in vals))


@dataclass(frozen=True)
class Cell:
    """One piece of a subdivision: the cone, its sign vector and an interior witness."""

    cone: Cone
    signs: tuple
    witness: Vector


def subdivide(C: Cone, walls: Sequence[Sequence]) -> list[Cell]:
    """Cut ``C`` by the hyperplanes ``w^perp`` into closed cells.

    Cells are the maximal regions on which every wall has a constant sign;
    each has nonempty (relative) interior.  Output is ordered by sign vector
    with ``+`` before ``-``.
    """
    L = C.lattice
    if L.rank > MAX_RANK:
        raise ConeError(f"subdivision is limited to rank {MAX_RANK}")
    if not C.generators:
        raise ConeError("subdivision needs a generated cone")
    walls = [la.vec(w) for w in walls]
    chart = _Chart.of(C.generators, L.rank)
    d = chart.dim
    rays0 = _dedupe_rays(chart.coords(g) for g in C.generators)
    if d == 1:
        facets0: list = [la.vec(rays0[0])]
    else:
        facets0 = [la.vec(f) for f in facets_of(rays0, d)]
    wall_cov = [chart.restrict_covector(la.matvec(L.gram, w)) for w in walls]

    # cells: (rays, facets, signs)
    cells = [(rays0, facets0, ())]
    for om in wall_cov:
        nxt = []
        for rays, facets, signs in cells:
            vals = [la.dot(om, r) for r in rays]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                nxt.append((rays, facets, signs + (1,)))
            elif all(v <= 0 for v in vals) and any(v < 0 for v in vals):
                nxt.append((rays, facets, signs + (-1,)))
            elif all(v == 0 for v in vals):
                nxt.append((rays, facets, signs + (0,)))
            else:
                for s in (1, -1):
                    cov = list(facets) + [la.scale(s, om)]
                    r = rays_of(cov, d)
                    nxt.append((r, [la.vec(f) for f in facets_of(r, d)], signs + (s,)))
        cells = nxt

    order = {1: 0, 0: 1, -1: 2}
    cells.sort(key=lambda c: tuple(order[s] for s in c[2]))
    gi = la.inverse(L.gram)
    out = []
    for rays, facets, signs in cells:
        gens = tuple(la.vec(la.primitive(chart.lift(r))) for r in rays)
        halfs = tuple(
            la.vec(la.primitive(la.matvec(gi, chart.lift_covector(f)))) for f in facets
        )
        eqs = tuple(la.vec(la.primitive(la.matvec(gi, a))) for a in chart.annihilator())
        witness = la.zeros(L.rank)
        for g in gens:
            witness = la.add(witness, g)
        cone = Cone(
            L,
            C.reference,
            generators=gens,
            halfspaces=halfs,
            equations=eqs,
            positive_cone=C.positive_cone,
        )
        out.append(Cell(cone, signs, witness))
    return out
