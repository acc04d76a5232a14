"""Reflections in negative classes, chamber walks and the Weyl factorization."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .exactlat import Lattice, LatticeError, is_isometry, pair
from .linalg import Matrix, Vector

MAX_WALK_STEPS = 100_000


class WalkError(LatticeError):
    """The chamber walk did not reach the fundamental chamber."""


def reflection(L: Lattice, e: Sequence) -> Matrix:
    """Matrix of ``x -> x - 2 pair(e, x) / pair(e, e) * e``."""
    e = la.vec(e)
    ee = pair(L, e, e)
    if ee == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    ge = la.matvec(L.gram, e)
    c = Fraction(2) / ee
    n = L.rank
    return tuple(
        tuple(Fraction(int(i == j)) - c * e[i] * ge[j] for j in range(n)) for i in range(n)
    )


def reflect(L: Lattice, e: Sequence, x: Sequence) -> Vector:
    e, x = la.vec(e), la.vec(x)
    ee = pair(L, e, e)
    if ee == 0:
        raise LatticeError("cannot reflect in an isotropic vector")
    return la.sub(x, la.scale(2 * pair(L, e, x) / ee, e))


def make_root(L: Lattice, e: Sequence) -> Vector:
    """Validate a root: a class of strictly negative square."""
    e = la.vec(e)
    if len(e) != L.rank:
        raise LatticeError("root has the wrong length")
    if pair(L, e, e) >= 0:
        raise LatticeError(f"root {tuple(map(la.fmt, e))} does not have negative square")
    return e


def lex_positive(v: Sequence) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


def normalize_root(L: Lattice, e: Sequence, h: Sequence) -> Vector:
    """Sign of ``e`` chosen so that ``pair(e, h) >= 0``; ties go lexicographic."""
    e = make_root(L, e)
    s = pair(L, e, h)
    if s < 0 or (s == 0 and not lex_positive(e)):
        return la.neg(e)
    return e


def normalize_roots(L: Lattice, roots: Sequence[Sequence], h: Sequence) -> list[Vector]:
    return [normalize_root(L, e, h) for e in roots]


def is_integral_reflection(L: Lattice, e: Sequence) -> bool:
    """Whether the reflection in ``e`` maps the lattice into itself."""
    if not L.is_integral:
        raise LatticeError("integrality test needs an integral Gram matrix")
    return la.is_integral(reflection(L, e))


@dataclass(frozen=True)
class WeylWord:
    """A sequence of reflections, applied first to last.

    ``word(x) = R_k(...R_1(x))``, so the matrix is ``R_k ... R_1``.
    """

    roots: tuple = ()
    names: tuple = ()

    def __len__(self) -> int:
        return len(self.roots)

    def matrix(self, L: Lattice) -> Matrix:
        m = la.identity(L.rank)
        for e in self.roots:
            m = la.matmul(reflection(L, e), m)
        return m

    def __call__(self, L: Lattice, x: Sequence) -> Vector:
        x = la.vec(x)
        for e in self.roots:
            x = reflect(L, e, x)
        return x

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.roots)), tuple(reversed(self.names)))

    def labels(self) -> list:
        if self.names:
            return list(self.names)
        return [[la.fmt(x) for x in e] for e in self.roots]


def _positive_reference(L: Lattice, h: Sequence) -> Vector:
    h = la.vec(h)
    if pair(L, h, h) <= 0:
        raise LatticeError("reference vector must have positive square")
    return h


def chamber_walk(
    L: Lattice,
    roots: Sequence[Sequence],
    alpha: Sequence,
    h: Sequence,
    names: Sequence[str] | None = None,
    max_steps: int = MAX_WALK_STEPS,
) -> tuple[WeylWord, Vector]:
    """Reflect ``alpha`` into the closed chamber of ``h``.

    Roots are sign-normalized against ``h``.  At every step the first root
    (in input order) with ``pair(x, e) < 0`` is used; points on walls are
    treated as inside.
    """
    h = _positive_reference(L, h)
    alpha = la.vec(alpha)
    if pair(L, alpha, alpha) <= 0 or pair(L, alpha, h) <= 0:
        raise LatticeError("alpha must be positive and in the component of h")
    rs = normalize_roots(L, roots, h)
    labels = list(names) if names is not None else [None] * len(rs)
    gs = [la.matvec(L.gram, e) for e in rs]
    ees = [pair(L, e, e) for e in rs]
    x = alpha
    used: list = []
    used_names: list = []
    for step in range(max_steps + 1):
        i = next((i for i, g in enumerate(gs) if la.dot(g, x) < 0), None)
        if i is None:
            word = WeylWord(tuple(used), tuple(used_names) if names is not None else ())
            return word, x
        if step == max_steps:
            break
        e = rs[i]
        x = la.sub(x, la.scale(2 * la.dot(gs[i], x) / ees[i], e))
        used.append(e)
        used_names.append(labels[i])
    raise WalkError(
        f"no chamber reached after {max_steps} reflections; the roots probably do not "
        "bound a chamber of the group they generate"
    )


def in_closed_chamber(L: Lattice, roots: Sequence[Sequence], x: Sequence) -> bool:
    return all(pair(L, e, x) >= 0 for e in roots)


def interior_probe(L: Lattice, roots: Sequence[Sequence], h: Sequence) -> Vector:
    """A rational point strictly inside the fundamental chamber and positive."""
    h = _positive_reference(L, h)
    rs = normalize_roots(L, roots, h)
    if all(pair(L, e, h) > 0 for e in rs):
        return h
    tight = [e for e in rs if pair(L, e, h) == 0]
    y = _strict_direction(L, tight)
    eps = Fraction(1)
    for _ in range(200):
        x = la.add(h, la.scale(eps, y))
        if pair(L, x, x) > 0 and all(pair(L, e, x) > 0 for e in rs):
            return x
        eps /= 2
    raise LatticeError("could not find an interior point of the fundamental chamber")


def _strict_direction(L: Lattice, tight: Sequence[Vector]) -> Vector:
    # y in the span of the tight roots with pair(e, y) = 1 for each of them
    m = tuple(tuple(pair(L, u, v) for v in tight) for u in tight)
    if la.det(m) != 0:
        c = la.solve(m, (Fraction(1),) * len(tight))
        y = la.zeros(L.rank)
        for ci, e in zip(c, tight):
            y = la.add(y, la.scale(ci, e))
        return y
    a = [la.matvec(L.gram, e) for e in tight]
    for radius in range(1, 4):
        for y in itertools.product(range(-radius, radius + 1), repeat=L.rank):
            if all(la.dot(g, y) > 0 for g in a):
                return la.vec(y)
    raise LatticeError("the fundamental chamber has empty interior")


def weyl_factorize(
    L: Lattice,
    roots: Sequence[Sequence],
    g: Matrix,
    h: Sequence,
    names: Sequence[str] | None = None,
    probe: Sequence | None = None,
) -> tuple[WeylWord, Matrix]:
    """Split ``g = w . b`` with ``w`` a Weyl word and ``b`` fixing the chamber.

    ``g(probe)`` is walked back to the chamber; the walk word ``W`` gives
    ``w = W^{-1}`` and ``b = W . g``.
    """
    g = la.mat(g)
    if not is_isometry(L, g):
        raise LatticeError("g is not an isometry of the lattice")
    h = _positive_reference(L, h)
    if pair(L, la.matvec(g, h), h) <= 0:
        raise LatticeError("g exchanges the two components of the positive cone")
    rs = normalize_roots(L, roots, h)
    a0 = la.vec(probe) if probe is not None else interior_probe(L, rs, h)
    if not all(pair(L, e, a0) > 0 for e in rs):
        raise LatticeError("probe is not interior to the fundamental chamber")
    walk, rep = chamber_walk(L, rs, la.matvec(g, a0), h, names=names)
    b = la.matmul(walk.matrix(L), g)
    if not all(pair(L, e, rep) > 0 for e in rs):
        raise LatticeError("g does not permute the walls of the fundamental chamber")
    return walk.inverse(), b
