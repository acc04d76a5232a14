"""Lattices with a rational Gram matrix and exact operations on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

from . import linalg as la
from .linalg import Matrix, Vector


class LatticeError(ValueError):
    """Invalid lattice data or a request the lattice cannot satisfy."""


@dataclass(frozen=True)
class Lattice:
    """A free abelian group of finite rank with a symmetric rational pairing.

    ``named`` maps names to coordinate vectors in the lattice basis; it is
    carried along so that files, CLI arguments and golden outputs can refer
    to classes by name.
    """

    gram: Matrix
    label: str = ""
    named: tuple = field(default=(), compare=False)
    isometries: tuple = field(default=(), compare=False)

    def __post_init__(self):
        g = la.mat(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(r) != n for r in g):
            raise LatticeError("Gram matrix must be square and nonempty")
        if la.transpose(g) != g:
            raise LatticeError("Gram matrix is not symmetric")
        if la.det(g) == 0:
            raise LatticeError("Gram matrix is degenerate")
        named = self.named.items() if isinstance(self.named, Mapping) else self.named
        named = tuple((k, la.vec(v)) for k, v in named)
        for k, v in named:
            if len(v) != n:
                raise LatticeError(f"named vector {k!r} has length {len(v)}, expected {n}")
        object.__setattr__(self, "named", named)
        isos = self.isometries.items() if isinstance(self.isometries, Mapping) else self.isometries
        object.__setattr__(self, "isometries", tuple((k, la.mat(m)) for k, m in isos))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_integral(self) -> bool:
        return la.is_integral(self.gram)

    @property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def vector(self, name: str) -> Vector:
        for k, v in self.named:
            if k == name:
                return v
        raise KeyError(name)

    def isometry(self, name: str) -> Matrix:
        for k, m in self.isometries:
            if k == name:
                return m
        raise KeyError(name)

    def name_of(self, v: Sequence) -> str | None:
        v = la.vec(v)
        for k, w in self.named:
            if w == v:
                return k
        return None

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(int(j == i)) for j in range(self.rank))


def _check(L: Lattice, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != L.rank:
            raise LatticeError(f"vector of length {len(v)} in a lattice of rank {L.rank}")


def pair(L: Lattice, u: Sequence, v: Sequence) -> Fraction:
    """The bilinear pairing ``u^T G v``."""
    _check(L, u, v)
    return la.dot(la.vec(u), la.matvec(L.gram, la.vec(v)))


def square(L: Lattice, v: Sequence) -> Fraction:
    return pair(L, v, v)


def congruence_diagonal(gram: Matrix) -> list[Fraction]:
    """Diagonal entries of a symmetric matrix after exact congruence reduction."""
    a = [list(map(la.frac, r)) for r in gram]
    n = len(a)
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                # x_k <- x_k + x_j makes the pivot 2 a_kj + a_jj = 2 a_kj
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for r in a:
                    r[k] += r[j]
        p = a[k][k]
        diag.append(p)
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for r in range(n):
                    a[r][i] -= f * a[r][k]
    return diag


def signature(L: Lattice) -> tuple[int, int]:
    d = congruence_diagonal(L.gram)
    return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0)


def dual_class(L: Lattice, c: Sequence, *, to_functional: bool = False) -> Vector:
    """Convert between a functional (vector of pairings) and the class representing it.

    By default ``c`` is read as a functional and the class ``G^{-1} c`` is
    returned, i.e. the unique ``x`` with ``pair(x, b) = c(b)``.  With
    ``to_functional=True`` the opposite direction ``G c`` is taken.
    """
    _check(L, c)
    if to_functional:
        return la.matvec(L.gram, la.vec(c))
    return la.solve(L.gram, la.vec(c))


def divisibility(L: Lattice, v: Sequence) -> int:
    """gcd of the pairings of ``v`` with the whole lattice."""
    _check(L, v)
    if not L.is_integral:
        raise LatticeError("divisibility needs an integral Gram matrix")
    if not la.is_integral(la.vec(v)):
        raise LatticeError("divisibility needs an integral vector")
    if la.is_zero(v):
        raise LatticeError("divisibility of the zero vector is undefined")
    return reduce(gcd, (int(x) for x in la.matvec(L.gram, la.vec(v))), 0)


def is_primitive(v: Sequence) -> bool:
    v = la.vec(v)
    return la.is_integral(v) and la.content([int(x) for x in v]) == 1


@dataclass(frozen=True)
class Sublattice:
    """A sublattice given by basis columns in the ambient coordinates."""

    basis: tuple  # tuple of integer vectors
    gram: Matrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def embedding(self) -> Matrix:
        return la.from_columns(self.basis)


def orthogonal_complement(L: Lattice, S: Sequence[Sequence] = ()) -> Sublattice:
    """The saturated sublattice ``{w : pair(w, s) = 0 for s in S}``."""
    _check(L, *S)
    rows = [la.clear_denominators(la.matvec(L.gram, la.vec(s))) for s in S]
    rows = [r for r in rows if any(r)]
    ker = la.integer_kernel(rows, L.rank)
    basis = tuple(la.hnf_rows(ker))
    basis = tuple(tuple(Fraction(x) for x in b) for b in basis)
    gram = tuple(tuple(pair(L, u, v) for v in basis) for u in basis)
    return Sublattice(basis, gram)


def is_isometry(L: Lattice, M: Matrix) -> bool:
    M = la.mat(M)
    if len(M) != L.rank or any(len(r) != L.rank for r in M):
        raise LatticeError("matrix size does not match the lattice rank")
    if not la.is_integral(M):
        return False
    if la.matmul(la.matmul(la.transpose(M), L.gram), M) != L.gram:
        return False
    return abs(la.det(M)) == 1


def apply(M: Matrix, v: Sequence) -> Vector:
    return la.matvec(M, la.vec(v))
