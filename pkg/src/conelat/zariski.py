"""Numerical Zariski decomposition against a finite set of negative classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .exactlat import Lattice, LatticeError, pair
from .linalg import Vector


class ZariskiError(LatticeError):
    pass


@dataclass(frozen=True)
class ZariskiDecomposition:
    """``D = P + sum(coeffs[i] * roots[i])`` with ``P`` nef against the roots."""

    D: Vector
    P: Vector
    roots: tuple
    coeffs: tuple  # one nonnegative rational per root, zero off the support

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.coeffs) if a != 0)

    @property
    def N(self) -> Vector:
        return la.sub(self.D, self.P)

    def coefficient(self, root: Sequence) -> Fraction:
        return self.coeffs[self.roots.index(la.vec(root))]


def is_negative_definite(gram) -> bool:
    """Sylvester's criterion: ``(-1)^k`` times the k-th leading minor is positive."""
    return all((-1) ** (k + 1) * m > 0 for k, m in enumerate(la.leading_minors(gram)))


def _validate(L: Lattice, roots: Sequence[Sequence]) -> list[Vector]:
    rs = [la.vec(e) for e in roots]
    for e in rs:
        if len(e) != L.rank:
            raise ZariskiError("root has the wrong length")
        if pair(L, e, e) >= 0:
            raise ZariskiError("every root must have negative square")
    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            if pair(L, rs[i], rs[j]) < 0:
                raise ZariskiError(f"roots {i} and {j} pair negatively")
    return rs


def solve_support(L: Lattice, D: Vector, rs: Sequence[Vector], S: Sequence[int]):
    """Coefficients on ``S`` making ``D - N`` orthogonal to the roots in ``S``.

    Returns ``None`` when the support Gram matrix is not negative definite.
    """
    if not S:
        return {}
    g = tuple(tuple(pair(L, rs[i], rs[j]) for j in S) for i in S)
    if not is_negative_definite(g):
        return None
    b = [pair(L, D, rs[j]) for j in S]
    a = la.solve(g, b)
    return dict(zip(S, a))


def _assemble(L, D, rs, coeffs) -> ZariskiDecomposition:
    P = D
    for i, a in coeffs.items():
        P = la.sub(P, la.scale(a, rs[i]))
    full = tuple(coeffs.get(i, Fraction(0)) for i in range(len(rs)))
    return ZariskiDecomposition(D, P, tuple(rs), full)


def zariski_decompose(L: Lattice, D: Sequence, roots: Sequence[Sequence]) -> ZariskiDecomposition:
    """Decompose ``D`` by growing the support in batches.

    Start from the roots pairing negatively with ``D``; after each solve add
    every root that pairs negatively with the current positive part.  With
    nonnegative off-diagonal pairings the coefficients never go negative and
    the support only grows.
    """
    D = la.vec(D)
    if len(D) != L.rank:
        raise ZariskiError("class has the wrong length")
    rs = _validate(L, roots)
    S = sorted(i for i, e in enumerate(rs) if pair(L, D, e) < 0)
    while True:
        coeffs = solve_support(L, D, rs, S)
        if coeffs is None:
            raise ZariskiError(
                "support Gram matrix is not negative definite; the class has no "
                "decomposition against these roots"
            )
        if any(a < 0 for a in coeffs.values()):
            raise AssertionError("negative coefficient in a Zariski support")
        dec = _assemble(L, D, rs, coeffs)
        grow = [j for j in range(len(rs)) if j not in S and pair(L, dec.P, rs[j]) < 0]
        if not grow:
            return dec
        S = sorted(S + grow)


def decompose_by_subsets(L: Lattice, D: Sequence, roots: Sequence[Sequence]):
    """Reference decomposition by trying every support.

    A support is admissible when its Gram matrix is negative definite, all
    its coefficients are strictly positive and no other root pairs
    negatively with the positive part.  Returns the list of admissible
    decompositions (exactly one for valid input).
    """
    from itertools import combinations

    D = la.vec(D)
    rs = [la.vec(e) for e in roots]
    found = []
    for k in range(len(rs) + 1):
        for S in combinations(range(len(rs)), k):
            coeffs = solve_support(L, D, rs, S)
            if coeffs is None or any(a <= 0 for a in coeffs.values()):
                continue
            dec = _assemble(L, D, rs, coeffs)
            if all(pair(L, dec.P, rs[j]) >= 0 for j in range(len(rs)) if j not in S):
                found.append(dec)
    return found


def se_membership(L: Lattice, alpha: Sequence, ell: Sequence, roots: Sequence[Sequence]) -> bool:
    """Whether ``alpha`` pairs strictly positively with the negative class ``ell``.

    ``ell`` is decomposed against ``roots``; when the positive part pairs
    nonnegatively with ``alpha`` the pairing is bounded below by the pairing
    with the negative part, which is checked along the way.
    """
    alpha, ell = la.vec(alpha), la.vec(ell)
    if pair(L, ell, ell) >= 0:
        raise ZariskiError("ell must have negative square")
    if pair(L, alpha, alpha) <= 0:
        raise ZariskiError("alpha must be positive")
    dec = zariski_decompose(L, ell, roots)
    total = pair(L, alpha, ell)
    if pair(L, alpha, dec.P) >= 0 and total < pair(L, alpha, dec.N):
        raise AssertionError("pairing with ell fell below the pairing with its negative part")
    return total > 0
