"""Random instance generators and independent oracles shared by the tests.

Oracles here deliberately avoid the package's own algorithms: signatures
come from floating eigenvalues, short vectors from a brute-force numpy box
scan, saturation from sympy's Smith normal form.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np

from conelat import linalg as la
from conelat.exactlat import Lattice, pair
from conelat.hunt import HuntQuery, enum_negative
from conelat.zariski import is_negative_definite


# -- lattices -------------------------------------------------------------------


def random_unimodular(rng: random.Random, n: int, steps: int = 3):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        for row in m:
            row[j] += c * row[i]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        for row in m:
            row[i], row[j] = row[j], row[i]
    return m


def congruent(gram, u):
    g = np.array(gram, dtype=object)
    u = np.array(u, dtype=object)
    return (u.T @ g @ u).tolist()


def hyperbolic_base(rng: random.Random, rank: int, even: bool = True):
    """A block-diagonal Gram of signature ``(1, rank - 1)``."""
    scale = 2 if even else 1
    kind = rng.choice(("diag", "U", "pell")) if rank >= 2 else "diag"
    blocks = []
    if kind == "diag":
        blocks.append([[scale * rng.randint(1, 3)]])
        used = 1
    elif kind == "U":
        blocks.append([[0, 1], [1, 0]])
        used = 2
    else:
        blocks.append([[2, 1], [1, -2]])
        used = 2
    while used < rank:
        if rank - used >= 2 and rng.random() < 0.3:
            blocks.append([[-2, 1], [1, -2]])
            used += 2
        else:
            blocks.append([[-scale * rng.randint(1, 2)]])
            used += 1
    g = [[0] * rank for _ in range(rank)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                g[at + i][at + j] = x
        at += len(b)
    return g


def random_hyperbolic_lattice(rng: random.Random, rank: int | None = None, even: bool = True) -> Lattice:
    rank = rank or rng.randint(2, 4)
    g = hyperbolic_base(rng, rank, even)
    return Lattice(congruent(g, random_unimodular(rng, rank, rng.randint(0, 3))))


def random_vector(rng: random.Random, n: int, box: int = 3):
    return tuple(rng.randint(-box, box) for _ in range(n))


def random_positive(rng: random.Random, L: Lattice, h=None, box: int = 4, tries: int = 3000):
    """A random integral vector of positive square, in the component of ``h`` if given."""
    for attempt in range(tries):
        v = random_vector(rng, L.rank, box * (1 + 3 * attempt // tries))
        if pair(L, v, v) > 0:
            if h is None:
                return la.vec(v)
            s = pair(L, v, h)
            if s != 0:
                return la.vec(v) if s > 0 else la.neg(la.vec(v))
    raise RuntimeError("no positive vector found")


def random_negative(rng: random.Random, L: Lattice, box: int = 3, tries: int = 2000):
    for _ in range(tries):
        v = random_vector(rng, L.rank, box)
        if pair(L, v, v) < 0:
            return la.vec(v)
    raise RuntimeError("no negative vector found")


# -- oracles --------------------------------------------------------------------


def float_signature(gram) -> tuple[int, int]:
    ev = np.linalg.eigvalsh(np.array([[float(x) for x in r] for r in gram]))
    return int((ev > 0).sum()), int((ev < 0).sum())


def box_oracle(gram, h, B: int, M: int, max_points: int = 400_000):
    """All primitive ``v`` with ``-B <= v^2 < 0`` and ``|pair(v, h)| <= M`` by brute force.

    The majorant ``F(v) = 2 pair(v,h)^2 / h^2 - v^2`` is positive definite
    and at most ``B + 2 M^2 / h^2`` on every candidate, which bounds each
    coordinate by ``sqrt(R * (F^-1)_ii)``.  Returns ``None`` when the box
    would be larger than ``max_points``.
    """
    G = np.array([[int(x) for x in r] for r in gram], dtype=np.int64)
    h = np.array([int(x) for x in h], dtype=np.int64)
    c = G @ h
    hh = int(h @ c)
    F = 2.0 * np.outer(c, c) / hh - G
    R = B + 2.0 * M * M / hh
    Finv = np.linalg.inv(F)
    radius = [int(math.floor(math.sqrt(R * Finv[i, i]) + 1e-9)) + 1 for i in range(len(h))]
    size = 1
    for r in radius:
        size *= 2 * r + 1
    if size > max_points:
        return None
    axes = [np.arange(-r, r + 1, dtype=np.int64) for r in radius]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(h))
    sq = np.einsum("ij,jk,ik->i", pts, G, pts)
    ht = pts @ c
    keep = (sq < 0) & (sq >= -B) & (np.abs(ht) <= M)
    out = {}
    for v, s, k in zip(pts[keep], sq[keep], ht[keep]):
        if math.gcd(*map(int, v)) != 1:
            continue
        v = tuple(int(x) for x in v)
        if k < 0 or (k == 0 and next(x for x in v if x) < 0):
            continue
        out[v] = (int(s), int(k))
    return out


def pairwise_coxeter_ok(L: Lattice, roots) -> bool:
    """Pairings of distinct ``-2`` roots lie in ``{0, 1}`` or are at least 2."""
    for a, b in itertools.combinations(roots, 2):
        p = pair(L, a, b)
        if not (p in (0, 1) or p >= 2):
            return False
    return True


def chamber_instance(rng: random.Random, max_roots: int = 5, tries: int = 200):
    """``(L, roots, h, alpha)`` with ``-2`` roots bounding a Coxeter chamber around ``h``."""
    for _ in range(tries):
        L = random_hyperbolic_lattice(rng, rng.randint(2, 4), even=True)
        h = random_positive(rng, L, box=3)
        found = enum_negative(HuntQuery(L, h, 2, rng.randint(2, 8)))
        cands = [la.vec(c.coords) for c in found if c.square == -2 and c.height > 0]
        rng.shuffle(cands)
        chosen = []
        for e in cands:
            if len(chosen) >= max_roots:
                break
            if pairwise_coxeter_ok(L, chosen + [e]):
                chosen.append(e)
        if not chosen:
            continue
        alpha = random_positive(rng, L, h, box=6)
        return L, chosen, h, alpha
    raise RuntimeError("could not build a chamber instance")


def zariski_instance(rng: random.Random, max_roots: int = 6, tries: int = 500):
    """``(L, D, roots)`` in a lattice with basis ``h, E_1, ..., E_k``.

    Half the instances have a negative definite root block (any ``D`` then
    decomposes); the rest use ``D = nef + effective`` over a root block that
    may be semidefinite or hyperbolic.
    """
    for _ in range(tries):
        k = rng.randint(1, max_roots)
        definite = rng.random() < 0.5
        n = k + 1
        g = [[0] * n for _ in range(n)]
        g[0][0] = rng.choice((2, 4, 6))
        for i in range(1, n):
            g[0][i] = g[i][0] = rng.randint(0, 2)
            g[i][i] = rng.choice((-2, -2, -4)) if definite else -2
        for i in range(1, n):
            for j in range(i + 1, n):
                x = rng.choice((0, 0, 1)) if definite else rng.choice((0, 0, 1, 2))
                g[i][j] = g[j][i] = x
        try:
            L = Lattice(g)
        except ValueError:
            continue
        roots = [la.vec([int(i == j) for j in range(n)]) for i in range(1, n)]
        block = [r[1:] for r in g[1:]]
        if definite:
            if not is_negative_definite(block):
                continue
            D = la.vec([rng.randint(-3, 5)] + [rng.randint(-4, 4) for _ in range(k)])
        else:
            base = [rng.randint(1, 3)] + [0] * k
            D = la.vec([base[0]] + [rng.randint(0, 3) for _ in range(k)])
        return L, D, roots
    raise RuntimeError("could not build a Zariski instance")


def smith_saturated(basis, n: int) -> bool:
    """Whether the rows span a saturated sublattice of ``Z^n`` (all invariant factors 1)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not basis:
        return True
    m = Matrix([[int(x) for x in b] for b in basis])
    snf = smith_normal_form(m, domain=ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    return all(d == 1 for d in diag)


def frac_matrix(m):
    return tuple(tuple(Fraction(x) for x in r) for r in m)
