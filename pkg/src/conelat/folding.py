"""Finite ADE root systems and the subgroup of the Weyl group fixed by a diagram symmetry."""

from __future__ import annotations

import re
from itertools import permutations
from math import factorial
from typing import Sequence

from . import kernels

LARGE_ORDER = 1_000_000
PERMUTATION_LIMIT = 200_000


class FoldingError(ValueError):
    pass


def parse_type(name: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([ADEade])\s*_?\s*(\d+)\s*", name)
    if not m:
        raise FoldingError(f"cannot parse root system type {name!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if family == "A" and not 1 <= n <= 8:
        raise FoldingError("A_n supported for 1 <= n <= 8")
    if family == "D" and not 4 <= n <= 8:
        raise FoldingError("D_n supported for 4 <= n <= 8")
    if family == "E" and n not in (6, 7, 8):
        raise FoldingError("E_n exists only for n = 6, 7, 8")
    return family, n


def dynkin_edges(family: str, n: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram, Bourbaki numbering shifted to start at 0."""
    if family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E_n: chain 1-3-4-5-..., node 2 attached to node 4
    chain = [0] + list(range(2, n))
    return [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]


def cartan_matrix(name: str) -> list[list[int]]:
    family, n = parse_type(name)
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(family, n):
        c[i][j] = c[j][i] = -1
    return c


def weyl_order(name: str) -> int:
    family, n = parse_type(name)
    if family == "A":
        return factorial(n + 1)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return {6: 51_840, 7: 2_903_040, 8: 696_729_600}[n]


def is_diagram_automorphism(name: str, tau: Sequence[int]) -> bool:
    c = cartan_matrix(name)
    n = len(c)
    if sorted(tau) != list(range(n)):
        return False
    return all(c[tau[i]][tau[j]] == c[i][j] for i in range(n) for j in range(n))


def diagram_automorphisms(name: str) -> list[tuple[int, ...]]:
    n = len(cartan_matrix(name))
    return [p for p in permutations(range(n)) if is_diagram_automorphism(name, p)]


def named_automorphism(name: str, tau: str | Sequence[int]) -> tuple[int, ...]:
    """Resolve ``identity``, ``flip``, ``triality`` or an explicit permutation.

    Explicit permutations may be 0- or 1-based lists or comma strings.
    """
    family, n = parse_type(name)
    if isinstance(tau, str):
        key = tau.strip().lower()
        if key in ("id", "identity", "trivial"):
            perm = tuple(range(n))
        elif key == "flip":
            if family == "A":
                perm = tuple(range(n - 1, -1, -1))
            elif family == "D":
                perm = tuple(range(n - 2)) + (n - 1, n - 2)
            elif n == 6:
                perm = (5, 1, 4, 3, 2, 0)
            else:
                raise FoldingError(f"{family}{n} has no nontrivial diagram symmetry")
        elif key == "triality":
            if (family, n) != ("D", 4):
                raise FoldingError("triality exists only for D4")
            perm = (2, 1, 3, 0)
        else:
            perm = tuple(int(x) for x in key.split(","))
            if min(perm) == 1:
                perm = tuple(x - 1 for x in perm)
    else:
        perm = tuple(int(x) for x in tau)
    if not is_diagram_automorphism(name, perm):
        raise FoldingError(f"{perm} is not a symmetry of the {family}{n} diagram")
    return perm


def roots_of(name: str) -> list[tuple[int, ...]]:
    """All roots in simple-root coordinates, sorted (positives before negatives)."""
    c = cartan_matrix(name)
    n = len(c)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(n):
                pi = sum(c[i][k] * b[k] for k in range(n))
                r = tuple(b[k] - (pi if k == i else 0) for k in range(n))
                if r not in found:
                    found.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(found, key=lambda r: (-(sum(r) > 0), sum(abs(x) for x in r), r))


def reflection_permutations(name: str) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Simple reflections as permutations of the roots, and the root list."""
    c = cartan_matrix(name)
    n = len(c)
    rts = roots_of(name)
    index = {r: k for k, r in enumerate(rts)}
    perms = []
    for i in range(n):
        img = []
        for b in rts:
            pi = sum(c[i][k] * b[k] for k in range(n))
            img.append(index[tuple(b[k] - (pi if k == i else 0) for k in range(n))])
        perms.append(tuple(img))
    return perms, rts


def automorphism_permutation(name: str, tau: Sequence[int]) -> tuple[int, ...]:
    rts = roots_of(name)
    index = {r: k for k, r in enumerate(rts)}
    out = []
    for b in rts:
        img = [0] * len(b)
        for k, x in enumerate(b):
            img[tau[k]] = x
        out.append(index[tuple(img)])
    return tuple(out)


def folded_weyl_order(
    name: str,
    tau: str | Sequence[int] = "identity",
    *,
    allow_large: bool = False,
    method: str = "auto",
    generator_order: Sequence[int] | None = None,
    backend=None,
) -> int:
    """Order of ``{w in W : tau w tau^-1 = w}``.

    ``method='permutation'`` enumerates the whole Weyl group as permutations
    of the roots with hash deduplication; ``method='orbit'`` walks the orbit
    of a regular weight instead and needs no storage.  Groups above one
    million elements require ``allow_large``.
    """
    perm_tau = named_automorphism(name, tau)
    order = weyl_order(name)
    if order > LARGE_ORDER and not allow_large:
        raise FoldingError(
            f"|W({name})| = {order} exceeds {LARGE_ORDER}; pass allow_large to enumerate it"
        )
    if method == "auto":
        method = "permutation" if order <= PERMUTATION_LIMIT else "orbit"
    impl = backend or kernels
    if method == "permutation":
        gens, _ = reflection_permutations(name)
        if generator_order is not None:
            gens = [gens[i] for i in generator_order]
        size, fixed = impl.perm_group_census(gens, automorphism_permutation(name, perm_tau))
    elif method == "orbit":
        c = cartan_matrix(name)
        if generator_order is not None:
            # relabel the nodes; the walk then visits weights in a different order
            g = list(generator_order)
            pos = {v: k for k, v in enumerate(g)}
            c = [[c[g[i]][g[j]] for j in range(len(g))] for i in range(len(g))]
            perm_tau = tuple(pos[perm_tau[g[k]]] for k in range(len(g)))
        size, fixed = impl.orbit_census(c, perm_tau)
    else:
        raise FoldingError(f"unknown method {method!r}")
    if size != order:
        raise AssertionError(f"enumerated {size} elements of W({name}), expected {order}")
    return fixed
