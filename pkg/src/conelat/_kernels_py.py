"""Pure-Python versions of the enumeration kernels.

Same signatures and results as the compiled ``_ckernels`` module.
"""


def perm_group_census(gens, tau):
    """Close a set of permutations under composition.

    ``gens`` are permutations of ``range(m)`` given as tuples, ``tau`` is a
    permutation of the same set.  Returns ``(order, n_commuting)`` where the
    second entry counts elements ``w`` with ``tau w = w tau``.  Elements are
    deduplicated by hashing.
    """
    m = len(tau)
    ident = tuple(range(m))
    seen = {ident}
    frontier = [ident]
    commuting = 0
    tau = tuple(tau)
    while frontier:
        nxt = []
        for w in frontier:
            # w commutes with tau  <=>  w[tau[i]] == tau[w[i]] for all i
            if all(w[tau[i]] == tau[w[i]] for i in range(m)):
                commuting += 1
            for g in gens:
                p = tuple(g[w[i]] for i in range(m))
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return len(seen), commuting


def orbit_census(cartan, tau):
    """Walk the Weyl orbit of the regular dominant weight without storing it.

    Weights are kept as Dynkin labels.  Every non-dominant weight has a
    unique parent obtained by reflecting in its first negative label, which
    turns the orbit into a tree that is traversed depth first.  Returns
    ``(orbit size, number of tau-fixed weights)``; for a regular weight these
    are the group order and the size of the tau-centralizer.
    """
    n = len(cartan)
    rows = [tuple(r) for r in cartan]
    root = (1,) * n
    size = 0
    fixed = 0
    stack = [root]
    while stack:
        mu = stack.pop()
        size += 1
        if all(mu[tau[k]] == mu[k] for k in range(n)):
            fixed += 1
        for i in range(n):
            mi = mu[i]
            if mi <= 0:
                continue
            ri = rows[i]
            child = tuple(mu[k] - mi * ri[k] for k in range(n))
            if all(child[k] >= 0 for k in range(i)):
                stack.append(child)
    return size, fixed
