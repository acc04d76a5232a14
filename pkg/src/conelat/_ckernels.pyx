# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference versions."""

from libc.stdlib cimport malloc, free


def perm_group_census(gens, tau):
    cdef Py_ssize_t m = len(tau)
    cdef Py_ssize_t ng = len(gens)
    cdef Py_ssize_t i, j, k
    cdef int *g = <int *> malloc(ng * m * sizeof(int))
    cdef int *t = <int *> malloc(m * sizeof(int))
    cdef unsigned char *w = <unsigned char *> malloc(m)
    cdef unsigned char *p = <unsigned char *> malloc(m)
    cdef long long commuting = 0
    cdef bint ok
    if m > 255:
        raise ValueError("permutation degree above 255 is not supported")
    try:
        for j in range(ng):
            for i in range(m):
                g[j * m + i] = gens[j][i]
        for i in range(m):
            t[i] = tau[i]
        ident = bytes(range(m))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for wb in frontier:
                for i in range(m):
                    w[i] = (<bytes> wb)[i]
                ok = True
                for i in range(m):
                    if w[t[i]] != t[w[i]]:
                        ok = False
                        break
                if ok:
                    commuting += 1
                for j in range(ng):
                    for i in range(m):
                        p[i] = g[j * m + w[i]]
                    pb = p[:m]
                    if pb not in seen:
                        seen.add(pb)
                        nxt.append(pb)
            frontier = nxt
        return len(seen), commuting
    finally:
        free(g)
        free(t)
        free(w)
        free(p)


def orbit_census(cartan, tau):
    cdef int n = len(cartan)
    cdef int depth_cap = 512
    cdef long long *c = <long long *> malloc(n * n * sizeof(long long))
    cdef int *t = <int *> malloc(n * sizeof(int))
    # explicit DFS stack: weights and next child index per level
    cdef long long *stack = <long long *> malloc(depth_cap * n * sizeof(long long))
    cdef int *nexti = <int *> malloc(depth_cap * sizeof(int))
    cdef int depth, i, k
    cdef long long mi
    cdef long long size = 0, fixed = 0
    cdef long long *mu
    cdef long long *child
    cdef bint ok
    try:
        for i in range(n):
            t[i] = tau[i]
            for k in range(n):
                c[i * n + k] = cartan[i][k]
        for k in range(n):
            stack[k] = 1
        nexti[0] = 0
        depth = 0
        size = 1
        fixed = 1
        while depth >= 0:
            mu = stack + depth * n
            i = nexti[depth]
            if i >= n:
                depth -= 1
                continue
            nexti[depth] = i + 1
            mi = mu[i]
            if mi <= 0:
                continue
            if depth + 1 >= depth_cap:
                raise OverflowError("orbit tree deeper than expected")
            child = stack + (depth + 1) * n
            for k in range(n):
                child[k] = mu[k] - mi * c[i * n + k]
            ok = True
            for k in range(i):
                if child[k] < 0:
                    ok = False
                    break
            if not ok:
                continue
            size += 1
            ok = True
            for k in range(n):
                if child[t[k]] != child[k]:
                    ok = False
                    break
            if ok:
                fixed += 1
            depth += 1
            nexti[depth] = 0
        return size, fixed
    finally:
        free(c)
        free(t)
        free(stack)
        free(nexti)
