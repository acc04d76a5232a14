"""Small exact linear algebra over ``Fraction``.

Vectors are tuples, matrices are tuples of row tuples.  A matrix acts on
column vectors, so the image of the ``j``-th basis vector is column ``j``.
Everything here is deliberately naive; the ranks involved are tiny.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def vecmat(v: Sequence, m: Matrix) -> Vector:
    return tuple(dot(v, col) for col in transpose(m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Sequence) -> Vector:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def columns(m: Matrix) -> list[Vector]:
    return list(transpose(m))


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*cols)) if cols else ()


def is_integral(xs) -> bool:
    if xs and isinstance(xs[0], tuple):
        return all(is_integral(r) for r in xs)
    return all(frac(a).denominator == 1 for a in xs)


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(map(frac, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}`` over the rationals."""
    if not m:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    n = len(m[0])
    a, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -a[i][f]
        basis.append(tuple(x))
    return basis


def det(m: Matrix) -> Fraction:
    a = [list(map(frac, r)) for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = tuple(tuple(r) + identity(n)[i] for i, r in enumerate(m))
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in a)


def solve(m: Matrix, b: Sequence) -> Vector:
    """Solve a square nonsingular system ``m x = b``."""
    n = len(m)
    aug = tuple(tuple(r) + (frac(bi),) for r, bi in zip(m, b))
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ZeroDivisionError("system is singular")
    return tuple(a[i][n] for i in range(n))


def leading_minors(m: Matrix) -> list[Fraction]:
    return [det(tuple(r[:k] for r in m[:k])) for k in range(1, len(m) + 1)]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to an integer vector (not made primitive)."""
    den = reduce(lcm, (frac(x).denominator for x in v), 1)
    return tuple(int(frac(x) * den) for x in v)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the same ray as ``v``."""
    w = clear_denominators(v)
    g = reduce(gcd, w, 0)
    if g == 0:
        return w
    return tuple(x // g for x in w)


def content(v: Sequence[int]) -> int:
    return reduce(gcd, (int(x) for x in v), 0)


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Z-basis of ``{x in Z^n : A x = 0}`` for an integer matrix ``A``.

    Unimodular column operations bring ``A`` to column echelon form while
    tracking the transform ``U``; columns of ``U`` that end up over zero
    columns of ``A U`` span the kernel, and that basis is automatically
    saturated.
    """
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i: int, j: int, q: int) -> None:
        # column i -= q * column j
        for r in a:
            r[i] -= q * r[j]
        for r in u:
            r[i] -= q * r[j]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    c = 0
    for row in range(len(a)):
        if c >= n:
            break
        while True:
            nz = [j for j in range(c, n) if a[row][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(a[row][j]))
            swap(c, piv)
            done = True
            for j in range(c + 1, n):
                if a[row][j] != 0:
                    colop(j, c, a[row][j] // a[row][c])
                    if a[row][j] != 0:
                        done = False
            if done:
                c += 1
                break
    return [tuple(u[i][j] for i in range(n)) for j in range(c, n)]


def hnf_rows(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row Hermite normal form of the row span (zero rows dropped).

    Used to give lattice bases a canonical, reproducible form.
    """
    a = [list(map(int, v)) for v in vectors]
    if not a:
        return []
    n = len(a[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        clean = False
            if clean:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
        if r == len(a):
            break
    return [tuple(row) for row in a[:r]]


def fmt(x) -> str:
    """Exact string form used in every serialized output."""
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
