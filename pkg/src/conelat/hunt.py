"""Bounded enumeration of primitive negative classes (wall candidates)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .cones import Cone, ConeError, wall_meets_cone
from .exactlat import Lattice, LatticeError, divisibility, pair, signature
from .linalg import Vector
from .roots import lex_positive


class HuntError(LatticeError):
    pass


@dataclass(frozen=True)
class HuntQuery:
    lattice: Lattice
    h: Vector
    B: Fraction
    M: Fraction

    def __post_init__(self):
        object.__setattr__(self, "h", la.vec(self.h))
        object.__setattr__(self, "B", la.frac(self.B))
        object.__setattr__(self, "M", la.frac(self.M))
        if self.B <= 0:
            raise HuntError("square bound B must be positive")
        if self.M < 0:
            raise HuntError("height bound M must be nonnegative")
        if pair(self.lattice, self.h, self.h) <= 0:
            raise HuntError("h must have positive square")


@dataclass(frozen=True)
class Candidate:
    coords: tuple
    square: Fraction
    height: Fraction

    def to_json(self) -> dict:
        return {
            "coords": [la.fmt(x) for x in self.coords],
            "square": la.fmt(self.square),
            "height": la.fmt(self.height),
        }


# -- exact bounds ----------------------------------------------------------------


def floor_shift_sqrt(c: Fraction, r: Fraction) -> int:
    """``floor(c + sqrt(r))`` for rationals ``c`` and ``r >= 0``, exactly."""
    if r < 0:
        raise ValueError("negative radicand")
    s = math.isqrt(r.numerator * r.denominator) // r.denominator if r else 0
    t = math.floor(c) + s

    def ok(t: int) -> bool:
        d = t - c
        return d <= 0 or d * d <= r

    while ok(t + 1):
        t += 1
    while not ok(t):
        t -= 1
    return t


def ceil_shift_sqrt(c: Fraction, r: Fraction) -> int:
    """``ceil(c - sqrt(r))``."""
    return -floor_shift_sqrt(-c, r)


def sqrt_upper(x: Fraction, denominator_bits: int = 20) -> Fraction:
    """A rational upper bound for ``sqrt(x)``.

    Newton steps from above never undershoot; the result is rounded up to a
    dyadic denominator and the overshoot is checked.
    """
    x = la.frac(x)
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0)
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    den = 1 << denominator_bits
    s = Fraction(math.isqrt(math.ceil(x)) + 1)
    for _ in range(64):
        nxt = (s + x / s) / 2
        done = s - nxt < Fraction(1, den)
        s = nxt
        if done:
            break
    s = Fraction(math.ceil(s * den), den)
    while s * s < x:
        s += Fraction(1, den)
    return s


def ldl(a) -> tuple[list[Fraction], list[list[Fraction]]]:
    """``a = sum_i q_i (y_i + sum_{j>i} mu_ij y_j)^2`` for positive definite ``a``."""
    m = len(a)
    q = [Fraction(0)] * m
    mu = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        q[i] = a[i][i] - sum(mu[k][i] ** 2 * q[k] for k in range(i))
        if q[i] <= 0:
            raise HuntError("form on the fiber is not positive definite")
        for j in range(i + 1, m):
            mu[i][j] = (a[i][j] - sum(mu[k][i] * mu[k][j] * q[k] for k in range(i))) / q[i]
    return q, mu


def short_vectors(a, center: Sequence[Fraction], bound: Fraction):
    """All integer ``t`` with ``(t - center)^T a (t - center) <= bound``.

    Depth-first over coordinates from last to first, with the range of each
    coordinate cut out exactly from the remaining budget.
    """
    m = len(a)
    if m == 0:
        yield ()
        return
    q, mu = ldl(a)
    t = [0] * m
    y = [Fraction(0)] * m

    def rec(i: int, budget: Fraction):
        c = center[i] - sum(mu[i][j] * y[j] for j in range(i + 1, m))
        r = budget / q[i]
        lo, hi = ceil_shift_sqrt(c, r), floor_shift_sqrt(c, r)
        for ti in range(lo, hi + 1):
            t[i] = ti
            y[i] = ti - center[i]
            z = ti - c
            rest = budget - q[i] * z * z
            if i == 0:
                yield tuple(t)
            else:
                yield from rec(i - 1, rest)

    yield from rec(m - 1, la.frac(bound))


def _particular(c: Sequence[int], k: int) -> tuple[int, ...] | None:
    """An integer ``v`` with ``c . v = k``, or None."""
    # extended gcd folded over the coordinates
    g, coef = 0, [0] * len(c)
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        if g == 0:
            g, coef[i] = abs(ci), (1 if ci > 0 else -1)
            continue
        x0, x1, a, b = 1, 0, g, abs(ci)
        y0, y1 = 0, 1
        while b:
            qq = a // b
            a, b = b, a - qq * b
            x0, x1 = x1, x0 - qq * x1
            y0, y1 = y1, y0 - qq * y1
        coef = [x0 * u for u in coef]
        coef[i] = y0 * (1 if ci > 0 else -1)
        g = a
    if g == 0 or k % g:
        return None
    return tuple(u * (k // g) for u in coef)


def _solve_in_span(cols: Sequence[Sequence], rhs: Sequence) -> Vector:
    """Solve ``sum_j x_j cols[j] = rhs`` for a consistent system with independent columns."""
    m = la.from_columns(cols)
    aug = tuple(tuple(r) + (la.frac(b),) for r, b in zip(m, rhs))
    red, piv = la.rref(aug)
    k = len(cols)
    if k in piv:
        raise HuntError("inconsistent fiber system")
    return tuple(red[i][k] for i in range(k))


def _validate(L: Lattice) -> None:
    if not L.is_integral:
        raise HuntError("enumeration needs an integral Gram matrix")
    plus, minus = signature(L)
    if plus != 1:
        raise HuntError(f"enumeration needs signature (1, n); got ({plus}, {minus})")


def enum_negative(q: HuntQuery) -> list[Candidate]:
    """Primitive ``v`` with ``-B <= v^2 < 0`` and ``0 <= pair(v, h) <= M``.

    Heights are scanned fiber by fiber.  On the fiber ``pair(v, h) = k`` the
    pairing is ``k^2/h^2`` plus a negative definite form in the coordinates
    of ``h^perp``, so the fiber reduces to a short-vector search around the
    point ``k h / h^2``.  For ``k = 0`` only the lexicographically positive
    member of each pair ``+-v`` is kept.
    """
    L = q.lattice
    _validate(L)
    h = q.h
    if not la.is_integral(h):
        raise HuntError("h must be an integral vector")
    hh = pair(L, h, h)
    c = [int(x) for x in la.matvec(L.gram, h)]
    kernel = la.integer_kernel([c], L.rank)
    kcols = [la.vec(b) for b in kernel]
    a = tuple(tuple(-pair(L, u, v) for v in kcols) for u in kcols)
    d = divisibility(L, h)
    out = []
    for k in range(0, math.floor(q.M) + 1):
        if k % d:
            continue
        base = la.vec(_particular(c, k))
        target = la.scale(Fraction(k) / hh, h)
        center = _solve_in_span(kcols, la.sub(target, base)) if kcols else ()
        kk = Fraction(k * k) / hh
        for t in short_vectors(a, center, q.B + kk):
            v = base
            for ti, col in zip(t, kcols):
                if ti:
                    v = la.add(v, la.scale(ti, col))
            sq = pair(L, v, v)
            if not (-q.B <= sq < 0):
                continue
            iv = tuple(int(x) for x in v)
            if la.content(iv) != 1:
                continue
            if k == 0 and not lex_positive(iv):
                continue
            out.append(Candidate(iv, sq, Fraction(k)))
    out.sort(key=lambda cd: (cd.height, -cd.square, cd.coords))
    return out


def cone_bound_squared(L: Lattice, cone: Cone, h: Sequence, B) -> Fraction:
    """Exact ``B * max_r (pair(h, r)^2 / r^2 - h^2)`` over the generators, clamped at 0."""
    h = la.vec(h)
    if not cone.generators:
        raise ConeError("cone bound needs generators")
    hh = pair(L, h, h)
    best = Fraction(0)
    for r in cone.generators:
        rr = pair(L, r, r)
        if rr <= 0:
            raise HuntError("cone generators must have strictly positive square")
        best = max(best, pair(L, h, r) ** 2 / rr - hh)
    return la.frac(B) * best


def cone_bound(L: Lattice, cone: Cone, h: Sequence, B, widen=1) -> Fraction:
    """Height bound for negative classes of square ``>= -B`` whose wall meets the cone.

    If ``v`` is orthogonal to ``x`` in the cone, projecting ``v`` to the
    plane spanned by ``h`` and ``x`` gives
    ``pair(v, h)^2 <= B * (pair(h, x)^2 / x^2 - h^2)``; the right side is a
    monotone function of the hyperbolic distance from ``h`` to ``x``, which
    is convex, so its maximum over the cone sits on a generator.  ``widen``
    multiplies the result as a safety margin.
    """
    widen = la.frac(widen)
    if widen < 1:
        raise HuntError("widen factor must be at least 1")
    return sqrt_upper(cone_bound_squared(L, cone, h, B)) * widen


def walls_meeting(L: Lattice, cone: Cone, B, h: Sequence | None = None, widen=1) -> list[Candidate]:
    """Candidates from ``enum_negative`` whose orthogonal hyperplane meets the cone."""
    h = la.vec(h) if h is not None else cone.reference
    M = cone_bound(L, cone, h, B, widen)
    found = enum_negative(HuntQuery(L, h, B, M))
    return [c for c in found if wall_meets_cone(L, c.coords, cone)]
