import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conelat import linalg as la
from conelat.cones import (
    BOUNDARY,
    INTERIOR,
    OUTSIDE,
    Cone,
    ConeError,
    contains,
    facets_of,
    fundamental_exceptional_chamber,
    member,
    rays_of,
    subdivide,
    wall_meets_cone,
)
from conelat.exactlat import Lattice, pair
from conelat.zariski import zariski_decompose

from .helpers import chamber_instance, random_hyperbolic_lattice, random_positive

K3 = Lattice([[-2, 1, 1], [1, 0, 0], [1, 0, -2]])
H = (1, 3, 0)
S, E = (1, 0, 0), (0, 0, 1)


def test_facets_and_rays_of_octant():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    facets = facets_of(rays, 3)
    assert sorted(facets) == sorted(rays)
    assert sorted(rays_of(facets, 3)) == sorted(rays)


def test_facets_of_square_cone_drop_interior_generator():
    rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, 1)]
    facets = facets_of(rays, 3)
    assert len(facets) == 4
    assert sorted(rays_of(facets, 3)) == sorted(r for r in rays if r != (0, 0, 1))


def test_contains_three_way():
    L = Lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]])
    C = Cone.from_generators(L, [(2, 1, 0), (2, 0, 1), (2, 0, 0)])
    assert contains(C, (6, 1, 1)) == INTERIOR
    assert contains(C, (2, 1, 0)) == BOUNDARY
    assert contains(C, (2, -1, 0)) == OUTSIDE
    assert contains(C, (0, 0, 0)) == BOUNDARY


def test_flat_cone_relative_interior():
    L = Lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]])
    C = Cone.from_generators(L, [(2, 1, 0), (2, -1, 0)])
    assert contains(C, (2, 0, 0)) == INTERIOR
    assert contains(C, (2, 0, 1)) == OUTSIDE


def test_non_salient_generators_rejected():
    L = Lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]])
    with pytest.raises(ConeError):
        contains(Cone.from_generators(L, [(1, 1, 0), (-1, -1, 0), (2, 0, 1)], reference=(1, 0, 0)), (1, 0, 0))


def test_positive_cone_marker():
    P = fundamental_exceptional_chamber(K3, [], H)
    assert P.positive_cone and not P.halfspaces
    assert member(P, H)
    assert not member(P, la.neg(la.vec(H)))
    assert not member(P, (0, 1, 0))  # isotropic: on the boundary


def test_fundamental_chamber_strictness():
    FE = fundamental_exceptional_chamber(K3, [S, (0, 0, -1)], H)
    assert all(FE.strict)
    assert member(FE, H)
    rep = (1, 4, -1)
    assert pair(K3, S, rep) == 1 and pair(K3, E, rep) == 3
    assert member(FE, rep)
    on_wall = (2, 4, 1)  # pair with e is 0
    assert pair(K3, E, on_wall) == 0
    assert contains(FE, on_wall) == BOUNDARY
    assert not member(FE, on_wall)


def test_json_round_trip():
    C = Cone.from_generators(K3, [(1, 3, 0), (1, 4, -1)]).with_halfspaces()
    back = Cone.from_json(K3, C.to_json())
    assert back.generators == C.generators
    assert back.halfspaces == C.halfspaces


def test_wall_meets_cone():
    L = Lattice([[2, 0], [0, -2]])
    C = Cone.from_generators(L, [(2, 1), (2, -1)])
    assert wall_meets_cone(L, (0, 1), C)
    assert not wall_meets_cone(L, (2, 3), C)


def test_subdivide_counts():
    L = Lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]])
    C = Cone.from_generators(L, [(3, 1, 1), (3, -1, 1), (3, -1, -1), (3, 1, -1)])
    cells = subdivide(C, [(0, 1, 0), (0, 0, 1)])
    assert len(cells) == 4
    assert [c.signs for c in cells] == [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    assert len(subdivide(C, [(0, 1, 0), (0, 1, 0)])) == 2
    assert len(subdivide(C, [(1, 0, 0)])) == 1  # wall misses the cone


def test_fe_equals_se_on_a_chamber():
    # for a point of FE every root pairs positively; Zariski of a root then has N = root
    FE = fundamental_exceptional_chamber(K3, [S, E], H)
    for e in (S, E):
        dec = zariski_decompose(K3, e, [S, E])
        assert dec.P == la.zeros(3)
        assert member(FE, H) and pair(K3, H, e) > 0


# -- properties -----------------------------------------------------------------


def _sample_in(rng, gens, count):
    pts = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(0, 6)) for _ in gens]
        if not any(coeffs):
            coeffs[0] = Fraction(1)
        x = la.zeros(len(gens[0]))
        for c, g in zip(coeffs, gens):
            x = la.add(x, la.scale(c, g))
        pts.append(x)
    return pts


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_subdivision_is_a_disjoint_cover(seed):
    rng = random.Random(seed)
    L = random_hyperbolic_lattice(rng, rng.randint(2, 4))
    h = random_positive(rng, L, box=3)
    gens = [random_positive(rng, L, h, box=4) for _ in range(rng.randint(1, 4))]
    try:
        C = Cone.from_generators(L, gens).with_halfspaces()
    except ConeError:
        return
    walls = [tuple(rng.randint(-2, 2) for _ in range(L.rank)) for _ in range(rng.randint(1, 3))]
    walls = [w for w in walls if any(w)]
    cells = subdivide(C, walls)
    for cell in cells:
        assert contains(C, cell.witness) != OUTSIDE
        assert contains(cell.cone, cell.witness) == INTERIOR
        for w, s in zip(walls, cell.signs):
            assert (pair(L, w, cell.witness) > 0) - (pair(L, w, cell.witness) < 0) == s
    for x in _sample_in(rng, list(C.generators), 25):
        status = [contains(c.cone, x) for c in cells]
        assert status.count(INTERIOR) <= 1
        assert INTERIOR in status or BOUNDARY in status


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_walk_rep_is_in_the_fundamental_chamber(seed):
    from conelat.roots import chamber_walk

    rng = random.Random(seed)
    L, roots, h, alpha = chamber_instance(rng)
    FE = fundamental_exceptional_chamber(L, roots, h)
    word, rep = chamber_walk(L, roots, alpha, h)
    assert contains(FE, rep) != OUTSIDE
    if member(FE, alpha):
        assert len(word) == 0
