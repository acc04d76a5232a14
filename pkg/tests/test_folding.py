import itertools

import pytest

from conelat import kernels
from conelat._kernels_py import orbit_census, perm_group_census
from conelat.folding import (
    FoldingError,
    cartan_matrix,
    diagram_automorphisms,
    folded_weyl_order,
    named_automorphism,
    parse_type,
    roots_of,
    weyl_order,
)

# |W^tau| equals the order of the Weyl group of the folded diagram
FOLDED = [
    ("A2", "flip", 2),
    ("A3", "flip", 8),
    ("A4", "flip", 8),
    ("A5", "flip", 48),
    ("D4", "flip", 48),
    ("D4", "triality", 12),
    ("D5", "flip", 384),
    ("E6", "flip", 1152),
    ("A3", "identity", 24),
]


def matrix_group_oracle(name, tau):
    """Fixed elements of W by breadth-first search over integer reflection matrices."""
    c = cartan_matrix(name)
    n = len(c)

    def refl(i):
        # s_i on simple-root coordinates: x -> x - <x, a_i^vee> a_i
        return tuple(
            tuple((int(r == k) - (c[k][i] if r == i else 0)) for k in range(n)) for r in range(n)
        )

    gens = [refl(i) for i in range(n)]

    def mul(a, b):
        return tuple(tuple(sum(a[r][k] * b[k][s] for k in range(n)) for s in range(n)) for r in range(n))

    ident = tuple(tuple(int(r == s) for s in range(n)) for r in range(n))
    P = tuple(tuple(int(tau[s] == r) for s in range(n)) for r in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = mul(g, w)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return len(seen), sum(1 for w in seen if mul(P, w) == mul(w, P))


@pytest.mark.parametrize("name,tau,expected", FOLDED)
def test_folded_orders(name, tau, expected):
    assert folded_weyl_order(name, tau) == expected


@pytest.mark.parametrize("name,tau,expected", [f for f in FOLDED if weyl_order(f[0]) <= 1000])
def test_matrix_group_oracle(name, tau, expected):
    size, fixed = matrix_group_oracle(name, named_automorphism(name, tau))
    assert size == weyl_order(name)
    assert fixed == expected


@pytest.mark.parametrize("name,tau,expected", FOLDED)
def test_methods_agree(name, tau, expected):
    assert folded_weyl_order(name, tau, method="permutation") == expected
    assert folded_weyl_order(name, tau, method="orbit") == expected


@pytest.mark.parametrize("order", [None, [2, 0, 3, 1], [3, 2, 1, 0]])
def test_generator_order_does_not_matter(order):
    assert folded_weyl_order("D4", "triality", method="permutation", generator_order=order) == 12
    assert folded_weyl_order("D4", "triality", method="orbit", generator_order=order) == 12


def test_weyl_orders_and_roots():
    assert [weyl_order(t) for t in ("A3", "D4", "E6", "E8")] == [24, 192, 51840, 696729600]
    assert len(roots_of("E6")) == 72
    assert len(roots_of("D5")) == 40


def test_diagram_automorphisms():
    assert len(diagram_automorphisms("D4")) == 6
    assert len(diagram_automorphisms("E7")) == 1
    assert len(diagram_automorphisms("A4")) == 2


def test_bad_inputs():
    with pytest.raises(FoldingError):
        parse_type("F4")
    with pytest.raises(FoldingError):
        named_automorphism("A3", "triality")
    with pytest.raises(FoldingError):
        named_automorphism("A3", (1, 0, 2))
    with pytest.raises(FoldingError):
        folded_weyl_order("E8", "identity")
    with pytest.raises(FoldingError):
        folded_weyl_order("A2", "flip", method="nope")


# -- backends -------------------------------------------------------------------

try:
    from conelat import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


@needs_ext
@pytest.mark.parametrize("name,tau,expected", FOLDED)
def test_backends_agree(name, tau, expected):
    py = kernels.get_backend("python")
    cy = kernels.get_backend("cython")
    for method in ("permutation", "orbit"):
        assert folded_weyl_order(name, tau, method=method, backend=py) == expected
        assert folded_weyl_order(name, tau, method=method, backend=cy) == expected


@needs_ext
def test_backend_census_raw():
    from conelat.folding import automorphism_permutation, reflection_permutations

    gens, _ = reflection_permutations("A4")
    t = automorphism_permutation("A4", named_automorphism("A4", "flip"))
    assert _ckernels.perm_group_census(gens, t) == perm_group_census(gens, t) == (120, 8)
    c = cartan_matrix("D5")
    tau = named_automorphism("D5", "flip")
    assert _ckernels.orbit_census(c, tau) == orbit_census(c, tau) == (1920, 384)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_backend_flag_value():
    assert kernels.BACKEND in ("python", "cython")


def test_all_automorphisms_of_small_types_are_valid():
    for name in ("A2", "A3", "D4"):
        for t in diagram_automorphisms(name):
            assert sorted(t) == list(range(len(t)))
            c = cartan_matrix(name)
            assert all(c[t[i]][t[j]] == c[i][j] for i, j in itertools.product(range(len(t)), repeat=2))


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CONELAT_PURE_PYTHON="1")
    code = "from conelat import kernels; from conelat.folding import folded_weyl_order as f; print(kernels.BACKEND, f('A3', 'flip'))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "8"]
